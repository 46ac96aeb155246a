// Copyright 2026 The projlogic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Kähler structure of the projective space P(H) realised on rank-1
 * projectors.
 *
 * A tangent vector at p is a traceless Hermitian matrix v = -i[A, p]. The
 * generator A is only fixed modulo operators commuting with p; we always
 * store the canonical representative A_v = i[v, p], which also equals the
 * complex structure j_p(v).
 *
 *   omega_p(u, v) = -i tr([A_u, A_v] p)
 *   g_p(u, v)     = -tr(([A_u, p][A_v, p] + [A_v, p][A_u, p]) p)
 *   j_p(v)        = i[v, p]
 *
 * With these conventions g_p(u, v) = omega_p(u, j_p v).
 */

#pragma once

#include "projlogic/operator_core.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace projlogic {

class TangentVector {
  public:
    /// v = -i[A, p], generator replaced by its canonical representative.
    static TangentVector from_generator(const ProjectivePoint& p, const HermitianOperator& a) {
        require_same_dim(p.dim(), a.dim(), "tangent_from_generator");
        Matrix v = -kI * commutator(a.matrix(), p.matrix());
        return from_value(p, hermitian_part(v));
    }

    /// Wraps an already-tangent Hermitian matrix v (v = vp + pv); rejects anything else.
    static TangentVector from_value(const ProjectivePoint& p, const Matrix& v, const Tolerances& tol = tolerances()) {
        require_same_dim(p.dim(), v.rows(), "tangent vector");
        Matrix generator = hermitian_part(kI * commutator(v, p.matrix()));
        TangentVector out(p, HermitianOperator::from_matrix(std::move(generator)), v);
        if (out.invariant_defect() > tol.tangent * std::max(1.0, max_abs(v))) {
            throw InvalidArgument("tangent vector: value is not tangent at the base point");
        }
        return out;
    }

    static TangentVector zero(const ProjectivePoint& p) {
        return from_value(p, Matrix::Zero(p.dim(), p.dim()));
    }

    const ProjectivePoint& base() const { return base_; }
    const HermitianOperator& generator() const { return generator_; }
    const Matrix& value() const { return value_; }

    /// Largest violation among the tangency invariants.
    double invariant_defect() const {
        const Matrix& p = base_.matrix();
        return std::max({max_abs(value_ - value_.adjoint()), std::abs(value_.trace()),
                         max_abs(value_ - (value_ * p + p * value_)), max_abs(p * value_ * p)});
    }

    TangentVector scaled(double s) const { return from_value(base_, value_ * s); }

    friend TangentVector operator+(const TangentVector& a, const TangentVector& b) {
        check_same_base(a, b);
        return from_value(a.base_, a.value_ + b.value_);
    }

    static void check_same_base(const TangentVector& a, const TangentVector& b) {
        if (!operators_equal(a.base_.matrix(), b.base_.matrix(), 1e-10)) {
            throw InvalidArgument("tangent vectors live at different base points");
        }
    }

  private:
    TangentVector(ProjectivePoint p, HermitianOperator g, Matrix v)
        : base_(std::move(p)), generator_(std::move(g)), value_(std::move(v)) {}

    static Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

    ProjectivePoint base_;
    HermitianOperator generator_;
    Matrix value_;
};

inline TangentVector tangent_from_generator(const ProjectivePoint& p, const HermitianOperator& a) {
    return TangentVector::from_generator(p, a);
}

namespace detail {
inline double real_checked(Complex z, double tol, const char* what) {
    if (std::abs(z.imag()) > tol) {
        throw CertificationError(std::string(what) + ": imaginary residue " + std::to_string(z.imag()));
    }
    return z.real();
}

inline double omega_from_generators(const Matrix& au, const Matrix& av, const Matrix& p, double tol) {
    return real_checked(-kI * trace_of_product(commutator(au, av), p), tol, "symplectic form");
}

inline double metric_from_generators(const Matrix& au, const Matrix& av, const Matrix& p, double tol) {
    const Matrix cu = commutator(au, p);
    const Matrix cv = commutator(av, p);
    return real_checked(-trace_of_product(cu * cv + cv * cu, p), tol, "Fubini-Study metric");
}
}  // namespace detail

inline double symplectic_form(const TangentVector& u, const TangentVector& v,
                              const Tolerances& tol = tolerances()) {
    TangentVector::check_same_base(u, v);
    return detail::omega_from_generators(u.generator().matrix(), v.generator().matrix(),
                                         u.base().matrix(), tol.gauge);
}

inline double fubini_study_metric(const TangentVector& u, const TangentVector& v,
                                  const Tolerances& tol = tolerances()) {
    TangentVector::check_same_base(u, v);
    return detail::metric_from_generators(u.generator().matrix(), v.generator().matrix(),
                                          u.base().matrix(), tol.gauge);
}

/// j_p(v) = i[v, p].
inline TangentVector complex_structure(const TangentVector& v) {
    Matrix jv = kI * commutator(v.value(), v.base().matrix());
    return TangentVector::from_value(v.base(), (jv + jv.adjoint()) * 0.5);
}

/// f_A(p) = tr(A p).
struct ObservableFunction {
    HermitianOperator op;

    double operator()(const ProjectivePoint& p) const { return op.expectation(p.matrix()); }
};

using ScalarField = std::function<double(const ProjectivePoint&)>;

/// df_A(v) = tr(A v), exact.
inline double directional_derivative(const ObservableFunction& f, const TangentVector& v) {
    return trace_of_product(f.op.matrix(), v.value()).real();
}

/**
 * Central difference of an arbitrary field along the straight line p + t v,
 * re-projected to the nearest rank-1 projector.
 */
inline double finite_difference_derivative(const ScalarField& field, const TangentVector& v,
                                           double step = 1e-5) {
    const Matrix& p = v.base().matrix();
    const double forward = field(nearest_point(p + step * v.value()));
    const double backward = field(nearest_point(p - step * v.value()));
    return (forward - backward) / (2.0 * step);
}

/// X_f(p) for f = tr(A ·): the tangent vector generated by A.
inline TangentVector hamiltonian_vector_field(const ObservableFunction& f, const ProjectivePoint& p) {
    return tangent_from_generator(p, f.op);
}

/**
 * X_f(p) certified against its defining identity omega(X_f, Y) = df(Y) on
 * `n_probes` random tangent vectors Y.
 */
inline TangentVector hamiltonian_vector_field(const ObservableFunction& f, const ProjectivePoint& p,
                                              Rng& rng, int n_probes = 20,
                                              const Tolerances& tol = tolerances()) {
    TangentVector x = hamiltonian_vector_field(f, p);
    for (int k = 0; k < n_probes; ++k) {
        TangentVector y = tangent_from_generator(p, random_hermitian(p.dim(), 1.0, rng));
        const double err = std::abs(symplectic_form(x, y, tol) - directional_derivative(f, y));
        if (err > tol.hamiltonian) {
            throw CertificationError("hamiltonian_vector_field: omega(X_f, Y) != df(Y), error " +
                                     std::to_string(err));
        }
    }
    return x;
}

/// {f_A, f_B}(p) = -i tr([A, B] p), cross-checked against omega(X_A, X_B).
inline double poisson_bracket(const HermitianOperator& a, const HermitianOperator& b,
                              const ProjectivePoint& p, const Tolerances& tol = tolerances()) {
    require_same_dim(a.dim(), b.dim(), "poisson_bracket");
    require_same_dim(a.dim(), p.dim(), "poisson_bracket");
    const double analytic = detail::real_checked(
        -kI * trace_of_product(commutator(a.matrix(), b.matrix()), p.matrix()), tol.gauge,
        "poisson bracket");
    const double geometric =
        symplectic_form(hamiltonian_vector_field(ObservableFunction{a}, p),
                        hamiltonian_vector_field(ObservableFunction{b}, p), tol);
    if (std::abs(analytic - geometric) > tol.poisson) {
        throw CertificationError("poisson_bracket: analytic and geometric forms disagree");
    }
    return analytic;
}

struct ObservableFit {
    HermitianOperator op;
    double residual = 0.0;
    bool observable_type = false;
};

/**
 * Least-squares fit of field(p) ≈ tr(T p) over Haar samples. The field is
 * observable-type iff the RMS residual is below tol.observable_fit.
 */
inline ObservableFit observable_fit(const ScalarField& field, Index n, std::size_t n_samples,
                                    Rng& rng, const Tolerances& tol = tolerances()) {
    const auto basis = hermitian_basis(n);
    const Index params = static_cast<Index>(basis.size());
    if (n_samples < static_cast<std::size_t>(params) + 10) {
        throw InvalidArgument("observable_fit: need at least n^2 + 10 samples");
    }
    const Index rows = static_cast<Index>(n_samples);
    RealMatrix design(rows, params);
    RealVector target(rows);
    for (Index k = 0; k < rows; ++k) {
        const ProjectivePoint p = haar_random_point(n, rng);
        for (Index j = 0; j < params; ++j) {
            design(k, j) = trace_of_product(basis[static_cast<std::size_t>(j)], p.matrix()).real();
        }
        target(k) = field(p);
    }
    Eigen::ColPivHouseholderQR<RealMatrix> qr(design);
    if (qr.rank() < params) {
        throw InvalidArgument("observable_fit: rank-deficient design (too few samples)");
    }
    const RealVector coeffs = qr.solve(target);
    Matrix t = Matrix::Zero(n, n);
    for (Index j = 0; j < params; ++j) {
        t += coeffs(j) * basis[static_cast<std::size_t>(j)];
    }
    const double residual = std::sqrt((design * coeffs - target).squaredNorm() / static_cast<double>(rows));
    return {make_hermitian(t).op, residual, residual < tol.observable_fit};
}

/// Spread of sum_i field(psi_i) over the given orthonormal bases.
inline double frame_function_deviation(const ScalarField& field, std::span<const OrthonormalBasis> bases) {
    if (bases.size() < 2) {
        throw InvalidArgument("frame_function_deviation: need at least two bases");
    }
    std::vector<double> sums;
    sums.reserve(bases.size());
    for (const auto& b : bases) {
        double s = 0.0;
        for (Index i = 0; i < b.dim(); ++i) {
            s += field(b.point(i));
        }
        sums.push_back(s);
    }
    double mean = 0.0;
    for (double s : sums) {
        mean += s;
    }
    mean /= static_cast<double>(sums.size());
    double dev = 0.0;
    for (double s : sums) {
        dev = std::max(dev, std::abs(s - mean));
    }
    return dev;
}

inline double frame_function_deviation(const ScalarField& field, Index n, std::size_t n_bases, Rng& rng) {
    std::vector<OrthonormalBasis> bases;
    bases.reserve(n_bases);
    for (std::size_t k = 0; k < n_bases; ++k) {
        bases.push_back(random_orthonormal_basis(n, rng));
    }
    return frame_function_deviation(field, bases);
}

}  // namespace projlogic
