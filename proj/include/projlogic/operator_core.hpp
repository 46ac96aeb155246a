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
 * Dense Hermitian operators, orthogonal projectors, points of the projective
 * space (rank-1 projectors), random sampling, and the projector lattice.
 *
 * The projector lattice operations here are the ground truth that the
 * membership-function logic in star_quantum_logic.hpp is checked against.
 */

#pragma once

#include "projlogic/common.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace projlogic {

/// Self-adjoint operator on C^n, stored as a full matrix.
class HermitianOperator {
  public:
    HermitianOperator() = default;

    /// Validates Hermiticity at tol.herm (max entry deviation).
    static HermitianOperator from_matrix(Matrix m, const Tolerances& tol = tolerances()) {
        if (m.rows() != m.cols() || m.rows() == 0) {
            throw InvalidArgument("operator matrix must be square and non-empty");
        }
        const double defect = max_abs(m - m.adjoint());
        if (defect > tol.herm) {
            throw InvalidArgument("matrix is not Hermitian (deviation " + std::to_string(defect) +
                                  ")");
        }
        return HermitianOperator(symmetrized(m));
    }

    static HermitianOperator identity(Index n) { return HermitianOperator(Matrix::Identity(n, n)); }
    static HermitianOperator zero(Index n) { return HermitianOperator(Matrix::Zero(n, n)); }
    static HermitianOperator diagonal(const RealVector& d) {
        return HermitianOperator(d.cast<Complex>().asDiagonal().toDenseMatrix());
    }

    Index dim() const { return matrix_.rows(); }
    const Matrix& matrix() const { return matrix_; }

    RealVector eigenvalues() const {
        return Eigen::SelfAdjointEigenSolver<Matrix>(matrix_, Eigen::EigenvaluesOnly).eigenvalues();
    }
    double trace() const { return matrix_.trace().real(); }

    /// tr(A p); real because both factors are Hermitian.
    double expectation(const Matrix& p) const { return trace_of_product(matrix_, p).real(); }

    HermitianOperator scaled(double s) const { return HermitianOperator(matrix_ * s); }

    friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
        require_same_dim(a.dim(), b.dim(), "operator sum");
        return HermitianOperator(a.matrix_ + b.matrix_);
    }
    friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
        require_same_dim(a.dim(), b.dim(), "operator difference");
        return HermitianOperator(a.matrix_ - b.matrix_);
    }

  protected:
    explicit HermitianOperator(Matrix m) : matrix_(std::move(m)) {}

    static Matrix symmetrized(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

    Matrix matrix_;
};

/// Orthogonal projector: Hermitian and idempotent.
class Projector : public HermitianOperator {
  public:
    Projector() = default;

    static Projector from_matrix(Matrix m, const Tolerances& tol = tolerances()) {
        auto h = HermitianOperator::from_matrix(std::move(m), tol);
        const double defect = max_abs(h.matrix() * h.matrix() - h.matrix());
        if (defect > tol.idem) {
            throw InvalidArgument("matrix is not idempotent (deviation " + std::to_string(defect) +
                                  ")");
        }
        return Projector(h.matrix());
    }

    /// Projector onto the span of orthonormal columns.
    static Projector onto(const Matrix& orthonormal_columns, Index n) {
        if (orthonormal_columns.cols() == 0) {
            return zero(n);
        }
        return Projector(symmetrized(orthonormal_columns * orthonormal_columns.adjoint()));
    }

    static Projector zero(Index n) { return Projector(Matrix::Zero(n, n)); }
    static Projector identity(Index n) { return Projector(Matrix::Identity(n, n)); }

    /// Projector onto span{e_i : i in indices}.
    static Projector coordinate(Index n, std::initializer_list<Index> indices) {
        Matrix m = Matrix::Zero(n, n);
        for (Index i : indices) {
            m(i, i) = 1.0;
        }
        return Projector(m);
    }

    Index rank() const { return static_cast<Index>(std::lround(trace())); }

  protected:
    explicit Projector(Matrix m) : HermitianOperator(std::move(m)) {}
};

/// Point of P(H): the rank-1 projector |psi><psi|.
class ProjectivePoint : public Projector {
  public:
    ProjectivePoint() = default;

    static ProjectivePoint from_vector(const Vector& psi) {
        const double norm = psi.norm();
        if (!(norm > 0.0)) {
            throw InvalidArgument("zero vector has no ray");
        }
        Vector unit = psi / norm;
        return ProjectivePoint(unit);
    }

    static ProjectivePoint from_matrix(const Matrix& m, const Tolerances& tol = tolerances()) {
        auto p = Projector::from_matrix(m, tol);
        if (std::abs(p.trace() - 1.0) > tol.trace) {
            throw InvalidArgument("projective point must have unit trace");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(p.matrix());
        return ProjectivePoint(Vector(es.eigenvectors().col(p.dim() - 1)));
    }

    static ProjectivePoint basis(Index n, Index i) { return from_vector(Vector::Unit(n, i)); }

    const Vector& ray() const { return ray_; }

  private:
    explicit ProjectivePoint(Vector unit)
        : Projector(symmetrized(unit * unit.adjoint())), ray_(std::move(unit)) {}

    Vector ray_;
};

/// Positive semidefinite, unit-trace operator.
class DensityMatrix : public HermitianOperator {
  public:
    DensityMatrix() = default;

    static DensityMatrix from_matrix(Matrix m, const Tolerances& tol = tolerances()) {
        auto h = HermitianOperator::from_matrix(std::move(m), tol);
        if (std::abs(h.trace() - 1.0) > tol.trace) {
            throw InvalidArgument("density matrix must have unit trace");
        }
        if (h.eigenvalues().minCoeff() < -tol.psd) {
            throw InvalidArgument("density matrix must be positive semidefinite");
        }
        return DensityMatrix(h.matrix());
    }

    static DensityMatrix maximally_mixed(Index n) {
        return DensityMatrix(Matrix::Identity(n, n) / static_cast<double>(n));
    }
    static DensityMatrix pure(const ProjectivePoint& p) { return DensityMatrix(p.matrix()); }

  private:
    explicit DensityMatrix(Matrix m) : HermitianOperator(std::move(m)) {}
};

/// Orthonormal basis stored as the columns of a unitary matrix.
class OrthonormalBasis {
  public:
    static OrthonormalBasis from_columns(Matrix columns, const Tolerances& tol = tolerances()) {
        if (columns.rows() != columns.cols()) {
            throw InvalidArgument("basis needs n vectors of length n");
        }
        const Index n = columns.rows();
        const double defect = max_abs(columns.adjoint() * columns - Matrix::Identity(n, n));
        if (defect > tol.orthonormal) {
            throw InvalidArgument("basis vectors are not orthonormal");
        }
        return OrthonormalBasis(std::move(columns));
    }

    static OrthonormalBasis standard(Index n) { return OrthonormalBasis(Matrix::Identity(n, n)); }

    Index dim() const { return columns_.rows(); }
    const Matrix& columns() const { return columns_; }
    ProjectivePoint point(Index i) const { return ProjectivePoint::from_vector(columns_.col(i)); }

  private:
    explicit OrthonormalBasis(Matrix c) : columns_(std::move(c)) {}
    Matrix columns_;
};

// ---------------------------------------------------------------------------
// construction and sampling

struct Hermitized {
    HermitianOperator op;
    double defect = 0.0;
};

/// (raw + raw^dagger)/2 together with the symmetrization defect.
inline Hermitized make_hermitian(const Matrix& raw, const Tolerances& tol = tolerances()) {
    if (raw.rows() != raw.cols() || raw.rows() == 0) {
        throw InvalidArgument("make_hermitian: input is not square");
    }
    Matrix sym = (raw + raw.adjoint()) * 0.5;
    const double defect = max_abs(raw - sym);
    if (defect > tol.hermitize_reject) {
        throw InvalidArgument("make_hermitian: symmetrization defect " + std::to_string(defect) +
                              " exceeds rejection threshold");
    }
    // sym is exactly Hermitian up to rounding in the averaging.
    Tolerances loose = tol;
    loose.herm = std::max(tol.herm, 1e-15 * (1.0 + max_abs(sym)));
    return {HermitianOperator::from_matrix(std::move(sym), loose), defect};
}

inline Matrix complex_gaussian_matrix(Index rows, Index cols, Rng& rng) {
    Matrix g(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            g(i, j) = rng.complex_normal();
        }
    }
    return g;
}

/// Haar-distributed point: normalized standard complex Gaussian vector.
inline ProjectivePoint haar_random_point(Index n, Rng& rng) {
    if (n < 2) {
        throw InvalidArgument("haar_random_point: dimension must be at least 2");
    }
    Vector psi(n);
    for (Index i = 0; i < n; ++i) {
        psi(i) = rng.complex_normal();
    }
    return ProjectivePoint::from_vector(psi);
}

/// Haar unitary via QR with the diagonal phases of R divided out.
inline Matrix random_unitary(Index n, Rng& rng) {
    Matrix g = complex_gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix& r = qr.matrixQR();
    for (Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0);
    }
    return q;
}

inline OrthonormalBasis random_orthonormal_basis(Index n, Rng& rng) {
    return OrthonormalBasis::from_columns(random_unitary(n, rng));
}

/// GUE-style draw: scale * (G + G^dagger)/2.
inline HermitianOperator random_hermitian(Index n, double scale, Rng& rng) {
    Matrix g = complex_gaussian_matrix(n, n, rng);
    return HermitianOperator::from_matrix((g + g.adjoint()) * (0.5 * scale));
}

inline Projector random_projector(Index n, Index rank, Rng& rng) {
    if (rank < 0 || rank > n) {
        throw InvalidArgument("random_projector: rank out of range");
    }
    if (rank == 0) {
        return Projector::zero(n);
    }
    Matrix u = random_unitary(n, rng);
    return Projector::onto(u.leftCols(rank), n);
}

inline DensityMatrix random_density_matrix(Index n, Rng& rng) {
    Matrix g = complex_gaussian_matrix(n, n, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::from_matrix((rho + rho.adjoint()) * 0.5);
}

/// Effect operator 0 <= T <= I with Haar eigenbasis and uniform spectrum.
inline HermitianOperator random_effect(Index n, Rng& rng) {
    Matrix u = random_unitary(n, rng);
    RealVector spectrum(n);
    for (Index i = 0; i < n; ++i) {
        spectrum(i) = rng.uniform();
    }
    Matrix t = u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
    return HermitianOperator::from_matrix((t + t.adjoint()) * 0.5);
}

/// Basis of the n^2-dimensional real space of Hermitian n x n matrices.
inline std::vector<Matrix> hermitian_basis(Index n) {
    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(n * n));
    for (Index k = 0; k < n; ++k) {
        Matrix e = Matrix::Zero(n, n);
        e(k, k) = 1.0;
        basis.push_back(e);
    }
    for (Index k = 0; k < n; ++k) {
        for (Index l = k + 1; l < n; ++l) {
            Matrix s = Matrix::Zero(n, n);
            s(k, l) = 1.0;
            s(l, k) = 1.0;
            basis.push_back(s);
            Matrix y = Matrix::Zero(n, n);
            y(k, l) = -kI;
            y(l, k) = kI;
            basis.push_back(y);
        }
    }
    return basis;
}

/// Closest point to a near-rank-1 Hermitian matrix (dominant eigenvector).
inline ProjectivePoint nearest_point(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) * 0.5);
    return ProjectivePoint::from_vector(es.eigenvectors().col(m.rows() - 1));
}

/// All eigenvector rays of a Hermitian operator.
inline std::vector<ProjectivePoint> eigenvector_points(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix());
    std::vector<ProjectivePoint> out;
    for (Index i = 0; i < a.dim(); ++i) {
        out.push_back(ProjectivePoint::from_vector(es.eigenvectors().col(i)));
    }
    return out;
}

inline bool operators_equal(const Matrix& a, const Matrix& b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs(a - b) <= tol;
}

// ---------------------------------------------------------------------------
// projector lattice

/// Operator order Q - P >= 0; for projectors, range inclusion.
inline bool projector_leq(const Projector& p, const Projector& q, const Tolerances& tol = tolerances()) {
    require_same_dim(p.dim(), q.dim(), "projector_leq");
    Eigen::SelfAdjointEigenSolver<Matrix> es(q.matrix() - p.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol.order;
}

inline Projector orthocomplement(const Projector& p) {
    return Projector::from_matrix(Matrix::Identity(p.dim(), p.dim()) - p.matrix());
}

namespace detail {
// Eigenvectors of a PSD Hermitian matrix whose eigenvalue is below tol.rank.
inline Projector kernel_projector(const Matrix& m, const Tolerances& tol) {
    const Index n = m.rows();
    Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) * 0.5);
    Index k = 0;
    while (k < n && es.eigenvalues()(k) < tol.rank) {
        ++k;
    }
    return Projector::onto(es.eigenvectors().leftCols(k), n);
}
}  // namespace detail

/// P ∧ Q: projector onto ker(2I - P - Q), i.e. ran P ∩ ran Q.
inline Projector lattice_meet(const Projector& p, const Projector& q, const Tolerances& tol = tolerances()) {
    require_same_dim(p.dim(), q.dim(), "lattice_meet");
    const Index n = p.dim();
    return detail::kernel_projector(2.0 * Matrix::Identity(n, n) - p.matrix() - q.matrix(), tol);
}

/// P ∨ Q = ¬(¬P ∧ ¬Q).
inline Projector lattice_join(const Projector& p, const Projector& q, const Tolerances& tol = tolerances()) {
    require_same_dim(p.dim(), q.dim(), "lattice_join");
    return orthocomplement(lattice_meet(orthocomplement(p), orthocomplement(q), tol));
}

inline bool commutes(const HermitianOperator& a, const HermitianOperator& b, double tol) {
    return max_abs(commutator(a.matrix(), b.matrix())) <= tol;
}

struct CompatibleDecomposition {
    Projector only_p;  // P ∧ ¬Q
    Projector only_q;  // ¬P ∧ Q
    Projector common;  // P ∧ Q
};

/**
 * Joint orthogonal decomposition P = r1 ∨ r3, Q = r2 ∨ r3 for commuting
 * projectors; std::nullopt when [P,Q] != 0.
 */
inline std::optional<CompatibleDecomposition> compatibility_decomposition(
    const Projector& p, const Projector& q, const Tolerances& tol = tolerances()) {
    require_same_dim(p.dim(), q.dim(), "compatibility_decomposition");
    if (!commutes(p, q, tol.commute)) {
        return std::nullopt;
    }
    CompatibleDecomposition d{lattice_meet(p, orthocomplement(q), tol),
                              lattice_meet(orthocomplement(p), q, tol), lattice_meet(p, q, tol)};
    const double rebuild = std::max(max_abs(lattice_join(d.only_p, d.common, tol).matrix() - p.matrix()),
                                    max_abs(lattice_join(d.only_q, d.common, tol).matrix() - q.matrix()));
    const double overlap = std::max({max_abs(d.only_p.matrix() * d.only_q.matrix()),
                                     max_abs(d.only_p.matrix() * d.common.matrix()),
                                     max_abs(d.only_q.matrix() * d.common.matrix())});
    if (rebuild > tol.order || overlap > tol.order) {
        throw CertificationError("compatibility_decomposition: decomposition does not rebuild inputs");
    }
    return d;
}

}  // namespace projlogic
