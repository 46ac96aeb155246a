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
 * Verification suites, check records and the JSON report.
 *
 * Every suite draws from its own generator derived from the configured seed
 * and the suite's position in the canonical order, so a suite produces the
 * same records whether it runs alone or inside `all`, and for any thread
 * count.
 */

#pragma once

#include "projlogic/dynamics.hpp"
#include "projlogic/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace projlogic {

inline constexpr const char* kArtifactName = "projlogic";
inline constexpr const char* kArtifactVersion = "1.0.0";

struct SuiteConfig {
    int dim = 3;
    std::size_t n_samples = 20000;
    std::uint64_t seed = 0;
    std::map<std::string, double> tol_overrides;
    std::vector<std::string> suites{"all"};
    std::optional<std::string> family_path;
    std::vector<std::string> operator_paths;
    unsigned threads = 1;  // not echoed: reports are thread-count independent

    void validate() const {
        if (dim < 2 || dim > 8) {
            throw InvalidArgument("dim must be in [2, 8]");
        }
        if (n_samples < 100) {
            throw InvalidArgument("samples must be at least 100");
        }
        if (threads < 1) {
            throw InvalidArgument("threads must be at least 1");
        }
        Tolerances probe;
        for (const auto& [name, value] : tol_overrides) {
            probe.set(name, value);
        }
    }

    Tolerances effective_tolerances() const {
        Tolerances tol;
        for (const auto& [name, value] : tol_overrides) {
            tol.set(name, value);
        }
        return tol;
    }
};

struct CheckRecord {
    std::string name;
    std::string paper_ref;
    std::size_t n_trials = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string details;

    friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

inline Json to_json(const CheckRecord& r) {
    return {{"name", r.name},           {"paper_ref", r.paper_ref}, {"n_trials", r.n_trials},
            {"max_error", r.max_error}, {"tolerance", r.tolerance}, {"passed", r.passed},
            {"details", r.details}};
}

inline CheckRecord record_from_json(const Json& j) {
    CheckRecord r;
    r.name = j.at("name").get<std::string>();
    r.paper_ref = j.at("paper_ref").get<std::string>();
    r.n_trials = j.at("n_trials").get<std::size_t>();
    r.max_error = j.at("max_error").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.passed = j.at("passed").get<bool>();
    r.details = j.at("details").get<std::string>();
    return r;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"geometry", "measure", "star",        "logic",
                                                "tnorm",    "dynamics", "mik", "main-theorem"};
    return names;
}

/// Anchors accepted in CheckRecord::paper_ref.
namespace ref {
inline constexpr const char* kTangent = "§3";
inline constexpr const char* kOmega = "Eq. (omega)";
inline constexpr const char* kMetric = "Eq. (g)";
inline constexpr const char* kObservable = "Prop. 2 / Theorem 1";
inline constexpr const char* kFrame = "Eq. (frame)";
inline constexpr const char* kDensities = "Eq. (densities)";
inline constexpr const char* kBasisSum = "Prop. 2 proof";
inline constexpr const char* kReproducing = "Eq. (FD)";
inline constexpr const char* kEventProbability = "Eq. (pfe)";
inline constexpr const char* kStar = "Prop. 3";
inline constexpr const char* kStarCompat = "Prop. 3 iv";
inline constexpr const char* kStarJoinMeet = "Prop. 3 vi";
inline constexpr const char* kOrderIso = "Prop. 3 proof";
inline constexpr const char* kLogic = "Def. 1";
inline constexpr const char* kStates = "Def. 2";
inline constexpr const char* kFuzzy = "§4";
inline constexpr const char* kTNormAxioms = "§4 axiom list i–iv";
inline constexpr const char* kMinNorm = "Eq. (minnorm)";
inline constexpr const char* kFunctionFamilies = "Thm. 2";
inline constexpr const char* kDeformed = "Thm. 3";
}  // namespace ref

namespace detail {

class Recorder {
  public:
    explicit Recorder(std::vector<CheckRecord>& out) : out_(out) {}

    /// Error-style check: passed iff max_error <= tolerance.
    void check(std::string name, const char* paper_ref, std::size_t trials, double max_error, double tolerance,
               std::string details = {}) {
        const bool ok = std::isfinite(max_error) && max_error <= tolerance;
        if (!std::isfinite(max_error)) {
            max_error = std::numeric_limits<double>::max();
        }
        out_.push_back({std::move(name), paper_ref, trials, max_error, tolerance, ok, std::move(details)});
    }

    /// Count-style check: passed iff no counterexample was found.
    void count(std::string name, const char* paper_ref, std::size_t trials, std::size_t failures,
               std::string details = {}) {
        check(std::move(name), paper_ref, trials, static_cast<double>(failures), 0.0, std::move(details));
    }

    /// Runs fn; a library error becomes a failing record with the message.
    template <class Fn>
    void guarded(const std::string& name, const char* paper_ref, Fn&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            out_.push_back({name, paper_ref, 0, 1.0, 0.0, false, std::string("error: ") + e.what()});
        }
    }

  private:
    std::vector<CheckRecord>& out_;
};

struct SuiteContext {
    const SuiteConfig& cfg;
    const Tolerances& tol;
    Index n;
    std::vector<HermitianOperator> operators;
    std::vector<FuzzyEventQL> family;
};

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

inline TangentVector random_tangent(const ProjectivePoint& p, Rng& rng) {
    return tangent_from_generator(p, random_hermitian(p.dim(), 1.0, rng));
}

// Operator commuting with p: c p + (I - p) K (I - p).
inline Matrix random_commutant(const ProjectivePoint& p, Rng& rng) {
    const Index n = p.dim();
    const Matrix q = Matrix::Identity(n, n) - p.matrix();
    return rng.normal() * p.matrix() + q * random_hermitian(n, 1.0, rng).matrix() * q;
}

inline Projector projector_on_columns(const Matrix& u, const std::vector<Index>& cols) {
    Matrix c(u.rows(), static_cast<Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
        c.col(static_cast<Index>(k)) = u.col(cols[k]);
    }
    return Projector::onto(c, u.rows());
}

inline std::vector<Index> random_subset(Index n, Rng& rng, Index min_size = 0) {
    std::vector<Index> out;
    while (static_cast<Index>(out.size()) < min_size || out.empty()) {
        out.clear();
        for (Index i = 0; i < n; ++i) {
            if (rng.uniform() < 0.5) {
                out.push_back(i);
            }
        }
        if (min_size == 0) {
            break;
        }
    }
    return out;
}

/// Rescales a Hermitian operator affinely into [0, I].
inline HermitianOperator to_effect(const HermitianOperator& a) {
    const RealVector ev = a.eigenvalues();
    const double lo = ev.minCoeff();
    const double span = ev.maxCoeff() - lo;
    const Index n = a.dim();
    if (span <= 0.0) {
        return HermitianOperator::identity(n).scaled(0.5);
    }
    return HermitianOperator::from_matrix((a.matrix() - lo * Matrix::Identity(n, n)) / span);
}

inline std::vector<FuzzyEventQL> spin_family() {
    const double s = std::numbers::sqrt2 / 2.0;
    Vector plus(2);
    plus << s, s;
    Vector minus(2);
    minus << s, -s;
    return {FuzzyEventQL::from_projector(ProjectivePoint::basis(2, 0), "e1"),
            FuzzyEventQL::from_projector(ProjectivePoint::basis(2, 1), "e2"),
            FuzzyEventQL::from_projector(ProjectivePoint::from_vector(plus), "+"),
            FuzzyEventQL::from_projector(ProjectivePoint::from_vector(minus), "-")};
}

/// All coordinate projectors of C^n, labelled by their index sets.
inline std::vector<FuzzyEventQL> diagonal_family(Index n) {
    std::vector<FuzzyEventQL> out;
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
        RealVector d = RealVector::Zero(n);
        std::string label = "{";
        for (Index i = 0; i < n; ++i) {
            if (mask & (1U << i)) {
                d(i) = 1.0;
                label += (label.size() > 1 ? "," : "") + std::to_string(i + 1);
            }
        }
        label += "}";
        out.push_back(FuzzyEventQL::from_projector(Projector::from_matrix(d.cast<Complex>().asDiagonal()), label));
    }
    return out;
}

inline std::string witness_text(const QuantumLogicStructure& L, const DistributivityWitness& w) {
    return "(" + L.elements[w.p].label() + ", " + L.elements[w.q].label() + ", " + L.elements[w.r].label() + ")" +
           (w.meet_over_join ? " meet-over-join" : " join-over-meet");
}

// ---------------------------------------------------------------------------

inline void suite_geometry(SuiteContext& cx, Rng& rng, Recorder& rec) {
    const Index n = cx.n;
    const Tolerances& tol = cx.tol;
    constexpr std::size_t kTrials = 1000;

    rec.guarded("tangent_invariants", ref::kTangent, [&] {
        double worst = 0.0;
        for (std::size_t k = 0; k < kTrials; ++k) {
            const ProjectivePoint p = haar_random_point(n, rng);
            const TangentVector v = random_tangent(p, rng);
            const Matrix canonical = kI * commutator(v.value(), p.matrix());
            worst = std::max({worst, v.invariant_defect(), max_abs(canonical - v.generator().matrix())});
        }
        rec.check("tangent_invariants", ref::kTangent, kTrials, worst, tol.tangent,
                  "v Hermitian, traceless, v = vp + pv, pvp = 0, A_v = i[v,p]");
    });

    rec.guarded("omega_gauge_invariance", ref::kOmega, [&] {
        double w_omega = 0.0;
        double w_metric = 0.0;
        for (std::size_t k = 0; k < kTrials; ++k) {
            const ProjectivePoint p = haar_random_point(n, rng);
            const Matrix a = random_hermitian(n, 1.0, rng).matrix();
            const Matrix b = random_hermitian(n, 1.0, rng).matrix();
            const Matrix a2 = a + random_commutant(p, rng);
            const Matrix b2 = b + random_commutant(p, rng);
            const Matrix& pm = p.matrix();
            w_omega = std::max(w_omega, std::abs(omega_from_generators(a, b, pm, tol.gauge) -
                                                 omega_from_generators(a2, b2, pm, tol.gauge)));
            w_metric = std::max(w_metric, std::abs(metric_from_generators(a, b, pm, tol.gauge) -
                                                   metric_from_generators(a2, b2, pm, tol.gauge)));
        }
        rec.check("omega_gauge_invariance", ref::kOmega, kTrials, w_omega, tol.gauge,
                  "generators shifted by operators commuting with p");
        rec.check("metric_gauge_invariance", ref::kMetric, kTrials, w_metric, tol.gauge,
                  "generators shifted by operators commuting with p");
    });

    rec.guarded("omega_antisymmetry", ref::kOmega, [&] {
        double anti = 0.0;
        double sym = 0.0;
        double bilinear = 0.0;
        double negative = 0.0;
        for (std::size_t k = 0; k < kTrials; ++k) {
            const ProjectivePoint p = haar_random_point(n, rng);
            const TangentVector u = random_tangent(p, rng);
            const TangentVector v = random_tangent(p, rng);
            const TangentVector w = random_tangent(p, rng);
            const double a = rng.normal();
            const double b = rng.normal();
            anti = std::max(anti, std::abs(symplectic_form(u, v, tol) + symplectic_form(v, u, tol)));
            sym = std::max(sym, std::abs(fubini_study_metric(u, v, tol) - fubini_study_metric(v, u, tol)));
            const TangentVector comb = u.scaled(a) + w.scaled(b);
            bilinear = std::max(
                {bilinear,
                 std::abs(symplectic_form(comb, v, tol) - a * symplectic_form(u, v, tol) - b * symplectic_form(w, v, tol)),
                 std::abs(fubini_study_metric(comb, v, tol) - a * fubini_study_metric(u, v, tol) -
                          b * fubini_study_metric(w, v, tol))});
            negative = std::max(negative, -fubini_study_metric(u, u, tol));
        }
        rec.check("omega_antisymmetry", ref::kOmega, kTrials, anti, tol.order);
        rec.check("metric_symmetry_positivity", ref::kMetric, kTrials, std::max(sym, negative), tol.order,
                  "max of |g(u,v) - g(v,u)| and -g(u,u)");
        rec.check("form_bilinearity", ref::kOmega, kTrials, bilinear, tol.order);
    });

    rec.guarded("complex_structure_squared", ref::kTangent, [&] {
        double jj = 0.0;
        double kahler = 0.0;
        double isometry = 0.0;
        for (std::size_t k = 0; k < kTrials; ++k) {
            const ProjectivePoint p = haar_random_point(n, rng);
            const TangentVector u = random_tangent(p, rng);
            const TangentVector v = random_tangent(p, rng);
            const TangentVector ju = complex_structure(u);
            const TangentVector jv = complex_structure(v);
            jj = std::max(jj, max_abs(complex_structure(jv).value() + v.value()));
            kahler = std::max(kahler, std::abs(fubini_study_metric(u, v, tol) - symplectic_form(u, jv, tol)));
            isometry = std::max(isometry, std::abs(fubini_study_metric(ju, jv, tol) - fubini_study_metric(u, v, tol)));
        }
        rec.check("complex_structure_squared", ref::kTangent, kTrials, jj, tol.order, "j(j(v)) = -v");
        rec.check("kahler_compatibility", ref::kTangent, kTrials, kahler, tol.kahler, "g(u,v) = omega(u, j v)");
        rec.check("complex_structure_isometry", ref::kTangent, kTrials, isometry, tol.order, "g(ju, jv) = g(u, v)");
    });

    rec.guarded("hamiltonian_field_identity", ref::kTangent, [&] {
        double ham = 0.0;
        double pb = 0.0;
        double fd = 0.0;
        for (std::size_t k = 0; k < kTrials; ++k) {
            const ProjectivePoint p = haar_random_point(n, rng);
            const ObservableFunction f{random_hermitian(n, 1.0, rng)};
            const HermitianOperator b = random_hermitian(n, 1.0, rng);
            const TangentVector x = hamiltonian_vector_field(f, p);
            const TangentVector y = random_tangent(p, rng);
            ham = std::max(ham, std::abs(symplectic_form(x, y, tol) - directional_derivative(f, y)));
            const double analytic = (-kI * trace_of_product(commutator(f.op.matrix(), b.matrix()), p.matrix())).real();
            pb = std::max(pb, std::abs(analytic - symplectic_form(x, hamiltonian_vector_field(ObservableFunction{b}, p), tol)));
            if (k < 100) {
                fd = std::max(fd, std::abs(directional_derivative(f, y) -
                                           finite_difference_derivative([&](const ProjectivePoint& q) { return f(q); }, y)));
            }
        }
        for (const auto& op : cx.operators) {
            const ProjectivePoint p = haar_random_point(n, rng);
            const ObservableFunction f{op};
            const TangentVector y = random_tangent(p, rng);
            ham = std::max(ham, std::abs(symplectic_form(hamiltonian_vector_field(f, p), y, tol) -
                                         directional_derivative(f, y)));
        }
        const std::string extra =
            cx.operators.empty() ? "" : "; includes " + std::to_string(cx.operators.size()) + " supplied operators";
        rec.check("hamiltonian_field_identity", ref::kTangent, kTrials + cx.operators.size(), ham, tol.hamiltonian,
                  "omega(X_f, Y) = df(Y)" + extra);
        rec.check("poisson_bracket_geometric", ref::kTangent, kTrials, pb, tol.poisson,
                  "-i tr([A,B]p) = omega(X_A, X_B)");
        rec.check("directional_derivative_finite_difference", ref::kTangent, 100, fd, 1e-6,
                  "central difference, step 1e-5, re-projected");
    });

    rec.guarded("observable_classifiers", ref::kObservable, [&] {
        const std::size_t fit_samples = static_cast<std::size_t>(n * n + 32);
        double residual = 0.0;
        double recovery = 0.0;
        double frame_affine = 0.0;
        std::size_t fit_wrong = 0;
        std::size_t frame_wrong = 0;
        std::size_t disagree = 0;
        double min_nonaffine_residual = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 20; ++k) {
            const bool affine = k < 10;
            const HermitianOperator a = random_hermitian(n, 1.0, rng);
            const HermitianOperator b = random_hermitian(n, 1.0, rng);
            ScalarField field;
            if (affine) {
                field = [a](const ProjectivePoint& p) { return a.expectation(p.matrix()); };
            } else if (k < 15) {
                field = [a](const ProjectivePoint& p) { return std::pow(a.expectation(p.matrix()), 2); };
            } else if (k < 18) {
                field = [a, b](const ProjectivePoint& p) { return a.expectation(p.matrix()) * b.expectation(p.matrix()); };
            } else {
                field = [a](const ProjectivePoint& p) { return std::exp(a.expectation(p.matrix())); };
            }
            const ObservableFit fit = observable_fit(field, n, fit_samples, rng, tol);
            const double dev = frame_function_deviation(field, n, 20, rng);
            const bool frame_says = dev < tol.frame;
            if (affine) {
                residual = std::max(residual, fit.residual);
                recovery = std::max(recovery, max_abs(fit.op.matrix() - a.matrix()));
                frame_affine = std::max(frame_affine, dev);
            } else {
                min_nonaffine_residual = std::min(min_nonaffine_residual, fit.residual);
            }
            fit_wrong += fit.observable_type != affine;
            frame_wrong += frame_says != affine;
            disagree += fit.observable_type != frame_says;
        }
        rec.check("observable_fit_affine", ref::kObservable, 10, residual, tol.observable_fit,
                  "RMS residual with n^2 + 32 samples");
        rec.check("observable_fit_recovers_generator", ref::kObservable, 10, recovery, 1e-8);
        rec.count("observable_fit_classification", ref::kObservable, 20, fit_wrong,
                  "10 affine and 10 non-affine fields; smallest non-affine residual " + fmt(min_nonaffine_residual));
        rec.check("frame_sum_constancy", ref::kFrame, 10, frame_affine, 1e-9, "20 Haar bases per field");
        rec.count("frame_classification", ref::kFrame, 20, frame_wrong);
        rec.count("classifier_agreement", ref::kObservable, 20, disagree, "fit-based vs frame-based decision");
    });
}

inline void suite_measure(SuiteContext& cx, Rng& rng, Recorder& rec) {
    const Index n = cx.n;
    const Tolerances& tol = cx.tol;
    const std::size_t samples = cx.cfg.n_samples;
    const double dn = static_cast<double>(n);

    rec.guarded("mc_moments", ref::kTangent, [&] {
        double z1 = 0.0;
        double z2 = 0.0;
        for (int k = 0; k < 5; ++k) {
            const HermitianOperator a = random_hermitian(n, 1.0, rng);
            const HermitianOperator b = random_hermitian(n, 1.0, rng);
            const auto m1 = mc_integrate([&](const ProjectivePoint& p) { return a.expectation(p.matrix()); }, n, samples, rng);
            const auto m2 = mc_integrate(
                [&](const ProjectivePoint& p) { return a.expectation(p.matrix()) * b.expectation(p.matrix()); }, n,
                samples, rng);
            z1 = std::max(z1, std::abs(m1.mean - moment1_exact(a)) / m1.std_error);
            z2 = std::max(z2, std::abs(m2.mean - moment2_exact(a, b)) / m2.std_error);
        }
        rec.check("mc_first_moment", ref::kTangent, 5, z1, tol.mc_sigmas,
                  "max |MC - tr(A)/n| in standard errors, " + std::to_string(samples) + " samples");
        rec.check("mc_second_moment", ref::kTangent, 5, z2, tol.mc_sigmas,
                  "max |MC - (trA trB + tr AB)/(n(n+1))| in standard errors");
    });

    rec.guarded("mc_unitary_invariance", ref::kTangent, [&] {
        const HermitianOperator b = random_hermitian(n, 1.0, rng);
        const Matrix u = random_unitary(n, rng);
        auto f = [&](const ProjectivePoint& p) { return std::pow(b.expectation(p.matrix()), 2); };
        const auto e1 = mc_integrate(f, n, samples, rng);
        const auto e2 = mc_integrate(
            [&](const ProjectivePoint& p) { return f(ProjectivePoint::from_vector(u.adjoint() * p.ray())); }, n, samples,
            rng);
        const double z = std::abs(e1.mean - e2.mean) / std::hypot(e1.std_error, e2.std_error);
        rec.check("mc_unitary_invariance", ref::kTangent, 2 * samples, z, tol.mc_sigmas,
                  "field tr(Bp)^2 vs its pull-back by a random unitary");
    });

    rec.guarded("moment_oracle_consistency", ref::kTangent, [&] {
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const HermitianOperator a = random_hermitian(n, 1.0, rng);
            worst = std::max(worst, std::abs(moment2_exact(HermitianOperator::identity(n), a) - moment1_exact(a)));
        }
        rec.check("moment_oracle_consistency", ref::kTangent, 50, worst, 1e-12, "moment2(I, A) = moment1(A)");
    });

    rec.guarded("liouville_identities", ref::kDensities, [&] {
        double norm = 0.0;
        double ident = 0.0;
        double zmc = 0.0;
        for (int k = 0; k < 10; ++k) {
            const LiouvilleDensity rho = liouville_density(random_density_matrix(n, rng), tol);
            norm = std::max(norm, std::abs(rho.integral_exact() - 1.0));
            ident = std::max(ident, liouville_identity_defect(rho));
            if (k < 2) {
                const auto est = mc_integrate(rho.as_field(), n, samples, rng);
                zmc = std::max(zmc, std::abs(est.mean - 1.0) / est.std_error);
            }
        }
        rec.check("liouville_normalization", ref::kDensities, 10, norm, 1e-12,
                  "rho = n(n+1) tr(sigma p) - n, oracle path");
        rec.check("liouville_expectation_identity", ref::kDensities, 10, ident, 1e-12,
                  "int f_A rho dnu = tr(sigma A) over a Hermitian basis");
        rec.check("liouville_normalization_mc", ref::kDensities, 2, zmc, tol.mc_sigmas, "in standard errors");
    });

    rec.guarded("liouville_verbatim_constant", ref::kDensities, [&] {
        const LiouvilleDensity unit(random_density_matrix(n, rng), LiouvilleConstant::unit);
        const double defect = std::abs(unit.integral_exact() - 1.0);
        rec.check("liouville_verbatim_constant", ref::kDensities, 1, std::abs(defect - (dn - 1.0)), 1e-12,
                  "constant -1 integrates to n: normalization defect " + fmt(defect) + ", predicted n - 1 = " +
                      fmt(dn - 1.0));
    });

    rec.guarded("liouville_negative_values", ref::kDensities, [&] {
        const LiouvilleDensity rho(DensityMatrix::pure(ProjectivePoint::basis(n, 0)));
        const double at_peak = rho(ProjectivePoint::basis(n, 0));
        const double at_orth = rho(ProjectivePoint::basis(n, 1));
        rec.check("liouville_extreme_values", ref::kDensities, 2,
                  std::max(std::abs(at_peak - dn * dn), std::abs(at_orth + dn)), 1e-12,
                  "pure sigma: n^2 at p0, -n at an orthogonal point");
    });

    rec.guarded("liouville_basis_sum", ref::kBasisSum, [&] {
        double unit = 0.0;
        double normalized = 0.0;
        for (int k = 0; k < 100; ++k) {
            const OrthonormalBasis basis = random_orthonormal_basis(n, rng);
            const ProjectivePoint p = haar_random_point(n, rng);
            unit = std::max(unit, std::abs(liouville_basis_sum(basis, p, LiouvilleConstant::unit) - dn * dn));
            normalized = std::max(normalized, std::abs(liouville_basis_sum(basis, p, LiouvilleConstant::normalized) - dn));
        }
        rec.check("liouville_basis_sum_unit", ref::kBasisSum, 100, unit, 1e-9, "constant -1: sum equals n^2");
        rec.check("liouville_basis_sum_normalized", ref::kBasisSum, 100, normalized, 1e-9, "constant -n: sum equals n");
    });

    rec.guarded("reproducing_observable", ref::kReproducing, [&] {
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            const auto mu = MembershipFunction::from_operator(random_effect(n, rng));
            worst = std::max(worst, dirac_reproducing_check(mu, haar_random_point(n, rng), samples, rng).defect);
        }
        rec.check("reproducing_observable", ref::kReproducing, 10, worst, 1e-9, "oracle path");
    });

    rec.guarded("reproducing_nonobservable", ref::kReproducing, [&] {
        RealVector z = RealVector::Zero(n);
        z(0) = 1.0;
        z(1) = -1.0;
        const HermitianOperator sz = HermitianOperator::diagonal(z);
        const ProjectivePoint p0 = ProjectivePoint::basis(n, 0);
        const ProjectivePoint q = haar_random_point(n, rng);
        struct Item {
            std::string name;
            MembershipFunction mu;
            ProjectivePoint at;
        };
        std::vector<Item> corpus{
            {"tr(Zp)^2", MembershipFunction::pointwise(n, [sz](const ProjectivePoint& p) {
                 return std::pow(sz.expectation(p.matrix()), 2);
             }), p0},
            {"tr(qp)^2", MembershipFunction::pointwise(n, [q](const ProjectivePoint& p) {
                 return std::pow(q.expectation(p.matrix()), 2);
             }), q},
            {"tr(qp)^3", MembershipFunction::pointwise(n, [q](const ProjectivePoint& p) {
                 return std::pow(q.expectation(p.matrix()), 3);
             }), q},
        };
        std::size_t failures = 0;
        std::string details = "defect - " + fmt(tol.mc_sigmas) + " std errors must exceed 0.05:";
        for (const auto& item : corpus) {
            const auto d = dirac_reproducing_check(item.mu, item.at, samples, rng);
            failures += !(d.defect - tol.mc_sigmas * d.std_error > 0.05);
            details += " " + item.name + " " + fmt(d.defect) + " (se " + fmt(d.std_error) + ");";
        }
        rec.count("reproducing_nonobservable", ref::kReproducing, corpus.size(), failures, details);
    });

    rec.guarded("fuzzy_event_probability", ref::kEventProbability, [&] {
        const DensityMatrix sigma = random_density_matrix(n, rng);
        const HermitianOperator t = random_effect(n, rng);
        const LiouvilleDensity rho(sigma);
        const auto mu = MembershipFunction::from_operator(t);
        const auto exact = fuzzy_event_probability(mu, rho, samples, rng, tol);
        const double target = sigma.expectation(t.matrix());
        const auto wrapped = MembershipFunction::pointwise(n, [t](const ProjectivePoint& p) { return t.expectation(p.matrix()); });
        const auto mc = fuzzy_event_probability(wrapped, rho, samples, rng, tol);
        rec.check("fuzzy_event_probability_exact", ref::kEventProbability, 1, std::abs(exact.mean - target), 1e-12,
                  "operator-generated fast path equals tr(sigma T)");
        rec.check("fuzzy_event_probability_mc", ref::kEventProbability, samples,
                  std::abs(mc.mean - target) / mc.std_error, tol.mc_sigmas, "pointwise path, in standard errors");
    });
}

inline void suite_star(SuiteContext& cx, Rng& rng, Recorder& rec) {
    const Index n = cx.n;
    const Tolerances& tol = cx.tol;
    constexpr std::size_t kTrials = 1000;
    constexpr std::size_t kCorpus = 200;

    rec.guarded("star_closed_vs_geometric", ref::kStar, [&] {
        double worst = 0.0;
        double conj = 0.0;
        for (std::size_t k = 0; k < kTrials; ++k) {
            const auto a = FuzzyEventQL::from_operator(random_effect(n, rng));
            const auto b = FuzzyEventQL::from_operator(random_effect(n, rng));
            const ProjectivePoint p = haar_random_point(n, rng);
            const StarField ab = star(a, b);
            worst = std::max(worst, std::abs(ab(p) - ab.geometric(p, tol)));
            conj = std::max(conj, std::abs(ab(p) - std::conj(star(b, a)(p))));
        }
        rec.check("star_closed_vs_geometric", ref::kStar, kTrials, worst, tol.star,
                  "tr(T1 T2 p) vs fg + (i/2){f,g} + (1/2)g(X_f, X_g)");
        rec.check("star_conjugation_symmetry", ref::kStar, kTrials, conj, tol.star);
    });

    if (!cx.operators.empty()) {
        rec.guarded("operators_star_identity", ref::kStar, [&] {
            double worst = 0.0;
            std::size_t trials = 0;
            for (const auto& a : cx.operators) {
                for (const auto& b : cx.operators) {
                    const StarField ab(FuzzyEventQL::from_operator(to_effect(a)), FuzzyEventQL::from_operator(to_effect(b)));
                    for (int k = 0; k < 20; ++k, ++trials) {
                        const ProjectivePoint p = haar_random_point(n, rng);
                        worst = std::max(worst, std::abs(ab(p) - ab.geometric(p, tol)));
                    }
                }
            }
            rec.check("operators_star_identity", ref::kStar, trials, worst, tol.star,
                      "supplied operators rescaled into [0, I]");
        });
    }

    rec.guarded("star_idempotent_classification", ref::kStar, [&] {
        std::size_t wrong = 0;
        for (std::size_t k = 0; k < kCorpus; ++k) {
            const auto kind = k % 4;
            HermitianOperator t = HermitianOperator::zero(n);
            bool truth = false;
            if (kind == 0) {
                t = random_projector(n, static_cast<Index>(k / 4) % (n + 1), rng);
                truth = true;
            } else if (kind == 1) {
                const double eps = std::pow(10.0, -2.0 - static_cast<double>((k / 4) % 3));
                const Projector p = random_projector(n, 1 + static_cast<Index>(k / 4) % n, rng);
                t = HermitianOperator::from_matrix((1.0 - eps) * p.matrix() + eps * random_effect(n, rng).matrix());
            } else if (kind == 2) {
                t = random_effect(n, rng);
            } else {
                t = random_projector(n, 1 + static_cast<Index>(k / 4) % n, rng).scaled(0.5);
            }
            const auto ev = FuzzyEventQL::from_operator(t);
            std::vector<HermitianOperator> gens{t};
            const ProbeSet probes = make_probe_set(n, gens, rng);
            try {
                wrong += is_idempotent(ev, probes, tol) != truth;
            } catch (const CertificationError&) {
                ++wrong;
            }
        }
        rec.count("star_idempotent_classification", ref::kStar, kCorpus, wrong,
                  "projectors, perturbed projectors (1e-2..1e-4), effects, half projectors");
    });

    rec.guarded("star_pair_classification", ref::kStarCompat, [&] {
        std::size_t compat_wrong = 0;
        std::size_t orth_wrong = 0;
        std::size_t compatible_pairs = 0;
        double jm = 0.0;
        for (std::size_t k = 0; k < kCorpus; ++k) {
            const Matrix u = random_unitary(n, rng);
            Projector a = Projector::zero(n);
            Projector b = Projector::zero(n);
            bool commuting = false;
            bool orthogonal = false;
            switch (k % 4) {
                case 0: {  // disjoint coordinate sets in a common basis
                    std::vector<Index> sa;
                    std::vector<Index> sb;
                    for (Index i = 0; i < n; ++i) {
                        (rng.uniform() < 0.5 ? sa : sb).push_back(i);
                    }
                    a = projector_on_columns(u, sa);
                    b = projector_on_columns(u, sb);
                    commuting = orthogonal = true;
                    break;
                }
                case 1:  // overlapping coordinate sets in a common basis
                    a = projector_on_columns(u, {0});
                    b = projector_on_columns(u, random_subset(n, rng, 1));
                    b = lattice_join(a, b);
                    commuting = true;
                    break;
                default:  // independent random projectors
                    a = random_projector(n, 1 + static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(n - 1)), rng);
                    b = random_projector(n, 1 + static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(n - 1)), rng);
                    break;
            }
            const auto ea = FuzzyEventQL::from_projector(a);
            const auto eb = FuzzyEventQL::from_projector(b);
            std::vector<HermitianOperator> gens{a, b};
            const ProbeSet probes = make_probe_set(n, gens, rng);
            try {
                compat_wrong += is_compatible(ea, eb, probes, tol) != commuting;
            } catch (const CertificationError&) {
                ++compat_wrong;
            }
            try {
                orth_wrong += is_orthogonal(ea, eb, probes, tol) != orthogonal;
            } catch (const CertificationError&) {
                ++orth_wrong;
            }
            if (commuting) {
                ++compatible_pairs;
                const JoinMeet r = join_meet_membership(ea, eb, probes, tol);
                jm = std::max({jm, max_abs(r.meet.matrix() - lattice_meet(a, b).matrix()),
                               max_abs(r.join.matrix() - lattice_join(a, b).matrix())});
            }
        }
        rec.count("star_compatibility_classification", ref::kStarCompat, kCorpus, compat_wrong,
                  "probe decision vs construction, certified by the commutator norm");
        rec.count("star_orthogonality_classification", ref::kStarCompat, kCorpus, orth_wrong,
                  "probe decision vs construction, certified by the product norm");
        rec.check("star_join_meet_vs_lattice", ref::kStarJoinMeet, compatible_pairs, jm, tol.order,
                  "mu_P + mu_Q - mu_P * mu_Q and mu_P * mu_Q vs lattice join and meet");
    });

    rec.guarded("order_isomorphism", ref::kOrderIso, [&] {
        std::size_t wrong = 0;
        std::size_t ordered = 0;
        for (std::size_t k = 0; k < kTrials; ++k) {
            Projector t = Projector::zero(n);
            Projector s = Projector::zero(n);
            if (k % 2 == 0) {
                const Matrix u = random_unitary(n, rng);
                const std::vector<Index> big = random_subset(n, rng, 1);
                std::vector<Index> small;
                for (Index i : big) {
                    if (rng.uniform() < 0.5) {
                        small.push_back(i);
                    }
                }
                t = projector_on_columns(u, small);
                s = projector_on_columns(u, big);
            } else {
                t = random_projector(n, static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(n + 1)), rng);
                s = random_projector(n, static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(n + 1)), rng);
            }
            const bool by_range = max_abs(s.matrix() * t.matrix() - t.matrix()) < tol.order;
            const bool by_operator = projector_leq(t, s, tol);
            const bool by_fuzzy = fuzzy_leq(order_iso_h(t).membership(), order_iso_h(s).membership(), {}, tol);
            const bool round_trip = order_iso_h_inverse(order_iso_h(t)).matrix() == t.matrix();
            ordered += by_range;
            wrong += (by_range != by_operator) || (by_fuzzy != by_operator) || !round_trip;
        }
        rec.count("order_isomorphism", ref::kOrderIso, kTrials, wrong,
                  std::to_string(ordered) + " ordered pairs; ST = T vs projector order vs fuzzy inclusion");
    });
}

inline void logic_family_checks(const std::string& prefix, std::span<const FuzzyEventQL> family, const Tolerances& tol,
                                Rng& rng, Recorder& rec, bool expect_spin_witness) {
    rec.guarded(prefix + "_structure", ref::kStates, [&] {
        const QuantumLogicStructure L = build_logic(family, rng, tol);
        const auto issues = L.validate();
        rec.count(prefix + "_structure", ref::kStates, L.size(), issues.size(),
                  std::to_string(L.size()) + " elements after closure");

        const LogicAxiomReport ax = check_quantum_logic_axioms(L, tol);
        rec.count(prefix + "_bounded_orthocomplemented", ref::kLogic, L.size(),
                  static_cast<std::size_t>(!ax.bounded) + !ax.involution + !ax.order_reversing,
                  "0 <= p <= I, involution, order reversal");
        rec.check(prefix + "_complement_laws", ref::kLogic, L.size(), ax.complement_law_error, tol.order,
                  "p meet not p = 0, p join not p = I");
        rec.check(prefix + "_orthomodular", ref::kLogic, ax.orthomodular_pairs, ax.orthomodular_max_error, tol.order,
                  std::to_string(ax.orthomodular_outside_family) + " intermediate meets outside the family");
        rec.count(prefix + "_sigma_orthocomplete", ref::kStates, ax.orthogonal_families, ax.sigma_missing_joins,
                  "orthogonal subfamilies up to size min(6, n)");

        bool all_compatible = true;
        std::size_t relation_wrong = 0;
        for (std::size_t i = 0; i < L.size(); ++i) {
            for (std::size_t j = 0; j < L.size(); ++j) {
                all_compatible = all_compatible && L.compat[i][j];
                const Matrix& a = L.elements[i].matrix();
                const Matrix& b = L.elements[j].matrix();
                relation_wrong += L.compat[i][j] != (max_abs(commutator(a, b)) < tol.operator_norm);
                relation_wrong += L.orth[i][j] != (max_abs(a * b) < tol.operator_norm);
            }
        }
        rec.count(prefix + "_relations_vs_operators", ref::kStarCompat, L.size() * L.size(), relation_wrong,
                  "compat iff commuting, orth iff zero product");

        std::string wtext = ax.witnesses.empty() ? "none" : witness_text(L, ax.witnesses.front());
        bool spin_found = false;
        for (const auto& w : ax.witnesses) {
            const std::string p = L.elements[w.p].label();
            const std::string q = L.elements[w.q].label();
            const std::string r = L.elements[w.r].label();
            if (w.meet_over_join && p == "e1" && ((q == "+" && r == "-") || (q == "-" && r == "+"))) {
                spin_found = true;
                wtext = witness_text(L, w);
            }
        }
        const std::string details = std::string(ax.distributive ? "distributive" : "not distributive") + "; " +
                                    std::to_string(ax.witnesses.size()) + " witnesses recorded; witness " + wtext;
        if (expect_spin_witness) {
            rec.count(prefix + "_distributivity_witness", ref::kLogic, L.size(), spin_found ? 0 : 1, details);
        } else {
            rec.count(prefix + "_distributive_iff_compatible", ref::kLogic, L.size(),
                      ax.distributive == all_compatible ? 0 : 1, details);
        }

        double gpm = 0.0;
        for (int k = 0; k < 5; ++k) {
            const auto report = check_gpm(GeneralizedProbabilityMeasure::from_density(random_density_matrix(L.dim(), rng)), L, tol);
            gpm = std::max({gpm, report.normalization_error, report.range_violation, report.max_additivity_error});
        }
        rec.check(prefix + "_gpm_density_states", ref::kStates, 5, gpm, tol.order,
                  "sigma(P) = tr(rho P): normalization, range, additivity");
        const auto one = check_gpm({"one", [](const Projector&) { return 1.0; }}, L, tol);
        rec.count(prefix + "_gpm_constant_one_rejected", ref::kStates, 1,
                  one.max_additivity_error >= 1.0 - tol.order ? 0 : 1,
                  "sigma = 1 additivity error " + fmt(one.max_additivity_error));

        const auto states = point_states(L, rng);
        const auto ord = ordering_set_check(states, L, tol);
        double point_additivity = 0.0;
        for (const auto& s : states) {
            point_additivity = std::max(point_additivity, check_gpm(s, L, tol).max_additivity_error);
        }
        rec.count(prefix + "_ordering_set", ref::kStates, ord.unordered_pairs, ord.unwitnessed.size(),
                  std::to_string(ord.witnessed) + " of " + std::to_string(ord.unordered_pairs) +
                      " unordered pairs witnessed by point states; max order violation " + fmt(ord.max_order_violation));
        rec.check(prefix + "_point_state_additivity", ref::kStates, states.size(), point_additivity, tol.order);
    });
}

inline void suite_logic(SuiteContext& cx, Rng& rng, Recorder& rec) {
    const Tolerances& tol = cx.tol;
    const auto spin = spin_family();
    logic_family_checks("spin2", spin, tol, rng, rec, true);
    const Index nd = std::min<Index>(cx.n, 5);
    const auto diag = diagonal_family(nd);
    logic_family_checks("diagonal" + std::to_string(nd), diag, tol, rng, rec, false);
    if (!cx.family.empty()) {
        bool projectors = std::all_of(cx.family.begin(), cx.family.end(), [](const auto& e) { return e.is_projector(); });
        if (projectors) {
            const bool spin_like = std::any_of(cx.family.begin(), cx.family.end(), [](const auto& e) { return e.label() == "e1"; });
            logic_family_checks("family", cx.family, tol, rng, rec, spin_like && cx.family.front().dim() == 2);
        } else {
            rec.count("family_structure", ref::kStates, cx.family.size(), 1,
                      "family contains effects; the projector logic needs projector entries");
        }
    }
}

inline void suite_tnorm(SuiteContext& cx, Rng& rng, Recorder& rec) {
    const Tolerances& tol = cx.tol;
    constexpr int kGrid = 101;
    for (const auto& t : {TNorm::lukasiewicz(), TNorm::product()}) {
        const auto r = tnorm_axiom_check(t, kGrid, rng);
        const double worst = std::max({r.commutativity.max_violation, r.monotonicity.max_violation,
                                       r.associativity.max_violation, r.unit.max_violation});
        rec.check("tnorm_axioms_" + t.name, ref::kTNormAxioms, r.evaluations, worst, tol.tnorm,
                  "commutativity " + fmt(r.commutativity.max_violation) + ", monotonicity " +
                      fmt(r.monotonicity.max_violation) + ", associativity " + fmt(r.associativity.max_violation) +
                      ", unit " + fmt(r.unit.max_violation));
    }
    const TNorm sq = TNorm::custom("min_squared", [](double x, double y) { return std::pow(std::min(x, y), 2); });
    const auto r = tnorm_axiom_check(sq, kGrid, rng);
    rec.check("tnorm_counterexample_unit", ref::kTNormAxioms, r.evaluations,
              std::abs(r.unit.max_violation - 0.25) + std::abs(r.unit.witness[0] - 0.5), tol.tnorm,
              "t(x,y) = min(x,y)^2: unit violation " + fmt(r.unit.max_violation) + " at x = " + fmt(r.unit.witness[0]));

    double de_morgan = 0.0;
    double minnorm = 0.0;
    double boundary = 0.0;
    std::size_t trials = 0;
    for (const auto& t : {TNorm::lukasiewicz(), TNorm::product()}) {
        for (int i = 0; i < kGrid; ++i) {
            for (int j = 0; j < kGrid; ++j, ++trials) {
                const double x = i / 100.0;
                const double y = j / 100.0;
                de_morgan = std::max(de_morgan, std::abs(t.conorm(x, y) - (1.0 - t(1.0 - x, 1.0 - y))));
                boundary = std::max(boundary, std::abs(t(x, 0.0)));
                if (t.kind == TNorm::Kind::lukasiewicz) {
                    minnorm = std::max({minnorm, std::abs(t.conorm(x, y) - std::min(x + y, 1.0)),
                                        std::abs(t(x, y) - std::max(x + y - 1.0, 0.0))});
                }
            }
        }
    }
    rec.check("tconorm_de_morgan", ref::kFuzzy, trials, de_morgan, tol.tnorm);
    rec.check("tnorm_zero_boundary", ref::kFuzzy, trials, boundary, tol.tnorm, "t(x, 0) = 0");
    rec.check("lukasiewicz_minnorm_formulas", ref::kMinNorm, trials / 2, minnorm, tol.tnorm,
              "conorm equals min(x + y, 1)");
}

inline void suite_dynamics(SuiteContext& cx, Rng& rng, Recorder& rec) {
    const Index n = cx.n;
    const Tolerances& tol = cx.tol;
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    std::vector<double> grid;
    for (int k = 0; k <= 64; ++k) {
        grid.push_back(kTwoPi * k / 64.0);
    }
    RealVector zdiag(2);
    zdiag << 1.0, -1.0;
    const HermitianOperator sz = HermitianOperator::diagonal(zdiag);
    Vector plus(2);
    plus << 1.0, 1.0;
    const ProjectivePoint p_plus = ProjectivePoint::from_vector(plus);

    rec.guarded("hamilton_vs_schrodinger_sigma_z", ref::kTangent, [&] {
        const FlowResult exact = schrodinger_flow(sz, p_plus, grid, tol);
        const FlowResult rk = hamilton_flow(sz, p_plus, grid, 1e-3, tol);
        double unitarity = 0.0;
        for (double d : exact.defect_series) {
            unitarity = std::max(unitarity, d);
        }
        double energy = 0.0;
        double purity = 0.0;
        for (const auto& p : rk.trajectory) {
            energy = std::max(energy, std::abs(sz.expectation(p.matrix()) - sz.expectation(p_plus.matrix())));
            purity = std::max(purity, std::abs((p.matrix() * p.matrix()).trace().real() - 1.0));
        }
        double projection = 0.0;
        for (double d : rk.defect_series) {
            projection = std::max(projection, d);
        }
        rec.check("schrodinger_unitarity", ref::kTangent, grid.size(), unitarity, 1e-12);
        rec.check("hamilton_vs_schrodinger_sigma_z", ref::kTangent, grid.size(), max_trajectory_deviation(exact, rk),
                  1e-8, "H = sigma_z, p0 = |+><+|, dt = 1e-3, t in [0, 2 pi]");
        rec.check("energy_conservation", ref::kTangent, grid.size(), energy, 1e-9);
        rec.check("purity_preservation", ref::kTangent, grid.size(), purity, 1e-8,
                  "largest per-step projection defect " + fmt(projection));
    });

    rec.guarded("rk4_order", ref::kTangent, [&] {
        const FlowResult exact = schrodinger_flow(sz, p_plus, grid, tol);
        const double e1 = max_trajectory_deviation(exact, hamilton_flow(sz, p_plus, grid, 1e-2, tol));
        const double e2 = max_trajectory_deviation(exact, hamilton_flow(sz, p_plus, grid, 5e-3, tol));
        const double ratio = e1 / e2;
        rec.check("rk4_order", ref::kTangent, 2, std::max({0.0, 8.0 - ratio, ratio - 32.0}), 0.0,
                  "defect ratio " + fmt(ratio) + " for dt 1e-2 -> 5e-3 (" + fmt(e1) + " / " + fmt(e2) + ")");
    });

    rec.guarded("hamilton_vs_schrodinger_random", ref::kTangent, [&] {
        HermitianOperator h = random_hermitian(n, 1.0, rng);
        h = h.scaled(1.0 / operator_norm(h));
        const ProjectivePoint p0 = haar_random_point(n, rng);
        const HermitianOperator a = random_hermitian(n, 1.0, rng);
        const FlowResult exact = schrodinger_flow(h, p0, grid, tol);
        const FlowResult rk = hamilton_flow(h, p0, grid, 1e-3, tol);
        double transport = 0.0;
        double energy = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            transport = std::max(transport, std::abs(a.expectation(rk.trajectory[k].matrix()) -
                                                     a.expectation(exact.trajectory[k].matrix())));
            energy = std::max(energy, std::abs(h.expectation(rk.trajectory[k].matrix()) - h.expectation(p0.matrix())));
        }
        rec.check("hamilton_vs_schrodinger_random", ref::kTangent, grid.size(), max_trajectory_deviation(exact, rk), 1e-8,
                  "random H with ||H|| = 1");
        rec.check("expectation_transport", ref::kTangent, grid.size(), transport, 1e-7);
        rec.check("energy_conservation_random", ref::kTangent, grid.size(), energy, 1e-9);

        double heis = 0.0;
        constexpr double kStep = 1e-3;
        for (double t : {0.5, 1.0, 1.5, 2.0}) {
            const std::vector<double> local{t - kStep, t, t + kStep};
            const FlowResult f = hamilton_flow(h, p0, local, 1e-3, tol);
            const double deriv = (a.expectation(f.trajectory[2].matrix()) - a.expectation(f.trajectory[0].matrix())) /
                                 (2.0 * kStep);
            heis = std::max(heis, std::abs(deriv - poisson_bracket(a, h, f.trajectory[1], tol)));
        }
        rec.check("heisenberg_poisson_form", ref::kTangent, 4, heis, 1e-5, "d/dt f_A = {f_A, f_H}, central differences");
    });

    rec.guarded("liouville_transport", ref::kTangent, [&] {
        std::vector<ProjectivePoint> probes;
        for (int k = 0; k < 64; ++k) {
            probes.push_back(haar_random_point(n, rng));
        }
        const HermitianOperator h = random_hermitian(n, 1.0, rng);
        double worst = liouville_transport_check(random_density_matrix(n, rng), h, 1.0, probes);
        worst = std::max(worst, liouville_transport_check(DensityMatrix::maximally_mixed(n), h, 1.0, probes));
        rec.check("liouville_transport", ref::kTangent, 2 * probes.size(), worst, 1e-10,
                  "rho_{sigma_t}(p) = rho_{sigma_0}(U^dagger p U)");
    });
}

inline FunctionFamily classical_indicator_family(std::size_t atoms, std::size_t points_per_atom, bool drop_one = false) {
    FunctionFamily fam;
    for (std::size_t mask = 0; mask < (std::size_t{1} << atoms); ++mask) {
        if (drop_one && mask == (std::size_t{1} << atoms) - 2) {
            continue;
        }
        std::vector<double> f(atoms * points_per_atom);
        for (std::size_t x = 0; x < f.size(); ++x) {
            f[x] = (mask >> (x / points_per_atom)) & 1U ? 1.0 : 0.0;
        }
        fam.push_back(std::move(f));
    }
    return fam;
}

inline void suite_mik(SuiteContext& cx, Rng& rng, Recorder& rec) {
    const Tolerances& tol = cx.tol;
    rec.guarded("mik_classical_indicators", ref::kFunctionFamilies, [&] {
        const auto r = theorem_mik_check(classical_indicator_family(4, 3), tol);
        rec.count("mik_classical_indicators", ref::kFunctionFamilies, r.family_size, r.boolean() ? 0 : 1,
                  "indicators of a 4-atom algebra on 12 points: " + std::string(r.boolean() ? "Boolean" : "not Boolean"));
    });
    rec.guarded("mik_projector_instance", ref::kFunctionFamilies, [&] {
        std::vector<FuzzyEventQL> events = spin_family();
        events.push_back(FuzzyEventQL::from_projector(Projector::zero(2), "0"));
        events.push_back(FuzzyEventQL::from_projector(Projector::identity(2), "I"));
        const ProbeSet probes = make_probe_set(events, rng);
        FunctionFamily fam;
        for (const auto& e : events) {
            std::vector<double> f;
            for (const auto& p : probes.points) {
                f.push_back(e(p));
            }
            fam.push_back(std::move(f));
        }
        const auto r = theorem_mik_check(fam, tol);
        rec.count("mik_projector_instance", ref::kFunctionFamilies, r.family_size, r.passed() ? 0 : 1,
                  "spin family memberships on " + std::to_string(probes.points.size()) + " probe points; " +
                      (r.boolean() ? "Boolean" : "not Boolean") +
                      (r.failures.empty() ? "" : "; " + r.failures.front()));
    });
    rec.guarded("mik_missing_complement", ref::kFunctionFamilies, [&] {
        const auto r = theorem_mik_check(classical_indicator_family(3, 2, true), tol);
        rec.count("mik_missing_complement", ref::kFunctionFamilies, r.family_size,
                  (r.has_zero && !r.complement_closed && !r.conclusions_checked) ? 0 : 1,
                  "hypothesis witness: " + r.hypothesis_witness);
    });
}

inline void main_theorem_record(const std::string& name, const MainTheoremReport& r, const Tolerances& tol,
                                Recorder& rec, bool ok, const std::string& extra) {
    std::string details = "rule " + r.rule + ", " + std::to_string(r.idempotent_count) + " idempotents of " +
                          std::to_string(r.family_size) + "; hypotheses " + (r.hypotheses_hold() ? "hold" : "fail") +
                          "; conclusions " + (r.conclusions_hold(tol.order) ? "hold" : "fail") + "; " +
                          std::to_string(r.sublattices.size()) + " Boolean sublattices, " +
                          std::to_string(r.commuting_subfamilies.size()) + " commuting subfamilies";
    if (!r.witnesses.empty()) {
        details += "; witness: " + r.witnesses.front();
    }
    if (!extra.empty()) {
        details += "; " + extra;
    }
    rec.count(name, ref::kDeformed, r.family_size, ok ? 0 : 1, details);
}

inline void suite_main_theorem(SuiteContext& cx, Rng& rng, Recorder& rec) {
    const Tolerances& tol = cx.tol;
    rec.guarded("main_diagonal_family", ref::kDeformed, [&] {
        const Index nd = std::min<Index>(cx.n, 4);
        const auto fam = diagonal_family(nd);
        const auto r = theorem_main_harness(fam, StarRule::operator_product(), rng, tol);
        bool whole = false;
        for (const auto& s : r.sublattices) {
            whole = whole || s.size() == r.idempotent_count;
        }
        main_theorem_record("main_diagonal_family", r, tol, rec, r.passed(tol.order) && whole && r.logic.boolean(),
                            whole ? "whole family is a Boolean sublattice" : "whole family not detected");
    });
    rec.guarded("main_spin_family", ref::kDeformed, [&] {
        const auto r = theorem_main_harness(spin_family(), StarRule::operator_product(), rng, tol);
        const bool exact = r.sublattices == r.commuting_subfamilies;
        main_theorem_record("main_spin_family", r, tol, rec, r.passed(tol.order) && exact,
                            exact ? "Boolean sublattices are exactly the commuting subfamilies"
                                  : "Boolean sublattices differ from the commuting subfamilies");
    });
    rec.guarded("main_pointwise_degenerate", ref::kDeformed, [&] {
        const auto r = theorem_main_harness(spin_family(), StarRule::pointwise_product(), rng, tol);
        main_theorem_record("main_pointwise_degenerate", r, tol, rec, r.degenerate() && r.idempotent_count == 2,
                            "only the empty and full events are idempotent");
    });
    if (!cx.family.empty()) {
        rec.guarded("main_family_file", ref::kDeformed, [&] {
            const auto r = theorem_main_harness(cx.family, StarRule::operator_product(), rng, tol);
            main_theorem_record("main_family_file", r, tol, rec, r.hypotheses_hold() ? r.passed(tol.order) : true,
                                r.hypotheses_hold() ? "" : "hypotheses fail, conclusions skipped");
        });
    }
}

}  // namespace detail

/// Expands "all" and rejects unknown names; order follows suite_names().
inline std::vector<std::string> resolve_suites(const std::vector<std::string>& requested) {
    std::vector<std::string> out;
    for (const auto& name : requested) {
        if (name == "all") {
            return suite_names();
        }
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
            throw InvalidArgument("unknown suite '" + name + "'");
        }
    }
    for (const auto& name : suite_names()) {
        if (std::find(requested.begin(), requested.end(), name) != requested.end()) {
            out.push_back(name);
        }
    }
    return out;
}

/// Runs the configured suites; file-ingestion failures surface as IngestionError.
inline std::vector<CheckRecord> run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    const Tolerances tol = cfg.effective_tolerances();
    const Tolerances saved = tolerances();
    tolerances() = tol;
    set_thread_count(cfg.threads);

    detail::SuiteContext cx{cfg, tol, cfg.dim, {}, {}};
    std::vector<CheckRecord> records;
    try {
        for (const auto& path : cfg.operator_paths) {
            cx.operators.push_back(load_matrix(path, tol));
            if (cx.operators.back().dim() != cx.n) {
                throw IngestionError(path + ": operator dimension differs from --dim");
            }
        }
        if (cfg.family_path) {
            cx.family = load_family(*cfg.family_path, tol);
        }
        detail::Recorder rec(records);
        const auto& all = suite_names();
        for (const auto& name : resolve_suites(cfg.suites)) {
            const auto index = static_cast<std::uint64_t>(std::find(all.begin(), all.end(), name) - all.begin());
            Rng rng = Rng::derive(cfg.seed, index);
            if (name == "geometry") {
                detail::suite_geometry(cx, rng, rec);
            } else if (name == "measure") {
                detail::suite_measure(cx, rng, rec);
            } else if (name == "star") {
                detail::suite_star(cx, rng, rec);
            } else if (name == "logic") {
                detail::suite_logic(cx, rng, rec);
            } else if (name == "tnorm") {
                detail::suite_tnorm(cx, rng, rec);
            } else if (name == "dynamics") {
                detail::suite_dynamics(cx, rng, rec);
            } else if (name == "mik") {
                detail::suite_mik(cx, rng, rec);
            } else {
                detail::suite_main_theorem(cx, rng, rec);
            }
        }
    } catch (...) {
        tolerances() = saved;
        throw;
    }
    tolerances() = saved;
    return records;
}

inline Json config_to_json(const SuiteConfig& cfg) {
    Json tol = Json::object();
    for (const auto& [k, v] : cfg.tol_overrides) {
        tol[k] = v;
    }
    Json ops = Json::array();
    for (const auto& p : cfg.operator_paths) {
        ops.push_back(p);
    }
    return {{"dim", cfg.dim},
            {"n_samples", cfg.n_samples},
            {"seed", cfg.seed},
            {"tol_overrides", std::move(tol)},
            {"suites", cfg.suites},
            {"family", cfg.family_path ? Json(*cfg.family_path) : Json(nullptr)},
            {"operators", std::move(ops)}};
}

inline Json make_report(const std::vector<CheckRecord>& records, const SuiteConfig& cfg, const std::string& timestamp) {
    Json body = Json::array();
    std::size_t failed = 0;
    for (const auto& r : records) {
        body.push_back(to_json(r));
        failed += !r.passed;
    }
    return {{"header",
             {{"artifact", kArtifactName},
              {"version", kArtifactVersion},
              {"config", config_to_json(cfg)},
              {"timestamp", timestamp}}},
            {"records", std::move(body)},
            {"summary", {{"total", records.size()}, {"failed", failed}}}};
}

inline std::vector<CheckRecord> records_from_report(const Json& report) {
    std::vector<CheckRecord> out;
    for (const auto& j : report.at("records")) {
        out.push_back(record_from_json(j));
    }
    return out;
}

inline std::string serialize_report(const Json& report) { return report.dump(2) + "\n"; }

inline int exit_code(const std::vector<CheckRecord>& records) {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.passed; }) ? 0 : 1;
}

/**
 * Writes the report atomically (temporary file + rename). Returns the exit
 * code: 0 all passed, 1 some failed, 2 on I/O failure.
 */
inline int emit_report(const std::vector<CheckRecord>& records, const SuiteConfig& cfg, const std::string& timestamp,
                       const std::filesystem::path& path) {
    const std::string text = serialize_report(make_report(records, cfg, timestamp));
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out || !(out << text) || !out.flush()) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            return 2;
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        return 2;
    }
    return exit_code(records);
}

}  // namespace projlogic
