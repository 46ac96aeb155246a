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
 * Integration against the unitarily invariant probability measure nu on
 * P(H), exact first/second moment oracles, Liouville densities and
 * probabilities of fuzzy events.
 *
 * Exact moments (nu normalized to 1):
 *   int tr(A p) dnu            = tr A / n
 *   int tr(A p) tr(B p) dnu    = (tr A tr B + tr AB) / (n (n + 1))
 */

#pragma once

#include "projlogic/fuzzy_logic.hpp"

#include <cmath>
#include <vector>

namespace projlogic {

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

namespace detail {
inline constexpr std::size_t kMonteCarloChunk = 2048;

struct RunningMoments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        count += 1.0;
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }
    void merge(const RunningMoments& o) {
        if (o.count == 0.0) {
            return;
        }
        const double total = count + o.count;
        const double delta = o.mean - mean;
        mean += delta * o.count / total;
        m2 += o.m2 + delta * delta * count * o.count / total;
        count = total;
    }
};
}  // namespace detail

/**
 * Sample mean and standard error of `field` over Haar points. Samples are
 * drawn in fixed-size chunks with per-chunk generators derived from one
 * draw of `rng`, so the result does not depend on the thread count.
 */
inline MonteCarloEstimate mc_integrate(const ScalarField& field, Index n, std::size_t n_samples, Rng& rng) {
    if (n_samples < 100) {
        throw InvalidArgument("mc_integrate: need at least 100 samples");
    }
    const std::uint64_t base = rng.next_u64();
    const std::size_t chunks = (n_samples + detail::kMonteCarloChunk - 1) / detail::kMonteCarloChunk;
    std::vector<detail::RunningMoments> partial(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        Rng local = Rng::derive(base, c);
        const std::size_t begin = c * detail::kMonteCarloChunk;
        const std::size_t end = std::min(n_samples, begin + detail::kMonteCarloChunk);
        for (std::size_t i = begin; i < end; ++i) {
            partial[c].push(field(haar_random_point(n, local)));
        }
    });
    detail::RunningMoments total;
    for (const auto& part : partial) {
        total.merge(part);
    }
    const double variance = total.count > 1.0 ? total.m2 / (total.count - 1.0) : 0.0;
    return {total.mean, std::sqrt(std::max(0.0, variance) / total.count), n_samples};
}

inline double moment1_exact(const HermitianOperator& a) { return a.trace() / static_cast<double>(a.dim()); }

inline double moment2_exact(const HermitianOperator& a, const HermitianOperator& b) {
    require_same_dim(a.dim(), b.dim(), "moment2_exact");
    const double n = static_cast<double>(a.dim());
    const double tr_ab = trace_of_product(a.matrix(), b.matrix()).real();
    return (a.trace() * b.trace() + tr_ab) / (n * (n + 1.0));
}

/**
 * Offset in rho(p) = n (n + 1) tr(sigma p) - offset. `normalized` (offset n)
 * integrates to one; `unit` (offset 1) makes the density sum over any
 * orthonormal basis equal n^2 but integrates to n.
 */
enum class LiouvilleConstant { normalized, unit };

class LiouvilleDensity {
  public:
    LiouvilleDensity(DensityMatrix sigma, LiouvilleConstant constant = LiouvilleConstant::normalized)
        : sigma_(std::move(sigma)), constant_(constant) {}

    Index dim() const { return sigma_.dim(); }
    const DensityMatrix& generator() const { return sigma_; }
    LiouvilleConstant constant() const { return constant_; }

    double offset() const {
        return constant_ == LiouvilleConstant::normalized ? static_cast<double>(dim()) : 1.0;
    }
    double scale() const {
        const double n = static_cast<double>(dim());
        return n * (n + 1.0);
    }

    double operator()(const ProjectivePoint& p) const {
        return scale() * sigma_.expectation(p.matrix()) - offset();
    }

    /// int rho dnu, from the first-moment oracle.
    double integral_exact() const { return scale() * moment1_exact(sigma_) - offset(); }

    /// int tr(A p) rho(p) dnu, from the moment oracles.
    double expectation_exact(const HermitianOperator& a) const {
        return scale() * moment2_exact(sigma_, a) - offset() * moment1_exact(a);
    }

    ScalarField as_field() const {
        return [self = *this](const ProjectivePoint& p) { return self(p); };
    }

  private:
    DensityMatrix sigma_;
    LiouvilleConstant constant_;
};

/// Largest violation of the two defining identities over a spanning set of A.
inline double liouville_identity_defect(const LiouvilleDensity& rho) {
    double defect = std::abs(rho.integral_exact() - 1.0);
    for (const auto& b : hermitian_basis(rho.dim())) {
        const auto a = HermitianOperator::from_matrix(b);
        defect = std::max(defect, std::abs(rho.expectation_exact(a) - rho.generator().expectation(a.matrix())));
    }
    return defect;
}

/**
 * rho_sigma(p) = n (n + 1) tr(sigma p) - n. Both defining identities are
 * certified through the oracles on a basis of Hermitian operators, which by
 * linearity covers every A.
 */
inline LiouvilleDensity liouville_density(const DensityMatrix& sigma, const Tolerances& tol = tolerances()) {
    LiouvilleDensity rho(sigma, LiouvilleConstant::normalized);
    const double defect = liouville_identity_defect(rho);
    if (defect > 1e3 * tol.herm) {
        throw CertificationError("liouville_density: defining identities fail, defect " + std::to_string(defect));
    }
    return rho;
}

/// sum_i rho_{p_i}(p) over the points of an orthonormal basis.
inline double liouville_basis_sum(const OrthonormalBasis& basis, const ProjectivePoint& p, LiouvilleConstant constant) {
    double sum = 0.0;
    for (Index i = 0; i < basis.dim(); ++i) {
        sum += LiouvilleDensity(DensityMatrix::pure(basis.point(i)), constant)(p);
    }
    return sum;
}

namespace detail {
inline void require_normalized(const MonteCarloEstimate& norm, double sigmas) {
    const double band = sigmas * norm.std_error;
    if (std::abs(norm.mean - 1.0) > std::max(band, 1e-12)) {
        throw InvalidArgument("fuzzy_event_probability: density does not integrate to 1");
    }
}
}  // namespace detail

/**
 * P(A) = int mu_A rho dnu. Exact (tr(sigma T)) when mu_A is
 * operator-generated; Monte Carlo otherwise.
 */
inline MonteCarloEstimate fuzzy_event_probability(const MembershipFunction& mu, const LiouvilleDensity& rho,
                                                  std::size_t n_samples, Rng& rng,
                                                  const Tolerances& tol = tolerances()) {
    require_same_dim(mu.dim(), rho.dim(), "fuzzy_event_probability");
    if (std::abs(rho.integral_exact() - 1.0) > 1e3 * tol.herm) {
        throw InvalidArgument("fuzzy_event_probability: density does not integrate to 1");
    }
    if (mu.operator_generated()) {
        return {rho.expectation_exact(mu.generator()), 0.0, 0};
    }
    return mc_integrate([&](const ProjectivePoint& p) { return mu(p) * rho(p); }, mu.dim(), n_samples, rng);
}

/// General density: normalization is itself checked by Monte Carlo.
inline MonteCarloEstimate fuzzy_event_probability(const MembershipFunction& mu, const ScalarField& density,
                                                  std::size_t n_samples, Rng& rng,
                                                  const Tolerances& tol = tolerances()) {
    detail::require_normalized(mc_integrate(density, mu.dim(), n_samples, rng), tol.mc_sigmas);
    return mc_integrate([&](const ProjectivePoint& p) { return mu(p) * density(p); }, mu.dim(), n_samples, rng);
}

struct ReproducingDefect {
    double defect = 0.0;
    double std_error = 0.0;
    bool exact = false;
};

/// |int mu rho_{p0} dnu - mu(p0)|.
inline ReproducingDefect dirac_reproducing_check(const MembershipFunction& mu, const ProjectivePoint& p0,
                                                 std::size_t n_samples, Rng& rng) {
    require_same_dim(mu.dim(), p0.dim(), "dirac_reproducing_check");
    const LiouvilleDensity rho(DensityMatrix::pure(p0));
    const double target = mu(p0);
    if (mu.operator_generated()) {
        return {std::abs(rho.expectation_exact(mu.generator()) - target), 0.0, true};
    }
    const auto est = mc_integrate([&](const ProjectivePoint& p) { return mu(p) * rho(p); }, mu.dim(), n_samples, rng);
    return {std::abs(est.mean - target), est.std_error, false};
}

}  // namespace projlogic
