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
 * Fuzzy sets on P(H): membership functions, complement, inclusion, t-norms
 * and their derived t-conorms.
 */

#pragma once

#include "projlogic/kahler_geometry.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>

namespace projlogic {

/**
 * Membership function mu : P(H) -> [0,1].
 *
 * Either operator-generated, mu(p) = tr(T p) with 0 <= T <= I, or given by
 * a pointwise rule whose range is checked at every evaluation.
 */
class MembershipFunction {
  public:
    using Rule = std::function<double(const ProjectivePoint&)>;

    static MembershipFunction from_operator(const HermitianOperator& t, const Tolerances& tol = tolerances()) {
        const RealVector ev = t.eigenvalues();
        if (ev.minCoeff() < -tol.effect || ev.maxCoeff() > 1.0 + tol.effect) {
            throw InvalidArgument("membership generator must satisfy 0 <= T <= I");
        }
        MembershipFunction m;
        m.dim_ = t.dim();
        m.generator_ = t;
        return m;
    }

    static MembershipFunction pointwise(Index dim, Rule rule, std::string label = {}) {
        if (!rule) {
            throw InvalidArgument("pointwise membership needs a rule");
        }
        MembershipFunction m;
        m.dim_ = dim;
        m.rule_ = std::make_shared<const Rule>(std::move(rule));
        m.label_ = std::move(label);
        return m;
    }

    static MembershipFunction constant(Index dim, double c) {
        return from_operator(HermitianOperator::identity(dim).scaled(c));
    }

    Index dim() const { return dim_; }
    bool operator_generated() const { return generator_.has_value(); }
    const std::string& label() const { return label_; }

    const HermitianOperator& generator() const {
        if (!generator_) {
            throw InvalidArgument("membership function is not operator-generated");
        }
        return *generator_;
    }

    double operator()(const ProjectivePoint& p) const {
        require_same_dim(dim_, p.dim(), "membership evaluation");
        if (generator_) {
            return generator_->expectation(p.matrix());
        }
        const double value = (*rule_)(p);
        const double tol = tolerances().membership;
        if (!(value >= -tol && value <= 1.0 + tol)) {
            throw InvalidArgument("membership grade " + std::to_string(value) + " outside [0,1]");
        }
        return value;
    }

    ScalarField as_field() const {
        return [self = *this](const ProjectivePoint& p) { return self(p); };
    }

  private:
    MembershipFunction() = default;

    Index dim_ = 0;
    std::optional<HermitianOperator> generator_;
    std::shared_ptr<const Rule> rule_;
    std::string label_;
};

/// mu_{not A} = 1 - mu_A; keeps operator form (T -> I - T).
inline MembershipFunction complement(const MembershipFunction& a) {
    if (a.operator_generated()) {
        const Index n = a.dim();
        return MembershipFunction::from_operator(HermitianOperator::identity(n) - a.generator());
    }
    return MembershipFunction::pointwise(
        a.dim(), [a](const ProjectivePoint& p) { return 1.0 - a(p); }, "not " + a.label());
}

/**
 * Fuzzy inclusion mu_A <= mu_B. Operator pairs are decided exactly by
 * T_B - T_A >= 0; otherwise pointwise on the probes.
 */
inline bool fuzzy_leq(const MembershipFunction& a, const MembershipFunction& b,
                      std::span<const ProjectivePoint> probes, const Tolerances& tol = tolerances()) {
    require_same_dim(a.dim(), b.dim(), "fuzzy_leq");
    if (a.operator_generated() && b.operator_generated()) {
        return (b.generator() - a.generator()).eigenvalues().minCoeff() >= -tol.order;
    }
    for (const auto& p : probes) {
        if (a(p) > b(p) + tol.membership) {
            return false;
        }
    }
    return true;
}

/// Binary t-norm on [0,1]; the derived conorm is s(x,y) = 1 - t(1-x, 1-y).
struct TNorm {
    enum class Kind { lukasiewicz, product, custom };

    Kind kind = Kind::custom;
    std::string name;
    std::function<double(double, double)> rule;

    double operator()(double x, double y) const { return rule(x, y); }
    double conorm(double x, double y) const { return 1.0 - rule(1.0 - x, 1.0 - y); }

    static TNorm lukasiewicz() {
        return {Kind::lukasiewicz, "lukasiewicz", [](double x, double y) { return std::max(x + y - 1.0, 0.0); }};
    }
    static TNorm product() {
        return {Kind::product, "product", [](double x, double y) { return x * y; }};
    }
    /// Extension point for user-supplied t-norms; checked with tnorm_axiom_check.
    static TNorm custom(std::string name, std::function<double(double, double)> rule) {
        return {Kind::custom, std::move(name), std::move(rule)};
    }
};

inline TNorm tnorm_by_name(std::string_view name) {
    if (name == "lukasiewicz") {
        return TNorm::lukasiewicz();
    }
    if (name == "product") {
        return TNorm::product();
    }
    throw InvalidArgument("unknown t-norm '" + std::string(name) + "'");
}

inline MembershipFunction tnorm_apply(const TNorm& t, const MembershipFunction& a, const MembershipFunction& b) {
    require_same_dim(a.dim(), b.dim(), "tnorm_apply");
    return MembershipFunction::pointwise(
        a.dim(), [t, a, b](const ProjectivePoint& p) { return t(a(p), b(p)); },
        a.label() + " " + t.name + "-and " + b.label());
}

inline MembershipFunction tconorm_apply(const TNorm& t, const MembershipFunction& a, const MembershipFunction& b) {
    require_same_dim(a.dim(), b.dim(), "tconorm_apply");
    return MembershipFunction::pointwise(
        a.dim(), [t, a, b](const ProjectivePoint& p) { return t.conorm(a(p), b(p)); },
        a.label() + " " + t.name + "-or " + b.label());
}

struct AxiomViolation {
    double max_violation = 0.0;
    std::array<double, 3> witness{};  // arguments at the worst violation
};

struct TNormAxiomReport {
    std::string name;
    AxiomViolation commutativity;
    AxiomViolation monotonicity;
    AxiomViolation associativity;
    AxiomViolation unit;
    std::size_t evaluations = 0;

    bool passed(double tol) const {
        return commutativity.max_violation <= tol && monotonicity.max_violation <= tol &&
               associativity.max_violation <= tol && unit.max_violation <= tol;
    }
};

/**
 * Checks commutativity, monotonicity, associativity t(t(x,y),z) = t(x,t(y,z))
 * and the unit law t(x,1) = x on a uniform grid plus `n_random` random
 * triples drawn from `rng`.
 */
inline TNormAxiomReport tnorm_axiom_check(const TNorm& t, int resolution, Rng& rng,
                                          std::size_t n_random = 10000) {
    if (resolution < 11) {
        throw InvalidArgument("tnorm_axiom_check: grid resolution must be at least 11");
    }
    TNormAxiomReport r;
    r.name = t.name;
    auto note = [](AxiomViolation& v, double err, double x, double y, double z) {
        if (err > v.max_violation) {
            v = {err, {x, y, z}};
        }
    };
    auto check_triple = [&](double x, double y, double z) {
        const double txy = t(x, y);
        note(r.commutativity, std::abs(txy - t(y, x)), x, y, 0.0);
        note(r.associativity, std::abs(t(txy, z) - t(x, t(y, z))), x, y, z);
        r.evaluations += 5;
    };

    std::vector<double> grid(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
        grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (resolution - 1);
    }
    for (double x : grid) {
        note(r.unit, std::abs(t(x, 1.0) - x), x, 1.0, 0.0);
        for (double y : grid) {
            for (double z : grid) {
                check_triple(x, y, z);
            }
        }
    }
    // Adjacent grid steps suffice for monotonicity on the grid.
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double here = t(grid[i], grid[j]);
            if (i + 1 < grid.size()) {
                note(r.monotonicity, std::max(0.0, here - t(grid[i + 1], grid[j])), grid[i], grid[j], 0.0);
            }
            if (j + 1 < grid.size()) {
                note(r.monotonicity, std::max(0.0, here - t(grid[i], grid[j + 1])), grid[i], grid[j], 1.0);
            }
        }
    }
    for (std::size_t k = 0; k < n_random; ++k) {
        const double x = rng.uniform();
        const double y = rng.uniform();
        const double z = rng.uniform();
        check_triple(x, y, z);
        note(r.unit, std::abs(t(x, 1.0) - x), x, 1.0, 0.0);
        const double lo = std::min(y, z);
        const double hi = std::max(y, z);
        note(r.monotonicity, std::max(0.0, t(x, lo) - t(x, hi)), x, lo, hi);
    }
    return r;
}

enum class Grade { not_included, partial, included };

inline const char* to_string(Grade g) {
    switch (g) {
        case Grade::not_included: return "not_included";
        case Grade::partial: return "partial";
        case Grade::included: return "included";
    }
    return "?";
}

inline Grade grade_class(const MembershipFunction& a, const ProjectivePoint& p, const Tolerances& tol = tolerances()) {
    const double mu = a(p);
    if (mu <= tol.membership) {
        return Grade::not_included;
    }
    if (mu >= 1.0 - tol.membership) {
        return Grade::included;
    }
    return Grade::partial;
}

}  // namespace projlogic
