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
 * Non-commutative star product on observable-type membership functions and
 * the quantum logic of star-idempotent fuzzy events.
 *
 * For mu_1 = tr(T_1 ·), mu_2 = tr(T_2 ·):
 *
 *   (mu_1 ⋆ mu_2)(p) = mu_1 mu_2 + (i/2){mu_1, mu_2} + (1/2) g(X_1, X_2)
 *                    = tr(T_1 T_2 p)
 *
 * The closed form is the primary evaluation path; the three-term geometric
 * form is kept for cross-validation. Idempotent events are exactly the
 * projector-generated ones, ⋆-commuting events are the compatible ones and
 * ⋆-orthogonal events (product zero) are the orthogonal ones.
 *
 * The second half of the file contains checkers for the abstract structures:
 * orthomodular posets of projectors, generalized probability measures,
 * ordering sets, [0,1]-valued function families closed under complement and
 * admissible sums, and families with a deformed union/intersection.
 */

#pragma once

#include "projlogic/phase_space_measure.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace projlogic {

/// Operator-generated fuzzy event; the projector flag marks ⋆-idempotents.
class FuzzyEventQL {
  public:
    static FuzzyEventQL from_operator(const HermitianOperator& t, std::string label = {},
                                      const Tolerances& tol = tolerances()) {
        FuzzyEventQL e(MembershipFunction::from_operator(t, tol), std::move(label));
        if (max_abs(t.matrix() * t.matrix() - t.matrix()) <= tol.idem) {
            e.projector_ = Projector::from_matrix(t.matrix(), tol);
        }
        return e;
    }

    static FuzzyEventQL from_projector(const Projector& p, std::string label = {}) {
        FuzzyEventQL e(MembershipFunction::from_operator(p), std::move(label));
        e.projector_ = p;
        return e;
    }

    Index dim() const { return mu_.dim(); }
    const MembershipFunction& membership() const { return mu_; }
    const HermitianOperator& generator() const { return mu_.generator(); }
    const Matrix& matrix() const { return mu_.generator().matrix(); }
    bool is_projector() const { return projector_.has_value(); }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    const Projector& projector() const {
        if (!projector_) {
            throw InvalidArgument("fuzzy event '" + label_ + "' is not projector-generated");
        }
        return *projector_;
    }

    double operator()(const ProjectivePoint& p) const { return mu_(p); }

  private:
    FuzzyEventQL(MembershipFunction mu, std::string label) : mu_(std::move(mu)), label_(std::move(label)) {}

    MembershipFunction mu_;
    std::optional<Projector> projector_;
    std::string label_;
};

/// mu_A ⋆ mu_B as a complex-valued field on P(H).
class StarField {
  public:
    StarField(FuzzyEventQL a, FuzzyEventQL b) : a_(std::move(a)), b_(std::move(b)) {
        require_same_dim(a_.dim(), b_.dim(), "star");
        product_ = a_.matrix() * b_.matrix();
    }

    /// Closed form tr(T_A T_B p).
    Complex operator()(const ProjectivePoint& p) const { return trace_of_product(product_, p.matrix()); }

    /// Pointwise product + (i/2) Poisson bracket + (1/2) metric of the Hamiltonian fields.
    Complex geometric(const ProjectivePoint& p, const Tolerances& tol = tolerances()) const {
        const ObservableFunction fa{a_.generator()};
        const ObservableFunction fb{b_.generator()};
        const TangentVector xa = hamiltonian_vector_field(fa, p);
        const TangentVector xb = hamiltonian_vector_field(fb, p);
        const double bracket = poisson_bracket(a_.generator(), b_.generator(), p, tol);
        return fa(p) * fb(p) + 0.5 * kI * bracket + 0.5 * fubini_study_metric(xa, xb, tol);
    }

    double cross_validation_defect(std::span<const ProjectivePoint> probes,
                                   const Tolerances& tol = tolerances()) const {
        double worst = 0.0;
        for (const auto& p : probes) {
            worst = std::max(worst, std::abs((*this)(p) - geometric(p, tol)));
        }
        return worst;
    }

    void certify(std::span<const ProjectivePoint> probes, const Tolerances& tol = tolerances()) const {
        const double d = cross_validation_defect(probes, tol);
        if (d > tol.star) {
            throw CertificationError("star: closed and geometric forms disagree by " + std::to_string(d));
        }
    }

    const Matrix& operator_product() const { return product_; }

  private:
    FuzzyEventQL a_;
    FuzzyEventQL b_;
    Matrix product_;
};

inline StarField star(const FuzzyEventQL& a, const FuzzyEventQL& b) { return StarField(a, b); }

/// Probe points: Haar samples plus every eigenvector ray of the generators.
struct ProbeSet {
    std::vector<ProjectivePoint> points;
};

inline ProbeSet make_probe_set(Index n, std::span<const HermitianOperator> generators, Rng& rng,
                               std::size_t n_haar = 64) {
    ProbeSet probes;
    for (const auto& g : generators) {
        require_same_dim(n, g.dim(), "probe set");
        for (auto& p : eigenvector_points(g)) {
            probes.points.push_back(std::move(p));
        }
    }
    for (std::size_t k = 0; k < n_haar; ++k) {
        probes.points.push_back(haar_random_point(n, rng));
    }
    return probes;
}

inline ProbeSet make_probe_set(std::span<const FuzzyEventQL> events, Rng& rng, std::size_t n_haar = 64) {
    if (events.empty()) {
        throw InvalidArgument("make_probe_set: no events");
    }
    std::vector<HermitianOperator> gens;
    for (const auto& e : events) {
        gens.push_back(e.generator());
    }
    return make_probe_set(events.front().dim(), gens, rng, n_haar);
}

namespace detail {
inline void certify_agreement(bool probe_says, bool operator_says, const char* what) {
    if (probe_says != operator_says) {
        throw CertificationError(std::string(what) + ": probe-based and operator-based decisions disagree");
    }
}

inline void require_idempotent(const FuzzyEventQL& a, const char* what) {
    if (!a.is_projector()) {
        throw InvalidArgument(std::string(what) + ": input '" + a.label() + "' is not idempotent");
    }
}
}  // namespace detail

/// mu ⋆ mu == mu on the probes, certified against ||T^2 - T||.
inline bool is_idempotent(const FuzzyEventQL& a, const ProbeSet& probes, const Tolerances& tol = tolerances()) {
    const StarField sq = star(a, a);
    double worst = 0.0;
    for (const auto& p : probes.points) {
        worst = std::max(worst, std::abs(sq(p) - a(p)));
    }
    const bool by_probe = worst < tol.star;
    const bool by_operator = max_abs(a.matrix() * a.matrix() - a.matrix()) < tol.operator_norm;
    detail::certify_agreement(by_probe, by_operator, "is_idempotent");
    return by_probe;
}

/// mu_A ⋆ mu_B == mu_B ⋆ mu_A on the probes, certified against ||[T_A, T_B]||.
inline bool is_compatible(const FuzzyEventQL& a, const FuzzyEventQL& b, const ProbeSet& probes,
                          const Tolerances& tol = tolerances()) {
    detail::require_idempotent(a, "is_compatible");
    detail::require_idempotent(b, "is_compatible");
    const StarField ab = star(a, b);
    const StarField ba = star(b, a);
    double worst = 0.0;
    for (const auto& p : probes.points) {
        worst = std::max(worst, std::abs(ab(p) - ba(p)));
    }
    const bool by_probe = worst < tol.star;
    const bool by_operator = max_abs(commutator(a.matrix(), b.matrix())) < tol.operator_norm;
    detail::certify_agreement(by_probe, by_operator, "is_compatible");
    return by_probe;
}

/// mu_A ⋆ mu_B == 0 on the probes, certified against ||T_A T_B||.
inline bool is_orthogonal(const FuzzyEventQL& a, const FuzzyEventQL& b, const ProbeSet& probes,
                          const Tolerances& tol = tolerances()) {
    detail::require_idempotent(a, "is_orthogonal");
    detail::require_idempotent(b, "is_orthogonal");
    const StarField ab = star(a, b);
    double worst = 0.0;
    for (const auto& p : probes.points) {
        worst = std::max(worst, std::abs(ab(p)));
    }
    const bool by_probe = worst < tol.star;
    const bool by_operator = max_abs(a.matrix() * b.matrix()) < tol.operator_norm;
    detail::certify_agreement(by_probe, by_operator, "is_orthogonal");
    return by_probe;
}

struct JoinMeet {
    FuzzyEventQL join;
    FuzzyEventQL meet;
    bool operator_lattice_path = false;  // incompatible pair, computed on the projector lattice
};

/**
 * mu_{A∨B} = mu_A + mu_B - mu_A ⋆ mu_B and mu_{A∧B} = mu_A ⋆ mu_B for
 * compatible A, B; both certified against the projector lattice.
 */
inline JoinMeet join_meet_membership(const FuzzyEventQL& a, const FuzzyEventQL& b, const ProbeSet& probes,
                                     const Tolerances& tol = tolerances()) {
    if (!is_compatible(a, b, probes, tol)) {
        throw IncompatibleError("join_meet_membership: events do not ⋆-commute");
    }
    const Matrix product = star(a, b).operator_product();
    Tolerances loose = tol;
    loose.idem = std::max(tol.idem, tol.order);
    loose.herm = std::max(tol.herm, tol.operator_norm);
    const Projector meet = Projector::from_matrix(make_hermitian(product, tol).op.matrix(), loose);
    const Projector join =
        Projector::from_matrix(make_hermitian(a.matrix() + b.matrix() - product, tol).op.matrix(), loose);
    const Projector& pa = a.projector();
    const Projector& pb = b.projector();
    const double err = std::max(max_abs(meet.matrix() - lattice_meet(pa, pb, tol).matrix()),
                                max_abs(join.matrix() - lattice_join(pa, pb, tol).matrix()));
    if (err > tol.order) {
        throw CertificationError("join_meet_membership: ⋆-formulas disagree with the projector lattice");
    }
    return {FuzzyEventQL::from_projector(join), FuzzyEventQL::from_projector(meet), false};
}

/// Total join/meet: ⋆-formulas when compatible, projector lattice otherwise (flagged).
inline JoinMeet join_meet(const FuzzyEventQL& a, const FuzzyEventQL& b, const ProbeSet& probes,
                          const Tolerances& tol = tolerances()) {
    if (is_compatible(a, b, probes, tol)) {
        return join_meet_membership(a, b, probes, tol);
    }
    return {FuzzyEventQL::from_projector(lattice_join(a.projector(), b.projector(), tol)),
            FuzzyEventQL::from_projector(lattice_meet(a.projector(), b.projector(), tol)), true};
}

/// h : T -> event with membership tr(T ·).
inline FuzzyEventQL order_iso_h(const Projector& t, std::string label = {}) {
    return FuzzyEventQL::from_projector(t, std::move(label));
}

inline Projector order_iso_h_inverse(const FuzzyEventQL& e) { return e.projector(); }

// ---------------------------------------------------------------------------
// finite logic structures over projector families

using BoolTable = std::vector<std::vector<bool>>;
using IndexTable = std::vector<std::vector<std::optional<std::size_t>>>;

struct QuantumLogicStructure {
    std::vector<FuzzyEventQL> elements;
    BoolTable order;  // order[i][j]: element i <= element j
    std::vector<std::size_t> complement;
    BoolTable compat;
    BoolTable orth;
    IndexTable meet;  // std::nullopt when the meet is not in the family
    IndexTable join;
    BoolTable lattice_path;  // meet/join taken from the projector lattice
    std::size_t zero = 0;
    std::size_t one = 1;

    std::size_t size() const { return elements.size(); }
    Index dim() const { return elements.empty() ? 0 : elements.front().dim(); }
    const Projector& projector(std::size_t i) const { return elements[i].projector(); }

    std::optional<std::size_t> find(const Matrix& m, double tol) const {
        for (std::size_t i = 0; i < elements.size(); ++i) {
            if (operators_equal(elements[i].matrix(), m, tol)) {
                return i;
            }
        }
        return std::nullopt;
    }

    std::optional<std::size_t> find_by_label(std::string_view label) const {
        for (std::size_t i = 0; i < elements.size(); ++i) {
            if (elements[i].label() == label) {
                return i;
            }
        }
        return std::nullopt;
    }

    /// Structural invariant violations; empty when consistent.
    std::vector<std::string> validate() const {
        std::vector<std::string> issues;
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i) {
            if (!order[i][i]) {
                issues.push_back("order not reflexive at " + elements[i].label());
            }
            if (complement[complement[i]] != i) {
                issues.push_back("complement not an involution at " + elements[i].label());
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && order[i][j] && order[j][i]) {
                    issues.push_back("order not antisymmetric");
                }
                if (order[i][j] && !order[complement[j]][complement[i]]) {
                    issues.push_back("complement does not reverse order");
                }
                if (compat[i][j] != compat[j][i] || orth[i][j] != orth[j][i]) {
                    issues.push_back("compat/orth not symmetric");
                }
                if (orth[i][j] && !compat[i][j]) {
                    issues.push_back("orthogonal pair not compatible");
                }
                for (std::size_t k = 0; k < n; ++k) {
                    if (order[i][j] && order[j][k] && !order[i][k]) {
                        issues.push_back("order not transitive");
                    }
                }
            }
        }
        std::sort(issues.begin(), issues.end());
        issues.erase(std::unique(issues.begin(), issues.end()), issues.end());
        return issues;
    }
};

namespace detail {
inline std::string complement_label(const std::string& l) {
    if (l.empty()) {
        return {};
    }
    if (l.rfind("not ", 0) == 0) {
        return l.substr(4);
    }
    return "not " + l;
}

inline void push_unique(std::vector<FuzzyEventQL>& out, FuzzyEventQL e, double tol) {
    for (const auto& x : out) {
        if (operators_equal(x.matrix(), e.matrix(), tol)) {
            return;
        }
    }
    out.push_back(std::move(e));
}
}  // namespace detail

inline constexpr std::size_t kMaxFamilySize = 64;

/**
 * Logic generated by a projector family: closure under complement with 0
 * and I adjoined, then order, compatibility, orthogonality and meet/join
 * tables.
 */
inline QuantumLogicStructure build_logic(std::span<const FuzzyEventQL> family, Rng& rng,
                                         const Tolerances& tol = tolerances()) {
    if (family.empty()) {
        throw InvalidArgument("build_logic: empty family");
    }
    const Index n = family.front().dim();
    std::vector<FuzzyEventQL> elems;
    detail::push_unique(elems, order_iso_h(Projector::zero(n), "0"), tol.order);
    detail::push_unique(elems, order_iso_h(Projector::identity(n), "I"), tol.order);
    // Members first so their own labels win over synthesized complement labels.
    for (const auto& e : family) {
        require_same_dim(n, e.dim(), "build_logic");
        detail::push_unique(elems, order_iso_h(e.projector(), e.label()), tol.order);
    }
    for (const auto& e : family) {
        detail::push_unique(elems, order_iso_h(orthocomplement(e.projector()), detail::complement_label(e.label())),
                            tol.order);
    }
    if (elems.size() > kMaxFamilySize) {
        throw InvalidArgument("build_logic: closed family exceeds " + std::to_string(kMaxFamilySize) + " elements");
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (elems[i].label().empty()) {
            elems[i].set_label("e" + std::to_string(i));
        }
    }

    QuantumLogicStructure L;
    L.elements = std::move(elems);
    const std::size_t m = L.size();
    const ProbeSet probes = make_probe_set(L.elements, rng);
    L.order.assign(m, std::vector<bool>(m, false));
    L.compat = L.order;
    L.orth = L.order;
    L.lattice_path = L.order;
    L.meet.assign(m, std::vector<std::optional<std::size_t>>(m));
    L.join = L.meet;
    L.complement.assign(m, 0);

    for (std::size_t i = 0; i < m; ++i) {
        const auto c = L.find(Matrix::Identity(n, n) - L.elements[i].matrix(), tol.order);
        if (!c) {
            throw CertificationError("build_logic: family not closed under complement");
        }
        L.complement[i] = *c;
        for (std::size_t j = 0; j < m; ++j) {
            L.order[i][j] = fuzzy_leq(L.elements[i].membership(), L.elements[j].membership(), probes.points, tol);
            if (j < i) {
                continue;
            }
            const bool c_ij = is_compatible(L.elements[i], L.elements[j], probes, tol);
            const bool o_ij = is_orthogonal(L.elements[i], L.elements[j], probes, tol);
            const JoinMeet jm = join_meet(L.elements[i], L.elements[j], probes, tol);
            const auto mi = L.find(jm.meet.matrix(), tol.order);
            const auto ji = L.find(jm.join.matrix(), tol.order);
            L.compat[i][j] = L.compat[j][i] = c_ij;
            L.orth[i][j] = L.orth[j][i] = o_ij;
            L.lattice_path[i][j] = L.lattice_path[j][i] = jm.operator_lattice_path;
            L.meet[i][j] = L.meet[j][i] = mi;
            L.join[i][j] = L.join[j][i] = ji;
        }
    }
    L.zero = 0;
    L.one = 1;
    const auto issues = L.validate();
    if (!issues.empty()) {
        throw CertificationError("build_logic: " + issues.front());
    }
    return L;
}

inline QuantumLogicStructure build_logic(std::span<const Projector> family, Rng& rng,
                                         const Tolerances& tol = tolerances()) {
    std::vector<FuzzyEventQL> events;
    for (const auto& p : family) {
        events.push_back(order_iso_h(p));
    }
    return build_logic(std::span<const FuzzyEventQL>(events), rng, tol);
}

/**
 * Calls fn(indices) for every family of pairwise orthogonal, distinct,
 * non-zero elements with 2 <= size <= max_size.
 */
template <class Fn>
void for_each_orthogonal_family(const QuantumLogicStructure& L, std::size_t max_size, Fn&& fn) {
    std::vector<std::size_t> current;
    std::function<void(std::size_t)> extend = [&](std::size_t start) {
        if (current.size() >= 2) {
            fn(current);
        }
        if (current.size() == max_size) {
            return;
        }
        for (std::size_t k = start; k < L.size(); ++k) {
            if (k == L.zero) {
                continue;
            }
            bool ok = true;
            for (std::size_t c : current) {
                ok = ok && L.orth[c][k];
            }
            if (ok) {
                current.push_back(k);
                extend(k + 1);
                current.pop_back();
            }
        }
    };
    extend(0);
}

struct DistributivityWitness {
    std::size_t p = 0;
    std::size_t q = 0;
    std::size_t r = 0;
    bool meet_over_join = true;  // p∧(q∨r) vs (p∧q)∨(p∧r); otherwise the dual law
    double error = 0.0;
};

struct LogicAxiomReport {
    bool bounded = true;
    bool involution = true;
    bool order_reversing = true;
    double complement_law_error = 0.0;  // p∧¬p = 0 and p∨¬p = I
    std::size_t orthomodular_pairs = 0;
    double orthomodular_max_error = 0.0;
    std::size_t orthomodular_outside_family = 0;
    std::size_t orthogonal_families = 0;
    std::size_t sigma_missing_joins = 0;
    bool is_lattice = true;
    bool distributive = true;
    std::vector<DistributivityWitness> witnesses;

    bool passed(double tol) const {
        return bounded && involution && order_reversing && complement_law_error <= tol &&
               orthomodular_max_error <= tol && sigma_missing_joins == 0;
    }
};

namespace detail {
inline Projector meet_of(const QuantumLogicStructure& L, std::size_t i, std::size_t j, const Tolerances& tol) {
    if (const auto& m = L.meet[i][j]) {
        return L.projector(*m);
    }
    return lattice_meet(L.projector(i), L.projector(j), tol);
}

inline Projector join_of(const QuantumLogicStructure& L, std::size_t i, std::size_t j, const Tolerances& tol) {
    if (const auto& m = L.join[i][j]) {
        return L.projector(*m);
    }
    return lattice_join(L.projector(i), L.projector(j), tol);
}
}  // namespace detail

/**
 * Boundedness, orthocomplementation, orthomodularity on every ordered pair,
 * orthocompleteness on orthogonal subfamilies (size <= min(6, n)) and
 * distributivity, recording witness triples where it fails.
 */
inline LogicAxiomReport check_quantum_logic_axioms(const QuantumLogicStructure& L,
                                                   const Tolerances& tol = tolerances(),
                                                   std::size_t max_witnesses = 64) {
    LogicAxiomReport r;
    const std::size_t m = L.size();
    const Index n = L.dim();
    for (std::size_t i = 0; i < m; ++i) {
        r.bounded = r.bounded && L.order[L.zero][i] && L.order[i][L.one];
        r.involution = r.involution && L.complement[L.complement[i]] == i;
        const std::size_t c = L.complement[i];
        r.complement_law_error = std::max(
            {r.complement_law_error, max_abs(detail::meet_of(L, i, c, tol).matrix()),
             max_abs(detail::join_of(L, i, c, tol).matrix() - Matrix::Identity(n, n))});
        for (std::size_t j = 0; j < m; ++j) {
            if (!L.meet[i][j] || !L.join[i][j]) {
                r.is_lattice = false;
            }
            if (!L.order[i][j]) {
                continue;
            }
            r.order_reversing = r.order_reversing && L.order[L.complement[j]][L.complement[i]];
            // q = p ∨ (¬p ∧ q)
            ++r.orthomodular_pairs;
            const Projector inner = lattice_meet(L.projector(c), L.projector(j), tol);
            const Projector rebuilt = lattice_join(L.projector(i), inner, tol);
            r.orthomodular_max_error = std::max(r.orthomodular_max_error, max_abs(rebuilt.matrix() - L.projector(j).matrix()));
            if (!L.find(inner.matrix(), tol.order)) {
                ++r.orthomodular_outside_family;
            }
        }
    }

    const std::size_t max_size = std::min<std::size_t>(6, static_cast<std::size_t>(n));
    for_each_orthogonal_family(L, max_size, [&](const std::vector<std::size_t>& fam) {
        ++r.orthogonal_families;
        Projector acc = L.projector(fam.front());
        for (std::size_t k = 1; k < fam.size(); ++k) {
            acc = lattice_join(acc, L.projector(fam[k]), tol);
        }
        if (!L.find(acc.matrix(), tol.order)) {
            ++r.sigma_missing_joins;
        }
    });

    // Table lookups when all four operations stay in the family, projector lattice otherwise.
    auto law_error = [&](std::size_t p, std::size_t q, std::size_t s, bool meet_over_join) {
        const IndexTable& outer = meet_over_join ? L.meet : L.join;
        const IndexTable& inner = meet_over_join ? L.join : L.meet;
        if (inner[q][s] && outer[p][q] && outer[p][s] && outer[p][*inner[q][s]] &&
            inner[*outer[p][q]][*outer[p][s]]) {
            const std::size_t lhs = *outer[p][*inner[q][s]];
            const std::size_t rhs = *inner[*outer[p][q]][*outer[p][s]];
            return lhs == rhs ? 0.0 : max_abs(L.projector(lhs).matrix() - L.projector(rhs).matrix());
        }
        auto op_outer = [&](const Projector& a, const Projector& b) {
            return meet_over_join ? lattice_meet(a, b, tol) : lattice_join(a, b, tol);
        };
        auto op_inner = [&](const Projector& a, const Projector& b) {
            return meet_over_join ? lattice_join(a, b, tol) : lattice_meet(a, b, tol);
        };
        const Projector lhs = op_outer(L.projector(p), op_inner(L.projector(q), L.projector(s)));
        const Projector rhs = op_inner(op_outer(L.projector(p), L.projector(q)), op_outer(L.projector(p), L.projector(s)));
        return max_abs(lhs.matrix() - rhs.matrix());
    };
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
            for (std::size_t s = q + 1; s < m; ++s) {
                for (bool meet_over_join : {true, false}) {
                    const double err = law_error(p, q, s, meet_over_join);
                    if (err > tol.order) {
                        r.distributive = false;
                        if (r.witnesses.size() < max_witnesses) {
                            r.witnesses.push_back({p, q, s, meet_over_join, err});
                        }
                    }
                }
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// states

struct GeneralizedProbabilityMeasure {
    std::string name;
    std::function<double(const Projector&)> rule;

    double operator()(const Projector& p) const { return rule(p); }

    /// sigma(P) = tr(rho P).
    static GeneralizedProbabilityMeasure from_density(const DensityMatrix& rho, std::string name = "density") {
        return {std::move(name), [rho](const Projector& p) { return rho.expectation(p.matrix()); }};
    }

    /// sigma_p(P) = mu_P(p) = tr(P p).
    static GeneralizedProbabilityMeasure from_point(const ProjectivePoint& pt, std::string name = "point") {
        return {std::move(name), [pt](const Projector& p) { return p.expectation(pt.matrix()); }};
    }
};

struct GpmReport {
    double normalization_error = 0.0;
    double range_violation = 0.0;
    double max_additivity_error = 0.0;
    std::size_t families_checked = 0;

    bool passed(double tol) const {
        return normalization_error <= tol && range_violation <= tol && max_additivity_error <= tol;
    }
};

/// sigma(I) = 1 and additivity on orthogonal subfamilies of size <= 6.
inline GpmReport check_gpm(const GeneralizedProbabilityMeasure& sigma, const QuantumLogicStructure& L,
                           const Tolerances& tol = tolerances()) {
    GpmReport r;
    r.normalization_error = std::abs(sigma(L.projector(L.one)) - 1.0);
    for (std::size_t i = 0; i < L.size(); ++i) {
        const double v = sigma(L.projector(i));
        r.range_violation = std::max({r.range_violation, -v, v - 1.0});
    }
    for_each_orthogonal_family(L, 6, [&](const std::vector<std::size_t>& fam) {
        ++r.families_checked;
        Projector acc = L.projector(fam.front());
        double sum = sigma(acc);
        for (std::size_t k = 1; k < fam.size(); ++k) {
            acc = lattice_join(acc, L.projector(fam[k]), tol);
            sum += sigma(L.projector(fam[k]));
        }
        r.max_additivity_error = std::max(r.max_additivity_error, std::abs(sigma(acc) - sum));
    });
    return r;
}

struct OrderingSetReport {
    std::size_t ordered_pairs = 0;
    std::size_t unordered_pairs = 0;
    std::size_t witnessed = 0;
    double max_order_violation = 0.0;  // sigma(p) - sigma(q) over ordered pairs
    std::vector<std::pair<std::size_t, std::size_t>> unwitnessed;

    bool passed(double tol) const { return unwitnessed.empty() && max_order_violation <= tol; }
};

/**
 * For every pair p ≰ q, looks for a state with sigma(p) > sigma(q); for
 * every pair p <= q, checks sigma(p) <= sigma(q) in all states.
 */
inline OrderingSetReport ordering_set_check(std::span<const GeneralizedProbabilityMeasure> states,
                                            const QuantumLogicStructure& L, const Tolerances& tol = tolerances()) {
    OrderingSetReport r;
    const std::size_t m = L.size();
    std::vector<std::vector<double>> values(states.size(), std::vector<double>(m));
    for (std::size_t s = 0; s < states.size(); ++s) {
        for (std::size_t i = 0; i < m; ++i) {
            values[s][i] = states[s](L.projector(i));
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) {
                continue;
            }
            if (L.order[i][j]) {
                ++r.ordered_pairs;
                for (const auto& v : values) {
                    r.max_order_violation = std::max(r.max_order_violation, v[i] - v[j]);
                }
                continue;
            }
            ++r.unordered_pairs;
            const bool found = std::any_of(values.begin(), values.end(),
                                           [&](const auto& v) { return v[i] > v[j] + tol.order; });
            if (found) {
                ++r.witnessed;
            } else {
                r.unwitnessed.emplace_back(i, j);
            }
        }
    }
    return r;
}

/// Point states at Haar samples and at every eigenvector ray of the generators.
inline std::vector<GeneralizedProbabilityMeasure> point_states(const QuantumLogicStructure& L, Rng& rng,
                                                               std::size_t n_haar = 64) {
    const ProbeSet probes = make_probe_set(L.elements, rng, n_haar);
    std::vector<GeneralizedProbabilityMeasure> states;
    for (std::size_t k = 0; k < probes.points.size(); ++k) {
        states.push_back(GeneralizedProbabilityMeasure::from_point(probes.points[k], "point" + std::to_string(k)));
    }
    return states;
}

// ---------------------------------------------------------------------------
// families of [0,1]-valued functions on a finite universe

/// family[k][x]: value of the k-th function at universe point x.
using FunctionFamily = std::vector<std::vector<double>>;

struct MikReport {
    std::size_t family_size = 0;
    std::size_t universe_size = 0;
    bool has_zero = false;
    bool complement_closed = false;
    bool sums_closed = false;
    std::string hypothesis_witness;

    bool conclusions_checked = false;
    bool partial_order = false;
    bool orthocomplemented = false;
    bool orthomodular = false;
    bool sigma_orthocomplete = false;
    bool states_are_gpm = false;
    bool ordering_set = false;
    bool is_lattice = false;
    bool distributive = false;
    std::vector<std::string> failures;

    bool hypotheses_hold() const { return has_zero && complement_closed && sums_closed; }
    bool passed() const {
        return hypotheses_hold() && conclusions_checked && partial_order && orthocomplemented && orthomodular &&
               sigma_orthocomplete && states_are_gpm && ordering_set;
    }
    bool boolean() const { return passed() && is_lattice && distributive; }
};

namespace detail {
inline bool same_function(const std::vector<double>& f, const std::vector<double>& g, double tol) {
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (std::abs(f[x] - g[x]) > tol) {
            return false;
        }
    }
    return true;
}

inline std::optional<std::size_t> find_function(const FunctionFamily& fam, const std::vector<double>& f, double tol) {
    for (std::size_t k = 0; k < fam.size(); ++k) {
        if (same_function(fam[k], f, tol)) {
            return k;
        }
    }
    return std::nullopt;
}

// Pairwise admissible (f_i + f_j <= 1) families of distinct non-zero members.
template <class Fn>
void for_each_admissible_family(const BoolTable& admissible, const std::vector<bool>& is_zero, std::size_t max_size,
                                Fn&& fn) {
    std::vector<std::size_t> current;
    std::function<void(std::size_t)> extend = [&](std::size_t start) {
        if (current.size() >= 2) {
            fn(current);
        }
        if (current.size() == max_size) {
            return;
        }
        for (std::size_t k = start; k < admissible.size(); ++k) {
            if (is_zero[k]) {
                continue;
            }
            bool ok = true;
            for (std::size_t c : current) {
                ok = ok && admissible[c][k];
            }
            if (ok) {
                current.push_back(k);
                extend(k + 1);
                current.pop_back();
            }
        }
    };
    extend(0);
}
}  // namespace detail

/**
 * Family E of [0,1]-valued functions: checks 0 ∈ E, closure under 1 - f and
 * under sums of pairwise admissible subfamilies (size <= 6), then the
 * orthomodular-poset conclusions under the pointwise order and that the
 * evaluation states sigma_x(f) = f(x) form an ordering set.
 */
inline MikReport theorem_mik_check(const FunctionFamily& input, const Tolerances& tol = tolerances()) {
    MikReport r;
    if (input.empty()) {
        throw InvalidArgument("theorem_mik_check: empty family");
    }
    const std::size_t universe = input.front().size();
    if (universe == 0 || universe > 10000 || input.size() > kMaxFamilySize) {
        throw InvalidArgument("theorem_mik_check: universe must be 1..10^4 points, family <= 64 functions");
    }
    FunctionFamily fam;
    for (const auto& f : input) {
        if (f.size() != universe) {
            throw InvalidArgument("theorem_mik_check: functions on different universes");
        }
        if (!detail::find_function(fam, f, tol.order)) {
            fam.push_back(f);
        }
    }
    const std::size_t m = fam.size();
    r.family_size = m;
    r.universe_size = universe;
    const double eps = tol.order;

    std::vector<bool> is_zero(m);
    for (std::size_t k = 0; k < m; ++k) {
        is_zero[k] = std::all_of(fam[k].begin(), fam[k].end(), [&](double v) { return std::abs(v) <= eps; });
    }
    const auto zero_it = std::find(is_zero.begin(), is_zero.end(), true);
    r.has_zero = zero_it != is_zero.end();
    if (!r.has_zero) {
        r.hypothesis_witness = "zero function missing";
        return r;
    }
    const std::size_t zero = static_cast<std::size_t>(zero_it - is_zero.begin());

    std::vector<std::size_t> comp(m);
    r.complement_closed = true;
    for (std::size_t k = 0; k < m && r.complement_closed; ++k) {
        std::vector<double> c(universe);
        for (std::size_t x = 0; x < universe; ++x) {
            c[x] = 1.0 - fam[k][x];
        }
        const auto idx = detail::find_function(fam, c, eps);
        if (!idx) {
            r.complement_closed = false;
            r.hypothesis_witness = "complement of function #" + std::to_string(k) + " missing";
        } else {
            comp[k] = *idx;
        }
    }
    if (!r.complement_closed) {
        return r;
    }

    BoolTable admissible(m, std::vector<bool>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            bool ok = true;
            for (std::size_t x = 0; x < universe && ok; ++x) {
                ok = fam[i][x] + fam[j][x] <= 1.0 + eps;
            }
            admissible[i][j] = ok;
        }
    }
    r.sums_closed = true;
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> sum_index;
    detail::for_each_admissible_family(admissible, is_zero, 6, [&](const std::vector<std::size_t>& members) {
        if (!r.sums_closed) {
            return;
        }
        std::vector<double> s(universe, 0.0);
        for (std::size_t k : members) {
            for (std::size_t x = 0; x < universe; ++x) {
                s[x] += fam[k][x];
            }
        }
        const auto idx = detail::find_function(fam, s, eps);
        if (!idx) {
            r.sums_closed = false;
            std::ostringstream os;
            os << "sum of admissible family {";
            for (std::size_t k : members) {
                os << ' ' << k;
            }
            os << " } missing";
            r.hypothesis_witness = os.str();
        } else {
            sum_index.emplace_back(members, *idx);
        }
    });
    if (!r.sums_closed) {
        return r;
    }

    r.conclusions_checked = true;
    BoolTable leq(m, std::vector<bool>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            bool ok = true;
            for (std::size_t x = 0; x < universe && ok; ++x) {
                ok = fam[i][x] <= fam[j][x] + eps;
            }
            leq[i][j] = ok;
        }
    }
    auto fail = [&](std::string what) { r.failures.push_back(std::move(what)); };

    r.partial_order = true;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i != j && leq[i][j] && leq[j][i]) {
                r.partial_order = false;
            }
            for (std::size_t k = 0; k < m; ++k) {
                if (leq[i][j] && leq[j][k] && !leq[i][k]) {
                    r.partial_order = false;
                }
            }
        }
    }
    if (!r.partial_order) {
        fail("pointwise order is not a partial order");
    }

    auto bound_of = [&](const std::vector<std::size_t>& members, bool upper) -> std::optional<std::size_t> {
        std::vector<std::size_t> bounds;
        for (std::size_t h = 0; h < m; ++h) {
            bool ok = true;
            for (std::size_t k : members) {
                ok = ok && (upper ? leq[k][h] : leq[h][k]);
            }
            if (ok) {
                bounds.push_back(h);
            }
        }
        for (std::size_t c : bounds) {
            if (std::all_of(bounds.begin(), bounds.end(), [&](std::size_t h) { return upper ? leq[c][h] : leq[h][c]; })) {
                return c;
            }
        }
        return std::nullopt;
    };
    IndexTable glb(m, std::vector<std::optional<std::size_t>>(m));
    IndexTable lub = glb;
    r.is_lattice = true;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            glb[i][j] = bound_of({i, j}, false);
            lub[i][j] = bound_of({i, j}, true);
            r.is_lattice = r.is_lattice && glb[i][j] && lub[i][j];
        }
    }
    const std::size_t one = comp[zero];

    r.orthocomplemented = true;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t c = comp[i];
        if (comp[c] != i || glb[i][c] != zero || lub[i][c] != one) {
            r.orthocomplemented = false;
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (leq[i][j] && !leq[comp[j]][comp[i]]) {
                r.orthocomplemented = false;
            }
        }
    }
    if (!r.orthocomplemented) {
        fail("1 - f is not an orthocomplementation");
    }

    r.orthomodular = true;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (!leq[i][j]) {
                continue;
            }
            const auto inner = glb[comp[i]][j];
            if (!inner || lub[i][*inner] != j) {
                r.orthomodular = false;
            }
        }
    }
    if (!r.orthomodular) {
        fail("orthomodular law fails");
    }

    // Orthogonal families are the admissible ones; their join must be the sum.
    r.sigma_orthocomplete = true;
    r.states_are_gpm = std::all_of(fam[one].begin(), fam[one].end(), [&](double v) { return std::abs(v - 1.0) <= eps; });
    for (const auto& [members, sum] : sum_index) {
        const auto join = bound_of(members, true);
        if (!join) {
            r.sigma_orthocomplete = false;
        } else if (*join != sum) {
            r.states_are_gpm = false;
        }
    }
    if (!r.sigma_orthocomplete) {
        fail("orthogonal family without a least upper bound");
    }
    if (!r.states_are_gpm) {
        fail("evaluation states are not additive on orthogonal families");
    }

    r.ordering_set = true;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (leq[i][j]) {
                continue;
            }
            bool found = false;
            for (std::size_t x = 0; x < universe && !found; ++x) {
                found = fam[i][x] > fam[j][x] + eps;
            }
            r.ordering_set = r.ordering_set && found;
        }
    }

    r.distributive = r.is_lattice;
    if (r.is_lattice) {
        for (std::size_t p = 0; p < m && r.distributive; ++p) {
            for (std::size_t q = 0; q < m && r.distributive; ++q) {
                for (std::size_t s = 0; s < m && r.distributive; ++s) {
                    r.distributive = glb[p][*lub[q][s]] == lub[*glb[p][q]][*glb[p][s]] &&
                                     lub[p][*glb[q][s]] == glb[*lub[p][q]][*lub[p][s]];
                }
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// deformed union / intersection

/// Binary product on membership functions, evaluated pointwise on probes.
struct StarRule {
    std::string name;
    std::function<Complex(const FuzzyEventQL&, const FuzzyEventQL&, const ProjectivePoint&)> product;

    /// tr(T_A T_B p).
    static StarRule operator_product() {
        return {"operator", [](const FuzzyEventQL& a, const FuzzyEventQL& b, const ProjectivePoint& p) {
                    return trace_of_product(a.matrix() * b.matrix(), p.matrix());
                }};
    }

    /// Undeformed product t-norm mu_A(p) mu_B(p).
    static StarRule pointwise_product() {
        return {"pointwise", [](const FuzzyEventQL& a, const FuzzyEventQL& b, const ProjectivePoint& p) {
                    return Complex(a(p) * b(p), 0.0);
                }};
    }
};

struct MainTheoremReport {
    std::string rule;
    std::size_t family_size = 0;  // after closure under complement with 0, I adjoined
    std::size_t idempotent_count = 0;
    std::vector<std::string> labels;  // labels of the idempotent events, in index order

    bool hyp_empty = false;
    bool hyp_complement = false;
    bool hyp_disjointness = false;  // mu_A + mu_B <= 1 iff mu_A ⋆ mu_B = 0
    bool hyp_orthogonal_joins = false;
    std::vector<std::string> witnesses;

    bool conclusions_checked = false;
    MikReport logic;                                 // fuzzy-order quantum logic
    std::optional<LogicAxiomReport> operator_logic;  // when all idempotents are projectors
    bool orthogonality_matches_star = false;
    std::vector<std::vector<std::size_t>> sublattices;
    std::vector<std::vector<std::size_t>> commuting_subfamilies;
    bool sublattices_commute_and_boolean = false;
    bool sublattice_enumeration_complete = true;

    bool degenerate() const { return idempotent_count <= 2; }
    bool hypotheses_hold() const { return hyp_empty && hyp_complement && hyp_disjointness && hyp_orthogonal_joins; }
    bool conclusions_hold(double tol) const {
        return conclusions_checked && logic.passed() && (!operator_logic || operator_logic->passed(tol)) &&
               orthogonality_matches_star && sublattices_commute_and_boolean;
    }
    bool passed(double tol) const { return hypotheses_hold() && conclusions_hold(tol); }
};

namespace detail {
struct HarnessTables {
    std::vector<std::vector<double>> mu;                      // mu[k][x]
    std::vector<std::vector<std::vector<Complex>>> product;  // product[a][b][x]
};

inline bool values_match(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    return same_function(a, b, tol);
}

// Boolean-algebra axioms on a finite set with binary tables.
inline bool boolean_axioms(const std::vector<std::size_t>& s, const IndexTable& u, const IndexTable& i,
                           const std::vector<std::size_t>& comp, std::size_t zero, std::size_t one) {
    for (std::size_t a : s) {
        if (*u[a][zero] != a || *i[a][one] != a || *u[a][comp[a]] != one || *i[a][comp[a]] != zero) {
            return false;
        }
        for (std::size_t b : s) {
            if (*u[a][b] != *u[b][a] || *i[a][b] != *i[b][a]) {
                return false;
            }
            if (*u[a][*i[a][b]] != a || *i[a][*u[a][b]] != a) {
                return false;
            }
            for (std::size_t c : s) {
                if (*u[*u[a][b]][c] != *u[a][*u[b][c]] || *i[*i[a][b]][c] != *i[a][*i[b][c]]) {
                    return false;
                }
                if (*u[a][*i[b][c]] != *i[*u[a][b]][*u[a][c]] || *i[a][*u[b][c]] != *u[*i[a][b]][*i[a][c]]) {
                    return false;
                }
            }
        }
    }
    return true;
}
}  // namespace detail

inline constexpr std::size_t kMaxEnumeratedPairs = 12;

/**
 * Harness for a family of events with the deformed operations
 *   mu_{A⋓B} = mu_A + mu_B - mu_A ⋆ mu_B,   mu_{A⋒B} = mu_A ⋆ mu_B.
 *
 * The family is closed under complement (0 and I adjoined) and restricted to
 * its ⋆-idempotent members. Hypotheses: the empty event is present, closure
 * under complement, mu_A + mu_B <= 1 iff A⋒B = ∅, and ⋒-disjoint families
 * (size <= 6) have their ⋓-join in the family. Conclusions: the family is a
 * quantum logic under fuzzy inclusion, orthogonality is ⋆-product zero, and
 * every complement-closed subfamily on which ∨ = ⋓ and ∧ = ⋒ is a pairwise
 * ⋆-commuting Boolean algebra.
 */
inline MainTheoremReport theorem_main_harness(std::span<const FuzzyEventQL> input, const StarRule& rule, Rng& rng,
                                              const Tolerances& tol = tolerances()) {
    if (input.empty()) {
        throw InvalidArgument("theorem_main_harness: empty family");
    }
    MainTheoremReport r;
    r.rule = rule.name;
    const Index n = input.front().dim();

    std::vector<FuzzyEventQL> closed;
    detail::push_unique(closed, FuzzyEventQL::from_projector(Projector::zero(n), "0"), tol.order);
    detail::push_unique(closed, FuzzyEventQL::from_projector(Projector::identity(n), "I"), tol.order);
    for (const auto& e : input) {
        require_same_dim(n, e.dim(), "theorem_main_harness");
        detail::push_unique(closed, e, tol.order);
    }
    for (const auto& e : input) {
        const HermitianOperator c = HermitianOperator::identity(n) - e.generator();
        detail::push_unique(closed, FuzzyEventQL::from_operator(c, detail::complement_label(e.label()), tol), tol.order);
    }
    if (closed.size() > kMaxFamilySize) {
        throw InvalidArgument("theorem_main_harness: closed family exceeds 64 elements");
    }
    r.family_size = closed.size();
    const ProbeSet probes = make_probe_set(closed, rng);
    const std::size_t np = probes.points.size();

    // Restrict to ⋆-idempotents.
    std::vector<FuzzyEventQL> ev;
    for (const auto& e : closed) {
        double worst = 0.0;
        for (const auto& p : probes.points) {
            worst = std::max(worst, std::abs(rule.product(e, e, p) - e(p)));
        }
        if (worst <= tol.star) {
            ev.push_back(e);
        }
    }
    const std::size_t m = ev.size();
    r.idempotent_count = m;
    for (std::size_t k = 0; k < m; ++k) {
        r.labels.push_back(ev[k].label().empty() ? "e" + std::to_string(k) : ev[k].label());
    }

    detail::HarnessTables t;
    t.mu.assign(m, std::vector<double>(np));
    t.product.assign(m, std::vector<std::vector<Complex>>(m, std::vector<Complex>(np)));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t x = 0; x < np; ++x) {
            t.mu[a][x] = ev[a](probes.points[x]);
        }
    }
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            for (std::size_t x = 0; x < np; ++x) {
                t.product[a][b][x] = rule.product(ev[a], ev[b], probes.points[x]);
            }
        }
    }
    auto find_values = [&](const std::vector<double>& v) { return detail::find_function(t.mu, v, tol.order); };
    auto star_zero = [&](std::size_t a, std::size_t b) {
        return std::all_of(t.product[a][b].begin(), t.product[a][b].end(),
                           [&](Complex z) { return std::abs(z) <= tol.star; });
    };
    auto sum_le_one = [&](std::size_t a, std::size_t b) {
        for (std::size_t x = 0; x < np; ++x) {
            if (t.mu[a][x] + t.mu[b][x] > 1.0 + tol.order) {
                return false;
            }
        }
        return true;
    };

    // i) empty event
    std::optional<std::size_t> zero = find_values(std::vector<double>(np, 0.0));
    r.hyp_empty = zero.has_value();
    if (!r.hyp_empty) {
        r.witnesses.push_back("empty event is not ⋆-idempotent");
    }
    // ii) complement closure
    std::vector<std::size_t> comp(m, 0);
    r.hyp_complement = true;
    for (std::size_t a = 0; a < m; ++a) {
        std::vector<double> c(np);
        for (std::size_t x = 0; x < np; ++x) {
            c[x] = 1.0 - t.mu[a][x];
        }
        const auto idx = find_values(c);
        if (!idx) {
            r.hyp_complement = false;
            r.witnesses.push_back("complement of " + r.labels[a] + " is not ⋆-idempotent");
        } else {
            comp[a] = *idx;
        }
    }
    // iii) mu_A + mu_B <= 1 iff A ⋒ B = ∅
    r.hyp_disjointness = true;
    BoolTable disjoint(m, std::vector<bool>(m));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            const bool le = sum_le_one(a, b);
            const bool z = star_zero(a, b);
            disjoint[a][b] = z;
            if (le != z) {
                r.hyp_disjointness = false;
                r.witnesses.push_back("pair (" + r.labels[a] + ", " + r.labels[b] + "): sum<=1 is " +
                                      (le ? "true" : "false") + " but ⋆-zero is " + (z ? "true" : "false"));
            }
        }
    }
    // iv) ⋒-disjoint families have their ⋓-join in the family. For pairwise
    // ⋆-zero members the iterated ⋓ reduces to the plain sum.
    r.hyp_orthogonal_joins = true;
    {
        BoolTable both(m, std::vector<bool>(m));
        std::vector<bool> is_zero(m, false);
        for (std::size_t a = 0; a < m; ++a) {
            is_zero[a] = zero && a == *zero;
            for (std::size_t b = 0; b < m; ++b) {
                both[a][b] = disjoint[a][b] && disjoint[b][a];
            }
        }
        detail::for_each_admissible_family(both, is_zero, 6, [&](const std::vector<std::size_t>& members) {
            std::vector<double> s(np, 0.0);
            for (std::size_t k : members) {
                for (std::size_t x = 0; x < np; ++x) {
                    s[x] += t.mu[k][x];
                }
            }
            if (!find_values(s)) {
                r.hyp_orthogonal_joins = false;
                std::string names;
                for (std::size_t k : members) {
                    names += " " + r.labels[k];
                }
                r.witnesses.push_back("⋓-join of disjoint family {" + names + " } missing");
            }
        });
    }
    if (!r.hypotheses_hold()) {
        return r;
    }

    r.conclusions_checked = true;
    // 1) quantum logic under fuzzy inclusion, via the function-family route.
    r.logic = theorem_mik_check(t.mu, tol);
    if (std::all_of(ev.begin(), ev.end(), [](const FuzzyEventQL& e) { return e.is_projector(); })) {
        Rng logic_rng = rng.split();
        r.operator_logic = check_quantum_logic_axioms(build_logic(std::span<const FuzzyEventQL>(ev), logic_rng, tol), tol);
    }

    // 2) A ⊥ B (mu_A <= 1 - mu_B) iff mu_A ⋆ mu_B = 0.
    r.orthogonality_matches_star = true;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            if (sum_le_one(a, b) != disjoint[a][b]) {
                r.orthogonality_matches_star = false;
            }
        }
    }

    // 3) complement-closed subfamilies containing 0, I on which ∨ = ⋓, ∧ = ⋒.
    IndexTable uni(m, std::vector<std::optional<std::size_t>>(m));
    IndexTable inter = uni;
    BoolTable commute(m, std::vector<bool>(m));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            bool real = true;
            std::vector<double> meet(np);
            std::vector<double> join(np);
            double asym = 0.0;
            for (std::size_t x = 0; x < np; ++x) {
                const Complex z = t.product[a][b][x];
                real = real && std::abs(z.imag()) <= tol.star;
                meet[x] = z.real();
                join[x] = t.mu[a][x] + t.mu[b][x] - z.real();
                asym = std::max(asym, std::abs(z - t.product[b][a][x]));
            }
            commute[a][b] = asym <= tol.star;
            if (real) {
                inter[a][b] = find_values(meet);
                uni[a][b] = find_values(join);
            }
        }
    }
    BoolTable leq(m, std::vector<bool>(m));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            leq[a][b] = true;
            for (std::size_t x = 0; x < np && leq[a][b]; ++x) {
                leq[a][b] = t.mu[a][x] <= t.mu[b][x] + tol.order;
            }
        }
    }
    const std::size_t one = comp[*zero];
    std::vector<std::size_t> pair_reps;
    for (std::size_t a = 0; a < m; ++a) {
        if (a != *zero && a != one && a < comp[a]) {
            pair_reps.push_back(a);
        }
    }
    std::vector<std::vector<std::size_t>> candidates;
    if (pair_reps.size() <= kMaxEnumeratedPairs) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << pair_reps.size()); ++mask) {
            std::vector<std::size_t> s{*zero, one};
            for (std::size_t k = 0; k < pair_reps.size(); ++k) {
                if (mask & (std::size_t{1} << k)) {
                    s.push_back(pair_reps[k]);
                    s.push_back(comp[pair_reps[k]]);
                }
            }
            std::sort(s.begin(), s.end());
            candidates.push_back(std::move(s));
        }
    } else {
        r.sublattice_enumeration_complete = false;
        std::vector<std::size_t> all(m);
        for (std::size_t a = 0; a < m; ++a) {
            all[a] = a;
        }
        candidates.push_back({std::min(*zero, one), std::max(*zero, one)});
        candidates.push_back(all);
    }

    r.sublattices_commute_and_boolean = true;
    for (const auto& s : candidates) {
        auto in_s = [&](std::optional<std::size_t> k) { return k && std::find(s.begin(), s.end(), *k) != s.end(); };
        bool all_commute = true;
        bool is_sublattice = true;
        for (std::size_t a : s) {
            for (std::size_t b : s) {
                all_commute = all_commute && commute[a][b];
                if (!in_s(inter[a][b]) || !in_s(uni[a][b])) {
                    is_sublattice = false;
                    continue;
                }
                // ⋒ / ⋓ must be the glb / lub inside s.
                for (std::size_t c : s) {
                    if (leq[c][a] && leq[c][b] && !leq[c][*inter[a][b]]) {
                        is_sublattice = false;
                    }
                    if (leq[a][c] && leq[b][c] && !leq[*uni[a][b]][c]) {
                        is_sublattice = false;
                    }
                }
                if (!leq[*inter[a][b]][a] || !leq[*inter[a][b]][b] || !leq[a][*uni[a][b]] || !leq[b][*uni[a][b]]) {
                    is_sublattice = false;
                }
            }
        }
        if (all_commute) {
            r.commuting_subfamilies.push_back(s);
        }
        if (is_sublattice) {
            r.sublattices.push_back(s);
            if (!all_commute || !detail::boolean_axioms(s, uni, inter, comp, *zero, one)) {
                r.sublattices_commute_and_boolean = false;
            }
        }
    }
    return r;
}

}  // namespace projlogic
