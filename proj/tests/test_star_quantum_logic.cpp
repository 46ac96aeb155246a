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


#include "projlogic/star_quantum_logic.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

using namespace projlogic;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<FuzzyEventQL> spin_events() {
    Vector plus(2), minus(2);
    plus << 1.0, 1.0;
    minus << 1.0, -1.0;
    return {FuzzyEventQL::from_projector(ProjectivePoint::basis(2, 0), "e1"),
            FuzzyEventQL::from_projector(ProjectivePoint::basis(2, 1), "e2"),
            FuzzyEventQL::from_projector(ProjectivePoint::from_vector(plus), "+"),
            FuzzyEventQL::from_projector(ProjectivePoint::from_vector(minus), "-")};
}

// sum_{ijk} T1_ij T2_jk p_ki, spelled out.
Complex triple_trace(const Matrix& a, const Matrix& b, const Matrix& p) {
    Complex s = 0.0;
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.rows(); ++j) {
            for (Index k = 0; k < a.rows(); ++k) {
                s += a(i, j) * b(j, k) * p(k, i);
            }
        }
    }
    return s;
}

std::set<std::string> labels_of(const MainTheoremReport& r, const std::vector<std::size_t>& idx) {
    std::set<std::string> out;
    for (auto i : idx) {
        out.insert(r.labels[i]);
    }
    return out;
}

}  // namespace

TEST_CASE("Star product: closed form, geometric form and brute force agree", "[star][oracle]") {
    Rng rng(83);
    for (Index n = 2; n <= 5; ++n) {
        for (int k = 0; k < 100; ++k) {
            const auto a = FuzzyEventQL::from_operator(random_effect(n, rng));
            const auto b = FuzzyEventQL::from_operator(random_effect(n, rng));
            const auto p = haar_random_point(n, rng);
            const auto ab = star(a, b);
            const Complex closed = ab(p);
            CHECK(std::abs(closed - triple_trace(a.matrix(), b.matrix(), p.matrix())) < 1e-13);
            CHECK(std::abs(closed - ab.geometric(p)) < 1e-9);
            CHECK(std::abs(closed - std::conj(star(b, a)(p))) < 1e-13);
        }
    }
}

TEST_CASE("Star identity certification over probes", "[star]") {
    Rng rng(89);
    const auto a = FuzzyEventQL::from_operator(random_effect(3, rng));
    const auto b = FuzzyEventQL::from_operator(random_effect(3, rng));
    std::vector<ProjectivePoint> probes;
    for (int k = 0; k < 16; ++k) {
        probes.push_back(haar_random_point(3, rng));
    }
    CHECK_NOTHROW(star(a, b).certify(probes));
    CHECK(star(a, b).cross_validation_defect(probes) < 1e-9);
}

TEST_CASE("Idempotence, compatibility and orthogonality classification", "[star]") {
    Rng rng(97);
    const auto events = spin_events();
    const ProbeSet probes = make_probe_set(events, rng);
    CHECK(is_idempotent(events[0], probes));
    CHECK(is_compatible(events[0], events[1], probes));
    CHECK(is_orthogonal(events[0], events[1], probes));
    CHECK_FALSE(is_compatible(events[0], events[2], probes));
    CHECK_FALSE(is_orthogonal(events[0], events[2], probes));
    CHECK(is_orthogonal(events[2], events[3], probes));

    const auto half = FuzzyEventQL::from_operator(HermitianOperator::identity(2).scaled(0.5));
    CHECK_FALSE(half.is_projector());
    CHECK_FALSE(is_idempotent(half, probes));
    CHECK_THROWS_AS(is_compatible(half, events[0], probes), InvalidArgument);
    CHECK_THROWS_AS(half.projector(), InvalidArgument);
}

TEST_CASE("Join and meet from memberships", "[star]") {
    Rng rng(101);
    const auto events = spin_events();
    const ProbeSet probes = make_probe_set(events, rng);
    const auto jm = join_meet_membership(events[0], events[1], probes);
    CHECK(max_abs(jm.join.matrix() - Matrix::Identity(2, 2)) < 1e-12);
    CHECK(max_abs(jm.meet.matrix()) < 1e-12);
    CHECK_THROWS_AS(join_meet_membership(events[0], events[2], probes), IncompatibleError);
    const auto fallback = join_meet(events[0], events[2], probes);
    CHECK(fallback.operator_lattice_path);
    CHECK(max_abs(fallback.join.matrix() - Matrix::Identity(2, 2)) < 1e-9);

    // Commuting pair at n = 4: mu_P + mu_Q - mu_P mu_Q is the join.
    const auto p = FuzzyEventQL::from_projector(Projector::coordinate(4, {0, 1}));
    const auto q = FuzzyEventQL::from_projector(Projector::coordinate(4, {1, 2}));
    std::vector<FuzzyEventQL> pq{p, q};
    const auto jm4 = join_meet_membership(p, q, make_probe_set(pq, rng));
    CHECK(max_abs(jm4.join.matrix() - Projector::coordinate(4, {0, 1, 2}).matrix()) < 1e-12);
    CHECK(max_abs(jm4.meet.matrix() - Projector::coordinate(4, {1}).matrix()) < 1e-12);
}

TEST_CASE("Order isomorphism preserves and reflects order", "[star][property]") {
    Rng rng(103);
    for (int k = 0; k < 200; ++k) {
        const Index n = 2 + k % 4;
        const Projector t = random_projector(n, k % (n + 1), rng);
        const Projector s = random_projector(n, (k / 2) % (n + 1), rng);
        const bool range = max_abs(s.matrix() * t.matrix() - t.matrix()) < 1e-9;
        CHECK(projector_leq(t, s) == range);
        CHECK(fuzzy_leq(order_iso_h(t).membership(), order_iso_h(s).membership(), {}) == range);
        CHECK(max_abs(order_iso_h_inverse(order_iso_h(t)).matrix() - t.matrix()) == 0.0);
    }
}

TEST_CASE("Spin logic is orthomodular and not distributive", "[logic]") {
    Rng rng(107);
    const auto events = spin_events();
    const auto L = build_logic(events, rng);
    CHECK(L.size() == 6);
    CHECK(L.validate().empty());
    CHECK(L.elements[L.find_by_label("e1").value()].label() == "e1");
    const auto ax = check_quantum_logic_axioms(L);
    CHECK(ax.bounded);
    CHECK(ax.involution);
    CHECK(ax.order_reversing);
    CHECK(ax.orthomodular_max_error < 1e-9);
    CHECK(ax.sigma_missing_joins == 0);
    CHECK_FALSE(ax.distributive);
    bool found = false;
    for (const auto& w : ax.witnesses) {
        const std::set<std::string> trio{L.elements[w.q].label(), L.elements[w.r].label()};
        found = found || (L.elements[w.p].label() == "e1" && trio == std::set<std::string>{"+", "-"});
    }
    CHECK(found);
    // e1 meet (+ join -) = e1, but (e1 meet +) join (e1 meet -) = 0.
    const auto e1 = L.find_by_label("e1").value();
    const auto plus = L.find_by_label("+").value();
    const auto minus = L.find_by_label("-").value();
    CHECK(L.join[plus][minus].value() == L.one);
    CHECK(L.meet[e1][plus].value() == L.zero);
    CHECK(L.meet[e1][minus].value() == L.zero);
}

TEST_CASE("Coordinate family forms a Boolean logic", "[logic]") {
    Rng rng(109);
    std::vector<Projector> fam;
    for (unsigned mask = 0; mask < 8; ++mask) {
        RealVector d(3);
        for (Index i = 0; i < 3; ++i) {
            d(i) = (mask >> i) & 1U;
        }
        fam.push_back(Projector::from_matrix(d.cast<Complex>().asDiagonal()));
    }
    const auto L = build_logic(fam, rng);
    CHECK(L.size() == 8);
    const auto ax = check_quantum_logic_axioms(L);
    CHECK(ax.passed(1e-9));
    CHECK(ax.distributive);
    CHECK(ax.is_lattice);
}

TEST_CASE("States on the spin logic", "[logic]") {
    Rng rng(113);
    const auto events = spin_events();
    const auto L = build_logic(events, rng);
    const auto g = check_gpm(GeneralizedProbabilityMeasure::from_density(random_density_matrix(2, rng)), L);
    CHECK(g.normalization_error < 1e-12);
    CHECK(g.max_additivity_error < 1e-12);
    const auto one = check_gpm({"one", [](const Projector&) { return 1.0; }}, L);
    CHECK_THAT(one.max_additivity_error, WithinAbs(1.0, 1e-12));
    const auto states = point_states(L, rng);
    const auto ord = ordering_set_check(states, L);
    CHECK(ord.unwitnessed.empty());
    CHECK(ord.max_order_violation <= 1e-12);
}

TEST_CASE("Function-family theorem on classical and missing-complement families", "[logic][mik]") {
    FunctionFamily classical;
    for (unsigned mask = 0; mask < 8; ++mask) {
        std::vector<double> f(6);
        for (std::size_t x = 0; x < 6; ++x) {
            f[x] = (mask >> (x / 2)) & 1U;
        }
        classical.push_back(f);
    }
    const auto r = theorem_mik_check(classical);
    CHECK(r.hypotheses_hold());
    CHECK(r.passed());
    CHECK(r.boolean());

    FunctionFamily broken = classical;
    broken.erase(broken.begin() + 6);  // complement of atom 0
    const auto b = theorem_mik_check(broken);
    CHECK(b.has_zero);
    CHECK_FALSE(b.complement_closed);
    CHECK_FALSE(b.conclusions_checked);
    CHECK_FALSE(b.hypothesis_witness.empty());

    FunctionFamily fuzzy{{0.0, 0.0}, {1.0, 1.0}, {0.2, 0.2}, {0.8, 0.8}, {0.3, 0.3}, {0.7, 0.7}};
    const auto z = theorem_mik_check(fuzzy);
    CHECK(z.complement_closed);
    CHECK_FALSE(z.sums_closed);
}

TEST_CASE("Main harness on the spin family", "[logic][harness]") {
    Rng rng(127);
    const auto events = spin_events();
    const auto r = theorem_main_harness(events, StarRule::operator_product(), rng);
    CHECK(r.hypotheses_hold());
    CHECK(r.conclusions_hold(1e-9));
    CHECK(r.idempotent_count == 6);
    CHECK_FALSE(r.logic.boolean());
    CHECK(r.sublattices == r.commuting_subfamilies);
    std::set<std::set<std::string>> subs;
    for (const auto& s : r.sublattices) {
        subs.insert(labels_of(r, s));
    }
    CHECK(subs.count({"0", "I", "e1", "e2"}) == 1);
    CHECK(subs.count({"0", "I", "+", "-"}) == 1);
    for (const auto& s : subs) {
        CHECK_FALSE((s.count("e1") && s.count("+")));
    }
}

TEST_CASE("Pointwise product gives the degenerate logic", "[logic][harness]") {
    Rng rng(131);
    const auto r = theorem_main_harness(spin_events(), StarRule::pointwise_product(), rng);
    CHECK(r.degenerate());
    CHECK(r.idempotent_count == 2);
}

TEST_CASE("Main harness on a Boolean coordinate family", "[logic][harness]") {
    Rng rng(137);
    std::vector<FuzzyEventQL> fam;
    for (unsigned mask = 0; mask < 8; ++mask) {
        RealVector d(3);
        for (Index i = 0; i < 3; ++i) {
            d(i) = (mask >> i) & 1U;
        }
        fam.push_back(FuzzyEventQL::from_projector(Projector::from_matrix(d.cast<Complex>().asDiagonal())));
    }
    const auto r = theorem_main_harness(fam, StarRule::operator_product(), rng);
    CHECK(r.passed(1e-9));
    CHECK(r.logic.boolean());
    const bool whole = std::any_of(r.sublattices.begin(), r.sublattices.end(),
                                   [&](const auto& s) { return s.size() == r.idempotent_count; });
    CHECK(whole);
}
