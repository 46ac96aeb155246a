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


#include "projlogic/fuzzy_logic.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace projlogic;
using Catch::Matchers::WithinAbs;

TEST_CASE("Membership functions from effects", "[fuzzy]") {
    Rng rng(61);
    const auto t = random_effect(3, rng);
    const auto mu = MembershipFunction::from_operator(t);
    CHECK(mu.operator_generated());
    const auto p = haar_random_point(3, rng);
    CHECK_THAT(mu(p), WithinAbs(t.expectation(p.matrix()), 1e-15));
    const auto c = complement(mu);
    CHECK(c.operator_generated());
    CHECK_THAT(c(p), WithinAbs(1.0 - mu(p), 1e-14));

    CHECK_THROWS_AS(MembershipFunction::from_operator(HermitianOperator::identity(2).scaled(1.5)), InvalidArgument);
    CHECK_THROWS_AS(MembershipFunction::from_operator(HermitianOperator::identity(2).scaled(-0.5)), InvalidArgument);

    const auto pw = MembershipFunction::pointwise(3, [](const ProjectivePoint&) { return 1.3; });
    CHECK_THROWS_AS(pw(p), InvalidArgument);
    CHECK_THROWS_AS(mu.as_field()(haar_random_point(2, rng)), DimensionMismatch);
}

TEST_CASE("Fuzzy inclusion on effects", "[fuzzy]") {
    Rng rng(67);
    const auto t = random_effect(3, rng);
    const auto smaller = MembershipFunction::from_operator(t.scaled(0.5));
    const auto bigger = MembershipFunction::from_operator(t);
    CHECK(fuzzy_leq(smaller, bigger, {}));
    CHECK_FALSE(fuzzy_leq(MembershipFunction::from_operator(ProjectivePoint::basis(3, 0)),
                          MembershipFunction::from_operator(ProjectivePoint::basis(3, 1)), {}));
}

TEST_CASE("Standard t-norms satisfy the four axioms exactly", "[fuzzy][tnorm]") {
    Rng rng(71);
    for (const auto& t : {TNorm::lukasiewicz(), TNorm::product()}) {
        const auto r = tnorm_axiom_check(t, 101, rng);
        CHECK(r.passed(1e-12));
        CHECK(r.unit.max_violation <= 1e-12);
        CHECK(r.monotonicity.max_violation == 0.0);
    }
}

TEST_CASE("min(x,y)^2 violates the unit law by 1/4 at x = 1/2", "[fuzzy][tnorm]") {
    Rng rng(73);
    const auto sq = TNorm::custom("sq", [](double x, double y) { return std::pow(std::min(x, y), 2); });
    const auto r = tnorm_axiom_check(sq, 101, rng);
    CHECK_THAT(r.unit.max_violation, WithinAbs(0.25, 1e-15));
    CHECK(r.unit.witness[0] == 0.5);
    CHECK(r.commutativity.max_violation == 0.0);
    CHECK_FALSE(r.passed(1e-12));
    CHECK_THROWS_AS(tnorm_axiom_check(sq, 5, rng), InvalidArgument);
}

TEST_CASE("Conorms and named lookup", "[fuzzy][tnorm]") {
    const auto l = tnorm_by_name("lukasiewicz");
    const auto p = tnorm_by_name("product");
    for (double x = 0.0; x <= 1.0; x += 0.125) {
        for (double y = 0.0; y <= 1.0; y += 0.125) {
            CHECK_THAT(l(x, y), WithinAbs(std::max(0.0, x + y - 1.0), 1e-15));
            CHECK_THAT(l.conorm(x, y), WithinAbs(std::min(1.0, x + y), 1e-15));
            CHECK_THAT(p(x, y), WithinAbs(x * y, 1e-15));
            CHECK_THAT(p.conorm(x, y), WithinAbs(x + y - x * y, 1e-15));
        }
    }
    CHECK_THROWS_AS(tnorm_by_name("nope"), InvalidArgument);

    Rng rng(79);
    const auto a = MembershipFunction::from_operator(random_effect(2, rng));
    const auto b = MembershipFunction::from_operator(random_effect(2, rng));
    const auto q = haar_random_point(2, rng);
    CHECK_THAT(tnorm_apply(p, a, b)(q), WithinAbs(a(q) * b(q), 1e-15));
    CHECK_THAT(tconorm_apply(l, a, b)(q), WithinAbs(std::min(1.0, a(q) + b(q)), 1e-15));
}

TEST_CASE("Grade classes", "[fuzzy]") {
    const auto e1 = ProjectivePoint::basis(2, 0);
    const auto mu = MembershipFunction::from_operator(e1);
    CHECK(grade_class(mu, e1) == Grade::included);
    CHECK(grade_class(mu, ProjectivePoint::basis(2, 1)) == Grade::not_included);
    Vector plus(2);
    plus << 1.0, 1.0;
    CHECK(grade_class(mu, ProjectivePoint::from_vector(plus)) == Grade::partial);
    CHECK(std::string(to_string(Grade::partial)) == "partial");
}
