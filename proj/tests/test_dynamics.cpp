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


#include "projlogic/dynamics.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace projlogic;
using Catch::Matchers::WithinAbs;

namespace {

HermitianOperator sigma_z() {
    RealVector d(2);
    d << 1.0, -1.0;
    return HermitianOperator::diagonal(d);
}

ProjectivePoint plus_state() {
    Vector v(2);
    v << 1.0, 1.0;
    return ProjectivePoint::from_vector(v);
}

std::vector<double> uniform_grid(double t_end, int steps) {
    std::vector<double> g;
    for (int k = 0; k <= steps; ++k) {
        g.push_back(t_end * k / steps);
    }
    return g;
}

}  // namespace

TEST_CASE("Exact flow of sigma_z on |+>", "[dynamics][oracle]") {
    // p(t)_{01} = exp(-2 i t) / 2.
    const auto grid = uniform_grid(2.0 * std::numbers::pi, 32);
    const auto f = schrodinger_flow(sigma_z(), plus_state(), grid);
    REQUIRE(f.trajectory.size() == grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Complex expected = 0.5 * std::exp(Complex(0.0, -2.0 * grid[k]));
        CHECK(std::abs(f.trajectory[k].matrix()(0, 1) - expected) < 1e-14);
        CHECK(f.defect_series[k] < 1e-14);
    }
}

TEST_CASE("One RK4 step equals the degree-4 Taylor polynomial", "[dynamics][oracle]") {
    Rng rng(139);
    const Index n = 3;
    auto h = random_hermitian(n, 1.0, rng);
    h = h.scaled(1.0 / operator_norm(h));
    const auto p0 = haar_random_point(n, rng);
    const double dt = 1e-2;
    Matrix term = p0.matrix();
    Matrix sum = term;
    for (int k = 1; k <= 4; ++k) {
        term = (-kI * dt / static_cast<double>(k)) * commutator(h.matrix(), term);
        sum += term;
    }
    const std::vector<double> grid{dt};
    const auto f = hamilton_flow(h, p0, grid, dt);
    CHECK(max_abs(f.trajectory[0].matrix() - nearest_point(sum).matrix()) < 1e-14);
}

TEST_CASE("RK4 flow converges to the exact flow at fourth order", "[dynamics]") {
    const auto grid = uniform_grid(2.0 * std::numbers::pi, 64);
    const auto exact = schrodinger_flow(sigma_z(), plus_state(), grid);
    CHECK(max_trajectory_deviation(exact, hamilton_flow(sigma_z(), plus_state(), grid, 1e-3)) < 1e-8);
    const double e1 = max_trajectory_deviation(exact, hamilton_flow(sigma_z(), plus_state(), grid, 1e-2));
    const double e2 = max_trajectory_deviation(exact, hamilton_flow(sigma_z(), plus_state(), grid, 5e-3));
    CHECK(e1 / e2 > 8.0);
    CHECK(e1 / e2 < 32.0);
}

TEST_CASE("Flows conserve energy and transport expectations", "[dynamics][property]") {
    Rng rng(149);
    for (Index n = 2; n <= 5; ++n) {
        auto h = random_hermitian(n, 1.0, rng);
        h = h.scaled(1.0 / operator_norm(h));
        const auto p0 = haar_random_point(n, rng);
        const auto grid = uniform_grid(3.0, 12);
        const auto exact = schrodinger_flow(h, p0, grid);
        const auto rk = hamilton_flow(h, p0, grid, 1e-3);
        const auto a = random_hermitian(n, 1.0, rng);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            CHECK_THAT(h.expectation(rk.trajectory[k].matrix()), WithinAbs(h.expectation(p0.matrix()), 1e-9));
            CHECK_THAT(a.expectation(rk.trajectory[k].matrix()),
                       WithinAbs(a.expectation(exact.trajectory[k].matrix()), 1e-7));
        }
    }
}

TEST_CASE("Heisenberg evolution in Poisson form", "[dynamics]") {
    Rng rng(151);
    const Index n = 3;
    auto h = random_hermitian(n, 1.0, rng);
    h = h.scaled(1.0 / operator_norm(h));
    const auto a = random_hermitian(n, 1.0, rng);
    const auto p0 = haar_random_point(n, rng);
    const double step = 1e-4;
    const std::vector<double> grid{1.0 - step, 1.0, 1.0 + step};
    const auto f = schrodinger_flow(h, p0, grid);
    const double deriv = (a.expectation(f.trajectory[2].matrix()) - a.expectation(f.trajectory[0].matrix())) / (2 * step);
    CHECK_THAT(deriv, WithinAbs(poisson_bracket(a, h, f.trajectory[1]), 1e-6));
}

TEST_CASE("Liouville densities are transported by the flow", "[dynamics]") {
    Rng rng(157);
    for (Index n = 2; n <= 5; ++n) {
        std::vector<ProjectivePoint> probes;
        for (int k = 0; k < 32; ++k) {
            probes.push_back(haar_random_point(n, rng));
        }
        CHECK(liouville_transport_check(random_density_matrix(n, rng), random_hermitian(n, 1.0, rng), 1.3, probes) <
              1e-10);
    }
}

TEST_CASE("Flow argument validation", "[dynamics]") {
    const std::vector<double> bad{0.0, 1.0, 0.5};
    const std::vector<double> neg{-1.0};
    const std::vector<double> ok{1.0};
    CHECK_THROWS_AS(schrodinger_flow(sigma_z(), plus_state(), bad), InvalidArgument);
    CHECK_THROWS_AS(hamilton_flow(sigma_z(), plus_state(), neg, 1e-3), InvalidArgument);
    CHECK_THROWS_AS(hamilton_flow(sigma_z(), plus_state(), ok, 0.1), InvalidArgument);
    CHECK_THROWS_AS(hamilton_flow(sigma_z(), plus_state(), ok, 0.0), InvalidArgument);
    CHECK_THROWS_AS(schrodinger_flow(sigma_z(), ProjectivePoint::basis(3, 0), ok), DimensionMismatch);
}
