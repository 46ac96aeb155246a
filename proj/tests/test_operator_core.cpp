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


#include "projlogic/operator_core.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace projlogic;
using Catch::Matchers::WithinAbs;

namespace {
Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
}  // namespace

TEST_CASE("Hermitian construction validates its input", "[operator_core]") {
    Matrix m = pauli_x();
    REQUIRE_NOTHROW(HermitianOperator::from_matrix(m));
    m(0, 1) = Complex(1.0, 0.5);
    CHECK_THROWS_AS(HermitianOperator::from_matrix(m), InvalidArgument);
    CHECK_THROWS_AS(make_hermitian(m), InvalidArgument);

    Matrix small = pauli_x();
    small(0, 1) += Complex(0.0, 1e-9);
    const auto h2 = make_hermitian(small);
    CHECK_THAT(h2.defect, WithinAbs(5e-10, 1e-15));
    CHECK(std::abs(h2.op.matrix()(0, 1) - Complex(1.0, 5e-10)) < 1e-16);
    CHECK(max_abs(h2.op.matrix() - h2.op.matrix().adjoint()) == 0.0);
    CHECK_THROWS_AS(make_hermitian(Matrix::Zero(2, 3)), InvalidArgument);
}

TEST_CASE("Projectors, points and densities enforce their invariants", "[operator_core]") {
    CHECK_THROWS_AS(Projector::from_matrix(0.5 * Matrix::Identity(2, 2)), InvalidArgument);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(Matrix::Identity(2, 2)), InvalidArgument);
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(neg), InvalidArgument);
    CHECK_THROWS_AS(ProjectivePoint::from_matrix(Matrix::Identity(2, 2)), InvalidArgument);

    const auto pc = Projector::coordinate(4, {0, 2});
    CHECK(pc.rank() == 2);
    CHECK(DensityMatrix::maximally_mixed(3).trace() == Catch::Approx(1.0));
}

TEST_CASE("Rays are normalized and phase-blind", "[operator_core]") {
    Vector psi(3);
    psi << Complex(1, 2), Complex(0, -1), Complex(3, 0);
    const auto a = ProjectivePoint::from_vector(psi);
    const auto b = ProjectivePoint::from_vector(std::polar(2.5, 0.7) * psi);
    CHECK(max_abs(a.matrix() - b.matrix()) < 1e-15);
    CHECK_THAT(a.trace(), WithinAbs(1.0, 1e-15));
    CHECK(max_abs(a.matrix() * a.matrix() - a.matrix()) < 1e-15);
    // Oracle: |psi><psi| / <psi|psi> entry by entry.
    const double norm2 = psi.squaredNorm();
    CHECK(std::abs(a.matrix()(0, 2) - psi(0) * std::conj(psi(2)) / norm2) < 1e-15);
}

TEST_CASE("Random constructors produce valid objects", "[operator_core][property]") {
    Rng rng(123);
    for (Index n = 2; n <= 6; ++n) {
        const Matrix u = random_unitary(n, rng);
        CHECK(max_abs(u * u.adjoint() - Matrix::Identity(n, n)) < 1e-12);
        for (Index r = 0; r <= n; ++r) {
            const Projector p = random_projector(n, r, rng);
            CHECK(p.rank() == r);
            CHECK(max_abs(p.matrix() * p.matrix() - p.matrix()) < 1e-12);
        }
        const auto rho = random_density_matrix(n, rng);
        CHECK_THAT(rho.trace(), WithinAbs(1.0, 1e-12));
        CHECK(rho.eigenvalues().minCoeff() > -1e-12);
        const auto e = random_effect(n, rng);
        CHECK(e.eigenvalues().minCoeff() > -1e-12);
        CHECK(e.eigenvalues().maxCoeff() < 1.0 + 1e-12);
    }
}

TEST_CASE("Haar points have the uniform first moment", "[operator_core][property]") {
    // E |psi_0|^2 = 1/n and E |psi_0|^4 = 2/(n(n+1)).
    Rng rng(5);
    for (Index n : {2, 3, 5}) {
        const int samples = 40000;
        double m1 = 0.0;
        double m2 = 0.0;
        for (int k = 0; k < samples; ++k) {
            const double x = haar_random_point(n, rng).matrix()(0, 0).real();
            m1 += x;
            m2 += x * x;
        }
        m1 /= samples;
        m2 /= samples;
        const double dn = static_cast<double>(n);
        CHECK_THAT(m1, WithinAbs(1.0 / dn, 4.0 * std::sqrt((dn - 1) / (dn * dn * (dn + 1)) / samples)));
        CHECK_THAT(m2, WithinAbs(2.0 / (dn * (dn + 1)), 0.01));
    }
}

TEST_CASE("Hermitian basis spans the operator space", "[operator_core]") {
    for (Index n = 1; n <= 4; ++n) {
        const auto basis = hermitian_basis(n);
        REQUIRE(basis.size() == static_cast<std::size_t>(n * n));
        RealMatrix gram(n * n, n * n);
        for (Index i = 0; i < n * n; ++i) {
            CHECK(max_abs(basis[static_cast<std::size_t>(i)] - basis[static_cast<std::size_t>(i)].adjoint()) == 0.0);
            for (Index j = 0; j < n * n; ++j) {
                gram(i, j) =
                    trace_of_product(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]).real();
            }
        }
        CHECK(Eigen::FullPivLU<RealMatrix>(gram).rank() == n * n);
    }
}

TEST_CASE("Lattice operations on coordinate projectors match set operations", "[operator_core]") {
    // Oracle: coordinate projectors meet/join like the index sets.
    const Index n = 4;
    for (unsigned a = 0; a < 16; ++a) {
        for (unsigned b = 0; b < 16; ++b) {
            auto coord = [&](unsigned mask) {
                RealVector d = RealVector::Zero(n);
                for (Index i = 0; i < n; ++i) {
                    d(i) = (mask >> i) & 1U;
                }
                return Projector::from_matrix(d.cast<Complex>().asDiagonal());
            };
            const Projector pa = coord(a);
            const Projector pb = coord(b);
            CHECK(max_abs(lattice_meet(pa, pb).matrix() - coord(a & b).matrix()) < 1e-12);
            CHECK(max_abs(lattice_join(pa, pb).matrix() - coord(a | b).matrix()) < 1e-12);
            CHECK(projector_leq(pa, pb) == ((a & ~b) == 0));
            CHECK(max_abs(orthocomplement(pa).matrix() - coord(~a & 15U).matrix()) < 1e-12);
        }
    }
}

TEST_CASE("Lattice of two non-commuting lines in C^2", "[operator_core]") {
    Vector plus(2);
    plus << 1.0, 1.0;
    const auto e1 = ProjectivePoint::basis(2, 0);
    const auto p = ProjectivePoint::from_vector(plus);
    CHECK(max_abs(lattice_meet(e1, p).matrix()) < 1e-12);
    CHECK(max_abs(lattice_join(e1, p).matrix() - Matrix::Identity(2, 2)) < 1e-12);
    CHECK_FALSE(commutes(e1, p, 1e-9));
    CHECK_FALSE(compatibility_decomposition(e1, p).has_value());
}

TEST_CASE("De Morgan and compatibility decomposition on random projectors", "[operator_core][property]") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = 2 + trial % 4;
        const Projector p = random_projector(n, 1 + trial % (n - 1), rng);
        const Projector q = random_projector(n, 1 + (trial / 3) % (n - 1), rng);
        const Matrix lhs = lattice_join(p, q).matrix();
        const Matrix rhs = orthocomplement(lattice_meet(orthocomplement(p), orthocomplement(q))).matrix();
        CHECK(max_abs(lhs - rhs) < 1e-9);

        // Commuting pair from a shared eigenbasis.
        const Matrix u = random_unitary(n, rng);
        Matrix ca(n, 1);
        ca.col(0) = u.col(0);
        Matrix cb(n, 2);
        cb.col(0) = u.col(0);
        cb.col(1) = u.col(1);
        const auto a = Projector::onto(ca, n);
        const auto b = Projector::onto(cb, n);
        const auto d = compatibility_decomposition(a, b);
        REQUIRE(d.has_value());
        CHECK(max_abs(d->common.matrix() - a.matrix()) < 1e-9);
        CHECK(max_abs(d->only_p.matrix()) < 1e-9);
        CHECK(d->only_q.rank() == 1);
    }
}

TEST_CASE("Nearest point recovers a perturbed ray", "[operator_core]") {
    Rng rng(4);
    const auto p = haar_random_point(4, rng);
    const Matrix noisy = p.matrix() + 1e-7 * random_hermitian(4, 1.0, rng).matrix();
    CHECK(max_abs(nearest_point(noisy).matrix() - p.matrix()) < 1e-6);
    const auto pts = eigenvector_points(HermitianOperator::diagonal(RealVector::LinSpaced(3, 0.0, 2.0)));
    REQUIRE(pts.size() == 3);
    CHECK(std::abs(pts[0].matrix()(0, 0)) == Catch::Approx(1.0));
}
