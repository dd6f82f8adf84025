// Copyright 2026 The coarsetop Authors
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

#include <catch2/catch_amalgamated.hpp>

#include <coarsetop/generators/corpus.hpp>
#include <coarsetop/homology/mayer_vietoris.hpp>

#include <random>

using namespace coarsetop;

namespace {

BigMatrix big(std::size_t r, std::size_t c, std::initializer_list<long long> v) {
    BigMatrix A(r, c);
    std::size_t k = 0;
    for (long long x : v) A.a[k++] = x;
    return A;
}

void check_smith(const BigMatrix& A) {
    auto s = smith_normal_form(A);
    CHECK(s.U * A * s.V == smith_diagonal(s, A.rows, A.cols));
    CHECK(s.U * s.Uinv == BigMatrix::identity(A.rows));
    CHECK(s.V * s.Vinv == BigMatrix::identity(A.cols));
    for (std::size_t i = 0; i < s.rank; ++i) {
        CHECK(s.diagonal[i] > 0);
        if (i + 1 < s.rank) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
    }
}

AbelianGroup H(const ComplexPtr& X, int k, bool reduced = false) {
    return homology(Subcomplex::whole(X), k, reduced).group;
}

AbelianGroup Z(std::size_t r, std::vector<BigInt> t = {}) { return {r, std::move(t)}; }

} // namespace

TEST_CASE("Smith normal form of a textbook matrix") {
    auto A = big(3, 3, {2, 4, 4, -6, 6, 12, 10, -4, -16});
    auto s = smith_normal_form(A);
    REQUIRE(s.rank == 3);
    CHECK(s.diagonal == std::vector<BigInt>{2, 6, 12});
    check_smith(A);
}

TEST_CASE("Smith normal form of random and rank-deficient matrices") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-9, 9), shape(1, 6);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = shape(rng), c = shape(rng);
        BigMatrix A(r, c);
        for (auto& x : A.a) x = coef(rng);
        if (trial % 4 == 0 && r > 1)
            for (std::size_t j = 0; j < c; ++j) A(r - 1, j) = A(0, j) * 3;
        check_smith(A);
    }
}

TEST_CASE("Smith normal form beyond 64-bit products") {
    BigInt t = BigInt(1) << 40;
    BigMatrix A(2, 2);
    A(0, 0) = t;
    A(0, 1) = 1;
    A(1, 0) = 1;
    A(1, 1) = t;
    auto s = smith_normal_form(A);
    REQUIRE(s.rank == 2);
    CHECK(s.diagonal[0] == 1);
    CHECK(s.diagonal[1] == t * t - 1);
    check_smith(A);
}

TEST_CASE("integer solve and kernel") {
    auto A = big(2, 3, {2, 4, 6, 1, 3, 5});
    auto x = solve_integer(A, {BigInt(4), BigInt(3)});
    REQUIRE(x.has_value());
    CHECK(A * *x == BigVector{4, 3});
    CHECK_FALSE(solve_integer(big(1, 1, {2}), {BigInt(1)}).has_value());
    auto K = kernel_basis(A);
    CHECK(K.cols == 1);
    CHECK((A * K).is_zero());
}

TEST_CASE("homology of closed surfaces and spheres") {
    auto T = detail::torus7();
    CHECK(H(T, 0) == Z(1));
    CHECK(H(T, 1) == Z(2));
    CHECK(H(T, 2) == Z(1));

    auto P = detail::rp2_6();
    CHECK(H(P, 0) == Z(1));
    CHECK(H(P, 1) == Z(0, {2}));
    CHECK(H(P, 2) == Z(0));
    CHECK(cohomology(Subcomplex::whole(P), 1).group == Z(0));
    CHECK(cohomology(Subcomplex::whole(P), 2).group == Z(0, {2}));

    for (int n = 1; n <= 4; ++n) {
        auto S = detail::boundary_of_simplex(n);
        for (int k = 0; k <= n; ++k) CHECK(H(S, k, true) == Z(k == n ? 1 : 0));
    }
}

TEST_CASE("reduced homology and degree -1") {
    auto two = make_complex({{0}, {1}}, {});
    CHECK(H(two, 0) == Z(2));
    CHECK(H(two, 0, true) == Z(1));
    auto X = make_complex({{0, 1}}, {});
    auto none = Subcomplex::empty(X);
    CHECK(homology(none, -1, true).group == Z(1));
    CHECK(homology(Subcomplex::whole(X), -1, true).group == Z(0));
}

TEST_CASE("relative homology of a disk rel boundary") {
    auto X = make_complex({{0, 1, 2}}, {});
    auto D = Subcomplex::whole(X);
    std::vector<std::vector<std::uint8_t>> edges{{1, 1, 1}, {1, 1, 1}, {0}};
    auto B = Subcomplex::closure(X, edges);
    CHECK(relative_homology(D, B, 2).group == Z(1));
    CHECK(relative_homology(D, B, 1).group == Z(0));
    CHECK(relative_homology(D, B, 0).group == Z(0));
}

TEST_CASE("Euler characteristic agrees with cell counts") {
    for (const auto& e : corpus()) {
        auto X = e.build(e.windows[0]);
        if (X->vertex_count() > 400) continue;
        long long chi_cells = 0, chi_h = 0;
        for (int k = 0; k <= X->dim(); ++k) {
            long long sign = k % 2 ? -1 : 1;
            chi_cells += sign * static_cast<long long>(X->count(k));
            chi_h += sign * static_cast<long long>(H(X, k).free_rank);
        }
        INFO(e.name);
        CHECK(chi_cells == chi_h);
    }
}

TEST_CASE("boundary of boundary vanishes") {
    CHECK(boundary_squared_defects(*grid_window(3, 2)) == 0);
    CHECK(boundary_squared_defects(*detail::boundary_of_simplex(5)) == 0);
    CHECK(boundary_squared_defects(*bs_sigma(2, 3, 2, 3).X) == 0);
}

TEST_CASE("Mayer-Vietoris for a circle split into arcs") {
    auto C = make_complex({{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {});
    auto A = Subcomplex::induced(C, {1, 1, 1, 0});
    auto B = Subcomplex::induced(C, {1, 0, 1, 1});
    auto r = mayer_vietoris_check(A, B, 1);
    CHECK(r.exact);
    CHECK(r.failures.empty());
    CHECK(is_isomorphism(r.connecting[1]));
}

TEST_CASE("Mayer-Vietoris on median splits") {
    for (auto X : {detail::torus7(), detail::rp2_6(), grid_window(2, 3)}) {
        auto [A, B] = median_split(X);
        CHECK(A.unite(B) == Subcomplex::whole(X));
        auto r = mayer_vietoris_check(A, B, X->dim());
        CHECK(r.exact);
    }
}

TEST_CASE("windowed compactly supported cohomology") {
    auto X = grid_window(2, 6);
    Window W(X);
    auto S = Subcomplex::whole(X);
    CHECK(cohomology_c(W, S, 0).group == Z(0));
    CHECK(cohomology_c(W, S, 1).group == Z(0));
    auto top = cohomology_c(W, S, 2);
    CHECK(top.group == Z(1));
    CHECK(top.windowed);

    auto half = induced_by_coordinates(X, [](auto x) { return x[1] >= 0; });
    for (int k = 0; k <= 2; ++k) CHECK(cohomology_c(W, half, k).group == Z(0));

    auto line = hyperplane(X, 1, 0);
    CHECK(cohomology_c(W, line, 1).group == Z(1));
}

TEST_CASE("induced maps of inclusions") {
    auto X = grid_window(2, 3);
    auto none = Subcomplex::empty(X);
    auto ring = grid_ring(X, 2);
    auto ring_plus = ring.unite(hyperplane(X, 0, 3));
    PairComplex a(ring, none, Theory::homology, true), b(ring_plus, none, Theory::homology, true);
    auto f = induced_map(a, b, 1);
    CHECK(f.source == Z(1));
    CHECK(is_injective(f));

    PairComplex disk(Subcomplex::whole(X), none, Theory::homology, true);
    auto g = induced_map(a, disk, 1);
    CHECK(g.is_zero());
}
