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

#include <coarsetop/generators/grid.hpp>
#include <coarsetop/towers/systems.hpp>

using namespace coarsetop;

namespace {

AbelianGroup Z(std::size_t r, std::vector<BigInt> t = {}) { return {r, std::move(t)}; }

GroupMap scalar(const AbelianGroup& g, long long c) {
    GroupMap m = GroupMap::identity(g);
    for (auto& x : m.matrix.a) x *= c;
    m.canonicalize();
    return m;
}

// Constant tower of g with every bonding map multiplication by c.
Tower constant_tower(const AbelianGroup& g, long long c, int n, Direction dir = Direction::inverse) {
    Tower T;
    T.direction = dir;
    for (int i = 0; i < n; ++i) {
        T.indices.push_back(i);
        T.groups.push_back({0, g, {}, false, "H"});
        if (i + 1 < n) T.maps.push_back(scalar(g, c));
    }
    return T;
}

TowerMorphism scalar_morphism(const Tower& A, const Tower& B, long long c) {
    TowerMorphism f{&A, &B, 0, {}};
    for (std::size_t i = 0; i < A.size(); ++i) f.maps.push_back(scalar(A.groups[i].group, c));
    return f;
}

std::vector<int> range(int lo, int hi) {
    std::vector<int> r;
    for (int i = lo; i <= hi; ++i) r.push_back(i);
    return r;
}

} // namespace

TEST_CASE("pro-zero on hand-built towers") {
    auto T4 = constant_tower(Z(0, {4}), 2, 6);
    auto v = is_pro_zero(T4);
    CHECK(v.status == Status::verified);
    CHECK(v.max_gap() == 2);

    auto Tz = constant_tower(Z(1), 2, 6);
    CHECK(is_pro_zero(Tz).status == Status::refuted);
    CHECK_FALSE(is_pro_zero(Tz).witness.empty());

    auto short_tower = constant_tower(Z(1), 1, 2);
    CHECK(is_pro_zero(short_tower).status == Status::inconclusive);
}

TEST_CASE("composites follow the tower direction") {
    auto T = constant_tower(Z(1), 3, 4);
    auto m = T.composite(0, 3);
    CHECK(m.matrix(0, 0) == 27);
    CHECK(T.composite(2, 2) == GroupMap::identity(Z(1)));
    CHECK_THROWS_AS(T.composite(2, 1), Error);
}

TEST_CASE("approximate mono and epi of scalar morphisms") {
    auto A = constant_tower(Z(1), 1, 6);
    auto twice = scalar_morphism(A, A, 2);
    CHECK(twice.compatible());
    CHECK(check_approx_mono(twice).status == Status::verified);
    CHECK(check_approx_epi(twice).status == Status::refuted);

    auto id = identity_morphism(A);
    CHECK(check_approx_mono(id).status == Status::verified);
    CHECK(check_approx_epi(id).status == Status::verified);
    CHECK(check_approx_mono(id).max_gap() == 0);

    auto zero = scalar_morphism(A, A, 0);
    CHECK(check_approx_mono(zero).status == Status::refuted);

    // Killing torsion two steps late still counts as approximately mono.
    auto B = constant_tower(Z(0, {4}), 2, 6);
    auto z = scalar_morphism(B, B, 0);
    auto mono = check_approx_mono(z);
    CHECK(mono.status == Status::verified);
    CHECK(mono.max_gap() == 2);

    auto h = compose(twice, twice);
    CHECK(h.maps[0]->matrix(0, 0) == 4);
}

TEST_CASE("hyperplane complements have two stable deep components") {
    auto X = grid_window(2, 12);
    auto K = hyperplane(X, 1, 0);
    auto st = component_stability(K, range(1, 5));
    CHECK(st.status == Status::verified);
    for (std::size_t i = 0; i < st.R.size(); ++i) {
        CHECK(st.deep_counts[i] == 2);
        CHECK(st.stable[i]);
    }
    CHECK(st.stabilization_radius == 1);

    Window W(X);
    auto T = complement_tower(W, K, 0, Kind::Hred, range(1, 5));
    for (const auto& g : T.groups) CHECK(g.group == Z(1));
    auto [R0, v] = stabilization_radius(T);
    CHECK(R0 == 1);
    CHECK(v.status == Status::verified);
    CHECK(deep_homology(T, 0).group == Z(1));
}

TEST_CASE("parallel lines merge their middle component") {
    // lines at y = -3 and y = 3: N_R holds the vertices within distance R, so the strip dies at R = 3
    auto X = grid_window(2, 12);
    auto K = hyperplane(X, 1, -3).unite(hyperplane(X, 1, 3));
    auto st = component_stability(K, range(1, 6));
    for (std::size_t i = 0; i < st.R.size(); ++i) {
        INFO("R = " << st.R[i]);
        CHECK(st.deep_counts[i] == (st.R[i] < 3 ? 3u : 2u));
    }
    CHECK(st.stabilization_radius == 3);
}

TEST_CASE("a point has a persistent loop around it") {
    auto X = grid_window(2, 10);
    Window W(X);
    auto P = grid_point(X);
    auto T = complement_tower(W, P, 1, Kind::Hred, range(1, 6));
    for (const auto& g : T.groups) CHECK(g.group == Z(1));
    for (const auto& m : T.maps) CHECK(is_isomorphism(m));
    CHECK(is_pro_zero(T).status == Status::refuted);

    auto T0 = complement_tower(W, P, 0, Kind::Hred, range(1, 6));
    for (const auto& g : T0.groups) CHECK(g.group == Z(0));
}

TEST_CASE("neighborhoods of a point are acyclic") {
    auto X = grid_window(2, 10);
    Window W(X);
    auto P = grid_point(X);
    for (int k = 0; k <= 2; ++k) {
        auto T = neighborhood_tower(W, P, k, Kind::Hred, range(0, 4));
        for (const auto& g : T.groups) CHECK(g.group == Z(0));
    }
    // balls are compact, so H_c is ordinary cohomology
    auto Tc = neighborhood_tower(W, P, 2, Kind::Hc, range(1, 4));
    for (const auto& g : Tc.groups) {
        CHECK(g.group == Z(0));
        CHECK_FALSE(g.windowed);
    }
}

TEST_CASE("strips around a line carry H_c^1 with isomorphic restrictions") {
    auto X = grid_window(2, 10);
    Window W(X);
    auto K = hyperplane(X, 0, 0);
    auto Tc = neighborhood_tower(W, K, 1, Kind::Hc, range(1, 4));
    for (const auto& g : Tc.groups) {
        CHECK(g.group == Z(1));
        CHECK(g.windowed);
    }
    for (const auto& m : Tc.maps) CHECK(is_isomorphism(m));
}

TEST_CASE("a net has vanishing towers below degree two") {
    auto X = grid_window(2, 16);
    Window W(X);
    auto K = grid_net(X, 3, 6);
    auto Rs = range(0, 6);
    auto T0 = neighborhood_tower(W, K, 0, Kind::Hred, Rs);
    CHECK(T0.groups[0].group == Z(24));
    CHECK(T0.groups.back().group == Z(0));
    auto v = vanishing_tower_test(W, K, 2, Rs);
    REQUIRE(v.size() == 2);
    CHECK(v[0].status == Status::verified);
    CHECK(v[1].status == Status::verified);
}

TEST_CASE("relative towers of the pair (X, N_R)") {
    auto X = grid_window(2, 8);
    Window W(X);
    auto K = hyperplane(X, 0, 0);
    auto T = neighborhood_tower(W, K, 1, Kind::Hrel, range(1, 3));
    for (const auto& g : T.groups) CHECK(g.group == Z(0));
    auto T0 = neighborhood_tower(W, K, 0, Kind::Hrel, range(1, 3));
    for (const auto& g : T0.groups) CHECK(g.group == Z(0));
}
