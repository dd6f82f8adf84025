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

#include <coarsetop/duality/orientation.hpp>
#include <coarsetop/generators/corpus.hpp>

#include <set>

using namespace coarsetop;

namespace {

AbelianGroup Z(std::size_t r) { return {r, {}}; }

AbelianGroup Ht(const ComplexPtr& X, int k) { return homology(Subcomplex::whole(X), k, true).group; }

} // namespace

TEST_CASE("presentation parsing") {
    auto P = parse_presentation(" a, b | abAB , aA ");
    CHECK(P.generators == "ab");
    REQUIRE(P.relators.size() == 1);
    CHECK(P.relators[0] == "abAB");
    CHECK(free_reduce("abBAc") == "c");
    CHECK(inverse_word("abC") == "cBA");
    CHECK(bs_presentation(1, 1).relators[0] == "baBA");
    CHECK(bs_presentation(2, 3).relators[0] == "baaBAAA");
    CHECK_THROWS_AS(parse_presentation("a, A |"), Error);
    CHECK_THROWS_AS(parse_presentation("a, a |"), Error);
    CHECK_THROWS_AS(parse_presentation("a | ab"), Error);
}

TEST_CASE("Cayley windows of free and abelian groups") {
    // word balls: 1 + 4 + 12 in F2, 2r^2 + 2r + 1 in Z^2
    auto F = cayley_2complex(parse_presentation("a,b |"), 2);
    CHECK(F.exact);
    CHECK(F.group_vertices == 17);
    CHECK(F.X->dim() == 1);
    for (int k = 0; k <= 1; ++k) CHECK(Ht(F.X, k) == Z(0));

    for (int r : {3, 5}) {
        auto W = cayley_2complex(parse_presentation("a,b | abAB"), r);
        CHECK(W.exact);
        CHECK(W.group_vertices == static_cast<std::size_t>(2 * r * r + 2 * r + 1));
        for (int k = 0; k <= 2; ++k) CHECK(Ht(W.X, k) == Z(0));
        CHECK_FALSE(W.X->frontier().empty());
    }
}

TEST_CASE("Cayley complexes of finite groups match the Euler characteristic") {
    // universal cover of the presentation complex: chi = |G| (1 - gens + rels)
    struct Case { const char* text; std::size_t order; long long chi_one; };
    for (auto c : {Case{"a | aa", 2, 1}, Case{"a | aaa", 3, 1}, Case{"a,b | aa,bb,abab", 4, 2}}) {
        auto W = cayley_2complex(parse_presentation(c.text), 4);
        INFO(c.text);
        CHECK(W.exact);
        CHECK(W.group_vertices == c.order);
        CHECK(W.X->frontier().empty());
        CHECK(Ht(W.X, 0) == Z(0));
        CHECK(Ht(W.X, 1) == Z(0));
        CHECK(Ht(W.X, 2) == Z(static_cast<std::size_t>(c.order * c.chi_one - 1)));
    }
}

TEST_CASE("rewriting is exact for BS(1,1) and bounded for BS(1,2)") {
    auto W = cayley_2complex(bs_presentation(1, 1), 3);
    CHECK(W.exact);
    CHECK(W.group_vertices == 25);
    Rewriter rw(bs_presentation(1, 2));
    CHECK_FALSE(rw.complete());
    CHECK(rw.rule_count() > 0);
}

TEST_CASE("Bass-Serre tree valences") {
    for (auto [p, q] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{1, 1}}) {
        auto T = bass_serre_tree(p, q, 3);
        INFO("p = " << p << " q = " << q);
        CHECK(T.parent[0] == -1);
        for (std::size_t v = 0; v < T.size(); ++v) {
            int u = static_cast<int>(v);
            if (T.leaf(u)) {
                CHECK(T.level[v] == 3);
                continue;
            }
            CHECK(T.incoming(u) == p);
            CHECK(T.outgoing(u) == q);
            CHECK(T.rotation[v].size() == static_cast<std::size_t>(p + q));
        }
        CHECK(T.edges.size() + 1 == T.size());
    }
    CHECK_THROWS_AS(bass_serre_tree(0, 2, 2), Error);
}

TEST_CASE("pruning keeps tips as leaves and rotation order") {
    auto T = bass_serre_tree(2, 3, 4);
    auto rays = default_rays(bass_serre_tree(2, 3, 2), 3);
    std::vector<int> tips;
    for (const auto& r : rays) tips.push_back(r.back());
    auto P = prune_below(T, tips);
    CHECK(P.size() < T.size());
    CHECK(P.edges.size() + 1 == P.size());
    for (std::size_t v = 0; v < P.size(); ++v)
        if (P.leaf(static_cast<int>(v))) CHECK(P.level[v] >= 2);
}

TEST_CASE("the BS strip complex is a contractible 2-complex") {
    auto S = bs_sigma(2, 3, 2, 3);
    auto a = audit_strips(S);
    CHECK(a.ok());
    CHECK(a.strips == S.tree.edges.size());
    CHECK(S.X->dim() == 2);
    for (int k = 0; k <= 2; ++k) CHECK(Ht(S.X, k) == Z(0));
    CHECK_THROWS_AS(bs_sigma(2, 3, 2, 2), Error);
}

TEST_CASE("glued BS rays have H_c^2 of rank rays - 1") {
    auto S = bs_sigma(2, 3, 3, 3);
    auto rays = default_rays(S.tree, 3);
    REQUIRE(rays.size() == 3);
    std::set<int> first;
    for (const auto& r : rays) first.insert(r[1]);
    CHECK(first.size() == 3);
    auto Y = bs_rays_Y(S, rays);
    Window W(Y.Y.Y);
    auto all = Subcomplex::whole(Y.Y.Y);
    for (int k = 0; k <= 2; ++k) CHECK(Ht(Y.Y.Y, k) == Z(0));
    CHECK(cohomology_c(W, all, 2).group == Z(2));
}

TEST_CASE("the BS embedding is a 3-manifold window") {
    auto B = embed_sigma_r3(1, 2, 2, 2, 2);
    CHECK(B.X->dim() == 3);
    CHECK(B.sigma_to_x.size() == B.sigma.X->vertex_count());
    auto la = manifold_audit(*B.X);
    CHECK(la.ok());
    CHECK(la.checked == B.X->vertex_count());
    for (int k = 0; k <= 3; ++k) CHECK(Ht(B.X, k) == Z(0));
    auto img = B.image(Subcomplex::whole(B.sigma.X));
    CHECK(img.size(0) == B.sigma.X->vertex_count());
}

TEST_CASE("pruned ray windows are manifolds") {
    auto R = bs_ray_window(2, 3, 3, 1, 3, 3, 3);
    CHECK(R.rays.size() == 3);
    CHECK(audit_strips(R.B.sigma).ok());
    CHECK(manifold_audit(*R.B.X).ok());
}

TEST_CASE("grid subcomplex shapes") {
    auto X = grid_window(3, 3);
    for (int k = 2; k <= 6; ++k) {
        auto book = halfplane_book(X, k);
        CHECK(components(book).size() == 1);
        for (int i = 0; i < k; ++i) CHECK(book_sheet(X, k, i).subset_of(book));
    }
    CHECK_THROWS_AS(halfplane_book(X, 7), Error);
    auto X2 = grid_window(2, 4);
    auto tripod = halfplane_book(X2, 3);
    CHECK(tripod.size(0) == 13);
    CHECK(Ht(extract_subcomplex(tripod).Y, 1) == Z(0));
    CHECK(Ht(extract_subcomplex(grid_ring(X2, 2)).Y, 1) == Z(1));
    CHECK(grid_net(X2, 2, 4).size(0) == 25);
    CHECK(grid_ball(X2, 1).size(0) == 9);
    CHECK_THROWS_AS(hyperplane(X2, 2, 0), Error);
    CHECK_THROWS_AS(halfplane_book(grid_window(1, 3), 3), Error);
}

TEST_CASE("geometry stats stay bounded as the window grows") {
    auto a = geometry_stats(*grid_window(3, 2));
    auto b = geometry_stats(*grid_window(3, 4));
    CHECK(a.dim == 3);
    CHECK(a.max_link_simplices == b.max_link_simplices);
}

TEST_CASE("corpus: boundary squared, Mayer-Vietoris and window stability") {
    auto entries = corpus();
    CHECK(entries.size() >= 20);
    std::set<std::string> names;
    for (const auto& e : entries) {
        names.insert(e.name);
        auto c = check_corpus_entry(e);
        INFO(e.name);
        CHECK(c.dd_defects == 0);
        CHECK(c.mv_exact);
        CHECK(c.stable());
    }
    CHECK(names.size() == entries.size());
}
