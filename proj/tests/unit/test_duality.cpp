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

#include <coarsetop/duality/annulus.hpp>
#include <coarsetop/duality/coarse_ad.hpp>
#include <coarsetop/duality/cyclic_order.hpp>
#include <coarsetop/duality/orientation.hpp>
#include <coarsetop/duality/pd_maps.hpp>

#include <filesystem>

using namespace coarsetop;

namespace {

AbelianGroup Z(std::size_t r) { return {r, {}}; }

std::shared_ptr<const PoincareCertificate> plane_certificate() {
    static auto cert = std::make_shared<const PoincareCertificate>(build_poincare_certificate(2));
    return cert;
}

std::vector<int> range(int lo, int hi) {
    std::vector<int> r;
    for (int i = lo; i <= hi; ++i) r.push_back(i);
    return r;
}

} // namespace

TEST_CASE("simplex images carry orientation signs") {
    auto X = make_complex({{0, 1, 2}}, {});
    auto a = simplex_image(*X, {0, 1, 2});
    auto b = simplex_image(*X, {1, 0, 2});
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->terms[0].coef == 1);
    CHECK(b->terms[0].coef == -1);
    auto degenerate = simplex_image(*X, {0, 0, 2});
    REQUIRE(degenerate);
    CHECK(degenerate->terms.empty());
    auto Y = make_complex({{0, 1}, {1, 2}}, {});
    CHECK_FALSE(simplex_image(*Y, {0, 2}).has_value());
}

TEST_CASE("orientation classes and link audits") {
    auto X = grid_window(2, 3);
    auto o = orientation_class(*X);
    CHECK(o.sign.size() == X->count(2));
    auto c = o.fundamental();
    auto b = X->boundary(c);
    // the boundary of the fundamental chain lives on the frontier
    for (const auto& t : b.terms) {
        auto v = X->vertices_of(1, t.index);
        CHECK((X->is_frontier(v[0]) && X->is_frontier(v[1])));
    }
    CHECK(manifold_audit(*grid_window(3, 2)).ok());
    auto book = extract_subcomplex(halfplane_book(grid_window(3, 2), 3)).Y;
    CHECK_FALSE(manifold_audit(*book).ok());
    CHECK_THROWS_AS(orientation_class(*book), Error);
}

TEST_CASE("plane certificate identities hold exactly") {
    auto cert = plane_certificate();
    for (int W : {8, 12}) {
        auto X = grid_window(2, W);
        auto a = audit_certificate(*cert, X);
        CHECK(a.exact());
        CHECK(a.checked[0] > 0);
        auto m = measure_certificate(*cert, X);
        CHECK(m.D0() == 1);
    }
}

TEST_CASE("certificates survive a json round trip") {
    auto cert = plane_certificate();
    auto path = std::filesystem::temp_directory_path() / "coarsetop_test_cert.json";
    save_certificate(*cert, path.string());
    auto back = load_certificate(path.string());
    std::filesystem::remove(path);
    CHECK(certificate_to_json(back) == certificate_to_json(*cert));
    auto X = grid_window(2, 8);
    CHECK(audit_certificate(back, X).exact());
}

TEST_CASE("PD variants for a vertex are approximately mono and epi") {
    auto X = grid_window(2, 14);
    Window W(X);
    auto s = make_duality_setup(W, plane_certificate());
    CHECK(s.D0 == 1);
    auto K = grid_point(X);
    for (auto v : {PdVariant::e1, PdVariant::e2, PdVariant::e3, PdVariant::e4}) {
        auto c = check_pd_variant(s, K, 1, v, true, range(1, 6));
        INFO(c.label);
        CHECK(c.compatible);
        CHECK(c.defined > 0);
        CHECK(c.verified());
        CHECK(c.max_gap() <= 2 * s.D0);
    }
}

TEST_CASE("Alexander variants for a line") {
    auto X = grid_window(2, 14);
    Window W(X);
    auto s = make_duality_setup(W, plane_certificate());
    auto K = hyperplane(X, 0, 0);
    for (auto v : {AdVariant::f1, AdVariant::f2, AdVariant::f3, AdVariant::f4}) {
        auto c = check_alexander_variant(s, K, 0, v, range(1, 6));
        INFO(c.label);
        CHECK(c.compatible);
        CHECK(c.verified());
    }
}

TEST_CASE("pushforward of a line into the plane") {
    auto e = grid_embedding(1, 2, 12, 12);
    auto p = pushforward_g(e);
    CHECK(p.undefined == 0);
    auto h = gf_homotopy(e, p);
    CHECK(h.exact());
    CHECK(compare_projection(e, p).ok());
}

TEST_CASE("coarse Alexander duality for a line in the plane") {
    auto e = grid_embedding(1, 2, 14, 14);
    Window W(e.X);
    auto s = make_duality_setup(W, plane_certificate());
    auto r = verify_coarse_ad(s, e, 0, range(1, 5));
    CHECK(r.part1.status == Status::verified);
    CHECK(r.part2.status == Status::verified);
    for (auto [R, Rp] : r.R_prime) CHECK(Rp >= R);
}

TEST_CASE("deep component counts follow H^{n-1}_c") {
    struct Case { const char* name; Subcomplex (*K)(const ComplexPtr&); std::size_t deep; };
    Case cases[] = {
        {"point", [](const ComplexPtr& X) { return grid_point(X); }, 1},
        {"line", [](const ComplexPtr& X) { return hyperplane(X, 1, 0); }, 2},
        {"tripod", [](const ComplexPtr& X) { return halfplane_book(X, 3); }, 3},
    };
    for (const auto& c : cases) {
        auto X = grid_window(2, 16);
        auto rep = deep_count_vs_cohomology(extract_subcomplex(c.K(X)), range(1, 4));
        INFO(c.name);
        CHECK(rep.predicted == c.deep);
        CHECK(rep.agrees());
    }
}

TEST_CASE("bilateral proximity is constant") {
    auto X = grid_window(2, 16);
    for (auto K : {grid_point(X), hyperplane(X, 1, 0)}) {
        auto r = bilateral_proximity(K, 3, 3);
        CHECK(r.constant);
        CHECK(r.D > 0);
    }
}

TEST_CASE("annuli around a vertex carry one loop") {
    auto X = grid_window(2, 16);
    Window W(X);
    NeighborhoodFiltration filt(grid_point(X));
    auto a = annulus_homology(W, filt, 2, 5, 1);
    CHECK(a.group.group == Z(1));
    CHECK(a.widening_iso);
    CHECK(annulus_homology(W, filt, 2, 5, 0).group.group == Z(0));
    auto na = nested_annuli(W, grid_point(X), 1, 4, 10);
    CHECK(na.complete);
    CHECK(na.ok());
}

TEST_CASE("annuli around a line split in two") {
    auto X = grid_window(2, 16);
    Window W(X);
    NeighborhoodFiltration filt(hyperplane(X, 0, 0));
    auto a = annulus_homology(W, filt, 1, 4, 0);
    CHECK(a.group.group == Z(1));
    CHECK(annulus_homology(W, filt, 1, 4, 1).group.group == Z(0));
}

TEST_CASE("cyclic order of a three-sheet book") {
    auto X = grid_window(3, 8);
    Window W(X);
    std::vector<Subcomplex> sheets;
    for (int i = 0; i < 3; ++i) sheets.push_back(book_sheet(X, 3, i));
    auto c = cyclic_order_experiment(W, sheets, 1, 1);
    CHECK(c.deep == 3);
    CHECK(c.consistent());
    REQUIRE(c.order.size() == 3);
    CHECK(c.order[0] == 0);
    for (const auto& a : c.adjacency) CHECK(a.sheets.size() == 2);
}
