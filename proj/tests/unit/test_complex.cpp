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

#include <coarsetop/core/complex_io.hpp>
#include <coarsetop/core/geometry.hpp>
#include <coarsetop/generators/grid.hpp>

#include <filesystem>

using namespace coarsetop;

TEST_CASE("closure of a triangle and a dangling edge") {
    auto X = make_complex({{10, 20, 30}, {30, 40}}, {40});
    CHECK(X->dim() == 2);
    CHECK(X->count(0) == 4);
    CHECK(X->count(1) == 4);
    CHECK(X->count(2) == 1);
    CHECK(X->labels() == std::vector<VertexLabel>{10, 20, 30, 40});
    CHECK(X->frontier().size() == 1);
    CHECK(X->is_frontier(*X->vertex_of_label(40)));
    CHECK_FALSE(X->vertex_of_label(25).has_value());

    auto maxs = X->maximal_simplices();
    CHECK(maxs.size() == 2);
}

TEST_CASE("faces omit one vertex in order") {
    auto X = make_complex({{0, 1, 2}}, {});
    auto tri = X->vertices_of(2, 0);
    auto faces = X->faces_of(2, 0);
    for (int j = 0; j <= 2; ++j) {
        auto f = X->vertices_of(1, faces[j]);
        std::vector<Vertex> expect;
        for (int i = 0; i <= 2; ++i) if (i != j) expect.push_back(tri[i]);
        CHECK(std::vector<Vertex>(f.begin(), f.end()) == expect);
    }
    Chain c{2, {{0, 1}}};
    auto b = X->boundary(c);
    CHECK(b.terms.size() == 3);
    CHECK(X->boundary(b).terms.empty());
}

TEST_CASE("find locates simplices by sorted vertices") {
    auto X = grid_window(2, 2);
    for (int d = 0; d <= 2; ++d) {
        for (std::size_t i = 0; i < X->count(d); ++i) {
            auto v = X->vertices_of(d, static_cast<SimplexIndex>(i));
            auto hit = X->find(v);
            REQUIRE(hit.has_value());
            CHECK(*hit == static_cast<SimplexIndex>(i));
        }
    }
    std::vector<Vertex> missing{0, static_cast<Vertex>(X->vertex_count() - 1)};
    CHECK_FALSE(X->find(missing).has_value());
}

TEST_CASE("subcomplex algebra") {
    auto X = grid_window(2, 3);
    auto A = hyperplane(X, 0, 0);
    auto B = hyperplane(X, 1, 0);
    auto U = A.unite(B);
    auto I = A.intersect(B);
    CHECK(A.size(0) == 7);
    CHECK(U.size(0) == 13);
    CHECK(I.size(0) == 1);
    CHECK(I.subset_of(A));
    CHECK(A.subset_of(U));
    CHECK(U.is_closed());
    CHECK(components(U).size() == 1);
    CHECK(components(A.unite(hyperplane(X, 0, 2))).size() == 2);
    CHECK(Subcomplex::empty(X).is_empty());
}

TEST_CASE("grid window counts") {
    for (int n = 1; n <= 3; ++n) {
        int W = 3;
        auto X = grid_window(n, W);
        std::size_t side = 2 * W + 1, cubes = 2 * W, verts = 1, tops = 1, fact = 1;
        for (int i = 1; i <= n; ++i) {
            verts *= side;
            tops *= cubes;
            fact *= i;
        }
        CHECK(X->vertex_count() == verts);
        CHECK(X->count(n) == tops * fact);
        std::size_t inner = 1;
        for (int i = 0; i < n; ++i) inner *= side - 2;
        CHECK(X->frontier().size() == verts - inner);
    }
    CHECK_THROWS_AS(grid_window(4, 2), Error);
    CHECK_THROWS_AS(grid_window(2, 0), Error);
}

TEST_CASE("kuhn_distance matches BFS on the 1-skeleton") {
    for (int n = 1; n <= 3; ++n) {
        int W = n == 3 ? 3 : 5;
        auto X = grid_window(n, W);
        Grid g = grid_of(*X);
        REQUIRE(g.n == n);
        REQUIRE(g.W == W);
        std::vector<std::vector<int>> sources{std::vector<int>(n, 0), std::vector<int>(n, -W)};
        sources.push_back(std::vector<int>(n, W));
        sources.back()[0] = -1;
        for (const auto& s : sources) {
            Vertex v = g.vertex(s);
            auto dist = vertex_distances(*X, {v});
            for (std::size_t w = 0; w < X->vertex_count(); ++w) {
                auto x = g.point(static_cast<Vertex>(w));
                REQUIRE(dist[w] == kuhn_distance(s, x));
            }
        }
    }
}

TEST_CASE("neighborhoods are Kuhn balls") {
    auto X = grid_window(2, 6);
    Grid g = grid_of(*X);
    auto K = grid_point(X);
    NeighborhoodFiltration filt(K);
    std::vector<int> origin{0, 0};
    for (int R = 0; R <= 3; ++R) {
        auto N = filt.neighborhood(R);
        CHECK(N.is_closed());
        for (std::size_t v = 0; v < X->vertex_count(); ++v) {
            int d = kuhn_distance(origin, g.point(static_cast<Vertex>(v)));
            // N_R holds every simplex meeting the (R-1)-ball, so its vertices reach distance R.
            bool expect = R == 0 ? d == 0 : d <= R;
            CHECK(N.contains(0, static_cast<SimplexIndex>(v)) == expect);
        }
        auto C = filt.complement(R);
        CHECK(C.is_closed());
        CHECK(C.unite(N) == Subcomplex::whole(X));
    }
}

TEST_CASE("frontier distances and valid radius") {
    auto X = grid_window(2, 8);
    auto fd = frontier_distances(*X);
    Grid g = grid_of(*X);
    for (std::size_t v = 0; v < X->vertex_count(); ++v) {
        auto x = g.point(static_cast<Vertex>(v));
        CHECK(fd[v] == 8 - std::max(std::abs(x[0]), std::abs(x[1])));
    }
    CHECK(valid_radius(grid_point(X)) > 0);
    CHECK(valid_radius(grid_point(X)) < 8);
}

TEST_CASE("json round trip keeps labels, frontier and coordinates") {
    auto X = grid_window(2, 2);
    auto j = complex_to_json(*X);
    auto Y = complex_from_json(j);
    CHECK(Y.labels() == X->labels());
    CHECK(Y.frontier() == X->frontier());
    CHECK(Y.count(2) == X->count(2));
    CHECK(Y.coordinate_dim() == 2);
    for (std::size_t v = 0; v < Y.vertex_count(); ++v) {
        auto a = X->coordinates(static_cast<Vertex>(v));
        auto b = Y.coordinates(static_cast<Vertex>(v));
        CHECK(std::equal(a.begin(), a.end(), b.begin()));
    }

    auto path = std::filesystem::temp_directory_path() / "coarsetop_test_complex.json";
    save_complex(*X, path.string());
    auto Z = load_complex(path.string());
    CHECK(Z.count(1) == X->count(1));
    std::filesystem::remove(path);
}

TEST_CASE("malformed complex files are rejected") {
    using nlohmann::json;
    CHECK_THROWS_AS(complex_from_json(json::object()), Error);
    CHECK_THROWS_AS(complex_from_json(json::parse(R"({"maximal_simplices": [[0, 1]], "dim": 2})")), Error);
    CHECK_THROWS_AS(complex_from_json(json::parse(R"({"maximal_simplices": [[0, 1]], "vertices": [0, 1, 2]})")), Error);
    CHECK_THROWS_AS(complex_from_json(json::parse(R"({"maximal_simplices": [[]]})")), Error);
    CHECK_THROWS_AS(load_complex("/nonexistent/coarsetop.json"), Error);
}
