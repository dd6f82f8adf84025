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

#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "../duality/annulus.hpp"
#include "../homology/mayer_vietoris.hpp"
#include "baumslag_solitar.hpp"
#include "grid.hpp"
#include "presentation.hpp"

namespace coarsetop {

// A generated complex at two window sizes (equal sizes for finite complexes).
struct CorpusEntry {
    std::string name;
    std::function<ComplexPtr(int)> build;
    std::array<int, 2> windows{};
};

namespace detail {

inline ComplexPtr standalone(const Subcomplex& K) { return extract_subcomplex(K).Y; }

inline ComplexPtr torus7() {
    std::vector<std::vector<VertexLabel>> t;
    for (int i = 0; i < 7; ++i) {
        t.push_back({i, (i + 1) % 7, (i + 3) % 7});
        t.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return make_complex(t, {});
}

inline ComplexPtr rp2_6() {
    return make_complex({{1, 2, 4}, {2, 3, 4}, {3, 4, 5}, {1, 3, 5}, {1, 2, 5},
                         {2, 5, 6}, {2, 3, 6}, {1, 3, 6}, {1, 4, 6}, {4, 5, 6}}, {});
}

inline ComplexPtr boundary_of_simplex(int n) {
    std::vector<std::vector<VertexLabel>> t;
    for (int skip = 0; skip <= n + 1; ++skip) {
        std::vector<VertexLabel> f;
        for (int v = 0; v <= n + 1; ++v) if (v != skip) f.push_back(v);
        t.push_back(f);
    }
    return make_complex(t, {});
}

inline ComplexPtr cayley(const Presentation& P, int radius) { return cayley_2complex(P, radius).X; }

} // namespace detail

inline std::vector<CorpusEntry> corpus() {
    using detail::standalone;
    std::vector<CorpusEntry> c;
    auto add = [&](std::string name, std::function<ComplexPtr(int)> f, int w0, int w1) {
        c.push_back({std::move(name), std::move(f), {w0, w1}});
    };
    add("grid1", [](int w) { return grid_window(1, w); }, 6, 10);
    add("grid2", [](int w) { return grid_window(2, w); }, 6, 10);
    add("grid3", [](int w) { return grid_window(3, w); }, 3, 4);
    add("line-in-plane", [](int w) { return standalone(hyperplane(grid_window(2, w), 1, 0)); }, 6, 10);
    add("plane-in-space", [](int w) { return standalone(hyperplane(grid_window(3, w), 2, 0)); }, 3, 4);
    add("tripod", [](int w) { return standalone(halfplane_book(grid_window(2, w), 3)); }, 6, 10);
    add("book3", [](int w) { return standalone(halfplane_book(grid_window(3, w), 3)); }, 3, 4);
    add("ring", [](int w) { return standalone(grid_ring(grid_window(2, w), w / 2)); }, 6, 10);
    add("annulus", [](int w) {
        auto X = grid_window(2, w);
        NeighborhoodFiltration filt(grid_point(X));
        return standalone(annulus(filt, 2, w / 2));
    }, 6, 10);
    add("disk-net-ball", [](int w) { return standalone(grid_ball(grid_window(2, w), w / 2)); }, 6, 10);
    add("free-r2", [](int r) { return detail::cayley(parse_presentation("a,b |"), r); }, 2, 3);
    add("z2-cayley", [](int r) { return detail::cayley(parse_presentation("a,b | abAB"), r); }, 3, 4);
    add("bs11-cayley", [](int r) { return detail::cayley(bs_presentation(1, 1), r); }, 3, 4);
    add("z-mod-2", [](int r) { return detail::cayley(parse_presentation("a | aa"), r); }, 2, 3);
    add("z-mod-3", [](int r) { return detail::cayley(parse_presentation("a | aaa"), r); }, 2, 3);
    add("sigma-bs11", [](int d) { return bs_sigma(1, 1, d, 3).X; }, 2, 3);
    add("sigma-bs12", [](int d) { return bs_sigma(1, 2, d, 3).X; }, 1, 2);
    add("sigma-bs23", [](int d) { return bs_sigma(2, 3, d, 3).X; }, 1, 2);
    add("bs23-rays", [](int d) {
        auto S = bs_sigma(2, 3, d, 3);
        return bs_rays_Y(S, default_rays(S.tree, 3)).Y.Y;
    }, 2, 3);
    add("bs12-r3", [](int d) { return embed_sigma_r3(1, 2, d, 2, 2).X; }, 1, 2);
    add("torus", [](int) { return detail::torus7(); }, 0, 0);
    add("rp2", [](int) { return detail::rp2_6(); }, 0, 0);
    add("sphere2", [](int) { return detail::boundary_of_simplex(2); }, 0, 0);
    add("sphere3", [](int) { return detail::boundary_of_simplex(3); }, 0, 0);
    return c;
}

// Top simplices split by their least vertex at the median; both halves are closed.
inline std::pair<Subcomplex, Subcomplex> median_split(const ComplexPtr& X) {
    int n = X->dim();
    std::vector<std::vector<std::uint8_t>> a(n + 1), b(n + 1);
    Vertex mid = static_cast<Vertex>(X->vertex_count() / 2);
    for (int d = 0; d <= n; ++d) {
        a[d].assign(X->count(d), 0);
        b[d].assign(X->count(d), 0);
        for (std::size_t i = 0; i < X->count(d); ++i) {
            auto s = static_cast<SimplexIndex>(i);
            if (!X->cofaces_of(d, s).empty()) continue;
            auto v = X->vertices_of(d, s);
            (v.front() < mid ? a : b)[d][i] = 1;
        }
    }
    return {Subcomplex::closure(X, a), Subcomplex::closure(X, b)};
}

struct CorpusCheck {
    std::string name;
    std::array<std::size_t, 2> vertices{};
    std::size_t dd_defects = 0;
    bool mv_exact = true;
    std::vector<std::string> mv_failures;
    std::vector<std::array<AbelianGroup, 2>> reduced;  // H~_k at both window sizes
    bool stable() const {
        for (const auto& g : reduced) if (!(g[0] == g[1])) return false;
        return true;
    }
    bool ok() const { return dd_defects == 0 && mv_exact && stable(); }
};

inline CorpusCheck check_corpus_entry(const CorpusEntry& e) {
    CorpusCheck out;
    out.name = e.name;
    std::array<ComplexPtr, 2> X{e.build(e.windows[0]), e.build(e.windows[1])};
    int top = std::max(X[0]->dim(), X[1]->dim());
    out.reduced.resize(top + 1);
    for (int w = 0; w < 2; ++w) {
        out.vertices[w] = X[w]->vertex_count();
        out.dd_defects += boundary_squared_defects(*X[w]);
        auto [A, B] = median_split(X[w]);
        auto mv = mayer_vietoris_check(A, B, X[w]->dim());
        if (!mv.exact) {
            out.mv_exact = false;
            for (auto& f : mv.failures) out.mv_failures.push_back(std::move(f));
        }
        for (int k = 0; k <= top; ++k) out.reduced[k][w] = homology(Subcomplex::whole(X[w]), k, true).group;
    }
    return out;
}

} // namespace coarsetop
