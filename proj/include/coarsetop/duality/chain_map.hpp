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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "../homology/smith.hpp"
#include "local.hpp"

namespace coarsetop {

enum class MapKind { chain_to_chain, chain_to_cochain, cochain_to_chain, chain_homotopy, cochain_homotopy };

inline const char* map_kind_name(MapKind k) {
    switch (k) {
    case MapKind::chain_to_chain: return "chains->chains";
    case MapKind::chain_to_cochain: return "chains->cochains";
    case MapKind::cochain_to_chain: return "cochains->chains";
    case MapKind::chain_homotopy: return "chain homotopy";
    default: return "cochain homotopy";
    }
}

// Linear map given column by column; a column is nullopt where the map is not defined
// inside the window.
struct ChainMapRecord {
    std::string name;
    MapKind kind = MapKind::chain_to_chain;
    ComplexPtr source, target;
    int n = 0;  // formal dimension for duality maps
    std::function<std::optional<Chain>(int, SimplexIndex)> column;
    int displacement = -1;
    int lipschitz = -1;

    int target_dim(int d) const {
        switch (kind) {
        case MapKind::chain_to_chain: return d;
        case MapKind::chain_to_cochain:
        case MapKind::cochain_to_chain: return n - d;
        case MapKind::chain_homotopy: return d + 1;
        default: return d - 1;
        }
    }

    std::optional<Chain> apply(const Chain& c) const {
        Chain out{target_dim(c.dim), {}};
        if (c.dim < 0) return c.zero() ? std::optional<Chain>(out) : std::nullopt;
        for (const auto& t : c.terms) {
            auto col = column(c.dim, t.index);
            if (!col) return std::nullopt;
            if (col->zero()) continue;
            out.terms = axpy(out.terms, t.coef, col->terms);
        }
        return out;
    }

    // Per-degree matrix; undefined columns are left empty.
    IntegerMatrix matrix(int d) const {
        IntegerMatrix M;
        M.rows = target->count(target_dim(d));
        M.cols = source->count(d);
        for (std::size_t i = 0; i < M.cols; ++i) {
            auto col = column(d, static_cast<SimplexIndex>(i));
            M.columns.push_back(col ? col->terms : SparseVec{});
        }
        return M;
    }
};

// Chain map of a simplicial vertex map Y -> X (degenerate images go to zero).
// Oriented simplex [img_0 .. img_d] in X; 0 if degenerate, nullopt if not a simplex.
inline std::optional<Chain> simplex_image(const SimplicialComplex& X, const std::vector<Vertex>& img) {
    int d = static_cast<int>(img.size()) - 1;
    std::vector<std::size_t> order(img.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return img[a] < img[b]; });
    std::vector<Vertex> sorted;
    for (auto i : order) sorted.push_back(img[i]);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return Chain{d, {}};
    auto idx = X.find(sorted);
    if (!idx) return std::nullopt;
    int inv = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j) inv += order[i] > order[j];
    return Chain{d, {{*idx, inv % 2 ? -1 : 1}}};
}

inline ChainMapRecord simplicial_chain_map(ComplexPtr Y, ComplexPtr X, std::vector<Vertex> vmap, std::string name = "f") {
    ChainMapRecord f;
    f.name = std::move(name);
    f.kind = MapKind::chain_to_chain;
    f.source = Y;
    f.target = X;
    auto shared = std::make_shared<std::vector<Vertex>>(std::move(vmap));
    f.column = [Y, X, shared](int d, SimplexIndex s) -> std::optional<Chain> {
        std::vector<Vertex> img;
        for (Vertex y : Y->vertices_of(d, s)) img.push_back((*shared)[y]);
        auto c = simplex_image(*X, img);
        if (!c) throw Error("simplicial_chain_map: image is not a simplex");
        return c;
    };
    f.displacement = 0;
    return f;
}

// Cochain pullback along a chain-to-chain map: (f^* xi)(s) = xi(f(s)).
inline std::optional<Chain> pullback(const ChainMapRecord& f, const Chain& xi) {
    Chain out{xi.dim, {}};
    const auto& Y = *f.source;
    if (xi.dim < 0 || xi.dim > Y.dim()) return out;
    for (std::size_t i = 0; i < Y.count(xi.dim); ++i) {
        auto col = f.column(xi.dim, static_cast<SimplexIndex>(i));
        if (!col) return std::nullopt;
        Integer v = 0;
        for (const auto& t : col->terms) v = checked_add(v, checked_mul(t.coef, coefficient(xi.terms, t.index)));
        if (v != 0) out.terms.push_back({static_cast<std::int32_t>(i), v});
    }
    return out;
}

// Displacement and Lipschitz constant over the given source simplices (C_*(sigma) uses all faces).
struct MapMeasure {
    int displacement = 0;
    int lipschitz = 0;
    std::size_t measured = 0;
};

inline std::vector<std::pair<int, SimplexIndex>> closed_faces(const SimplicialComplex& X, int d, SimplexIndex s) {
    std::vector<std::pair<int, SimplexIndex>> out{{d, s}};
    std::vector<SimplexIndex> layer{s};
    for (int e = d; e >= 1; --e) {
        std::vector<SimplexIndex> next;
        for (SimplexIndex c : layer) {
            auto f = X.faces_of(e, c);
            next.insert(next.end(), f.begin(), f.end());
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        for (auto c : next) out.push_back({e - 1, c});
        layer = std::move(next);
    }
    return out;
}

inline MapMeasure measure_map(const ChainMapRecord& f, const std::vector<std::pair<int, SimplexIndex>>& sample,
                              bool same_complex = true, int cap = 64) {
    MapMeasure m;
    LocalBfs bfs_t(*f.target);
    LocalBfs bfs_s(*f.source);
    for (auto [d, s] : sample) {
        std::vector<Chain> images;
        bool ok = true;
        for (auto [e, t] : closed_faces(*f.source, d, s)) {
            auto c = f.column(e, t);
            if (!c) {
                ok = false;
                break;
            }
            images.push_back(*c);
        }
        if (!ok) continue;
        ++m.measured;
        if (same_complex) m.displacement = std::max(m.displacement, displacement_of(*f.target, d, s, images, bfs_s, cap));
        std::vector<Vertex> supp;
        for (const auto& c : images) {
            auto v = support_vertices(*f.target, c);
            supp.insert(supp.end(), v.begin(), v.end());
        }
        std::sort(supp.begin(), supp.end());
        supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
        m.lipschitz = std::max(m.lipschitz, bfs_t.diameter(supp, cap));
    }
    return m;
}

// Y with a simplicial map into X (inclusion of a subcomplex, or a coordinate embedding).
struct Embedding {
    ComplexPtr Y, X;
    std::vector<Vertex> vmap;
    ChainMapRecord f;
    Subcomplex K;  // support of f(C_*(Y))
};

inline Subcomplex image_support(const ChainMapRecord& f) {
    std::vector<std::vector<std::uint8_t>> marks(f.target->dim() + 1);
    for (int d = 0; d <= f.target->dim(); ++d) marks[d].assign(f.target->count(d), 0);
    for (int d = 0; d <= f.source->dim(); ++d) {
        for (std::size_t i = 0; i < f.source->count(d); ++i) {
            auto c = f.column(d, static_cast<SimplexIndex>(i));
            if (!c) continue;
            for (const auto& t : c->terms) marks[c->dim][t.index] = 1;
        }
    }
    return Subcomplex::closure(f.target, std::move(marks));
}

inline Embedding make_embedding(ComplexPtr Y, ComplexPtr X, std::vector<Vertex> vmap) {
    Embedding e{Y, X, vmap, simplicial_chain_map(Y, X, vmap), {}};
    e.K = image_support(e.f);
    return e;
}

// A subcomplex as a standalone complex (coordinates kept, frontier = window frontier vertices).
inline Embedding extract_subcomplex(const Subcomplex& K) {
    const auto& X = K.complex();
    std::vector<std::vector<VertexLabel>> tops;
    for (int d = 0; d <= X.dim(); ++d) {
        for (SimplexIndex s : K.simplices(d)) {
            bool maximal = true;
            for (SimplexIndex c : X.cofaces_of(d, s)) if (K.contains(d + 1, c)) { maximal = false; break; }
            if (!maximal) continue;
            auto v = X.vertices_of(d, s);
            tops.emplace_back(v.begin(), v.end());
        }
    }
    BuildOptions opt;
    opt.coord_dim = X.coordinate_dim();
    std::vector<VertexLabel> frontier;
    std::vector<Vertex> vmap;
    for (Vertex v : K.vertices()) {
        opt.labels.push_back(v);
        auto x = X.coordinates(v);
        opt.coords.insert(opt.coords.end(), x.begin(), x.end());
        if (X.is_frontier(v)) frontier.push_back(v);
        vmap.push_back(v);
    }
    auto Y = make_complex(tops, frontier, opt);
    return make_embedding(Y, K.parent(), vmap);
}

} // namespace coarsetop
