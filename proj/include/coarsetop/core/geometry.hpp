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

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <vector>

#include "complex.hpp"

namespace coarsetop {

inline constexpr int kInfinity = std::numeric_limits<int>::max();

// Multi-source BFS on the 1-skeleton. Unreached vertices get kInfinity.
inline std::vector<int> vertex_distances(const SimplicialComplex& X, const std::vector<Vertex>& sources,
                                         int max_dist = kInfinity) {
    std::vector<int> dist(X.vertex_count(), kInfinity);
    std::deque<Vertex> queue;
    for (Vertex s : sources) {
        if (dist[s] != 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        if (dist[v] >= max_dist) continue;
        for (SimplexIndex e : X.cofaces_of(0, v)) {
            auto ends = X.vertices_of(1, e);
            Vertex w = ends[0] == v ? ends[1] : ends[0];
            if (dist[w] == kInfinity) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

inline int edge_distance(const SimplicialComplex& X, Vertex v, Vertex w) {
    return vertex_distances(X, {v})[w];
}

// Distances from the vertex set of a subcomplex.
inline std::vector<int> distances_from(const Subcomplex& K) {
    return vertex_distances(K.complex(), K.vertices());
}

inline std::vector<int> frontier_distances(const SimplicialComplex& X) {
    return vertex_distances(X, X.frontier());
}

// Min vertex value over each simplex.
inline std::vector<std::vector<int>> simplex_min(const SimplicialComplex& X, const std::vector<int>& vval) {
    std::vector<std::vector<int>> out(X.dim() + 1);
    for (int d = 0; d <= X.dim(); ++d) {
        out[d].resize(X.count(d));
        for (std::size_t i = 0; i < X.count(d); ++i) {
            int m = kInfinity;
            for (Vertex v : X.vertices_of(d, static_cast<SimplexIndex>(i))) m = std::min(m, vval[v]);
            out[d][i] = m;
        }
    }
    return out;
}

// All N_r(K) and Y_R from one BFS. level(s) is the least vertex distance over simplices
// containing s, so s lies in N_r(K) iff s in K or level(s) <= r - 1.
class NeighborhoodFiltration {
public:
    explicit NeighborhoodFiltration(const Subcomplex& K) : K_(K), dist_(distances_from(K)) {
        const auto& X = K.complex();
        level_ = simplex_min(X, dist_);
        for (int d = X.dim() - 1; d >= 0; --d) {
            for (std::size_t i = 0; i < X.count(d); ++i) {
                for (SimplexIndex c : X.cofaces_of(d, static_cast<SimplexIndex>(i))) {
                    level_[d][i] = std::min(level_[d][i], level_[d + 1][c]);
                }
            }
        }
    }

    const Subcomplex& base() const { return K_; }
    const std::vector<int>& distances() const { return dist_; }

    bool in_neighborhood(int r, int d, SimplexIndex i) const {
        return K_.contains(d, i) || (r >= 1 && level_[d][i] <= r - 1);
    }

    Subcomplex neighborhood(int r) const {
        Subcomplex S = Subcomplex::empty(K_.parent());
        const auto& X = K_.complex();
        for (int d = 0; d <= X.dim(); ++d)
            for (std::size_t i = 0; i < X.count(d); ++i)
                if (in_neighborhood(r, d, static_cast<SimplexIndex>(i))) S.set(d, static_cast<SimplexIndex>(i), true);
        return S;
    }

    // closure(X - N_R(K))
    Subcomplex complement(int R) const {
        const auto& X = K_.complex();
        std::vector<std::vector<std::uint8_t>> marks(X.dim() + 1);
        for (int d = 0; d <= X.dim(); ++d) {
            marks[d].resize(X.count(d));
            for (std::size_t i = 0; i < X.count(d); ++i)
                marks[d][i] = !in_neighborhood(R, d, static_cast<SimplexIndex>(i));
        }
        return Subcomplex::closure(K_.parent(), std::move(marks));
    }

private:
    Subcomplex K_;
    std::vector<int> dist_;
    std::vector<std::vector<int>> level_;
};

inline Subcomplex neighborhood(const Subcomplex& K, int r) {
    if (r == 0) return K;
    return NeighborhoodFiltration(K).neighborhood(r);
}

inline Subcomplex complement_closure(const Subcomplex& K, int R) {
    return NeighborhoodFiltration(K).complement(R);
}

// K intersected with closure(X - K).
inline Subcomplex frontier(const Subcomplex& K) {
    auto outside = Subcomplex::closure(K.parent(), Subcomplex::whole(K.parent()).minus_marks(K));
    return K.intersect(outside);
}

// Components by shared vertices, ordered by least vertex.
inline std::vector<Subcomplex> components(const Subcomplex& S) {
    const auto& X = S.complex();
    std::vector<Vertex> parent(X.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (SimplexIndex e : S.simplices(1)) {
        auto ends = X.vertices_of(1, e);
        Vertex a = find(ends[0]), b = find(ends[1]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> comp_of_root(X.vertex_count(), -1);
    std::vector<std::vector<std::uint8_t>> masks;
    for (Vertex v : S.vertices()) {
        Vertex r = find(v);
        if (comp_of_root[r] < 0) {
            comp_of_root[r] = static_cast<int>(masks.size());
            masks.emplace_back(X.vertex_count(), 0);
        }
        masks[comp_of_root[r]][v] = 1;
    }
    std::vector<Subcomplex> out;
    for (const auto& m : masks) out.push_back(S.intersect(Subcomplex::induced(S.parent(), m)));
    return out;
}

struct GeometryStats {
    std::size_t max_link_simplices = 0;
    int dim = -1;
    std::size_t vertex_count = 0;
};

// Link of v has one simplex per proper coface of v.
inline std::vector<std::size_t> link_sizes(const SimplicialComplex& X) {
    std::vector<std::size_t> sizes(X.vertex_count(), 0);
    for (int d = 1; d <= X.dim(); ++d)
        for (std::size_t i = 0; i < X.count(d); ++i)
            for (Vertex v : X.vertices_of(d, static_cast<SimplexIndex>(i))) ++sizes[v];
    return sizes;
}

inline GeometryStats geometry_stats(const SimplicialComplex& X) {
    GeometryStats s;
    s.dim = X.dim();
    s.vertex_count = X.vertex_count();
    for (std::size_t n : link_sizes(X)) s.max_link_simplices = std::max(s.max_link_simplices, n);
    return s;
}

// Full subcomplex on the window frontier vertices.
inline Subcomplex frontier_subcomplex(const ComplexPtr& X) {
    std::vector<std::uint8_t> mask(X->vertex_count(), 0);
    for (Vertex v : X->frontier()) mask[v] = 1;
    return Subcomplex::induced(X, mask);
}

// Col_w = N_w(frontier); Col_0 is the frontier itself.
inline Subcomplex frontier_collar(const ComplexPtr& X, int w) {
    return neighborhood(frontier_subcomplex(X), w);
}

// Full subcomplex on vertices at frontier distance >= c.
inline Subcomplex window_interior(const ComplexPtr& X, int c) {
    if (c <= 0) return Subcomplex::whole(X);
    auto fd = frontier_distances(*X);
    std::vector<std::uint8_t> mask(X->vertex_count(), 0);
    for (std::size_t v = 0; v < mask.size(); ++v) mask[v] = fd[v] >= c;
    return Subcomplex::induced(X, mask);
}

// Distance from the vertices of K to the window frontier.
inline int frontier_slack(const Subcomplex& K) {
    auto fd = frontier_distances(K.complex());
    int m = kInfinity;
    for (Vertex v : K.vertices()) m = std::min(m, fd[v]);
    return m;
}

// Largest radius whose neighborhood stays at least `slack` steps from the frontier when K is
// interior, otherwise the largest radius leaving the complement touching the frontier away from K.
inline int valid_radius(const Subcomplex& K, int slack = 3) {
    auto dK = distances_from(K);
    const auto& X = K.complex();
    int far = 0;
    for (Vertex v : X.frontier()) if (dK[v] != kInfinity) far = std::max(far, dK[v]);
    int near = frontier_slack(K);
    if (near != kInfinity && near > 0) return near - slack;
    return far - slack;
}

inline bool touches_frontier(const Subcomplex& S) {
    for (Vertex v : S.vertices()) if (S.complex().is_frontier(v)) return true;
    return false;
}

} // namespace coarsetop
