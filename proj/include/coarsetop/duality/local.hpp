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
#include <optional>
#include <unordered_map>
#include <vector>

#include "../core/complex.hpp"
#include "../core/geometry.hpp"
#include "../homology/theories.hpp"

namespace coarsetop {

// Vertices of the closure of a chain's support.
inline std::vector<Vertex> support_vertices(const SimplicialComplex& X, const Chain& c) {
    std::vector<Vertex> out;
    if (c.dim < 0) return out;
    for (const auto& t : c.terms) {
        auto v = X.vertices_of(c.dim, t.index);
        out.insert(out.end(), v.begin(), v.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Bounded multi-source BFS that only touches the explored region.
class LocalBfs {
public:
    explicit LocalBfs(const SimplicialComplex& X) : X_(X) {}

    // distance of every vertex within `radius` of the sources
    const std::unordered_map<Vertex, int>& run(const std::vector<Vertex>& sources, int radius) {
        dist_.clear();
        std::deque<Vertex> queue;
        for (Vertex s : sources) {
            if (dist_.emplace(s, 0).second) queue.push_back(s);
        }
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            int dv = dist_[v];
            if (dv >= radius) continue;
            for (SimplexIndex e : X_.cofaces_of(0, v)) {
                auto ends = X_.vertices_of(1, e);
                Vertex w = ends[0] == v ? ends[1] : ends[0];
                if (dist_.emplace(w, dv + 1).second) queue.push_back(w);
            }
        }
        return dist_;
    }

    // Edge distance between two vertex sets, or kInfinity beyond `cap`.
    int distance(const std::vector<Vertex>& a, const std::vector<Vertex>& b, int cap) {
        run(a, cap);
        int best = kInfinity;
        for (Vertex v : b) {
            auto it = dist_.find(v);
            if (it != dist_.end()) best = std::min(best, it->second);
        }
        return best;
    }

    int diameter(const std::vector<Vertex>& vs, int cap) {
        int d = 0;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            run({vs[i]}, cap);
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                auto it = dist_.find(vs[j]);
                d = std::max(d, it == dist_.end() ? kInfinity : it->second);
            }
        }
        return d;
    }

private:
    const SimplicialComplex& X_;
    std::unordered_map<Vertex, int> dist_;
};

inline std::vector<std::uint8_t> ball_mask(const SimplicialComplex& X, const std::vector<Vertex>& centre, int rho) {
    LocalBfs bfs(X);
    std::vector<std::uint8_t> mask(X.vertex_count(), 0);
    for (const auto& [v, d] : bfs.run(centre, rho)) mask[v] = 1;
    return mask;
}

// Chain x with boundary y inside the full subcomplex on the rho-ball around supp(y).
inline std::optional<Chain> fill_chain(const ComplexPtr& X, const Chain& y, int rho) {
    if (y.zero()) return Chain{y.dim + 1, {}};
    auto ball = Subcomplex::induced(X, ball_mask(*X, support_vertices(*X, y), rho));
    PairComplex P(ball, Subcomplex::empty(X), Theory::homology, false);
    return P.solve(y);
}

// Cochain x with coboundary y, supported on simplices whose stars lie in the rho-ball.
inline std::optional<Chain> fill_cochain(const ComplexPtr& X, const Chain& y, int rho) {
    if (y.zero()) return Chain{y.dim - 1, {}};
    auto mask = ball_mask(*X, support_vertices(*X, y), std::max(rho, 1));
    std::vector<std::vector<std::uint8_t>> outside(X->dim() + 1);
    for (int d = 0; d <= X->dim(); ++d) {
        outside[d].assign(X->count(d), 0);
        for (std::size_t i = 0; i < X->count(d); ++i) {
            for (Vertex v : X->vertices_of(d, static_cast<SimplexIndex>(i))) {
                if (!mask[v]) {
                    outside[d][i] = 1;
                    break;
                }
            }
        }
    }
    auto Z = Subcomplex::closure(X, std::move(outside));
    PairComplex P(Subcomplex::whole(X), Z, Theory::cohomology, false);
    return P.solve(y);
}

struct FillResult {
    Chain chain;
    int radius = 0;
};

// Smallest radius in [lo, hi] at which the fill exists.
inline std::optional<FillResult> fill(const ComplexPtr& X, const Chain& y, Theory theory, int hi, int lo = 0) {
    for (int rho = lo; rho <= hi; ++rho) {
        auto x = theory == Theory::homology ? fill_chain(X, y, rho) : fill_cochain(X, y, std::max(rho, 1));
        if (x) return FillResult{*x, rho};
    }
    return std::nullopt;
}

// Star vertices of a simplex: vertices of all simplices containing it.
inline std::vector<Vertex> star_vertices(const SimplicialComplex& X, int d, SimplexIndex s) {
    std::vector<Vertex> out;
    std::vector<SimplexIndex> layer{s};
    for (int e = d; e <= X.dim() && !layer.empty(); ++e) {
        std::vector<SimplexIndex> next;
        for (SimplexIndex c : layer) {
            auto v = X.vertices_of(e, c);
            out.insert(out.end(), v.begin(), v.end());
            auto cf = X.cofaces_of(e, c);
            next.insert(next.end(), cf.begin(), cf.end());
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        layer = std::move(next);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Least D with every simplex of the chains in N_D(sigma).
inline int displacement_of(const SimplicialComplex& X, int d, SimplexIndex sigma, const std::vector<Chain>& images,
                           LocalBfs& bfs, int cap = 64) {
    auto sv = X.vertices_of(d, sigma);
    std::vector<Vertex> base(sv.begin(), sv.end());
    const auto& dist = bfs.run(base, cap);
    auto at = [&](Vertex v) {
        auto it = dist.find(v);
        return it == dist.end() ? kInfinity : it->second;
    };
    int D = 0;
    for (const auto& c : images) {
        if (c.dim < 0) continue;
        for (const auto& t : c.terms) {
            auto v = X.vertices_of(c.dim, t.index);
            bool inside = std::all_of(v.begin(), v.end(), [&](Vertex x) { return std::binary_search(base.begin(), base.end(), x); });
            if (inside) continue;
            int level = kInfinity;
            for (Vertex x : star_vertices(X, c.dim, t.index)) level = std::min(level, at(x));
            D = std::max(D, level == kInfinity ? kInfinity : level + 1);
        }
    }
    return D;
}

} // namespace coarsetop
