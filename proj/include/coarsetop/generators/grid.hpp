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
#include <array>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "../core/complex.hpp"

namespace coarsetop {

inline constexpr std::size_t kMaxGridVertices = 2'000'000;

// Kuhn triangulation of [-W, W]^n. Labels are lexicographic in the coordinates, so the vertex
// index of a lattice point is computable.
struct Grid {
    int n = 0;
    int W = 0;

    int side() const { return 2 * W + 1; }
    bool inside(std::span<const int> x) const {
        for (int i = 0; i < n; ++i) if (x[i] < -W || x[i] > W) return false;
        return true;
    }
    Vertex vertex(std::span<const int> x) const {
        Vertex v = 0;
        for (int i = 0; i < n; ++i) v = v * side() + (x[i] + W);
        return v;
    }
    std::vector<int> point(Vertex v) const {
        std::vector<int> x(n);
        for (int i = n - 1; i >= 0; --i) {
            x[i] = v % side() - W;
            v /= side();
        }
        return x;
    }
};

// Edge-path distance in the Kuhn grid: max(u+) + max(u-) for u = b - a.
inline int kuhn_distance(std::span<const int> a, std::span<const int> b) {
    int up = 0, down = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        up = std::max(up, b[i] - a[i]);
        down = std::max(down, a[i] - b[i]);
    }
    return up + down;
}

inline ComplexPtr grid_window(int n, int W) {
    if (n < 1 || n > 3) throw Error("grid_window: n must be 1, 2 or 3");
    if (W < 1) throw Error("grid_window: W must be positive");
    Grid g{n, W};
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(g.side());
    if (total > kMaxGridVertices) throw Error("grid_window: size cap exceeded");

    std::vector<int> perm(n);
    std::vector<std::vector<VertexLabel>> simplices;
    std::vector<int> base(n, -W);
    for (;;) {
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<int> x = base;
            std::vector<VertexLabel> s{g.vertex(x)};
            for (int i = 0; i < n; ++i) {
                ++x[perm[i]];
                s.push_back(g.vertex(x));
            }
            simplices.push_back(std::move(s));
        } while (std::next_permutation(perm.begin(), perm.end()));
        int i = n - 1;
        while (i >= 0 && base[i] == W - 1) base[i--] = -W;
        if (i < 0) break;
        ++base[i];
    }
    BuildOptions opt;
    opt.coord_dim = n;
    std::vector<VertexLabel> frontier;
    for (std::size_t v = 0; v < total; ++v) {
        auto x = g.point(static_cast<Vertex>(v));
        opt.labels.push_back(static_cast<VertexLabel>(v));
        opt.coords.insert(opt.coords.end(), x.begin(), x.end());
        bool edge = std::any_of(x.begin(), x.end(), [&](int c) { return std::abs(c) == W; });
        if (edge) frontier.push_back(static_cast<VertexLabel>(v));
    }
    return make_complex(simplices, frontier, opt);
}

inline Grid grid_of(const SimplicialComplex& X) {
    Grid g;
    g.n = X.coordinate_dim();
    int W = 0;
    for (std::size_t v = 0; v < X.vertex_count(); ++v)
        for (int c : X.coordinates(static_cast<Vertex>(v))) W = std::max(W, std::abs(c));
    g.W = W;
    return g;
}

template <class Pred>
Subcomplex induced_by_coordinates(const ComplexPtr& X, Pred pred) {
    std::vector<std::uint8_t> mask(X->vertex_count(), 0);
    for (std::size_t v = 0; v < mask.size(); ++v) mask[v] = pred(X->coordinates(static_cast<Vertex>(v))) ? 1 : 0;
    return Subcomplex::induced(X, mask);
}

inline Subcomplex hyperplane(const ComplexPtr& X, int axis, int offset) {
    if (axis < 0 || axis >= X->coordinate_dim()) throw Error("hyperplane: invalid axis");
    return induced_by_coordinates(X, [=](std::span<const int> x) { return x[axis] == offset; });
}

inline Subcomplex grid_point(const ComplexPtr& X, std::vector<int> at = {}) {
    if (at.empty()) at.assign(X->coordinate_dim(), 0);
    return induced_by_coordinates(X, [&](std::span<const int> x) { return std::equal(at.begin(), at.end(), x.begin()); });
}

// Directions (in the xy-plane) of half-planes bounded by the z axis that are Kuhn subcomplexes.
// In a plane grid the sheets are half-lines from the origin.
inline std::vector<std::array<int, 2>> book_directions(int k) {
    static const std::array<int, 2> d0{1, 0}, d45{1, 1}, d90{0, 1}, d180{-1, 0}, d225{-1, -1}, d270{0, -1};
    switch (k) {
    case 2: return {d0, d180};
    case 3: return {d0, d90, d180};
    case 4: return {d0, d90, d180, d270};
    case 5: return {d0, d45, d90, d180, d270};
    case 6: return {d0, d45, d90, d180, d225, d270};
    default: throw Error("halfplane_book: k must be in 2..6");
    }
}

inline bool on_sheet(std::span<const int> x, std::array<int, 2> d) {
    // x = t d + z e_3 with t >= 0
    if (d[0] == 0) return x[0] == 0 && x[1] * d[1] >= 0;
    if (d[1] == 0) return x[1] == 0 && x[0] * d[0] >= 0;
    return x[0] * d[1] == x[1] * d[0] && x[0] * d[0] >= 0;
}

inline Subcomplex book_sheet(const ComplexPtr& X, int k, int i) {
    auto d = book_directions(k)[i];
    return induced_by_coordinates(X, [=](std::span<const int> x) { return on_sheet(x, d); });
}

inline Subcomplex halfplane_book(const ComplexPtr& X, int k) {
    if (X->coordinate_dim() < 2 || X->coordinate_dim() > 3) throw Error("halfplane_book needs a 2- or 3-dimensional grid");
    auto dirs = book_directions(k);
    return induced_by_coordinates(X, [&](std::span<const int> x) {
        return std::any_of(dirs.begin(), dirs.end(), [&](auto d) { return on_sheet(x, d); });
    });
}

// Boundary of the square [-r, r]^2 (a cycle) in a plane grid.
inline Subcomplex grid_ring(const ComplexPtr& X, int r) {
    return induced_by_coordinates(X, [=](std::span<const int> x) { return std::max(std::abs(x[0]), std::abs(x[1])) == r; });
}

// Lattice points of spacing s inside the max-norm ball of radius rho.
inline Subcomplex grid_net(const ComplexPtr& X, int s, int rho) {
    return induced_by_coordinates(X, [=](std::span<const int> x) {
        for (int c : x) if (std::abs(c) > rho || c % s != 0) return false;
        return true;
    });
}

// Max-norm ball of radius rho.
inline Subcomplex grid_ball(const ComplexPtr& X, int rho) {
    return induced_by_coordinates(X, [=](std::span<const int> x) {
        for (int c : x) if (std::abs(c) > rho) return false;
        return true;
    });
}

} // namespace coarsetop
