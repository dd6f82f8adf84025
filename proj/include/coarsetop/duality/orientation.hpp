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

#include <deque>
#include <string>
#include <vector>

#include "../core/complex.hpp"
#include "../homology/theories.hpp"

namespace coarsetop {

// sign det(v_1 - v_0, ..., v_n - v_0) for a top simplex of a coordinate complex
inline int simplex_orientation(const SimplicialComplex& X, int d, SimplexIndex s) {
    int n = X.coordinate_dim();
    if (n != d) throw Error("simplex_orientation: simplex dimension differs from coordinate dimension");
    auto v = X.vertices_of(d, s);
    std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
    auto x0 = X.coordinates(v[0]);
    for (int i = 0; i < n; ++i) {
        auto xi = X.coordinates(v[i + 1]);
        for (int j = 0; j < n; ++j) m[i][j] = xi[j] - x0[j];
    }
    long long det = 0;
    if (n == 1) det = m[0][0];
    else if (n == 2) det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    else if (n == 3)
        det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
              m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    else throw Error("simplex_orientation: dimension above 3");
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

namespace detail {

// Maximal simplices (dim >= 1) through each vertex, as (dim, index).
inline std::vector<std::vector<std::pair<int, SimplexIndex>>> maximal_by_vertex(const SimplicialComplex& X) {
    std::vector<std::vector<std::pair<int, SimplexIndex>>> out(X.vertex_count());
    for (int d = 1; d <= X.dim(); ++d)
        for (std::size_t i = 0; i < X.count(d); ++i) {
            auto s = static_cast<SimplexIndex>(i);
            if (!X.cofaces_of(d, s).empty()) continue;
            for (Vertex w : X.vertices_of(d, s)) out[w].push_back({d, s});
        }
    return out;
}

inline ComplexPtr link_from(const SimplicialComplex& X, Vertex v, const std::vector<std::pair<int, SimplexIndex>>& star) {
    std::vector<std::vector<VertexLabel>> tops;
    for (auto [d, s] : star) {
        std::vector<VertexLabel> rest;
        for (Vertex w : X.vertices_of(d, s)) if (w != v) rest.push_back(w);
        tops.push_back(std::move(rest));
    }
    if (tops.empty()) return nullptr;
    return make_complex(tops, {});
}

} // namespace detail

// Link of a vertex as a standalone complex (labels are the parent's vertex indices).
inline ComplexPtr link_complex(const SimplicialComplex& X, Vertex v) {
    std::vector<std::pair<int, SimplexIndex>> star;
    for (int d = 1; d <= X.dim(); ++d)
        for (std::size_t i = 0; i < X.count(d); ++i) {
            auto s = static_cast<SimplexIndex>(i);
            if (!X.cofaces_of(d, s).empty()) continue;
            auto vs = X.vertices_of(d, s);
            if (std::find(vs.begin(), vs.end(), v) != vs.end()) star.push_back({d, s});
        }
    return detail::link_from(X, v, star);
}

enum class LinkShape { sphere, disk, other };

// Pure m-dimensional pseudomanifold with the homology of a sphere or a point.
inline LinkShape link_shape(const ComplexPtr& L, int m) {
    if (!L || L->dim() != m) return LinkShape::other;
    for (auto& s : L->maximal_simplices()) if (static_cast<int>(s.size()) != m + 1) return LinkShape::other;
    bool closed = true;
    if (m >= 1) {
        for (std::size_t i = 0; i < L->count(m - 1); ++i) {
            auto c = L->cofaces_of(m - 1, static_cast<SimplexIndex>(i)).size();
            if (c == 0 || c > 2) return LinkShape::other;
            if (c == 1) closed = false;
        }
    } else {
        closed = L->count(0) == 2;
        if (L->count(0) > 2) return LinkShape::other;
    }
    auto whole = Subcomplex::whole(L);
    PairComplex P(whole, Subcomplex::empty(L), Theory::homology, true);
    for (int k = 0; k <= m; ++k) {
        auto g = P.group(k);
        bool top = closed && k == m;
        if (top ? !(g.free_rank == 1 && g.torsion.empty()) : !g.trivial()) return LinkShape::other;
    }
    if (m == 0 && !closed) return L->count(0) == 1 ? LinkShape::disk : LinkShape::other;
    return closed ? LinkShape::sphere : LinkShape::disk;
}

struct LinkAudit {
    std::size_t checked = 0;
    std::size_t spheres = 0;
    std::size_t disks = 0;
    std::vector<Vertex> failures;
    bool ok() const { return failures.empty(); }
};

// Interior vertices need sphere links; window-frontier vertices may have disk links.
inline LinkAudit manifold_audit(const SimplicialComplex& X) {
    LinkAudit a;
    int n = X.dim();
    auto stars = detail::maximal_by_vertex(X);
    for (std::size_t i = 0; i < X.vertex_count(); ++i) {
        auto v = static_cast<Vertex>(i);
        auto shape = link_shape(detail::link_from(X, v, stars[i]), n - 1);
        ++a.checked;
        if (shape == LinkShape::sphere) ++a.spheres;
        else if (shape == LinkShape::disk) ++a.disks;
        if (shape == LinkShape::other || (shape == LinkShape::disk && !X.is_frontier(v))) a.failures.push_back(v);
    }
    return a;
}

struct OrientationClass {
    int n = 0;
    std::vector<int> sign;  // per top simplex
    Chain fundamental() const {
        Chain c{n, {}};
        for (std::size_t i = 0; i < sign.size(); ++i) c.terms.push_back({static_cast<std::int32_t>(i), sign[i]});
        return c;
    }
    // Augmentation C^n_c -> Z.
    Integer augment(const Chain& xi) const {
        if (xi.dim != n) return 0;
        Integer s = 0;
        for (const auto& t : xi.terms) s = checked_add(s, checked_mul(t.coef, sign[t.index]));
        return s;
    }
};

// Coherent signs on top simplices, propagated across codimension-one faces.
inline OrientationClass orientation_class(const SimplicialComplex& X, bool audit_links = true) {
    int n = X.dim();
    if (n < 1) throw Error("orientation_class: complex has no top cells to orient");
    for (auto& s : X.maximal_simplices())
        if (static_cast<int>(s.size()) != n + 1) throw Error("orientation_class: complex is not pure");
    for (std::size_t i = 0; i < X.count(n - 1); ++i)
        if (X.cofaces_of(n - 1, static_cast<SimplexIndex>(i)).size() > 2)
            throw Error("orientation_class: branching codimension-one face (not a manifold)");
    if (audit_links) {
        auto a = manifold_audit(X);
        if (!a.ok()) throw Error("orientation_class: non-manifold link at vertex " + std::to_string(X.label(a.failures[0])));
    }
    OrientationClass o;
    o.n = n;
    o.sign.assign(X.count(n), 0);
    for (std::size_t start = 0; start < X.count(n); ++start) {
        if (o.sign[start]) continue;
        int s0 = 1;
        if (X.coordinate_dim() == n) s0 = simplex_orientation(X, n, static_cast<SimplexIndex>(start));
        o.sign[start] = s0 ? s0 : 1;
        std::deque<SimplexIndex> queue{static_cast<SimplexIndex>(start)};
        while (!queue.empty()) {
            SimplexIndex t = queue.front();
            queue.pop_front();
            auto f = X.faces_of(n, t);
            for (int j = 0; j <= n; ++j) {
                Integer a = (j % 2 == 0 ? 1 : -1) * o.sign[t];
                for (SimplexIndex u : X.cofaces_of(n - 1, f[j])) {
                    if (u == t) continue;
                    int want = static_cast<int>(-a * X.face_sign(n, u, f[j]));
                    if (o.sign[u] == 0) {
                        o.sign[u] = want;
                        queue.push_back(u);
                    } else if (o.sign[u] != want) {
                        throw Error("orientation_class: complex is not orientable");
                    }
                }
            }
        }
    }
    return o;
}

} // namespace coarsetop
