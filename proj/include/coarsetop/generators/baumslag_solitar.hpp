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
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "../core/geometry.hpp"
#include "../duality/chain_map.hpp"

namespace coarsetop {

// Edge of the Bass-Serre tree of BS(p,q). Rung j of its strip joins fiber position
// q*j + r over the tail to p*j + s over the head.
struct TreeEdge {
    int tail = 0, head = 0;
    int r = 0, s = 0;
};

struct BassSerreTreeWindow {
    int p = 1, q = 1, depth = 0;
    std::vector<int> parent;  // -1 at the basepoint
    std::vector<int> level;
    std::vector<TreeEdge> edges;
    std::vector<std::vector<int>> rotation;  // incident edges in cyclic (planar) order

    std::size_t size() const { return level.size(); }
    bool leaf(int v) const { return v != 0 && rotation[v].size() == 1; }
    int incoming(int v) const {
        int n = 0;
        for (int e : rotation[v]) n += edges[e].head == v;
        return n;
    }
    int outgoing(int v) const {
        int n = 0;
        for (int e : rotation[v]) n += edges[e].tail == v;
        return n;
    }
    int other(int e, int v) const { return edges[e].tail == v ? edges[e].head : edges[e].tail; }
};

inline BassSerreTreeWindow bass_serre_tree(int p, int q, int depth) {
    if (p < 1 || q < 1) throw Error("bass_serre_tree: p, q must be positive");
    if (depth < 0) throw Error("bass_serre_tree: negative depth");
    BassSerreTreeWindow T;
    T.p = p;
    T.q = q;
    T.depth = depth;
    T.parent.push_back(-1);
    T.level.push_back(0);
    T.rotation.emplace_back();
    auto add_child = [&](int v, bool outgoing, int residue) {
        int c = static_cast<int>(T.level.size());
        T.parent.push_back(v);
        T.level.push_back(T.level[v] + 1);
        T.rotation.emplace_back();
        int e = static_cast<int>(T.edges.size());
        T.edges.push_back(outgoing ? TreeEdge{v, c, residue, 0} : TreeEdge{c, v, 0, residue});
        T.rotation[v].push_back(e);
        T.rotation[c].push_back(e);
    };
    std::vector<int> layer{0};
    for (int d = 0; d < depth; ++d) {
        std::vector<int> next;
        for (int v : layer) {
            // residues already used by the parent edge
            int used_r = -1, used_s = -1;
            if (T.parent[v] >= 0) {
                const auto& pe = T.edges[T.rotation[v][0]];
                if (pe.tail == v) used_r = pe.r;
                else used_s = pe.s;
            }
            for (int r = 0; r < q; ++r) if (r != used_r) add_child(v, true, r);
            for (int s = 0; s < p; ++s) if (s != used_s) add_child(v, false, s);
            for (std::size_t c = T.rotation[v].size() - (p + q - (T.parent[v] >= 0 ? 1 : 0)); c < T.rotation[v].size(); ++c)
                next.push_back(T.other(T.rotation[v][c], v));
        }
        layer = std::move(next);
    }
    // planar rotation: outgoing edges by residue, then incoming by residue
    for (std::size_t v = 0; v < T.size(); ++v) {
        auto& rot = T.rotation[v];
        std::sort(rot.begin(), rot.end(), [&](int a, int b) {
            const auto& ea = T.edges[a];
            const auto& eb = T.edges[b];
            bool oa = ea.tail == static_cast<int>(v), ob = eb.tail == static_cast<int>(v);
            if (oa != ob) return oa;
            return oa ? ea.r < eb.r : ea.s < eb.s;
        });
    }
    return T;
}

// Drop the subtrees strictly below the given vertices, which become leaves. Vertices are
// renumbered in the old order and rotations keep their cyclic order.
inline BassSerreTreeWindow prune_below(const BassSerreTreeWindow& T, const std::vector<int>& tips) {
    std::vector<std::uint8_t> drop(T.size(), 0), tip(T.size(), 0);
    for (int t : tips) tip[t] = 1;
    for (std::size_t v = 1; v < T.size(); ++v) {
        int u = T.parent[v];
        drop[v] = drop[u] || tip[u];  // parents precede children
    }
    std::vector<int> id(T.size(), -1);
    BassSerreTreeWindow P;
    P.p = T.p;
    P.q = T.q;
    P.depth = T.depth;
    for (std::size_t v = 0; v < T.size(); ++v) {
        if (drop[v]) continue;
        id[v] = static_cast<int>(P.level.size());
        P.parent.push_back(T.parent[v] < 0 ? -1 : id[T.parent[v]]);
        P.level.push_back(T.level[v]);
    }
    std::vector<int> eid(T.edges.size(), -1);
    for (std::size_t e = 0; e < T.edges.size(); ++e) {
        const auto& te = T.edges[e];
        if (drop[te.tail] || drop[te.head]) continue;
        eid[e] = static_cast<int>(P.edges.size());
        P.edges.push_back({id[te.tail], id[te.head], te.r, te.s});
    }
    P.rotation.resize(P.level.size());
    for (std::size_t v = 0; v < T.size(); ++v) {
        if (drop[v]) continue;
        for (int e : T.rotation[v]) if (eid[e] >= 0) P.rotation[id[v]].push_back(eid[e]);
    }
    return P;
}

struct BsSigma {
    BassSerreTreeWindow tree;
    int E = 0;
    ComplexPtr X;
    std::vector<int> pi;     // vertex -> tree vertex
    std::vector<int> fiber;  // vertex -> fiber position in [-E, E]
    std::vector<std::vector<std::array<VertexLabel, 3>>> strips;  // triangles per tree edge

    VertexLabel label(int t, int x) const { return static_cast<VertexLabel>(t) * (2 * E + 1) + (x + E); }
};

namespace detail {

// Triangulate the band between rungs (a0,b0) and (a1,b1): left side tail positions a0..a1,
// right side head positions b0..b1, advancing the side that lags behind.
inline void zipper(std::vector<std::array<VertexLabel, 3>>& out, const std::function<VertexLabel(int)>& L,
                   const std::function<VertexLabel(int)>& R, int a0, int a1, int b0, int b1) {
    int nl = a1 - a0, nr = b1 - b0;
    int i = 0, j = 0;
    while (i < nl || j < nr) {
        bool left = j == nr || (i < nl && static_cast<long>(i + 1) * nr <= static_cast<long>(j + 1) * nl);
        if (left) {
            out.push_back({L(a0 + i), L(a0 + i + 1), R(b0 + j)});
            ++i;
        } else {
            out.push_back({L(a0 + i), R(b0 + j), R(b0 + j + 1)});
            ++j;
        }
    }
}

} // namespace detail

// Sigma over the tree window, fibers truncated to [-E, E]. Each strip is a full band over
// [-E, E] on both sides: the rungs plus end rungs at -E and E.
inline BsSigma bs_sigma(BassSerreTreeWindow tree, int fiber_extent) {
    if (fiber_extent < std::max(tree.p, tree.q)) throw Error("bs_sigma: fiber extent must be at least max(p, q)");
    int p = tree.p, q = tree.q;
    BsSigma S;
    S.tree = std::move(tree);
    S.E = fiber_extent;
    int E = fiber_extent;
    const auto& T = S.tree;
    std::vector<std::vector<VertexLabel>> tops;
    std::vector<VertexLabel> frontier;
    for (std::size_t t = 0; t < T.size(); ++t) {
        for (int x = -E; x <= E; ++x) {
            S.pi.push_back(static_cast<int>(t));
            S.fiber.push_back(x);
            if (x == -E || x == E || T.leaf(static_cast<int>(t))) frontier.push_back(S.label(static_cast<int>(t), x));
        }
        if (T.edges.empty())
            for (int x = -E; x < E; ++x) tops.push_back({S.label(static_cast<int>(t), x), S.label(static_cast<int>(t), x + 1)});
    }
    for (const auto& e : T.edges) {
        std::vector<std::pair<int, int>> rungs;
        for (int j = -E; j <= E; ++j) {
            int a = q * j + e.r, b = p * j + e.s;
            if (std::abs(a) <= E && std::abs(b) <= E) rungs.push_back({a, b});
        }
        if (rungs.front() != std::make_pair(-E, -E)) rungs.insert(rungs.begin(), {-E, -E});
        if (rungs.back() != std::make_pair(E, E)) rungs.push_back({E, E});
        std::vector<std::array<VertexLabel, 3>> tris;
        auto L = [&](int x) { return S.label(e.tail, x); };
        auto R = [&](int x) { return S.label(e.head, x); };
        for (std::size_t k = 0; k + 1 < rungs.size(); ++k)
            detail::zipper(tris, L, R, rungs[k].first, rungs[k + 1].first, rungs[k].second, rungs[k + 1].second);
        for (auto& t : tris) {
            std::sort(t.begin(), t.end());
            tops.push_back({t[0], t[1], t[2]});
        }
        S.strips.push_back(std::move(tris));
    }
    S.X = make_complex(tops, frontier);
    return S;
}

inline BsSigma bs_sigma(int p, int q, int tree_depth, int fiber_extent) {
    return bs_sigma(bass_serre_tree(p, q, tree_depth), fiber_extent);
}

struct StripAudit {
    std::size_t interior_vertices = 0;
    std::size_t bad_valence = 0;      // interior tree vertices without p incoming / q outgoing strips
    std::size_t bad_fibers = 0;       // fibers without 2E+1 vertices
    std::size_t strips = 0;
    bool ok() const { return bad_valence == 0 && bad_fibers == 0; }
};

inline StripAudit audit_strips(const BsSigma& S) {
    StripAudit a;
    const auto& T = S.tree;
    a.strips = S.strips.size();
    std::vector<int> count(T.size(), 0);
    for (int t : S.pi) ++count[t];
    for (std::size_t t = 0; t < T.size(); ++t) {
        if (count[t] != 2 * S.E + 1) ++a.bad_fibers;
        if (T.leaf(static_cast<int>(t))) continue;
        ++a.interior_vertices;
        if (T.incoming(static_cast<int>(t)) != T.p || T.outgoing(static_cast<int>(t)) != T.q) ++a.bad_valence;
    }
    return a;
}

// Ray from the basepoint leaving along root edge `first` (rotation position), then always
// along the first edge after the arrival edge in the rotation.
inline std::vector<int> tree_ray(const BassSerreTreeWindow& T, int first) {
    std::vector<int> ray{0};
    if (T.depth == 0) return ray;
    const auto& rot0 = T.rotation[0];
    if (first < 0 || first >= static_cast<int>(rot0.size())) throw Error("tree_ray: no such root edge");
    int e = rot0[first];
    int v = T.other(e, 0);
    ray.push_back(v);
    while (!T.leaf(v)) {
        const auto& rot = T.rotation[v];
        auto it = std::find(rot.begin(), rot.end(), e);
        std::size_t next = (static_cast<std::size_t>(it - rot.begin()) + 1) % rot.size();
        e = rot[next];
        v = T.other(e, v);
        ray.push_back(v);
    }
    return ray;
}

// k rays through root edges spread evenly around the rotation.
inline std::vector<std::vector<int>> default_rays(const BassSerreTreeWindow& T, int k) {
    int d = static_cast<int>(T.rotation[0].size());
    if (k < 1 || k > d) throw Error("default_rays: need 1 <= k <= root valence");
    std::vector<std::vector<int>> rays;
    for (int i = 0; i < k; ++i) rays.push_back(tree_ray(T, i * d / k));
    return rays;
}

struct BsRays {
    std::vector<Subcomplex> sheets;  // pi^{-1}(ray_i) in Sigma
    Subcomplex union_;
    Embedding Y;                     // glued rays as a standalone complex, included into Sigma
};

inline Subcomplex fibers_over(const BsSigma& S, const std::vector<int>& tree_vertices, const ComplexPtr& X) {
    std::vector<std::uint8_t> on(S.tree.size(), 0);
    for (int t : tree_vertices) on[t] = 1;
    std::vector<std::uint8_t> mask(X->vertex_count(), 0);
    for (std::size_t v = 0; v < S.pi.size(); ++v) if (on[S.pi[v]]) mask[v] = 1;
    return Subcomplex::induced(X, mask);
}

inline BsRays bs_rays_Y(const BsSigma& S, const std::vector<std::vector<int>>& rays) {
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            if (rays[i].size() > 1 && rays[j].size() > 1 && rays[i][1] == rays[j][1])
                throw Error("bs_rays_Y: rays coincide within the window");
    BsRays out{{}, Subcomplex::empty(S.X), {}};
    for (const auto& r : rays) {
        out.sheets.push_back(fibers_over(S, r, S.X));
        out.union_ = out.union_.unite(out.sheets.back());
    }
    out.Y = extract_subcomplex(out.union_);
    return out;
}

// ---- Sigma inside a 3-manifold --------------------------------------------------------
//
// Half-slabs strip(e) x [0, H] on both sides of every strip, glued along fiber(v) x [0, H]
// to the neighbouring half-slab in the same sector of the planar rotation at v. Leaf
// sectors are left open, so the window is a 3-ball.

struct BsEmbedding {
    BsSigma sigma;
    int H = 0;
    ComplexPtr X;
    std::vector<Vertex> sigma_to_x;  // Sigma vertex -> X vertex
    std::size_t sectors = 0;

    Subcomplex image(const Subcomplex& K) const {
        std::vector<std::uint8_t> mask(X->vertex_count(), 0);
        for (Vertex v : K.vertices()) mask[sigma_to_x[v]] = 1;
        return Subcomplex::induced(X, mask);
    }
};

inline BsEmbedding embed_sigma_r3(BsSigma sigma, int height) {
    if (height < 1) throw Error("embed_sigma_r3: height must be positive");
    BsEmbedding B;
    B.sigma = std::move(sigma);
    B.H = height;
    const auto& S = B.sigma;
    const auto& T = S.tree;
    int E = S.E, F = 2 * E + 1;
    // sectors: deg(v) between consecutive edges, two open ones at a leaf
    std::vector<int> base(T.size() + 1, 0), nsec(T.size());
    for (std::size_t v = 0; v < T.size(); ++v) {
        int d = static_cast<int>(T.rotation[v].size());
        nsec[v] = d == 1 ? 2 : d;
        base[v + 1] = base[v] + nsec[v];
    }
    B.sectors = static_cast<std::size_t>(base[T.size()]);
    auto n0 = static_cast<VertexLabel>(S.X->vertex_count());
    auto lifted = [&](int t, int sector, int x, int k) -> VertexLabel {
        return n0 + ((static_cast<VertexLabel>(base[t] + sector) * F + (x + E)) * height + (k - 1));
    };
    // sector at endpoint t of edge e on the given side (left of tail -> head)
    auto sector_of = [&](int e, int t, bool left) {
        const auto& rot = T.rotation[t];
        int d = static_cast<int>(rot.size());
        if (d == 1) return left ? 0 : 1;
        int i = static_cast<int>(std::find(rot.begin(), rot.end(), e) - rot.begin());
        bool at_tail = T.edges[e].tail == t;
        // left of the edge as seen leaving the tail is counterclockwise after it at the tail,
        // clockwise before it at the head
        if (at_tail == left) return i;
        return (i - 1 + d) % d;
    };
    auto lift = [&](VertexLabel a, int e, bool left, int k) -> VertexLabel {
        if (k == 0) return a;
        int t = S.pi[static_cast<std::size_t>(a)];
        int x = S.fiber[static_cast<std::size_t>(a)];
        return lifted(t, sector_of(e, t, left), x, k);
    };
    std::vector<std::vector<VertexLabel>> tops;
    for (std::size_t e = 0; e < S.strips.size(); ++e) {
        for (bool left : {true, false}) {
            for (const auto& tri : S.strips[e]) {
                for (int k = 0; k < height; ++k) {
                    VertexLabel a0 = lift(tri[0], static_cast<int>(e), left, k), a1 = lift(tri[0], static_cast<int>(e), left, k + 1);
                    VertexLabel b0 = lift(tri[1], static_cast<int>(e), left, k), b1 = lift(tri[1], static_cast<int>(e), left, k + 1);
                    VertexLabel c0 = lift(tri[2], static_cast<int>(e), left, k), c1 = lift(tri[2], static_cast<int>(e), left, k + 1);
                    tops.push_back({a0, b0, c0, c1});
                    tops.push_back({a0, b0, b1, c1});
                    tops.push_back({a0, a1, b1, c1});
                }
            }
        }
    }
    for (auto& t : tops) std::sort(t.begin(), t.end());
    std::vector<VertexLabel> frontier;
    for (std::size_t v = 0; v < S.pi.size(); ++v) {
        int t = S.pi[v], x = S.fiber[v];
        bool edge = x == -E || x == E || T.leaf(t);
        if (edge) frontier.push_back(static_cast<VertexLabel>(v));
        for (int s = 0; s < nsec[t]; ++s)
            for (int k = 1; k <= height; ++k)
                if (edge || k == height) frontier.push_back(lifted(t, s, x, k));
    }
    B.X = make_complex(tops, frontier);
    B.sigma_to_x.resize(S.X->vertex_count());
    for (std::size_t v = 0; v < S.X->vertex_count(); ++v)
        B.sigma_to_x[v] = *B.X->vertex_of_label(static_cast<VertexLabel>(v));
    return B;
}

inline BsEmbedding embed_sigma_r3(int p, int q, int tree_depth, int fiber_extent, int height) {
    return embed_sigma_r3(bs_sigma(p, q, tree_depth, fiber_extent), height);
}

// Window for k rays of length ray_depth: the tree goes `extra` levels deeper everywhere
// except below the ray tips, so the sheets end on the frontier while the subtrees beside
// them stay as deep as the rest.
struct BsRayWindow {
    BsEmbedding B;
    std::vector<std::vector<int>> rays;
    BsRays Y;
};

inline BsRayWindow bs_ray_window(int p, int q, int ray_depth, int extra, int fiber_extent, int height, int k) {
    if (ray_depth < 1 || extra < 0) throw Error("bs_ray_window: need ray_depth >= 1, extra >= 0");
    auto full = bass_serre_tree(p, q, ray_depth + extra);
    std::vector<int> tips;
    for (auto& r : default_rays(full, k)) tips.push_back(r[static_cast<std::size_t>(ray_depth)]);
    BsRayWindow W;
    W.B = embed_sigma_r3(bs_sigma(prune_below(full, tips), fiber_extent), height);
    W.rays = default_rays(W.B.sigma.tree, k);
    W.Y = bs_rays_Y(W.B.sigma, W.rays);
    return W;
}

// Distance distortion of Sigma -> X: for each Sigma distance, the least and largest X distance
// over pairs with one end in the sample.
struct DistortionRow {
    int sigma_distance = 0;
    int min_x = 0, max_x = 0;
    std::size_t pairs = 0;
};

inline std::vector<DistortionRow> distortion_table(const BsEmbedding& B, const std::vector<Vertex>& sample) {
    std::map<int, DistortionRow> rows;
    for (Vertex s : sample) {
        auto ds = vertex_distances(*B.sigma.X, {s});
        auto dx = vertex_distances(*B.X, {B.sigma_to_x[s]});
        for (std::size_t v = 0; v < ds.size(); ++v) {
            if (ds[v] == kInfinity || static_cast<Vertex>(v) == s) continue;
            int x = dx[B.sigma_to_x[v]];
            auto it = rows.find(ds[v]);
            if (it == rows.end()) rows[ds[v]] = {ds[v], x, x, 1};
            else {
                it->second.min_x = std::min(it->second.min_x, x);
                it->second.max_x = std::max(it->second.max_x, x);
                ++it->second.pairs;
            }
        }
    }
    std::vector<DistortionRow> out;
    for (auto& [d, r] : rows) out.push_back(r);
    return out;
}

} // namespace coarsetop
