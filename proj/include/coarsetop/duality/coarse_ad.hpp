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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pd_maps.hpp"

namespace coarsetop {

// Coordinate embedding of the m-grid of width WY into the n-grid of width WX (first m axes).
inline Embedding grid_embedding(int m, int n, int WY, int WX) {
    if (m > n || WY > WX) throw Error("grid_embedding: source does not fit");
    auto X = grid_window(n, WX);
    Grid gx{n, WX};
    ComplexPtr Y;
    std::vector<Vertex> vmap;
    if (m == 0) {
        BuildOptions opt;
        opt.coord_dim = 0;
        Y = make_complex({{0}}, {}, opt);
        vmap.push_back(gx.vertex(std::vector<int>(n, 0)));
    } else {
        Y = grid_window(m, WY);
        for (std::size_t v = 0; v < Y->vertex_count(); ++v) {
            std::vector<int> x(n, 0);
            auto y = Y->coordinates(static_cast<Vertex>(v));
            std::copy(y.begin(), y.end(), x.begin());
            vmap.push_back(gx.vertex(x));
        }
    }
    return make_embedding(Y, X, vmap);
}

// ---- the pushforward g : C_*(X) -> C_*(Y) ------------------------------------------

struct Pushforward {
    ChainMapRecord g;
    std::shared_ptr<std::vector<std::vector<std::optional<Chain>>>> columns;
    int fill_radius = 0;
    std::size_t undefined = 0;
};

// Nearest f-support owner of every X vertex; ties go to the least Y vertex.
inline std::vector<Vertex> nearest_owner(const Embedding& e) {
    const auto& X = *e.X;
    std::vector<int> dist(X.vertex_count(), kInfinity);
    std::vector<Vertex> owner(X.vertex_count(), -1);
    std::vector<Vertex> layer;
    for (std::size_t y = 0; y < e.Y->vertex_count(); ++y) {
        auto c = e.f.column(0, static_cast<SimplexIndex>(y));
        if (!c) continue;
        for (Vertex x : support_vertices(X, *c)) {
            if (dist[x] != 0) {
                dist[x] = 0;
                owner[x] = static_cast<Vertex>(y);
                layer.push_back(x);
            } else {
                owner[x] = std::min(owner[x], static_cast<Vertex>(y));
            }
        }
    }
    int d = 0;
    while (!layer.empty()) {
        std::vector<Vertex> next;
        for (Vertex v : layer) {
            for (SimplexIndex ed : X.cofaces_of(0, v)) {
                auto ends = X.vertices_of(1, ed);
                Vertex w = ends[0] == v ? ends[1] : ends[0];
                if (dist[w] == kInfinity) {
                    dist[w] = d + 1;
                    owner[w] = owner[v];
                    next.push_back(w);
                } else if (dist[w] == d + 1) {
                    owner[w] = std::min(owner[w], owner[v]);
                }
            }
        }
        layer = std::move(next);
        ++d;
    }
    return owner;
}

inline Pushforward pushforward_g(const Embedding& e, int max_radius = 6) {
    const auto& X = *e.X;
    Pushforward p;
    p.columns = std::make_shared<std::vector<std::vector<std::optional<Chain>>>>(X.dim() + 1);
    auto& cols = *p.columns;
    auto owner = nearest_owner(e);
    cols[0].resize(X.vertex_count());
    for (std::size_t v = 0; v < X.vertex_count(); ++v) {
        if (owner[v] >= 0) cols[0][v] = Chain{0, {{owner[v], 1}}};
        else ++p.undefined;
    }
    for (int d = 1; d <= X.dim(); ++d) {
        cols[d].resize(X.count(d));
        for (std::size_t i = 0; i < X.count(d); ++i) {
            auto s = static_cast<SimplexIndex>(i);
            Chain t{d - 1, {}};
            bool ok = true;
            auto f = X.faces_of(d, s);
            for (int j = 0; j <= d && ok; ++j) {
                const auto& c = cols[d - 1][f[j]];
                if (!c) ok = false;
                else t.terms = axpy(t.terms, j % 2 == 0 ? 1 : -1, c->terms);
            }
            if (!ok) {
                ++p.undefined;
                continue;
            }
            // vertex images spanning a simplex of Y already bound t
            std::vector<Vertex> img;
            for (Vertex v : X.vertices_of(d, s)) img.push_back(cols[0][v]->terms[0].index);
            if (auto c = simplex_image(*e.Y, img)) {
                Chain b = c->zero() ? Chain{d - 1, {}} : e.Y->boundary(*c);
                if ((b - t).zero()) {
                    cols[d][i] = *c;
                    continue;
                }
            }
            std::optional<FillResult> r = fill(e.Y, t, Theory::homology, max_radius);
            if (!r) {
                ++p.undefined;
                continue;
            }
            p.fill_radius = std::max(p.fill_radius, r->radius);
            cols[d][i] = r->chain;
        }
    }
    p.g.name = "g";
    p.g.kind = MapKind::chain_to_chain;
    p.g.source = e.X;
    p.g.target = e.Y;
    auto shared = p.columns;
    p.g.column = [shared](int d, SimplexIndex s) -> std::optional<Chain> {
        if (d < 0 || d >= static_cast<int>(shared->size())) return Chain{d, {}};
        return (*shared)[d][s];
    };
    return p;
}

// g o f homotopic to the identity of C_*(Y): H with dH + Hd = g f - id.
struct HomotopyReport {
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    int fill_radius = 0;
    int lipschitz = 0;       // of H
    int displacement = 0;    // of g o f
    bool exact() const { return failed == 0 && checked > 0; }
};

inline HomotopyReport gf_homotopy(const Embedding& e, const Pushforward& p, int interior_margin = 1, int max_radius = 6) {
    const auto& Y = *e.Y;
    HomotopyReport rep;
    std::vector<std::vector<std::optional<Chain>>> H(Y.dim() + 1), GF(Y.dim() + 1);
    auto gf = [&](int d, SimplexIndex s) -> std::optional<Chain> {
        auto c = e.f.column(d, s);
        if (!c) return std::nullopt;
        return p.g.apply(*c);
    };
    for (int d = 0; d <= Y.dim(); ++d) {
        H[d].resize(Y.count(d));
        GF[d].resize(Y.count(d));
        for (std::size_t i = 0; i < Y.count(d); ++i) {
            auto s = static_cast<SimplexIndex>(i);
            GF[d][i] = gf(d, s);
            if (!GF[d][i]) continue;
            Chain t = *GF[d][i] - Chain{d, {{s, 1}}};
            bool ok = true;
            if (d > 0) {
                auto f = Y.faces_of(d, s);
                for (int j = 0; j <= d && ok; ++j) {
                    if (!H[d - 1][f[j]]) ok = false;
                    else t.terms = axpy(t.terms, j % 2 == 0 ? -1 : 1, H[d - 1][f[j]]->terms);
                }
            }
            if (!ok) continue;
            if (t.zero()) {
                H[d][i] = Chain{d + 1, {}};
                continue;
            }
            auto r = fill(e.Y, t, Theory::homology, max_radius);
            if (!r) continue;
            rep.fill_radius = std::max(rep.fill_radius, r->radius);
            H[d][i] = r->chain;
        }
    }
    // audit dH + Hd = gf - id on the interior
    auto fd = frontier_distances(Y);
    std::vector<std::pair<int, SimplexIndex>> sample;
    for (int d = 0; d <= Y.dim(); ++d) {
        for (std::size_t i = 0; i < Y.count(d); ++i) {
            auto s = static_cast<SimplexIndex>(i);
            int m = kInfinity;
            for (Vertex v : Y.vertices_of(d, s)) m = std::min(m, fd[v]);
            if (m < interior_margin) continue;
            bool ok = GF[d][i] && H[d][i];
            Chain rhs{d, {}};
            if (ok && d > 0) {
                auto f = Y.faces_of(d, s);
                for (int j = 0; j <= d; ++j) {
                    if (!H[d - 1][f[j]]) { ok = false; break; }
                    rhs.terms = axpy(rhs.terms, j % 2 == 0 ? 1 : -1, H[d - 1][f[j]]->terms);
                }
            }
            if (!ok) {
                ++rep.skipped;
                continue;
            }
            ++rep.checked;
            Chain dH = H[d][i]->zero() ? Chain{d, {}} : detail::bnd(Y, *H[d][i]);
            Chain lhs = dH + rhs;
            Chain want = *GF[d][i] - Chain{d, {{s, 1}}};
            if (!(lhs - want).zero()) ++rep.failed;
            sample.push_back({d, s});
        }
    }
    ChainMapRecord h{"H", MapKind::chain_homotopy, e.Y, e.Y, 0,
                     [&H](int d, SimplexIndex s) { return H[d][s]; }, -1, -1};
    ChainMapRecord g_f{"gf", MapKind::chain_to_chain, e.Y, e.Y, 0,
                       [&GF](int d, SimplexIndex s) { return GF[d][s]; }, -1, -1};
    rep.lipschitz = measure_map(h, sample, false, 16).lipschitz;
    rep.displacement = measure_map(g_f, sample, true, 16).displacement;
    return rep;
}

// Comparison with the orthogonal projection for coordinate embeddings. Kuhn-metric nearest
// points form a segment, so g_0 and the orthogonal foot are both nearest points but need not agree.
struct ProjectionCompare {
    std::size_t checked = 0;
    std::size_t foot_not_nearest = 0;  // orthogonal foot farther than g_0(x)
    std::size_t beyond_distance = 0;   // d(g_0(x), foot) > d(x, Y)
    int max_deviation = 0;
    bool ok() const { return checked > 0 && foot_not_nearest == 0 && beyond_distance == 0; }
};

inline ProjectionCompare compare_projection(const Embedding& e, const Pushforward& p) {
    const auto& X = *e.X;
    const auto& Y = *e.Y;
    ProjectionCompare rep;
    int m = Y.coordinate_dim();
    if (m == 0) return rep;
    Grid gy = grid_of(Y);
    for (std::size_t v = 0; v < X.vertex_count(); ++v) {
        const auto& c = (*p.columns)[0][v];
        if (!c) continue;
        auto x = X.coordinates(static_cast<Vertex>(v));
        std::vector<int> y(x.begin(), x.begin() + m);
        if (!gy.inside(y)) continue;
        Vertex foot = gy.vertex(y);
        Vertex got = c->terms[0].index;
        int d_got = kuhn_distance(x, X.coordinates(e.vmap[got]));
        int d_foot = kuhn_distance(x, X.coordinates(e.vmap[foot]));
        int dev = kuhn_distance(Y.coordinates(foot), Y.coordinates(got));
        ++rep.checked;
        if (d_foot != d_got) ++rep.foot_not_nearest;
        if (dev > d_got) ++rep.beyond_distance;
        rep.max_deviation = std::max(rep.max_deviation, dev);
    }
    return rep;
}

// ---- coarse Alexander duality through f -------------------------------------------

struct CoarseAdReport {
    int k = 0;
    std::shared_ptr<Tower> source, target;
    TowerMorphism A;
    Verdict part1, part2;
    std::vector<std::pair<int, int>> R_prime;  // measured (R, R')
    int R_valid = 0;
    int max_gap() const {
        int g = 0;
        for (auto [r, rp] : R_prime) g = std::max(g, rp - r);
        return g;
    }
};

// A_R : H~_{n-k-1}(Y_R) -> H^k_c(Y), sigma |-> f^* P(tau) with d tau = sigma.
inline CoarseAdReport verify_coarse_ad(const DualitySetup& s, const Embedding& e, int k, const std::vector<int>& R_list,
                                       std::size_t slack = 3) {
    const Window& W = *s.window;
    if (W.complex() != e.X) throw Error("verify_coarse_ad: embedding and duality window differ");
    int j = s.n - k - 1;
    auto filt = std::make_shared<NeighborhoodFiltration>(e.K);
    auto none = Subcomplex::empty(e.X);
    CoarseAdReport rep;
    rep.k = k;
    rep.source = std::make_shared<Tower>(build_tower(
        Direction::inverse, R_list, j,
        [&](int R) { return homology_pair(W, filt->complement(R), none, true, s.margin); }, "H~", [&](int) { return true; }));
    Window WY(e.Y);
    auto HY = cohomology_pair(WY, Subcomplex::whole(e.Y), Subcomplex::empty(e.Y), 1);
    auto target = std::make_shared<Tower>();
    target->direction = Direction::inverse;
    target->indices = R_list;
    for (std::size_t i = 0; i < R_list.size(); ++i) {
        target->pairs.push_back(HY);
        target->groups.push_back(graded(*HY, k, "H_c", meets_collar(WY, Subcomplex::whole(e.Y), 1)));
        if (i + 1 < R_list.size()) target->maps.push_back(GroupMap::identity(HY->group(k)));
    }
    rep.target = target;
    rep.A = TowerMorphism{rep.source.get(), rep.target.get(), 0, {}};
    // radii too close to the truncation give no verdict
    auto fd = frontier_distances(*e.X);
    int depth = fd.empty() ? 0 : *std::max_element(fd.begin(), fd.end());
    int R_valid = depth - s.margin - static_cast<int>(slack);
    rep.R_valid = R_valid;
    bool all_epi = true, any = false;
    for (std::size_t i = 0; i < R_list.size(); ++i) {
        auto m = detail::chain_level_map(*rep.source->pairs[i], j, *HY, k, [&](const Chain& sigma) -> std::optional<Chain> {
            auto tau = detail::cone_off(s, sigma);
            if (!tau) return std::nullopt;
            auto xi = s.P.apply(*tau);
            if (!xi) return std::nullopt;
            return pullback(e.f, *xi);
        });
        if (m && R_list[i] <= R_valid) {
            any = true;
            all_epi = all_epi && is_surjective(*m);
        }
        rep.A.maps.push_back(m);
    }
    rep.part1 = check_approx_mono(rep.A, slack);
    rep.R_prime = rep.part1.omega;
    rep.part2.status = !any ? Status::inconclusive : (all_epi ? Status::verified : Status::refuted);
    rep.part2.note = "A_R surjective at every stored R";
    return rep;
}

struct DeepCountReport {
    std::size_t predicted = 0;       // 1 + rank H^{n-1}_c(Y), windowed
    bool windowed = false;
    StabilityReport components;
    bool agrees() const {
        if (components.deep_counts.empty()) return false;
        for (std::size_t i = 0; i < components.deep_counts.size(); ++i)
            if (components.deep_counts[i] != predicted || !components.stable[i]) return false;
        return true;
    }
};

inline DeepCountReport deep_count_vs_cohomology(const Embedding& e, const std::vector<int>& R_list) {
    int n = e.X->dim();
    DeepCountReport rep;
    Window WY(e.Y);
    auto g = cohomology_c(WY, Subcomplex::whole(e.Y), n - 1, 1);
    rep.predicted = 1 + g.free_rank();
    rep.windowed = g.windowed;
    rep.components = component_stability(e.K, R_list);
    return rep;
}

// Every vertex of N_R(K) lies within D of each deep component of Y_R.
struct ProximityReport {
    int R = 0;
    std::size_t deep = 0;
    int D = 0;
    std::size_t vertices = 0;
    std::map<Vertex, int> slice_max;  // per nearest K vertex
    bool constant = false;
};

inline ProximityReport bilateral_proximity(const Subcomplex& K, int R, int margin) {
    const auto& X = K.complex();
    NeighborhoodFiltration filt(K);
    auto dc = deep_components(filt, R);
    ProximityReport rep;
    rep.R = R;
    rep.deep = dc.deep.size();
    std::vector<std::vector<int>> dist;
    for (const auto& c : dc.deep) dist.push_back(distances_from(c));
    auto fd = frontier_distances(X);
    auto N = filt.neighborhood(R);
    // nearest K vertex (least id on ties)
    std::vector<int> dK(X.vertex_count(), kInfinity);
    std::vector<Vertex> near(X.vertex_count(), -1);
    std::vector<Vertex> layer = K.vertices();
    for (Vertex v : layer) {
        dK[v] = 0;
        near[v] = v;
    }
    for (int d = 0; !layer.empty(); ++d) {
        std::vector<Vertex> next;
        for (Vertex v : layer)
            for (SimplexIndex ed : X.cofaces_of(0, v)) {
                auto ends = X.vertices_of(1, ed);
                Vertex w = ends[0] == v ? ends[1] : ends[0];
                if (dK[w] == kInfinity) {
                    dK[w] = d + 1;
                    near[w] = near[v];
                    next.push_back(w);
                } else if (dK[w] == d + 1) {
                    near[w] = std::min(near[w], near[v]);
                }
            }
        layer = std::move(next);
    }
    for (Vertex v : N.vertices()) {
        if (fd[v] < margin) continue;
        int worst = 0;
        for (const auto& d : dist) worst = std::max(worst, d[v]);
        ++rep.vertices;
        rep.D = std::max(rep.D, worst);
        auto& s = rep.slice_max[near[v]];
        s = std::max(s, worst);
    }
    rep.constant = !rep.slice_max.empty();
    for (const auto& [v, m] : rep.slice_max) rep.constant = rep.constant && m == rep.D;
    return rep;
}

} // namespace coarsetop
