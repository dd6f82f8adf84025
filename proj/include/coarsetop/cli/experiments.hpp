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

#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "../core/complex_io.hpp"
#include "../duality/annulus.hpp"
#include "../duality/coarse_ad.hpp"
#include "../duality/cyclic_order.hpp"
#include "../duality/orientation.hpp"
#include "../generators/baumslag_solitar.hpp"
#include "../generators/grid.hpp"
#include "../generators/presentation.hpp"
#include "config.hpp"
#include "report.hpp"

namespace coarsetop {

using ExperimentRunner = std::function<WindowResult(const ExperimentConfig&, std::size_t which)>;

struct ExperimentInfo {
    std::string name;
    std::string summary;
    ExperimentRunner run;
};

namespace detail {

using nlohmann::json;

inline int param(const ExperimentConfig& c, const char* key, int fallback) {
    const auto& p = c.generator.value("params", json::object());
    return p.value(key, fallback);
}

inline int required_param(const ExperimentConfig& c, const char* key) {
    const auto& p = c.generator.value("params", json::object());
    if (!p.contains(key) || !p[key].is_number_integer())
        throw UsageError(c.id + ": generator.params." + key + " must be an integer");
    return p[key].get<int>();
}

inline std::string kind_of(const ExperimentConfig& c) { return c.generator.value("kind", ""); }

inline void expect_kind(const ExperimentConfig& c, std::initializer_list<const char*> kinds) {
    std::string k = kind_of(c);
    for (const char* a : kinds) if (k == a) return;
    std::string names;
    for (const char* a : kinds) names += std::string(names.empty() ? "" : ", ") + a;
    throw UsageError(c.id + ": " + c.name + " needs a generator of kind " + names + " (got \"" + k + "\")");
}

// grid, cayley or file spaces at window index `which`.
inline ComplexPtr build_space(const ExperimentConfig& c, std::size_t which) {
    std::string kind = kind_of(c);
    int w = c.windows[which];
    if (kind == "grid") {
        int n = required_param(c, "n");
        if (n < 1 || n > 4) throw UsageError(c.id + ": grid dimension must be 1..4");
        return grid_window(n, w);
    }
    if (kind == "cayley") {
        auto text = c.generator.value("params", json::object()).value("presentation", std::string());
        if (text.empty()) throw UsageError(c.id + ": cayley generator needs params.presentation");
        return cayley_2complex(parse_presentation(text), w).X;
    }
    if (kind == "file") {
        auto paths = c.generator.at("paths").get<std::vector<std::string>>();
        return std::make_shared<const SimplicialComplex>(load_complex(paths[which]));
    }
    throw UsageError(c.id + ": unknown generator kind \"" + kind + "\"");
}

inline Subcomplex build_K(const ExperimentConfig& c, const ComplexPtr& X) {
    const json& s = c.K;
    if (!s.is_object() || !s.contains("kind")) throw UsageError(c.id + ": missing K spec");
    std::string kind = s["kind"].get<std::string>();
    auto needs_grid = [&] {
        if (X->coordinate_dim() == 0) throw UsageError(c.id + ": K kind \"" + kind + "\" needs grid coordinates");
    };
    if (kind == "point") {
        if (X->coordinate_dim() == 0) {
            std::vector<std::uint8_t> m(X->vertex_count(), 0);
            m[0] = 1;
            return Subcomplex::induced(X, m);
        }
        return grid_point(X);
    }
    if (kind == "hyperplane") {
        needs_grid();
        return hyperplane(X, s.value("axis", X->coordinate_dim() - 1), s.value("offset", 0));
    }
    if (kind == "ring") {
        needs_grid();
        return grid_ring(X, s.value("r", 2));
    }
    if (kind == "net") {
        needs_grid();
        return grid_net(X, s.value("spacing", 3), s.value("radius", 6));
    }
    if (kind == "ball") {
        needs_grid();
        return grid_ball(X, s.value("radius", 2));
    }
    if (kind == "book") {
        needs_grid();
        return halfplane_book(X, s.value("sheets", 3));
    }
    if (kind == "labels") {
        std::vector<std::uint8_t> m(X->vertex_count(), 0);
        for (auto l : s.at("labels").get<std::vector<VertexLabel>>()) {
            auto v = X->vertex_of_label(l);
            if (!v) throw UsageError(c.id + ": K label " + std::to_string(l) + " not in the complex");
            m[*v] = 1;
        }
        return Subcomplex::induced(X, m);
    }
    throw UsageError(c.id + ": unknown K kind \"" + kind + "\"");
}

// Y -> X for grid spaces: Y = {kind: grid, dim: m} or {kind: book, sheets: k}.
inline Embedding build_embedding(const ExperimentConfig& c, std::size_t which) {
    expect_kind(c, {"grid"});
    int n = required_param(c, "n");
    int w = c.windows[which];
    const json& s = c.Y;
    if (!s.is_object() || !s.contains("kind")) throw UsageError(c.id + ": missing Y spec");
    std::string kind = s["kind"].get<std::string>();
    if (kind == "grid") {
        int m = s.value("dim", n - 1);
        if (m < 0 || m >= n) throw UsageError(c.id + ": Y.dim must be in 0.." + std::to_string(n - 1));
        return grid_embedding(m, n, w, w);
    }
    if (kind == "book") return extract_subcomplex(halfplane_book(grid_window(n, w), s.value("sheets", 3)));
    throw UsageError(c.id + ": unknown Y kind \"" + kind + "\"");
}

inline void check_radii(const ExperimentConfig& c, int valid, int window) {
    if (c.R.empty()) throw UsageError(c.id + ": " + c.name + " needs an R list");
    if (c.R.back() > valid)
        throw UsageError(c.id + ": R = " + std::to_string(c.R.back()) + " exceeds the valid radius " + std::to_string(valid) +
                         " at window " + std::to_string(window));
}

inline std::vector<int> degrees_or(const ExperimentConfig& c, int lo, int hi) {
    if (!c.degrees.empty()) return c.degrees;
    std::vector<int> d;
    for (int k = lo; k <= hi; ++k) d.push_back(k);
    return d;
}

// Translation-invariant certificates are shared between experiments and windows.
inline std::shared_ptr<const PoincareCertificate> certificate(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_future<std::shared_ptr<const PoincareCertificate>>> cache;
    std::shared_future<std::shared_ptr<const PoincareCertificate>> f;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it == cache.end()) {
            it = cache.emplace(n, std::async(std::launch::deferred, [n] {
                                      return std::shared_ptr<const PoincareCertificate>(
                                          std::make_shared<PoincareCertificate>(build_poincare_certificate(n)));
                                  }).share()).first;
        }
        f = it->second;
    }
    return f.get();
}

inline void absorb(WindowResult& r, const Verdict& v, const std::string& what) {
    if (v.status == Status::refuted) {
        r.status = Status::refuted;
        r.notes.push_back("refuted: " + what + (v.witness.empty() ? "" : " (" + v.witness + ")"));
    } else if (v.status == Status::inconclusive && r.status == Status::verified) {
        r.status = Status::inconclusive;
        r.notes.push_back("inconclusive: " + what);
    }
}

inline std::optional<std::size_t> rank_of(const std::optional<GroupMap>& m) {
    if (!m) return std::nullopt;
    return map_rank(*m);
}

inline void tower_rows(WindowResult& r, const std::string& quantity, int degree, const Tower& T, const TowerMorphism* f,
                       const std::string& verdict) {
    for (std::size_t i = 0; i < T.size(); ++i) {
        auto row = group_row(T.indices[i], degree, quantity, T.groups[i].group, verdict);
        if (f && i < f->maps.size()) row.map_rank = rank_of(f->maps[i]);
        r.rows.push_back(std::move(row));
    }
}

inline std::string verdict_pair(const Verdict& a, const Verdict& b) {
    return std::string(status_name(a.status)) + "/" + status_name(b.status);
}

// ---- experiments -----------------------------------------------------------------

inline WindowResult run_jordan(const ExperimentConfig& c, std::size_t which) {
    expect_kind(c, {"grid", "cayley", "file"});
    WindowResult r;
    r.window = c.windows[which];
    auto X = build_space(c, which);
    auto K = build_K(c, X);
    int valid = valid_radius(K);
    check_radii(c, valid, r.window);
    auto expect = static_cast<std::size_t>(c.options.value("expect", 2));
    auto st = component_stability(K, c.R);
    r.status = Status::verified;
    for (std::size_t i = 0; i < st.R.size(); ++i) {
        r.rows.push_back(count_row(st.R[i], 0, "deep_components", st.deep_counts[i], st.stable[i] ? "stable" : "unstable"));
        r.require(st.deep_counts[i] == expect, "R=" + std::to_string(st.R[i]) + ": " + std::to_string(st.deep_counts[i]) +
                                                   " deep components, expected " + std::to_string(expect));
        r.require(st.stable[i], "R=" + std::to_string(st.R[i]) + ": deep components not stable");
    }
    r.details = {{"vertices", X->vertex_count()}, {"valid_radius", valid}, {"stabilization_radius", st.stabilization_radius}};
    return r;
}

inline WindowResult run_deep_count(const ExperimentConfig& c, std::size_t which) {
    WindowResult r;
    r.window = c.windows[which];
    auto e = build_embedding(c, which);
    int n = e.X->dim();
    check_radii(c, valid_radius(e.K), r.window);
    auto dc = deep_count_vs_cohomology(e, c.R);
    r.status = Status::verified;
    r.rows.push_back(count_row(-1, n - 1, "1+rank Hc(Y)", dc.predicted, dc.windowed ? "windowed" : "exact"));
    for (std::size_t i = 0; i < dc.components.R.size(); ++i)
        r.rows.push_back(count_row(dc.components.R[i], 0, "deep_components", dc.components.deep_counts[i],
                                   dc.components.stable[i] ? "stable" : "unstable"));
    r.require(dc.agrees(), "deep component count differs from 1 + rank H^{n-1}_c(Y) or is unstable");
    if (c.options.contains("expect"))
        r.require(dc.predicted == c.options["expect"].get<std::size_t>(), "predicted count differs from the expected value");
    r.details = {{"vertices", e.X->vertex_count()}, {"Y_vertices", e.Y->vertex_count()}};
    return r;
}

inline WindowResult run_pd_certificate(const ExperimentConfig& c, std::size_t which) {
    expect_kind(c, {"grid"});
    WindowResult r;
    r.window = c.windows[which];
    int n = required_param(c, "n");
    auto cert = certificate(n);
    auto X = grid_window(n, r.window);
    auto audit = audit_certificate(*cert, X);
    auto m = measure_certificate(*cert, X);
    r.status = Status::verified;
    r.rows.push_back(count_row(-1, -1, "D0", static_cast<std::size_t>(m.D0())));
    r.rows.push_back(count_row(-1, -1, "displacement P", static_cast<std::size_t>(m.P)));
    r.rows.push_back(count_row(-1, -1, "displacement Pbar", static_cast<std::size_t>(m.Pbar)));
    r.rows.push_back(count_row(-1, -1, "lipschitz Phi", static_cast<std::size_t>(m.Phi)));
    r.rows.push_back(count_row(-1, -1, "lipschitz Phibar", static_cast<std::size_t>(m.Phibar)));
    static const char* ids[] = {"P chain map", "Pbar chain map", "Pbar P - id = dPhi + Phi d", "P Pbar - id = dPhibar + Phibar d"};
    json checked = json::object();
    for (int i = 0; i < 4; ++i) {
        r.rows.push_back(count_row(-1, -1, std::string("failures ") + ids[i], audit.failed[i], audit.failed[i] ? "refuted" : "exact"));
        r.require(audit.failed[i] == 0, ids[i]);
        r.require(audit.checked[i] > 0, std::string(ids[i]) + " checked on no simplex");
        checked[ids[i]] = audit.checked[i];
    }
    r.details = {{"checked", checked}, {"interior_margin", audit.interior_margin}, {"skipped", audit.skipped}};
    if (c.K.is_null()) return r;

    // (e1)-(e4) on the same window
    check_radii(c, valid_radius(build_K(c, X)), r.window);
    Window win(X);
    auto s = make_duality_setup(win, cert, m.D0());
    auto K = build_K(c, X);
    int bound = c.options.value("max_gap", 2 * m.D0());
    for (int k : degrees_or(c, 0, n))
        for (auto v : {PdVariant::e1, PdVariant::e2, PdVariant::e3, PdVariant::e4})
            for (bool fw : {true, false}) {
                auto chk = check_pd_variant(s, K, k, v, fw, c.R);
                std::string label = std::string(variant_name(v)) + (fw ? " forward" : " reverse");
                tower_rows(r, label, k, *chk.source, &chk.morphism, verdict_pair(chk.mono, chk.epi));
                r.rows.push_back(count_row(-1, k, label + " omega-R", static_cast<std::size_t>(chk.max_gap())));
                absorb(r, chk.mono, label + " k=" + std::to_string(k) + " mono");
                absorb(r, chk.epi, label + " k=" + std::to_string(k) + " epi");
                r.require(chk.compatible, label + " k=" + std::to_string(k) + " not compatible with the tower maps");
                r.require(chk.max_gap() <= bound, label + " k=" + std::to_string(k) + " omega(R) - R above " + std::to_string(bound));
            }
    return r;
}

inline WindowResult run_coarse_ad(const ExperimentConfig& c, std::size_t which) {
    expect_kind(c, {"grid"});
    WindowResult r;
    r.window = c.windows[which];
    int n = required_param(c, "n");
    auto cert = certificate(n);
    r.status = Status::verified;
    if (!c.Y.is_null()) {
        auto e = build_embedding(c, which);
        Window win(e.X);
        auto s = make_duality_setup(win, cert);
        int bound = c.options.value("max_gap", 2 * s.D0);
        auto p = pushforward_g(e);
        auto h = gf_homotopy(e, p);
        auto pc = compare_projection(e, p);
        r.rows.push_back(count_row(-1, -1, "g undefined", p.undefined));
        r.rows.push_back(count_row(-1, -1, "gf homotopy failures", h.failed, h.exact() ? "exact" : "refuted"));
        r.rows.push_back(count_row(-1, -1, "gf homotopy lipschitz", static_cast<std::size_t>(h.lipschitz)));
        r.rows.push_back(count_row(-1, -1, "gf displacement", static_cast<std::size_t>(h.displacement)));
        r.rows.push_back(count_row(-1, -1, "projection failures", pc.foot_not_nearest + pc.beyond_distance, pc.ok() ? "ok" : "refuted"));
        r.require(p.undefined == 0, "pushforward g undefined on some simplex");
        r.require(h.exact(), "g o f - id = dH + Hd fails");
        r.require(pc.ok(), "g_0 differs from the nearest-point projection");
        for (int k : degrees_or(c, 0, n - 1)) {
            auto a = verify_coarse_ad(s, e, k, c.R);
            tower_rows(r, "A_R source", k, *a.source, &a.A, verdict_pair(a.part1, a.part2));
            r.rows.push_back(count_row(-1, k, "R'-R", static_cast<std::size_t>(a.max_gap())));
            absorb(r, a.part1, "part 1 k=" + std::to_string(k));
            absorb(r, a.part2, "part 2 k=" + std::to_string(k));
            r.require(a.max_gap() <= bound, "k=" + std::to_string(k) + ": R'(R) - R above " + std::to_string(bound));
        }
        r.details = {{"D0", s.D0}, {"fill_radius", p.fill_radius}, {"homotopy_checked", h.checked},
                     {"projection_checked", pc.checked}, {"projection_max_deviation", pc.max_deviation}};
        return r;
    }
    // (f1)-(f4) for a subcomplex K
    auto X = grid_window(n, r.window);
    auto K = build_K(c, X);
    check_radii(c, valid_radius(K), r.window);
    Window win(X);
    auto s = make_duality_setup(win, cert);
    int bound = c.options.value("max_gap", 2 * s.D0);
    for (int k : degrees_or(c, 0, n - 1))
        for (auto v : {AdVariant::f1, AdVariant::f2, AdVariant::f3, AdVariant::f4}) {
            auto chk = check_alexander_variant(s, K, k, v, c.R);
            std::string label = variant_name(v);
            tower_rows(r, label, k, *chk.source, &chk.morphism, verdict_pair(chk.mono, chk.epi));
            r.rows.push_back(count_row(-1, k, label + " omega-R", static_cast<std::size_t>(chk.max_gap())));
            absorb(r, chk.mono, label + " k=" + std::to_string(k) + " mono");
            absorb(r, chk.epi, label + " k=" + std::to_string(k) + " epi");
            r.require(chk.max_gap() <= bound, label + " k=" + std::to_string(k) + " omega(R) - R above " + std::to_string(bound));
        }
    r.details = {{"D0", s.D0}};
    return r;
}

inline WindowResult run_annulus_tower(const ExperimentConfig& c, std::size_t which) {
    expect_kind(c, {"grid", "cayley", "file"});
    WindowResult r;
    r.window = c.windows[which];
    auto X = build_space(c, which);
    auto K = build_K(c, X);
    int valid = valid_radius(K);
    check_radii(c, valid - 1, r.window);  // widening reaches R + 1
    int inner = c.options.value("inner", 2);
    if (inner < 1) throw UsageError(c.id + ": options.inner must be at least 1");
    Window W(X);
    NeighborhoodFiltration filt(K);
    r.status = Status::verified;
    const json expect = c.options.value("expect", json::object());
    for (int k : degrees_or(c, 0, X->dim())) {
        bool all_iso = true, all_zero = true;
        for (int R : c.R) {
            if (R <= inner) continue;
            auto a = annulus_homology(W, filt, inner, R, k);
            auto row = group_row(R, k, "H~ A(" + std::to_string(inner) + ",R)", a.group.group,
                                 a.widening_iso ? "iso" : (a.widening_zero ? "zero" : "neither"));
            row.map_rank = rank_of(a.widening);
            r.rows.push_back(std::move(row));
            all_iso = all_iso && a.widening_iso;
            all_zero = all_zero && a.widening_zero;
            auto key = std::to_string(k);
            if (expect.contains(key)) {
                const auto& ex = expect[key];
                if (ex.contains("group"))
                    r.require(a.group.group.str() == ex["group"].get<std::string>(),
                              "k=" + key + " R=" + std::to_string(R) + ": group " + a.group.group.str());
                if (ex.value("widening", "") == "iso") r.require(a.widening_iso, "k=" + key + " R=" + std::to_string(R) + ": widening not iso");
                if (ex.value("widening", "") == "zero") r.require(a.widening_zero, "k=" + key + " R=" + std::to_string(R) + ": widening not zero");
            }
        }
        r.require(all_iso || all_zero, "k=" + std::to_string(k) + ": widening maps are neither all iso nor all zero");
    }
    if (c.options.value("nested", true)) {
        int count = c.options.value("nested_count", 3);
        auto na = nested_annuli(W, K, c.R.front(), count, c.R.back());
        r.rows.push_back(count_row(-1, -1, "nested annuli complete", na.complete ? 1 : 0, na.ok() ? "ok" : "failed"));
        r.require(na.ok(), "nested annuli conditions");
        r.details["nested_radii"] = na.radii;
        r.details["nested_notes"] = na.notes;
    }
    return r;
}

inline WindowResult run_vanishing_tower(const ExperimentConfig& c, std::size_t which) {
    expect_kind(c, {"grid", "cayley", "file"});
    WindowResult r;
    r.window = c.windows[which];
    auto X = build_space(c, which);
    auto K = build_K(c, X);
    check_radii(c, valid_radius(K), r.window);
    Window W(X);
    int k_max = c.options.value("k_max", 2);
    auto verdicts = vanishing_tower_test(W, K, k_max, c.R);
    r.status = Status::verified;
    for (int k = 0; k < k_max; ++k) {
        auto T = neighborhood_tower(W, K, k, Kind::Hred, c.R);
        tower_rows(r, "H~ N_R(K)", k, T, nullptr, status_name(verdicts[k].status));
        r.rows.push_back(count_row(-1, k, "omega-R", static_cast<std::size_t>(verdicts[k].max_gap()), status_name(verdicts[k].status)));
        absorb(r, verdicts[k], "pro-zero k=" + std::to_string(k));
    }
    r.details = {{"vertices", X->vertex_count()}, {"K_vertices", K.size(0)}};
    return r;
}

inline std::size_t order_code(const std::vector<int>& order, std::size_t k) {
    std::size_t code = 0;
    for (int o : order) code = code * k + static_cast<std::size_t>(o);
    return code;
}

inline BsRayWindow bs_window(const ExperimentConfig& c, std::size_t which) {
    int p = required_param(c, "p"), q = required_param(c, "q");
    int ray_depth = param(c, "ray_depth", 3);
    int depth = c.windows[which];
    if (depth < ray_depth) throw UsageError(c.id + ": bs window (tree depth) must be at least ray_depth");
    return bs_ray_window(p, q, ray_depth, depth - ray_depth, param(c, "E", std::max(p, q)), param(c, "H", 3),
                         param(c, "rays", 3));
}

inline WindowResult run_cyclic_order(const ExperimentConfig& c, std::size_t which) {
    expect_kind(c, {"grid", "bs"});
    WindowResult r;
    r.window = c.windows[which];
    ComplexPtr X;
    std::vector<Subcomplex> sheets;
    int margin = 0;
    std::optional<BsRayWindow> bs;
    if (kind_of(c) == "grid") {
        if (required_param(c, "n") != 3) throw UsageError(c.id + ": cyclic-order needs a 3-dimensional grid");
        X = grid_window(3, r.window);
        int k = c.options.value("sheets", 3);
        for (int i = 0; i < k; ++i) sheets.push_back(book_sheet(X, k, i));
        margin = c.options.value("margin", 1);
        auto W = sheets[0];
        for (auto& s : sheets) W = W.unite(s);
        check_radii(c, valid_radius(W), r.window);
    } else {
        bs = bs_window(c, which);
        X = bs->B.X;
        for (auto& s : bs->Y.sheets) sheets.push_back(bs->B.image(s));
        // side subtrees reach window depth - ray depth levels beyond the rays
        check_radii(c, r.window - param(c, "ray_depth", 3), r.window);
    }
    Window win(X);
    r.status = Status::verified;
    std::optional<std::vector<int>> first;
    json orders = json::array();
    for (std::size_t i = 0; i < c.R.size(); ++i) {
        int R = c.R[i];
        auto co = cyclic_order_experiment(win, sheets, R, margin, std::nullopt, i == 0);
        r.rows.push_back(count_row(R, -1, "deep_components", co.deep, co.consistent() ? "consistent" : co.problem));
        r.rows.push_back(count_row(R, -1, "cyclic order code", order_code(co.order, sheets.size())));
        r.require(co.consistent(), "R=" + std::to_string(R) + ": " + co.problem);
        if (i == 0) r.require(std::all_of(co.pair_acyclic.begin(), co.pair_acyclic.end(), [](bool b) { return b; }),
                              "pairwise sheet unions acyclic");
        if (!first) first = co.order;
        else r.require(*first == co.order, "cyclic order changes with R");
        json a = json::array();
        for (const auto& adj : co.adjacency) a.push_back({{"sheets", adj.sheets}, {"nearest", adj.nearest}, {"cover", adj.cover}});
        orders.push_back({{"R", R}, {"order", co.order}, {"adjacency", a}});
    }
    r.details = {{"vertices", X->vertex_count()}, {"orders", orders}};
    return r;
}

inline WindowResult run_bs_audit(const ExperimentConfig& c, std::size_t which) {
    expect_kind(c, {"bs"});
    WindowResult r;
    r.window = c.windows[which];
    auto bs = bs_window(c, which);
    const auto& S = bs.B.sigma;
    r.status = Status::verified;
    auto strips = audit_strips(S);
    r.rows.push_back(count_row(-1, -1, "strip valence failures", strips.bad_valence));
    r.rows.push_back(count_row(-1, -1, "fiber failures", strips.bad_fibers));
    r.require(strips.ok(), "interior tree vertices carry p incoming / q outgoing strips");
    auto links = manifold_audit(*bs.B.X);
    r.rows.push_back(count_row(-1, -1, "link failures", links.failures.size(), links.ok() ? "manifold" : "refuted"));
    r.require(links.ok(), "every interior vertex link of the R^3 window is a 2-sphere");
    for (int k = 0; k <= 2; ++k) {
        auto sig = homology(Subcomplex::whole(S.X), k, true);
        auto y = homology(Subcomplex::whole(bs.Y.Y.Y), k, true);
        r.rows.push_back(group_row(-1, k, "H~ Sigma", sig.group));
        r.rows.push_back(group_row(-1, k, "H~ Y", y.group));
        r.require(sig.group.free_rank == 0 && sig.group.torsion.empty(), "Sigma acyclic in degree " + std::to_string(k));
        r.require(y.group.free_rank == 0 && y.group.torsion.empty(), "Y acyclic in degree " + std::to_string(k));
    }
    const auto& sh = bs.Y.sheets;
    for (std::size_t i = 0; i < sh.size(); ++i)
        for (std::size_t j = i + 1; j < sh.size(); ++j) {
            auto U = sh[i].unite(sh[j]);
            std::size_t total = 0;
            for (int k = 0; k <= 2; ++k) {
                auto g = homology(U, k, true).group;
                total += g.free_rank + g.torsion.size();
            }
            r.rows.push_back(count_row(-1, -1, "H~ W" + std::to_string(i) + " u W" + std::to_string(j) + " generators", total));
            r.require(total == 0, "sheet union " + std::to_string(i) + "," + std::to_string(j) + " acyclic");
        }
    Window WY(bs.Y.Y.Y);
    auto hc = cohomology_c(WY, Subcomplex::whole(bs.Y.Y.Y), 2, 1);
    r.rows.push_back(group_row(-1, 2, "Hc Y", hc.group, hc.windowed ? "windowed" : "exact"));
    r.require(hc.group.free_rank + 1 == sh.size(), "H^2_c(Y) has rank rays - 1");
    int dmax = c.options.value("distortion_max", 6);
    std::vector<Vertex> sample;
    for (Vertex v = 0; v < static_cast<Vertex>(S.pi.size()); ++v) if (S.pi[v] == 0) sample.push_back(v);
    for (const auto& row : distortion_table(bs.B, sample)) {
        if (row.sigma_distance > dmax) break;
        auto x = count_row(row.sigma_distance, -1, "d_X range at d_Sigma", static_cast<std::size_t>(row.max_x));
        x.verdict = std::to_string(row.min_x) + ".." + std::to_string(row.max_x);
        r.rows.push_back(std::move(x));
    }
    r.details = {{"sigma_vertices", S.X->vertex_count()}, {"x_vertices", bs.B.X->vertex_count()},
                 {"tree_vertices", S.tree.size()}, {"spheres", links.spheres}, {"disks", links.disks}};
    return r;
}

} // namespace detail

inline const std::vector<ExperimentInfo>& experiment_registry() {
    static const std::vector<ExperimentInfo> reg{
        {"jordan-separation", "deep components of X - N_R(K) and their stability", detail::run_jordan},
        {"deep-count-formula", "deep components vs 1 + rank H^{n-1}_c(Y) for Y -> X", detail::run_deep_count},
        {"pd-certificate", "P, Pbar, Phi, Phibar identities and D0; (e1)-(e4) when K is given", detail::run_pd_certificate},
        {"coarse-ad", "pushforward g, g o f ~ id and parts 1-2 for Y -> X; (f1)-(f4) when K is given", detail::run_coarse_ad},
        {"annulus-tower", "H~ of annuli A(r,R), widening maps, nested annuli", detail::run_annulus_tower},
        {"vanishing-tower", "H~_i(N_R K) pro-zero for i < k_max", detail::run_vanishing_tower},
        {"cyclic-order", "cyclic order of book sheets or BS rays from deep components", detail::run_cyclic_order},
        {"bs-sigma-audit", "BS(p,q) Sigma strips, R^3 links, Y acyclicity, distortion", detail::run_bs_audit},
    };
    return reg;
}

inline const ExperimentInfo* find_experiment(const std::string& name) {
    for (const auto& e : experiment_registry()) if (e.name == name) return &e;
    return nullptr;
}

inline std::string experiment_names() {
    std::string s;
    for (const auto& e : experiment_registry()) s += (s.empty() ? "" : ", ") + e.name;
    return s;
}

inline void validate_names(const RunConfig& rc) {
    for (const auto& e : rc.experiments)
        if (!find_experiment(e.name)) throw UsageError("unknown experiment \"" + e.name + "\"; valid: " + experiment_names());
}

// UsageError propagates; other failures are recorded on the report.
inline ExperimentReport run_experiment(const ExperimentConfig& c) {
    const auto* info = find_experiment(c.name);
    if (!info) throw UsageError("unknown experiment \"" + c.name + "\"; valid: " + experiment_names());
    ExperimentReport rep;
    rep.config = c;
    for (std::size_t w = 0; w < 2; ++w) {
        try {
            rep.runs[w] = info->run(c, w);
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception& e) {
            rep.runs[w].window = c.windows[w];
            rep.runs[w].status = Status::refuted;
            rep.error = e.what();
        }
    }
    finish_report(rep);
    return rep;
}

// Experiments run concurrently; reports come back in config order.
inline std::vector<ExperimentReport> run_all(const RunConfig& rc) {
    validate_names(rc);
    std::vector<std::future<ExperimentReport>> jobs;
    for (const auto& e : rc.experiments) jobs.push_back(std::async(std::launch::async, [&e] { return run_experiment(e); }));
    std::vector<ExperimentReport> out;
    std::exception_ptr usage;
    for (auto& j : jobs) {
        try {
            out.push_back(j.get());
        } catch (const UsageError&) {
            if (!usage) usage = std::current_exception();
        }
    }
    if (usage) std::rethrow_exception(usage);
    return out;
}

// 0 all verified and stable, 1 something refuted or unstable, 3 otherwise inconclusive.
inline int exit_code(const std::vector<ExperimentReport>& reps) {
    bool inconclusive = false;
    for (const auto& r : reps) {
        if (r.status == Status::refuted) return 1;
        if (r.status == Status::inconclusive) inconclusive = true;
    }
    return inconclusive ? 3 : 0;
}

} // namespace coarsetop
