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

#include <memory>
#include <string>
#include <vector>

#include "tower.hpp"

namespace coarsetop {

enum class Kind { H, Hred, Hc, Hrel };

inline std::string kind_name(Kind k) {
    switch (k) {
    case Kind::H: return "H";
    case Kind::Hred: return "H~";
    case Kind::Hc: return "H_c";
    default: return "H_rel";
    }
}

struct SystemOptions {
    int collar = 1;   // windowed H_c collar width
    int margin = 0;   // homology computed on the window interior at this margin
};

// Towers over {N_R(K)}: homology direct, windowed H_c inverse (restriction).
// Kind::Hrel gives H_k(X, N_R), direct in R.
inline Tower neighborhood_tower(const Window& W, const Subcomplex& K, int k, Kind kind, const std::vector<int>& R_list,
                                SystemOptions opt = {}) {
    auto filt = std::make_shared<NeighborhoodFiltration>(K);
    auto none = Subcomplex::empty(W.complex());
    auto X = Subcomplex::whole(W.complex());
    switch (kind) {
    case Kind::Hc:
        return build_tower(
            Direction::inverse, R_list, k,
            [=, &W](int R) { return cohomology_pair(W, filt->neighborhood(R), none, opt.collar); }, "H_c",
            [=, &W](int R) { return meets_collar(W, filt->neighborhood(R), opt.collar); });
    case Kind::Hrel:
        return build_tower(
            Direction::direct, R_list, k,
            [=, &W](int R) { return homology_pair(W, X, filt->neighborhood(R), false, opt.margin); }, "H_rel",
            [=, &W](int) { return opt.margin > 0; });
    default:
        return build_tower(
            Direction::direct, R_list, k,
            [=, &W](int R) { return homology_pair(W, filt->neighborhood(R), none, kind == Kind::Hred, opt.margin); },
            kind_name(kind), [=, &W](int R) { return truncated_by(W, filt->neighborhood(R), opt.margin); });
    }
}

// Towers over {Y_R}: homology inverse, windowed H_c direct (restriction Y_R -> Y_{R+1}).
inline Tower complement_tower(const Window& W, const Subcomplex& K, int k, Kind kind, const std::vector<int>& R_list,
                              SystemOptions opt = {}) {
    auto filt = std::make_shared<NeighborhoodFiltration>(K);
    auto none = Subcomplex::empty(W.complex());
    auto X = Subcomplex::whole(W.complex());
    switch (kind) {
    case Kind::Hc:
        return build_tower(
            Direction::direct, R_list, k,
            [=, &W](int R) { return cohomology_pair(W, filt->complement(R), none, opt.collar); }, "H_c",
            [=, &W](int R) { return meets_collar(W, filt->complement(R), opt.collar); });
    case Kind::Hrel:
        return build_tower(
            Direction::inverse, R_list, k,
            [=, &W](int R) { return homology_pair(W, X, filt->complement(R), false, opt.margin); }, "H_rel",
            [=, &W](int) { return opt.margin > 0; });
    default:
        return build_tower(
            Direction::inverse, R_list, k,
            [=, &W](int R) { return homology_pair(W, filt->complement(R), none, kind == Kind::Hred, opt.margin); },
            kind_name(kind), [=, &W](int R) { return truncated_by(W, filt->complement(R), opt.margin); });
    }
}

// ---- deep components -------------------------------------------------------------

struct DeepComponents {
    int R = 0;
    std::vector<Subcomplex> deep;     // components of Y_R meeting the window frontier
    std::vector<Subcomplex> shallow;  // the rest (fully interior)
};

inline DeepComponents deep_components(const NeighborhoodFiltration& filt, int R) {
    DeepComponents dc;
    dc.R = R;
    for (auto& c : components(filt.complement(R))) {
        if (touches_frontier(c)) dc.deep.push_back(std::move(c));
        else dc.shallow.push_back(std::move(c));
    }
    return dc;
}

inline bool share_vertex(const Subcomplex& a, const Subcomplex& b) {
    const auto& ma = a.mask(0);
    const auto& mb = b.mask(0);
    for (std::size_t v = 0; v < ma.size(); ++v) if (ma[v] && mb[v]) return true;
    return false;
}

struct StabilityReport {
    std::vector<int> R;
    std::vector<std::size_t> deep_counts;
    std::vector<bool> stable;  // every deep component meets exactly one deep component at each larger stored R
    int stabilization_radius = -1;
    Status status = Status::inconclusive;
};

inline StabilityReport component_stability(const Subcomplex& K, const std::vector<int>& R_list) {
    NeighborhoodFiltration filt(K);
    StabilityReport rep;
    std::vector<DeepComponents> all;
    for (int R : R_list) all.push_back(deep_components(filt, R));
    for (std::size_t i = 0; i < all.size(); ++i) {
        rep.R.push_back(R_list[i]);
        rep.deep_counts.push_back(all[i].deep.size());
        bool ok = true;
        for (const auto& c : all[i].deep) {
            for (std::size_t j = i + 1; j < all.size() && ok; ++j) {
                int meets = 0;
                for (const auto& d : all[j].deep) meets += share_vertex(c, d);
                if (meets != 1) ok = false;
            }
        }
        rep.stable.push_back(ok);
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        bool rest = true;
        for (std::size_t j = i; j < all.size(); ++j) rest = rest && rep.stable[j];
        if (rest) {
            rep.stabilization_radius = R_list[i];
            break;
        }
    }
    rep.status = rep.stabilization_radius >= 0 ? Status::verified : Status::inconclusive;
    return rep;
}

// Image of H_k(Y_{R_max}) in H_k(Y_R), with generator lifts matching the group structure.
inline GradedGroup deep_homology(const Tower& complement_homology, std::size_t position) {
    const Tower& T = complement_homology;
    if (T.size() == 0) throw Error("deep_homology: empty valid range");
    auto f = T.composite(position, T.size() - 1);
    GradedGroup g;
    g.degree = T.groups[position].degree;
    g.theory = "deep " + T.groups[position].theory;
    g.windowed = true;
    std::size_t n = f.source.generators();
    BigMatrix K = kernel_generators(f);
    BigMatrix S = f.source.relations();
    BigMatrix L(n, K.cols + S.cols);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < K.cols; ++j) L(i, j) = K(i, j);
        for (std::size_t j = 0; j < S.cols; ++j) L(i, K.cols + j) = S(i, j);
    }
    if (n == 0) return g;
    auto q = quotient_lattice(n, L);
    g.group = q.group;
    const auto& src = T.groups.back().generator_lifts;
    for (std::size_t c = 0; c < q.group.generators(); ++c) {
        Chain lift{g.degree, {}};
        for (std::size_t j = 0; j < n; ++j) {
            BigInt a = q.from_coords(j, c);
            if (a != 0) lift = lift + scaled(src[j], static_cast<Integer>(a));
        }
        g.generator_lifts.push_back(lift);
    }
    return g;
}

// Least stored R0 with Ker(H(Y_max) -> H(Y_R0)) inside every Ker(H(Y_max) -> H(Y_R)), R >= R0.
inline std::pair<int, Verdict> stabilization_radius(const Tower& complement_homology, std::size_t slack = 3) {
    const Tower& T = complement_homology;
    Verdict v;
    std::size_t last = T.size() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
        auto f0 = T.composite(i, last);
        bool ok = true;
        for (std::size_t j = i; j <= last && ok; ++j) ok = kernel_contained(f0, T.composite(j, last));
        if (ok) {
            v.status = (last >= i + slack) ? Status::verified : Status::inconclusive;
            v.valid_lo = T.indices[i];
            v.valid_hi = T.indices[last];
            return {T.indices[i], v};
        }
    }
    return {-1, v};
}

// H~_i(N_R K) -> H~_i(N_R' K) eventually zero, for i < k_max.
inline std::vector<Verdict> vanishing_tower_test(const Window& W, const Subcomplex& K, int k_max,
                                                 const std::vector<int>& R_list, std::size_t slack = 3) {
    std::vector<Verdict> out;
    for (int i = 0; i < k_max; ++i) {
        auto T = neighborhood_tower(W, K, i, Kind::Hred, R_list);
        out.push_back(is_pro_zero(T, slack));
    }
    return out;
}

} // namespace coarsetop
