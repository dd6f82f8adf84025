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
#include <optional>
#include <string>
#include <vector>

#include "../towers/systems.hpp"
#include "../towers/tower.hpp"
#include "poincare.hpp"

namespace coarsetop {

enum class PdVariant { e1, e2, e3, e4 };
enum class AdVariant { f1, f2, f3, f4 };

inline const char* variant_name(PdVariant v) {
    static const char* names[] = {"e1", "e2", "e3", "e4"};
    return names[static_cast<int>(v)];
}
inline const char* variant_name(AdVariant v) {
    static const char* names[] = {"f1", "f2", "f3", "f4"};
    return names[static_cast<int>(v)];
}

// Certificate instantiated on one window, with the margins used by the duality maps.
// Homology is computed on the interior X_int(margin); cochains fed to Pbar vanish on
// Col(collar_fwd), cochains produced by P are read off rel Col(collar_rev).
struct DualitySetup {
    const Window* window = nullptr;
    std::shared_ptr<const PoincareCertificate> cert;
    int n = 0;
    int D0 = 0;
    int D = 1;
    int margin = 0;
    int collar_fwd = 1;
    int collar_rev = 1;
    ChainMapRecord P, Pbar;
    std::shared_ptr<const PairComplex> interior;  // reduced homology of X_int(margin)

    const ComplexPtr& complex() const { return window->complex(); }
};

inline DualitySetup make_duality_setup(const Window& W, std::shared_ptr<const PoincareCertificate> cert,
                                       std::optional<int> D0 = std::nullopt) {
    DualitySetup s;
    s.window = &W;
    s.cert = cert;
    s.n = cert->n;
    s.D0 = D0 ? *D0 : measure_certificate(*cert, W.complex()).D0();
    s.D = s.D0 + 1;
    s.margin = s.D0 + 2;
    s.collar_fwd = s.margin + s.D0 + 1;
    s.collar_rev = 1;
    s.P = cert->P.record(W.complex());
    s.Pbar = cert->Pbar.record(W.complex());
    s.interior = std::make_shared<PairComplex>(W.interior(s.margin), Subcomplex::empty(W.complex()), Theory::homology, true);
    return s;
}

namespace detail {

inline std::optional<GroupMap> chain_level_map(const PairComplex& src, int k, const PairComplex& tgt, int k2,
                                               const std::function<std::optional<Chain>(const Chain&)>& f) {
    try {
        GroupMap m = GroupMap::zero(src.group(k), tgt.group(k2));
        auto gens = src.generators(k);
        for (std::size_t j = 0; j < gens.size(); ++j) {
            auto image = f(gens[j]);
            if (!image) return std::nullopt;
            if (image->zero()) image->dim = k2;
            if (!tgt.is_cycle(*image)) return std::nullopt;
            auto c = tgt.classify(*image);
            for (std::size_t i = 0; i < c.size(); ++i) m.matrix(i, j) = c[i];
        }
        if (!m.well_defined()) return std::nullopt;
        m.canonicalize();
        return m;
    } catch (const Error&) {
        return std::nullopt;
    }
}

// The four families of pairs: cohomology side A_R and homology side B_R.
struct PdPairs {
    const DualitySetup& s;
    std::shared_ptr<NeighborhoodFiltration> filt;
    Subcomplex X, none;

    PdPairs(const DualitySetup& setup, const Subcomplex& K)
        : s(setup), filt(std::make_shared<NeighborhoodFiltration>(K)), X(Subcomplex::whole(setup.complex())),
          none(Subcomplex::empty(setup.complex())) {}

    Direction direction(PdVariant v) const {
        return (v == PdVariant::e1 || v == PdVariant::e3) ? Direction::inverse : Direction::direct;
    }
    PairPtr cohomology(PdVariant v, int R, int collar) const {
        const Window& W = *s.window;
        switch (v) {
        case PdVariant::e1: return cohomology_pair(W, filt->neighborhood(R), none, collar);
        case PdVariant::e2: return cohomology_pair(W, filt->complement(R), none, collar);
        case PdVariant::e3: return cohomology_pair(W, X, filt->neighborhood(R), collar);
        default: return cohomology_pair(W, X, filt->complement(R), collar);
        }
    }
    PairPtr homology(PdVariant v, int R, bool reduced = false) const {
        const Window& W = *s.window;
        switch (v) {
        case PdVariant::e1: return homology_pair(W, X, filt->complement(R), false, s.margin);
        case PdVariant::e2: return homology_pair(W, X, filt->neighborhood(R), false, s.margin);
        case PdVariant::e3: return homology_pair(W, filt->complement(R), none, reduced, s.margin);
        default: return homology_pair(W, filt->neighborhood(R), none, reduced, s.margin);
        }
    }
};

} // namespace detail

// Single map of the variant at radius R: the arrow labelled P_{R+D} (e1, e3) or P_R (e2, e4).
inline std::optional<GroupMap> coarse_pd_map(const DualitySetup& s, const Subcomplex& K, int R, int k, PdVariant v) {
    detail::PdPairs pp(s, K);
    bool inv = pp.direction(v) == Direction::inverse;
    auto A = pp.cohomology(v, inv ? R + s.D : R, s.collar_fwd);
    auto B = pp.homology(v, inv ? R : R + s.D);
    return detail::chain_level_map(*A, k, *B, s.n - k, [&](const Chain& xi) { return s.Pbar.apply(xi); });
}

struct PdCheck {
    std::string label;
    std::shared_ptr<Tower> source, target;
    TowerMorphism morphism;
    Verdict mono, epi;
    bool compatible = false;
    std::size_t defined = 0;

    bool verified() const { return mono.status == Status::verified && epi.status == Status::verified; }
    int max_gap() const { return std::max(mono.max_gap(), epi.max_gap()); }
};

inline PdCheck finish_check(PdCheck c, std::size_t slack) {
    for (const auto& m : c.morphism.maps) c.defined += m.has_value();
    c.compatible = c.morphism.compatible();
    c.mono = check_approx_mono(c.morphism, slack);
    c.epi = check_approx_epi(c.morphism, slack);
    return c;
}

// Forward (cochains -> chains through Pbar) or reverse (chains -> cochains through P) morphism
// of the variant, over the stored radii.
inline PdCheck check_pd_variant(const DualitySetup& s, const Subcomplex& K, int k, PdVariant v, bool forward,
                                const std::vector<int>& R_list, std::size_t slack = 3) {
    detail::PdPairs pp(s, K);
    Direction dir = pp.direction(v);
    int j = s.n - k;
    int collar = forward ? s.collar_fwd : s.collar_rev;
    auto A = std::make_shared<Tower>(build_tower(dir, R_list, k, [&](int R) { return pp.cohomology(v, R, collar); }, "H_c",
                                                 [&](int) { return true; }));
    auto B = std::make_shared<Tower>(build_tower(dir, R_list, j, [&](int R) { return pp.homology(v, R); }, "H_rel",
                                                 [&](int) { return true; }));
    PdCheck c;
    c.label = std::string(variant_name(v)) + (forward ? " forward" : " reverse") + " k=" + std::to_string(k);
    c.source = forward ? A : B;
    c.target = forward ? B : A;
    int shift = dir == Direction::inverse ? -s.D : s.D;
    c.morphism = TowerMorphism{c.source.get(), c.target.get(), shift, {}};
    for (std::size_t i = 0; i < R_list.size(); ++i) {
        int t = c.morphism.target_position(i);
        if (t < 0) {
            c.morphism.maps.push_back(std::nullopt);
            continue;
        }
        const auto& src = *c.source->pairs[i];
        const auto& tgt = *c.target->pairs[t];
        if (forward) {
            c.morphism.maps.push_back(
                detail::chain_level_map(src, k, tgt, j, [&](const Chain& xi) { return s.Pbar.apply(xi); }));
        } else {
            c.morphism.maps.push_back(
                detail::chain_level_map(src, j, tgt, k, [&](const Chain& tau) { return s.P.apply(tau); }));
        }
    }
    return finish_check(std::move(c), slack);
}

// ---- coarse Alexander duality ---------------------------------------------------

namespace detail {

// tau in the window interior with boundary sigma
inline std::optional<Chain> cone_off(const DualitySetup& s, const Chain& sigma) {
    return s.interior->solve(sigma);
}

} // namespace detail

inline PdCheck check_alexander_variant(const DualitySetup& s, const Subcomplex& K, int k, AdVariant v,
                                       const std::vector<int>& R_list, std::size_t slack = 3) {
    detail::PdPairs pp(s, K);
    const Window& W = *s.window;
    int j = s.n - k - 1;
    bool inv = v == AdVariant::f1 || v == AdVariant::f2;
    Direction dir = inv ? Direction::inverse : Direction::direct;
    bool from_cochains = v == AdVariant::f1 || v == AdVariant::f3;
    int collar = from_cochains ? s.collar_fwd : s.collar_rev;
    auto H = std::make_shared<Tower>(build_tower(
        dir, R_list, k,
        [&](int R) {
            return inv ? cohomology_pair(W, pp.filt->neighborhood(R), pp.none, collar)
                       : cohomology_pair(W, pp.filt->complement(R), pp.none, collar);
        },
        "H_c", [&](int) { return true; }));
    auto T = std::make_shared<Tower>(build_tower(
        dir, R_list, j,
        [&](int R) {
            return inv ? homology_pair(W, pp.filt->complement(R), pp.none, true, s.margin)
                       : homology_pair(W, pp.filt->neighborhood(R), pp.none, true, s.margin);
        },
        "H~", [&](int) { return true; }));
    PdCheck c;
    c.label = std::string(variant_name(v)) + " k=" + std::to_string(k);
    c.source = from_cochains ? H : T;
    c.target = from_cochains ? T : H;
    c.morphism = TowerMorphism{c.source.get(), c.target.get(), inv ? -s.D : s.D, {}};
    const auto& X = *s.complex();
    for (std::size_t i = 0; i < R_list.size(); ++i) {
        int t = c.morphism.target_position(i);
        if (t < 0) {
            c.morphism.maps.push_back(std::nullopt);
            continue;
        }
        const auto& src = *c.source->pairs[i];
        const auto& tgt = *c.target->pairs[t];
        if (from_cochains) {
            c.morphism.maps.push_back(detail::chain_level_map(src, k, tgt, j, [&](const Chain& xi) -> std::optional<Chain> {
                auto tau = s.Pbar.apply(xi);
                if (!tau) return std::nullopt;
                return detail::bnd(X, *tau);
            }));
        } else {
            c.morphism.maps.push_back(detail::chain_level_map(src, j, tgt, k, [&](const Chain& sigma) -> std::optional<Chain> {
                auto tau = detail::cone_off(s, sigma);
                if (!tau) return std::nullopt;
                return s.P.apply(*tau);
            }));
        }
    }
    return finish_check(std::move(c), slack);
}

// Single Alexander map at radius R (source index R + D for f1/f2, R for f3/f4).
inline std::optional<GroupMap> alexander_map(const DualitySetup& s, const Subcomplex& K, int R, int k, AdVariant v) {
    bool inv = v == AdVariant::f1 || v == AdVariant::f2;
    auto c = check_alexander_variant(s, K, k, v, {R, R + s.D}, 3);
    std::size_t pos = inv ? 1 : 0;
    return c.morphism.maps[pos];
}

} // namespace coarsetop
