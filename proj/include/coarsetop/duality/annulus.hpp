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

#include "../towers/systems.hpp"

namespace coarsetop {

// A(r, R) = closure(N_R(K) - N_r(K))
inline Subcomplex annulus(const NeighborhoodFiltration& filt, int r, int R) {
    auto big = filt.neighborhood(R);
    auto small = filt.neighborhood(r);
    return Subcomplex::closure(big.parent(), big.minus_marks(small));
}

struct AnnulusGroup {
    int r = 0, R = 0, k = 0;
    GradedGroup group;
    std::optional<GroupMap> widening;  // into A(r - 1, R + 1)
    bool widening_iso = false;
    bool widening_zero = false;
};

inline AnnulusGroup annulus_homology(const Window& W, const NeighborhoodFiltration& filt, int r, int R, int k,
                                     int margin = 0) {
    if (r >= R) throw Error("annulus_homology: need r < R");
    AnnulusGroup a;
    a.r = r;
    a.R = R;
    a.k = k;
    auto P = homology_pair(W, annulus(filt, r, R), Subcomplex::empty(W.complex()), true, margin);
    a.group = graded(*P, k, "H~", truncated_by(W, P->S(), margin));
    if (r >= 1) {
        auto Q = homology_pair(W, annulus(filt, r - 1, R + 1), Subcomplex::empty(W.complex()), true, margin);
        a.widening = induced_map(*P, *Q, k);
        a.widening_iso = is_isomorphism(*a.widening);
        a.widening_zero = a.widening->is_zero();
    }
    return a;
}

// ---- nested annuli at window scale ---------------------------------------------------
//
// Radii R_1 <= R_2 <= ... chosen greedily: R_{i+1} is the least radius satisfying
//   A  H~_k(N_{R_i}) -> H~_k(N_{R_{i+1}}) zero, 0 <= k <= n
//   B  image of H~_k(Y_{R_{i+1}}) -> H~_k(Y_{R_i}) has the stable rank (zero for k = n)
//   C  image of H^k_c(N_{R_{i+1}}) -> H^k_c(N_{R_i}) has the stable rank
//   D  H^k_c(Y_{R_i}) -> H^k_c(Y_{R_{i+1}}) zero
//   F  inside each deep component of Y_{R_1}, Y_{R_{i+1}} meets one component of Y_{R_i}
// "Stable rank" is the rank of the image from the deepest radius R_max.

struct NestedAnnuliEntry {
    int i = 0, j = 0;
    std::vector<std::size_t> image_rank;  // widening H~_k(A(i,j)) -> H~_k(A(i-1,j+1)), k < n
    std::vector<std::size_t> deep_rank;   // stable image rank of H~_k(Y) at R_i
    bool top_zero = false;                // widening in degree n is zero
    bool ok() const { return top_zero && image_rank == deep_rank; }
};

struct NestedAnnuli {
    std::vector<int> radii;
    std::vector<std::string> notes;  // first failing condition per rejected candidate
    std::vector<NestedAnnuliEntry> entries;
    bool complete = false;
    bool ok() const {
        if (!complete) return false;
        for (const auto& e : entries) if (!e.ok()) return false;
        return true;
    }
};

namespace detail {

class AnnulusCache {
public:
    AnnulusCache(const Window& W, const Subcomplex& K, int margin, int collar)
        : W_(W), filt_(K), none_(Subcomplex::empty(W.complex())), margin_(margin), collar_(collar) {}

    const NeighborhoodFiltration& filtration() const { return filt_; }
    const PairComplex& N(int R) { return get(n_, R, [&] { return homology_pair(W_, filt_.neighborhood(R), none_, true, margin_); }); }
    const PairComplex& Y(int R) { return get(y_, R, [&] { return homology_pair(W_, filt_.complement(R), none_, true, margin_); }); }
    const PairComplex& Nc(int R) { return get(nc_, R, [&] { return cohomology_pair(W_, filt_.neighborhood(R), none_, collar_); }); }
    const PairComplex& Yc(int R) { return get(yc_, R, [&] { return cohomology_pair(W_, filt_.complement(R), none_, collar_); }); }
    const PairComplex& A(int r, int R) {
        return get(a_, r * 4096 + R, [&] { return homology_pair(W_, annulus(filt_, r, R), none_, true, margin_); });
    }

private:
    template <class F>
    const PairComplex& get(std::map<int, PairPtr>& m, int key, F make) {
        auto it = m.find(key);
        if (it == m.end()) it = m.emplace(key, make()).first;
        return *it->second;
    }
    const Window& W_;
    NeighborhoodFiltration filt_;
    Subcomplex none_;
    int margin_, collar_;
    std::map<int, PairPtr> n_, y_, nc_, yc_, a_;
};

inline std::vector<int> vertex_component(const Subcomplex& S) {
    std::vector<int> label(S.complex().vertex_count(), -1);
    int c = 0;
    for (const auto& comp : components(S)) {
        for (Vertex v : comp.vertices()) label[v] = c;
        ++c;
    }
    return label;
}

} // namespace detail

inline NestedAnnuli nested_annuli(const Window& W, const Subcomplex& K, int R_start, int M, int R_max, int margin = 0,
                                  int collar = 1) {
    int n = W.complex()->dim();
    detail::AnnulusCache cache(W, K, margin, collar);
    const auto& filt = cache.filtration();
    auto deep = deep_components(filt, R_start).deep;
    NestedAnnuli out;
    out.radii.push_back(R_start);

    auto condition = [&](int Ri, int Rn) -> std::string {
        for (int k = 0; k <= n; ++k)
            if (!induced_map(cache.N(Ri), cache.N(Rn), k).is_zero()) return "A k=" + std::to_string(k);
        for (int k = 0; k <= n; ++k) {
            auto rank = map_rank(induced_map(cache.Y(Rn), cache.Y(Ri), k));
            auto stable = k == n ? 0 : map_rank(induced_map(cache.Y(R_max), cache.Y(Ri), k));
            if (rank != stable) return "B k=" + std::to_string(k);
        }
        for (int k = 0; k <= n; ++k) {
            auto rank = map_rank(induced_map(cache.Nc(Rn), cache.Nc(Ri), k));
            auto stable = map_rank(induced_map(cache.Nc(R_max), cache.Nc(Ri), k));
            if (rank != stable) return "C k=" + std::to_string(k);
        }
        for (int k = 0; k <= n; ++k)
            if (!induced_map(cache.Yc(Ri), cache.Yc(Rn), k).is_zero()) return "D k=" + std::to_string(k);
        auto inner = filt.complement(Rn);
        auto label_i = detail::vertex_component(filt.complement(Ri));
        auto label_n = detail::vertex_component(inner);
        for (const auto& C : deep) {
            int target = -1;
            for (Vertex v : C.vertices()) {
                if (label_n[v] < 0) continue;
                if (target < 0) target = label_i[v];
                else if (label_i[v] != target) return "F";
            }
        }
        return {};
    };

    while (static_cast<int>(out.radii.size()) < M) {
        int Ri = out.radii.back();
        std::optional<int> next;
        for (int Rn = Ri + 1; Rn < R_max; ++Rn) {
            auto why = condition(Ri, Rn);
            if (why.empty()) {
                next = Rn;
                break;
            }
            out.notes.push_back("R" + std::to_string(Ri) + "->" + std::to_string(Rn) + ": " + why);
        }
        if (!next) break;
        out.radii.push_back(*next);
    }
    out.complete = static_cast<int>(out.radii.size()) == M;
    if (!out.complete) return out;

    // assertion 1 at window scale, 1 < i < j < M (1-based)
    for (int i = 2; i < M; ++i) {
        for (int j = i + 1; j < M; ++j) {
            NestedAnnuliEntry e;
            e.i = i;
            e.j = j;
            int ri = out.radii[i - 1], rj = out.radii[j - 1];
            int ro = out.radii[i - 2], rJ = out.radii[j];
            for (int k = 0; k < n; ++k) {
                e.image_rank.push_back(map_rank(induced_map(cache.A(ri, rj), cache.A(ro, rJ), k)));
                e.deep_rank.push_back(map_rank(induced_map(cache.Y(R_max), cache.Y(ro), k)));
            }
            e.top_zero = induced_map(cache.A(ri, rj), cache.A(ro, rJ), n).is_zero();
            out.entries.push_back(std::move(e));
        }
    }
    return out;
}

} // namespace coarsetop
