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

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "../homology/theories.hpp"

namespace coarsetop {

enum class Direction { inverse, direct };

// R-indexed system. maps[i] joins indices[i] and indices[i+1]:
// inverse: A_{i+1} -> A_i, direct: A_i -> A_{i+1}.
struct Tower {
    Direction direction = Direction::inverse;
    std::vector<int> indices;
    std::vector<GradedGroup> groups;
    std::vector<GroupMap> maps;
    std::vector<PairPtr> pairs;  // chain-level models, when built from complexes

    std::size_t size() const { return indices.size(); }
    int position(int R) const {
        for (std::size_t i = 0; i < indices.size(); ++i) if (indices[i] == R) return static_cast<int>(i);
        return -1;
    }

    // Map between stored positions i <= j in the system's direction.
    GroupMap composite(std::size_t i, std::size_t j) const {
        if (i > j) throw Error("tower composite: positions out of order");
        GroupMap m = GroupMap::identity(groups[i].group);
        if (direction == Direction::inverse) {
            m = GroupMap::identity(groups[j].group);
            for (std::size_t k = j; k > i; --k) m = compose(maps[k - 1], m);
        } else {
            for (std::size_t k = i; k < j; ++k) m = compose(maps[k], m);
        }
        return m;
    }
};

using PairFactory = std::function<PairPtr(int R)>;

inline Tower build_tower(Direction dir, const std::vector<int>& indices, int degree, const PairFactory& make,
                         const std::string& theory, const std::function<bool(int)>& windowed = nullptr) {
    Tower T;
    T.direction = dir;
    T.indices = indices;
    for (int R : indices) {
        auto P = make(R);
        T.pairs.push_back(P);
        T.groups.push_back(graded(*P, degree, theory, windowed ? windowed(R) : false));
    }
    for (std::size_t i = 0; i + 1 < indices.size(); ++i) {
        const auto& a = *T.pairs[i];
        const auto& b = *T.pairs[i + 1];
        T.maps.push_back(dir == Direction::inverse ? induced_map(b, degree, a, degree)
                                                   : induced_map(a, degree, b, degree));
    }
    return T;
}

// f_i : A_{indices[i]} -> B_{indices[i] + shift}
struct TowerMorphism {
    const Tower* source = nullptr;
    const Tower* target = nullptr;
    int shift = 0;
    std::vector<std::optional<GroupMap>> maps;

    int target_position(std::size_t i) const { return target->position(source->indices[i] + shift); }

    // q o f = f o p on all stored pairs of adjacent defined positions.
    bool compatible() const {
        for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
            if (!maps[i] || !maps[i + 1]) continue;
            int a = target_position(i), b = target_position(i + 1);
            if (source->direction == Direction::inverse) {
                auto lhs = compose(target->composite(a, b), *maps[i + 1]);
                auto rhs = compose(*maps[i], source->maps[i]);
                if (!(lhs == rhs)) return false;
            } else {
                auto lhs = compose(target->composite(a, b), *maps[i]);
                auto rhs = compose(*maps[i + 1], source->maps[i]);
                if (!(lhs == rhs)) return false;
            }
        }
        return true;
    }
};

enum class Status { verified, refuted, inconclusive };

inline const char* status_name(Status s) {
    switch (s) {
    case Status::verified: return "verified";
    case Status::refuted: return "refuted";
    default: return "inconclusive";
    }
}

struct Verdict {
    Status status = Status::inconclusive;
    std::vector<std::pair<int, int>> omega;  // measured (i, omega(i))
    std::string witness;
    int valid_lo = 0, valid_hi = -1;
    std::string note = "windowed: relative to the deepest stored index";

    int max_gap() const {
        int g = 0;
        for (auto [i, w] : omega) g = std::max(g, w - i);
        return g;
    }
    std::string str() const {
        std::ostringstream os;
        os << status_name(status);
        if (!omega.empty()) {
            os << " omega[";
            for (std::size_t k = 0; k < omega.size(); ++k) os << (k ? " " : "") << omega[k].first << "->" << omega[k].second;
            os << "]";
        }
        if (!witness.empty()) os << " witness: " << witness;
        return os.str();
    }
};

namespace detail {

// Generic least-witness search. test(i, m) checks the containment at positions i <= m.
inline Verdict search_omega(const std::vector<int>& indices, const std::vector<std::size_t>& positions,
                            std::size_t last, const std::function<bool(std::size_t, std::size_t)>& test,
                            const std::function<bool(std::size_t)>& usable, const std::string& what,
                            std::size_t slack) {
    Verdict v;
    bool any = false, refuted = false;
    for (std::size_t i : positions) {
        std::optional<std::size_t> found;
        for (std::size_t m = i; m <= last; ++m) {
            if (!usable(m)) continue;
            if (test(i, m)) {
                found = m;
                break;
            }
        }
        if (found) {
            v.omega.push_back({indices[i], indices[*found]});
            any = true;
            if (v.valid_hi < v.valid_lo) v.valid_lo = indices[i];
            v.valid_hi = indices[i];
        } else if (last >= i + slack) {
            refuted = true;
            if (v.witness.empty()) {
                v.witness = what + " survives from index " + std::to_string(indices[last]) + " at index " +
                            std::to_string(indices[i]);
            }
        }
    }
    v.status = refuted ? Status::refuted : (any ? Status::verified : Status::inconclusive);
    return v;
}

} // namespace detail

inline Verdict check_approx_mono(const TowerMorphism& f, std::size_t slack = 3) {
    const Tower& A = *f.source;
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < A.size(); ++i) if (f.maps[i]) pos.push_back(i);
    if (pos.empty()) return {};
    std::size_t last = pos.back();
    auto usable = [&](std::size_t m) { return f.maps[m].has_value(); };
    auto test = [&](std::size_t i, std::size_t m) {
        // inverse: Ker f_m inside Ker(A_m -> A_i); direct: Ker f_i inside Ker(A_i -> A_m)
        if (A.direction == Direction::inverse) return kernel_contained(*f.maps[m], A.composite(i, m));
        return kernel_contained(*f.maps[i], A.composite(i, m));
    };
    return detail::search_omega(A.indices, pos, last, test, usable, "kernel class", slack);
}

inline Verdict check_approx_epi(const TowerMorphism& f, std::size_t slack = 3) {
    const Tower& A = *f.source;
    const Tower& B = *f.target;
    // target positions reachable by f
    std::vector<std::size_t> tpos;
    std::vector<int> src_of_target(B.size(), -1);
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (!f.maps[i]) continue;
        int t = f.target_position(i);
        if (t >= 0) src_of_target[t] = static_cast<int>(i);
    }
    int lo = -1, hi = -1;
    for (std::size_t t = 0; t < B.size(); ++t) if (src_of_target[t] >= 0) { if (lo < 0) lo = static_cast<int>(t); hi = static_cast<int>(t); }
    if (lo < 0) return {};
    for (int t = lo; t <= hi; ++t) tpos.push_back(static_cast<std::size_t>(t));
    std::size_t last = static_cast<std::size_t>(hi);
    auto usable = [&](std::size_t) { return true; };
    // saturated image of f into B_j
    auto fhat = [&](std::size_t j) -> std::optional<GroupMap> {
        if (B.direction == Direction::inverse) {
            for (std::size_t t = j; t < B.size(); ++t)
                if (src_of_target[t] >= 0) return compose(B.composite(j, t), *f.maps[src_of_target[t]]);
        } else {
            for (std::size_t t = j + 1; t-- > 0;)
                if (src_of_target[t] >= 0) return compose(B.composite(t, j), *f.maps[src_of_target[t]]);
        }
        return std::nullopt;
    };
    auto test = [&](std::size_t j, std::size_t m) {
        if (B.direction == Direction::inverse) {
            auto fj = fhat(j);
            return fj && image_contained(B.composite(j, m), *fj);
        }
        auto fm = fhat(m);
        return fm && image_contained(B.composite(j, m), *fm);
    };
    return detail::search_omega(B.indices, tpos, last, test, usable, "cokernel class", slack);
}

inline Verdict is_pro_zero(const Tower& T, std::size_t slack = 3) {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < T.size(); ++i) pos.push_back(i);
    if (pos.empty()) return {};
    auto test = [&](std::size_t i, std::size_t m) { return T.composite(i, m).is_zero(); };
    return detail::search_omega(T.indices, pos, T.size() - 1, test, [](std::size_t) { return true; }, "class", slack);
}

inline TowerMorphism identity_morphism(const Tower& T) {
    TowerMorphism f{&T, &T, 0, {}};
    for (const auto& g : T.groups) f.maps.push_back(GroupMap::identity(g.group));
    return f;
}

// Composite g o f of two morphisms (shifts add).
inline TowerMorphism compose(const TowerMorphism& g, const TowerMorphism& f) {
    TowerMorphism h{f.source, g.target, f.shift + g.shift, {}};
    for (std::size_t i = 0; i < f.maps.size(); ++i) {
        std::optional<GroupMap> m;
        int t = f.target_position(i);
        if (f.maps[i] && t >= 0 && g.maps[t]) m = compose(*g.maps[t], *f.maps[i]);
        h.maps.push_back(m);
    }
    return h;
}

} // namespace coarsetop
