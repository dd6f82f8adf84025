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

#include <string>
#include <vector>

#include "theories.hpp"

namespace coarsetop {

struct MayerVietorisReport {
    bool exact = true;
    std::vector<std::string> failures;
    std::vector<GroupMap> connecting;  // connecting[k]: H~_k(A cup B) -> H~_{k-1}(A cap B)
};

namespace detail {

inline bool exact_at(const GroupMap& in, const GroupMap& out) {
    if (!compose(out, in).is_zero()) return false;
    BigMatrix K = kernel_generators(out);
    for (std::size_t j = 0; j < K.cols; ++j)
        if (!image_contains(in, K.column(j))) return false;
    return true;
}

} // namespace detail

// Reduced Mayer-Vietoris sequence of S = A cup B, checked for exactness in degrees max_degree..-1.
inline MayerVietorisReport mayer_vietoris_check(const Subcomplex& A, const Subcomplex& B, int max_degree) {
    MayerVietorisReport rep;
    Subcomplex S = A.unite(B);
    Subcomplex C = A.intersect(B);
    const auto& X = S.complex();
    auto none = Subcomplex::empty(S.parent());
    PairComplex PS(S, none, Theory::homology, true), PA(A, none, Theory::homology, true),
        PB(B, none, Theory::homology, true), PC(C, none, Theory::homology, true);
    rep.connecting.resize(max_degree + 2);

    auto sum_group = [&](int k) { return direct_sum(PA.group(k), PB.group(k)); };
    auto alpha = [&](int k) {
        auto gA = PA.group(k), gB = PB.group(k);
        auto iA = induced_map(PC, k, PA, k), iB = induced_map(PC, k, PB, k);
        GroupMap m = GroupMap::zero(PC.group(k), sum_group(k));
        for (std::size_t j = 0; j < m.source.generators(); ++j) {
            for (std::size_t i = 0; i < gA.generators(); ++i) m.matrix(sum_position(gA, gB, true, i), j) = iA.matrix(i, j);
            for (std::size_t i = 0; i < gB.generators(); ++i) m.matrix(sum_position(gA, gB, false, i), j) = -iB.matrix(i, j);
        }
        m.canonicalize();
        return m;
    };
    auto beta = [&](int k) {
        auto gA = PA.group(k), gB = PB.group(k);
        auto jA = induced_map(PA, k, PS, k), jB = induced_map(PB, k, PS, k);
        GroupMap m = GroupMap::zero(sum_group(k), PS.group(k));
        for (std::size_t i = 0; i < m.target.generators(); ++i) {
            for (std::size_t j = 0; j < gA.generators(); ++j) m.matrix(i, sum_position(gA, gB, true, j)) = jA.matrix(i, j);
            for (std::size_t j = 0; j < gB.generators(); ++j) m.matrix(i, sum_position(gA, gB, false, j)) = jB.matrix(i, j);
        }
        return m;
    };
    auto delta = [&](int k) {
        GroupMap m = GroupMap::zero(PS.group(k), PC.group(k - 1));
        auto gens = PS.generators(k);
        for (std::size_t j = 0; j < gens.size(); ++j) {
            Chain a{k, {}};
            for (const auto& t : gens[j].terms)
                if (A.contains(k, t.index)) a.terms.push_back(t);
            Chain da = X.boundary(a);
            if (da.dim == -1 && !PC.augmented()) da.terms.clear();
            auto c = PC.classify(da);
            for (std::size_t i = 0; i < c.size(); ++i) m.matrix(i, j) = c[i];
        }
        return m;
    };

    for (int k = max_degree; k >= 0; --k) {
        auto a = alpha(k), b = beta(k), d = delta(k);
        rep.connecting[k] = d;
        if (!detail::exact_at(a, b)) {
            rep.exact = false;
            rep.failures.push_back("sum(" + std::to_string(k) + ")");
        }
        if (!detail::exact_at(b, d)) {
            rep.exact = false;
            rep.failures.push_back("union(" + std::to_string(k) + ")");
        }
        if (!detail::exact_at(d, alpha(k - 1))) {
            rep.exact = false;
            rep.failures.push_back("intersection(" + std::to_string(k - 1) + ")");
        }
    }
    // top end: H~_{max+1}(S) -> H~_max(C) -> sum
    {
        auto d = delta(max_degree + 1);
        if (!detail::exact_at(d, alpha(max_degree))) {
            rep.exact = false;
            rep.failures.push_back("intersection(" + std::to_string(max_degree) + ")");
        }
    }
    return rep;
}

} // namespace coarsetop
