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
#include <cstdint>
#include <utility>
#include <vector>

#include "integer.hpp"

namespace coarsetop {

struct Term {
    std::int32_t index;
    Integer coef;
    bool operator==(const Term&) const = default;
};

// Sorted by index, no zero coefficients.
using SparseVec = std::vector<Term>;

inline Integer coefficient(const SparseVec& v, std::int32_t index) {
    auto it = std::lower_bound(v.begin(), v.end(), index,
                               [](const Term& t, std::int32_t i) { return t.index < i; });
    return (it != v.end() && it->index == index) ? it->coef : 0;
}

// y + a*x
inline SparseVec axpy(const SparseVec& y, Integer a, const SparseVec& x) {
    SparseVec out;
    if (a == 0) return y;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].index < y[i].index) {
            out.push_back({x[j].index, checked_mul(a, x[j].coef)});
            ++j;
        } else {
            Integer c = checked_add(y[i].coef, checked_mul(a, x[j].coef));
            if (c != 0) out.push_back({y[i].index, c});
            ++i;
            ++j;
        }
    }
    return out;
}

inline void add_in_place(SparseVec& y, Integer a, const SparseVec& x) { y = axpy(y, a, x); }

inline SparseVec scaled(const SparseVec& x, Integer a) {
    if (a == 0) return {};
    SparseVec out = x;
    for (auto& t : out) t.coef = checked_mul(t.coef, a);
    return out;
}

// Accepts unsorted terms with repeats.
inline SparseVec normalize(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.index < b.index; });
    SparseVec out;
    for (const auto& t : terms) {
        if (!out.empty() && out.back().index == t.index) {
            out.back().coef = checked_add(out.back().coef, t.coef);
        } else {
            out.push_back(t);
        }
    }
    std::erase_if(out, [](const Term& t) { return t.coef == 0; });
    return out;
}

// A chain or cochain on an ambient complex: coefficients on simplices of one dimension.
// dim == -1 is the augmentation cell (index 0).
struct Chain {
    int dim = 0;
    SparseVec terms;
    bool operator==(const Chain&) const = default;
    bool zero() const { return terms.empty(); }
};

inline Chain operator+(const Chain& a, const Chain& b) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    if (a.dim != b.dim) throw Error("adding chains of different dimensions");
    return {a.dim, axpy(a.terms, 1, b.terms)};
}

inline Chain operator-(const Chain& a, const Chain& b) {
    if (b.zero()) return a;
    if (a.zero()) return {b.dim, scaled(b.terms, -1)};
    if (a.dim != b.dim) throw Error("subtracting chains of different dimensions");
    return {a.dim, axpy(a.terms, -1, b.terms)};
}

inline Chain scaled(const Chain& a, Integer c) { return {a.dim, scaled(a.terms, c)}; }

} // namespace coarsetop
