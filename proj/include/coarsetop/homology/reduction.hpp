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
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "../core/sparse.hpp"
#include "abelian.hpp"
#include "smith.hpp"

namespace coarsetop {

// Based chain complex on levels lo..hi; d_l maps C_l to C_{l-1}, stored by columns.
struct LeveledComplex {
    int lo = 0, hi = -1;
    std::vector<std::size_t> sizes;
    std::vector<std::vector<SparseVec>> diff;  // diff[l-lo][j]: column j of d_l

    std::size_t size(int l) const { return (l < lo || l > hi) ? 0 : sizes[l - lo]; }
    const std::vector<SparseVec>& d(int l) const { return diff[l - lo]; }

    SparseVec apply(int l, const SparseVec& x) const {
        SparseVec y;
        if (l <= lo || l > hi) return y;
        std::vector<Term> terms;
        for (const auto& t : x)
            for (const auto& e : d(l)[t.index]) terms.push_back({e.index, checked_mul(e.coef, t.coef)});
        return normalize(std::move(terms));
    }
    bool squares_to_zero() const {
        for (int l = lo + 2; l <= hi; ++l)
            for (std::size_t j = 0; j < size(l); ++j)
                if (!apply(l - 1, d(l)[j]).empty()) return false;
        return true;
    }
};

// Unit-pivot elimination followed by Smith normal form on the remaining core.
class ReducedComplex {
public:
    explicit ReducedComplex(LeveledComplex cx) : cx_(std::move(cx)) { reduce(); }

    const LeveledComplex& original() const { return cx_; }
    std::size_t core_size(int l) const { return (l < cx_.lo || l > cx_.hi) ? 0 : core_[l - cx_.lo].size(); }

    // Coordinates of x (a vector on C_l) in the core; also records the boundary
    // coefficients peeled off on the way when `peeled` is given.
    BigVector project(int l, SparseVec x, std::vector<std::pair<std::size_t, Integer>>* peeled = nullptr) const {
        for (std::size_t e = 0; e < log_.size(); ++e) {
            const auto& p = log_[e];
            if (p.level == l + 1) {
                Integer xa = coefficient(x, p.a);
                if (xa == 0) continue;
                Integer c = p.u == 1 ? xa : checked_sub(0, xa);
                SparseVec full = p.colb;
                full = axpy(full, 1, SparseVec{{p.a, p.u}});
                x = axpy(x, checked_sub(0, c), full);
                if (peeled) peeled->push_back({e, c});
            } else if (p.level == l) {
                auto it = std::lower_bound(x.begin(), x.end(), p.b,
                                           [](const Term& t, std::int32_t i) { return t.index < i; });
                if (it != x.end() && it->index == p.b) x.erase(it);
            }
        }
        BigVector out(core_size(l), 0);
        for (const auto& t : x) {
            int k = core_pos(l, t.index);
            if (k < 0) throw Error("projection left the core");
            out[k] = t.coef;
        }
        return out;
    }

    // Embed a core vector back into C_l.
    SparseVec lift(int l, const BigVector& y) const {
        SparseVec x;
        const auto& core = core_[l - cx_.lo];
        for (std::size_t k = 0; k < y.size(); ++k)
            if (y[k] != 0) x.push_back({core[k], big_to_int(y[k])});
        return embed(l, std::move(x), nullptr);
    }

    // Integer x on C_{l+1} with d x = y, or nullopt.
    std::optional<SparseVec> solve(int l, const SparseVec& y) const {
        if (l + 1 > cx_.hi) {
            if (y.empty()) return SparseVec{};
            return std::nullopt;
        }
        std::vector<std::pair<std::size_t, Integer>> peeled;
        BigVector yc = project(l, y, &peeled);
        const auto& s = smith(l + 1);
        BigVector c = s.U * yc;
        BigVector z(core_size(l + 1), 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i < s.rank) {
                if (c[i] % s.diagonal[i] != 0) return std::nullopt;
                z[i] = c[i] / s.diagonal[i];
            } else if (c[i] != 0) {
                return std::nullopt;
            }
        }
        BigVector xc = core_size(l + 1) ? s.V * z : BigVector{};
        SparseVec x;
        const auto& core = core_[l + 1 - cx_.lo];
        for (std::size_t k = 0; k < xc.size(); ++k)
            if (xc[k] != 0) x.push_back({core[k], big_to_int(xc[k])});
        x = embed(l + 1, std::move(x), &peeled);
        if (cx_.apply(l + 1, x) != y) throw Error("boundary solve failed verification");
        return x;
    }

    struct LevelHomology {
        AbelianGroup group;
        std::size_t rank_out = 0;            // rank of d_l on the core
        BigMatrix Vinv;                      // of SNF(d_l)
        BigMatrix U2;                        // of SNF of the boundary part
        std::vector<std::size_t> order;      // kernel coordinates feeding group coordinates
        std::vector<BigVector> generators;   // core vectors
    };

    const LevelHomology& level_homology(int l) const {
        std::lock_guard<std::recursive_mutex> lock(*mutex_);
        auto it = homology_.find(l);
        if (it != homology_.end()) return it->second;
        return homology_.emplace(l, compute_level(l)).first->second;
    }

    AbelianGroup group(int l) const { return level_homology(l).group; }

    // Group coordinates of the class of a cycle x on C_l.
    BigVector classify(int l, const SparseVec& x) const {
        const auto& h = level_homology(l);
        BigVector y = project(l, x);
        std::size_t n = core_size(l);
        BigVector w = n ? h.Vinv * y : BigVector{};
        for (std::size_t i = 0; i < h.rank_out; ++i)
            if (w[i] != 0) throw Error("classify: not a cycle");
        BigVector wk(w.begin() + static_cast<std::ptrdiff_t>(h.rank_out), w.end());
        BigVector c = wk.empty() ? BigVector{} : h.U2 * wk;
        BigVector out(h.order.size());
        for (std::size_t k = 0; k < h.order.size(); ++k) out[k] = c[h.order[k]];
        return h.group.reduce(out);
    }

    SparseVec generator(int l, std::size_t k) const { return lift(l, level_homology(l).generators[k]); }

private:
    struct Pivot {
        int level;
        std::int32_t a, b;
        Integer u;
        SparseVec colb;                 // d b without the a entry
        std::vector<Term> rowa;         // other columns c with d[a,c] = lambda_c
    };

    static Integer big_to_int(const BigInt& b) {
        if (b > INT64_MAX || b < INT64_MIN) throw OverflowError();
        return static_cast<Integer>(b);
    }

    int core_pos(int l, std::int32_t idx) const {
        const auto& m = core_pos_[l - cx_.lo];
        return m[idx];
    }

    // Undo the basis changes at level l in reverse, adding peeled multiples of pivots.
    SparseVec embed(int l, SparseVec x, const std::vector<std::pair<std::size_t, Integer>>* peeled) const {
        std::size_t pk = peeled ? peeled->size() : 0;
        for (std::size_t e = log_.size(); e-- > 0;) {
            const auto& p = log_[e];
            if (p.level != l) continue;
            Integer s = 0;
            for (const auto& t : p.rowa) {
                Integer xc = coefficient(x, t.index);
                if (xc != 0) s = checked_add(s, checked_mul(t.coef, xc));
            }
            Integer c = 0;
            if (s != 0) c = checked_sub(0, p.u == 1 ? s : checked_sub(0, s));
            if (pk > 0 && (*peeled)[pk - 1].first == e) {
                c = checked_add(c, (*peeled)[pk - 1].second);
                --pk;
            }
            if (c != 0) x = axpy(x, c, SparseVec{{p.b, 1}});
        }
        return x;
    }

    void reduce();
    LevelHomology compute_level(int l) const;
    const SmithForm<BigInt>& smith(int l) const;
    Dense<Integer> core_matrix(int l) const;

    LeveledComplex cx_;
    std::vector<Pivot> log_;
    std::vector<std::vector<std::int32_t>> core_;      // alive indices per level
    std::vector<std::vector<int>> core_pos_;
    std::vector<std::vector<SparseVec>> core_cols_;   // d_l restricted to core, original indices
    mutable std::unique_ptr<std::recursive_mutex> mutex_ = std::make_unique<std::recursive_mutex>();
    mutable std::map<int, LevelHomology> homology_;
    mutable std::map<int, SmithForm<BigInt>> smith_;
};

namespace detail {

struct Eliminator {
    LeveledComplex& cx;
    std::vector<std::vector<std::vector<std::int32_t>>> rows;  // rows[l-lo][a]: columns of d_l with entry at a
    std::vector<std::vector<std::uint8_t>> alive;
    std::deque<std::pair<int, std::int32_t>> queue;

    explicit Eliminator(LeveledComplex& c) : cx(c) {
        int L = cx.hi - cx.lo + 1;
        rows.resize(L);
        alive.resize(L);
        for (int l = cx.lo; l <= cx.hi; ++l) {
            alive[l - cx.lo].assign(cx.size(l), 1);
            if (l == cx.lo) continue;
            auto& r = rows[l - cx.lo];
            r.assign(cx.size(l - 1), {});
            const auto& D = cx.d(l);
            for (std::size_t j = 0; j < D.size(); ++j)
                for (const auto& t : D[j]) r[t.index].push_back(static_cast<std::int32_t>(j));
            for (std::size_t a = 0; a < r.size(); ++a)
                if (r[a].size() == 1) queue.push_back({l, static_cast<std::int32_t>(a)});
        }
    }

    static void insert_sorted(std::vector<std::int32_t>& v, std::int32_t x) {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it == v.end() || *it != x) v.insert(it, x);
    }
    static void erase_sorted(std::vector<std::int32_t>& v, std::int32_t x) {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it != v.end() && *it == x) v.erase(it);
    }
    void touch(int l, std::int32_t a) {
        if (rows[l - cx.lo][a].size() == 1) queue.push_back({l, a});
    }

    template <class Log>
    bool eliminate(int l, std::int32_t a, std::int32_t b, Log& log) {
        auto& D = cx.diff[l - cx.lo];
        auto& R = rows[l - cx.lo];
        Integer u = coefficient(D[b], a);
        if (u != 1 && u != -1) return false;
        SparseVec colb;
        for (const auto& t : D[b]) if (t.index != a) colb.push_back(t);
        std::vector<Term> rowa;
        std::vector<SparseVec> updated;
        try {
            for (std::int32_t c : R[a]) {
                if (c == b) continue;
                Integer lam = coefficient(D[c], a);
                rowa.push_back({c, lam});
                Integer f = checked_sub(0, u == 1 ? lam : checked_sub(0, lam));
                updated.push_back(axpy(D[c], f, D[b]));
            }
        } catch (const OverflowError&) {
            return false;
        }
        for (std::size_t k = 0; k < rowa.size(); ++k) {
            std::int32_t c = rowa[k].index;
            const SparseVec& old = D[c];
            const SparseVec& nw = updated[k];
            std::size_t i = 0, j = 0;
            while (i < old.size() || j < nw.size()) {
                if (j == nw.size() || (i < old.size() && old[i].index < nw[j].index)) {
                    erase_sorted(R[old[i].index], c);
                    touch(l, old[i].index);
                    ++i;
                } else if (i == old.size() || nw[j].index < old[i].index) {
                    insert_sorted(R[nw[j].index], c);
                    ++j;
                } else {
                    ++i;
                    ++j;
                }
            }
            D[c] = updated[k];
        }
        for (const auto& t : D[b]) {
            erase_sorted(R[t.index], b);
            if (t.index != a) touch(l, t.index);
        }
        D[b].clear();
        alive[l - cx.lo][b] = 0;
        alive[l - 1 - cx.lo][a] = 0;
        R[a].clear();
        if (l + 1 <= cx.hi) {
            auto& Dup = cx.diff[l + 1 - cx.lo];
            auto& Rup = rows[l + 1 - cx.lo];
            for (std::int32_t c : Rup[b]) {
                auto& col = Dup[c];
                auto it = std::lower_bound(col.begin(), col.end(), b,
                                           [](const Term& t, std::int32_t i) { return t.index < i; });
                if (it != col.end() && it->index == b) col.erase(it);
            }
            Rup[b].clear();
        }
        if (l - 1 > cx.lo) {
            auto& Ddn = cx.diff[l - 1 - cx.lo];
            auto& Rdn = rows[l - 1 - cx.lo];
            for (const auto& t : Ddn[a]) {
                erase_sorted(Rdn[t.index], a);
                touch(l - 1, t.index);
            }
            Ddn[a].clear();
        }
        log.push_back({l, a, b, u, std::move(colb), std::move(rowa)});
        return true;
    }

    template <class Log>
    void drain(Log& log) {
        while (!queue.empty()) {
            auto [l, a] = queue.front();
            queue.pop_front();
            if (!alive[l - 1 - cx.lo][a]) continue;
            const auto& r = rows[l - cx.lo][a];
            if (r.size() != 1) continue;
            eliminate(l, a, r[0], log);
        }
    }

    template <class Log>
    void run(Log& log) {
        drain(log);
        for (;;) {
            struct Cand { std::size_t cost; int l; std::int32_t a, b; };
            std::vector<Cand> cands;
            for (int l = cx.lo + 1; l <= cx.hi; ++l) {
                const auto& D = cx.d(l);
                const auto& R = rows[l - cx.lo];
                for (std::size_t b = 0; b < D.size(); ++b) {
                    for (const auto& t : D[b]) {
                        if (t.coef != 1 && t.coef != -1) continue;
                        std::size_t cost = (R[t.index].size() - 1) * (D[b].size() - 1);
                        cands.push_back({cost, l, t.index, static_cast<std::int32_t>(b)});
                    }
                }
            }
            if (cands.empty()) return;
            std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
                return std::tie(x.cost, x.l, x.a, x.b) < std::tie(y.cost, y.l, y.a, y.b);
            });
            std::size_t done = 0;
            for (const auto& c : cands) {
                if (!alive[c.l - cx.lo][c.b] || !alive[c.l - 1 - cx.lo][c.a]) continue;
                const auto& D = cx.d(c.l);
                Integer v = coefficient(D[c.b], c.a);
                if (v != 1 && v != -1) continue;
                std::size_t cost = (rows[c.l - cx.lo][c.a].size() - 1) * (D[c.b].size() - 1);
                if (cost > 2 * c.cost + 4) continue;
                if (eliminate(c.l, c.a, c.b, log)) ++done;
                drain(log);
            }
            if (done == 0) return;
        }
    }
};

} // namespace detail

inline void ReducedComplex::reduce() {
    LeveledComplex work = cx_;
    detail::Eliminator el(work);
    el.run(log_);
    int L = cx_.hi - cx_.lo + 1;
    core_.resize(std::max(L, 0));
    core_pos_.resize(std::max(L, 0));
    core_cols_.resize(std::max(L, 0));
    for (int l = cx_.lo; l <= cx_.hi; ++l) {
        auto& c = core_[l - cx_.lo];
        auto& pos = core_pos_[l - cx_.lo];
        pos.assign(cx_.size(l), -1);
        for (std::size_t i = 0; i < cx_.size(l); ++i) {
            if (el.alive[l - cx_.lo][i]) {
                pos[i] = static_cast<int>(c.size());
                c.push_back(static_cast<std::int32_t>(i));
            }
        }
        auto& cols = core_cols_[l - cx_.lo];
        for (std::int32_t i : c) cols.push_back(work.d(l)[i]);
    }
}

inline Dense<Integer> ReducedComplex::core_matrix(int l) const {
    Dense<Integer> M(core_size(l - 1), core_size(l));
    if (l <= cx_.lo || l > cx_.hi) return M;
    const auto& cols = core_cols_[l - cx_.lo];
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& t : cols[j]) {
            int i = core_pos(l - 1, t.index);
            if (i < 0) throw Error("core column leaves the core");
            M(i, j) = t.coef;
        }
    return M;
}

inline const SmithForm<BigInt>& ReducedComplex::smith(int l) const {
    std::lock_guard<std::recursive_mutex> lock(*mutex_);
    auto it = smith_.find(l);
    if (it != smith_.end()) return it->second;
    return smith_.emplace(l, smith_normal_form(core_matrix(l))).first->second;
}

inline ReducedComplex::LevelHomology ReducedComplex::compute_level(int l) const {
    LevelHomology h;
    std::size_t n = core_size(l);
    if (n == 0) return h;
    const auto& s1 = smith(l);
    h.rank_out = s1.rank;
    h.Vinv = s1.Vinv;
    std::size_t z = n - s1.rank;
    BigMatrix K(n, z);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < z; ++j) K(i, j) = s1.V(i, s1.rank + j);
    Dense<Integer> Mup = core_matrix(l + 1);
    BigMatrix B(z, Mup.cols);
    if (Mup.cols > 0) {
        BigMatrix W = s1.Vinv * to_big(Mup);
        for (std::size_t i = 0; i < z; ++i)
            for (std::size_t j = 0; j < Mup.cols; ++j) B(i, j) = W(s1.rank + i, j);
    }
    auto s2 = smith_normal_form(B);
    h.U2 = s2.U;
    BigMatrix G = z ? K * s2.Uinv : BigMatrix(n, 0);
    for (std::size_t i = s2.rank; i < z; ++i) h.order.push_back(i);
    for (std::size_t i = 0; i < s2.rank; ++i) if (s2.diagonal[i] != 1) h.order.push_back(i);
    h.group.free_rank = z - s2.rank;
    for (std::size_t i = 0; i < s2.rank; ++i) if (s2.diagonal[i] != 1) h.group.torsion.push_back(s2.diagonal[i]);
    for (std::size_t i : h.order) h.generators.push_back(G.column(i));
    return h;
}

} // namespace coarsetop
