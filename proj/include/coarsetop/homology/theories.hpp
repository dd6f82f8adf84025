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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "../core/complex.hpp"
#include "../core/geometry.hpp"
#include "reduction.hpp"

namespace coarsetop {

enum class Theory { homology, cohomology };

// (Co)homology of the pair (S, A) of subcomplexes of one window.
// Reduced homology/cohomology uses an augmentation cell in dimension -1 when A is empty.
class PairComplex {
public:
    PairComplex(Subcomplex S, Subcomplex A, Theory theory, bool reduced)
        : S_(std::move(S)), A_(std::move(A)), theory_(theory) {
        if (!A_.subset_of(S_)) throw Error("relative pair: A is not contained in S");
        augmented_ = reduced && A_.is_empty();
        build();
    }

    const Subcomplex& S() const { return S_; }
    const Subcomplex& A() const { return A_; }
    Theory theory() const { return theory_; }
    bool augmented() const { return augmented_; }
    const SimplicialComplex& complex() const { return S_.complex(); }

    int level(int degree) const { return theory_ == Theory::homology ? degree : -degree; }

    AbelianGroup group(int k) const { return reduced_->group(level(k)); }

    std::vector<Chain> generators(int k) const {
        std::vector<Chain> out;
        auto g = group(k);
        for (std::size_t i = 0; i < g.generators(); ++i) out.push_back(from_level(k, reduced_->generator(level(k), i)));
        return out;
    }

    // Group coordinates of a (relative) cycle or cocycle given on the ambient complex.
    BigVector classify(const Chain& c) const {
        return reduced_->classify(level(c.dim), to_level(c));
    }

    // Is the ambient chain a (relative) cycle of this pair?
    bool is_cycle(const Chain& c) const {
        return reduced_->original().apply(level(c.dim), to_level(c)).empty();
    }

    // Homology: x on dimension dim(y)+1 with boundary y modulo A.
    // Cohomology: x on dimension dim(y)-1 with coboundary y.
    std::optional<Chain> solve(const Chain& y) const {
        auto x = reduced_->solve(level(y.dim), to_level(y));
        if (!x) return std::nullopt;
        return from_level(theory_ == Theory::homology ? y.dim + 1 : y.dim - 1, *x);
    }
    std::optional<Chain> solve_boundary(const Chain& y) const {
        if (theory_ != Theory::homology) throw Error("solve_boundary needs a homology pair");
        return solve(y);
    }

    // Ambient chain -> basis vector, applying the pair policy.
    SparseVec to_level(const Chain& c) const {
        if (c.dim == -1) {
            if (!augmented_) return {};
            return c.terms;
        }
        const auto& pos = pos_.at(c.dim);
        SparseVec v;
        for (const auto& t : c.terms) {
            int p = pos[t.index];
            if (p >= 0) {
                v.push_back({p, t.coef});
                continue;
            }
            bool inS = S_.contains(c.dim, t.index);
            if (theory_ == Theory::homology) {
                if (!inS) throw Error("chain leaves the complex " + describe());
            } else if (inS) {
                throw Error("cochain does not vanish on the relative part of " + describe());
            }
        }
        return v;  // positions are increasing because basis is sorted
    }

    Chain from_level(int dim, const SparseVec& v) const {
        Chain c{dim, {}};
        if (dim == -1) {
            c.terms = v;
            return c;
        }
        for (const auto& t : v) c.terms.push_back({basis_.at(dim)[t.index], t.coef});
        return c;
    }

    std::string describe() const {
        return std::string(theory_ == Theory::homology ? "H" : "H^") + "(S:" + std::to_string(S_.size(0)) +
               "v, A:" + std::to_string(A_.size(0)) + "v)";
    }

private:
    void build() {
        const auto& X = complex();
        int top = std::max(X.dim(), 0);
        basis_.assign(top + 1, {});
        pos_.assign(top + 1, {});
        for (int d = 0; d <= X.dim(); ++d) {
            pos_[d].assign(X.count(d), -1);
            for (std::size_t i = 0; i < X.count(d); ++i) {
                auto s = static_cast<SimplexIndex>(i);
                if (S_.contains(d, s) && !A_.contains(d, s)) {
                    pos_[d][i] = static_cast<int>(basis_[d].size());
                    basis_[d].push_back(s);
                }
            }
        }
        LeveledComplex cx;
        if (theory_ == Theory::homology) {
            cx.lo = augmented_ ? -1 : 0;
            cx.hi = top;
            for (int l = cx.lo; l <= cx.hi; ++l) {
                std::vector<SparseVec> cols;
                if (l == -1) {
                    cols.resize(1);
                } else {
                    for (SimplexIndex s : basis_[l]) {
                        SparseVec col;
                        if (l == 0) {
                            if (augmented_) col.push_back({0, 1});
                        } else {
                            auto f = X.faces_of(l, s);
                            std::vector<Term> terms;
                            for (int j = 0; j <= l; ++j) {
                                int p = pos_[l - 1][f[j]];
                                if (p >= 0) terms.push_back({p, j % 2 == 0 ? 1 : -1});
                            }
                            col = normalize(std::move(terms));
                        }
                        cols.push_back(std::move(col));
                    }
                }
                cx.sizes.push_back(cols.size());
                cx.diff.push_back(std::move(cols));
            }
        } else {
            cx.lo = -top;
            cx.hi = augmented_ ? 1 : 0;
            for (int l = cx.lo; l <= cx.hi; ++l) {
                std::vector<SparseVec> cols;
                if (l == 1) {
                    SparseVec col;
                    for (std::size_t i = 0; i < basis_[0].size(); ++i) col.push_back({static_cast<std::int32_t>(i), 1});
                    cols.push_back(std::move(col));
                } else {
                    int d = -l;
                    for (SimplexIndex s : basis_[d]) {
                        SparseVec col;
                        if (d < X.dim()) {
                            std::vector<Term> terms;
                            for (SimplexIndex tau : X.cofaces_of(d, s)) {
                                int p = pos_[d + 1][tau];
                                if (p >= 0) terms.push_back({p, X.face_sign(d + 1, tau, s)});
                            }
                            col = normalize(std::move(terms));
                        }
                        cols.push_back(std::move(col));
                    }
                }
                cx.sizes.push_back(cols.size());
                cx.diff.push_back(std::move(cols));
            }
        }
        reduced_ = std::make_shared<ReducedComplex>(std::move(cx));
    }

    Subcomplex S_, A_;
    Theory theory_;
    bool augmented_ = false;
    std::vector<std::vector<SimplexIndex>> basis_;
    std::vector<std::vector<int>> pos_;
    std::shared_ptr<ReducedComplex> reduced_;
};

using PairPtr = std::shared_ptr<const PairComplex>;

struct GradedGroup {
    int degree = 0;
    AbelianGroup group;
    std::vector<Chain> generator_lifts;
    bool windowed = false;
    std::string theory;  // "H", "H~", "H_c", "H_rel"

    std::size_t free_rank() const { return group.free_rank; }
    const std::vector<BigInt>& torsion() const { return group.torsion; }
};

inline GradedGroup graded(const PairComplex& P, int k, std::string theory, bool windowed) {
    return {k, P.group(k), P.generators(k), windowed, std::move(theory)};
}

// Frontier-distance data of a window, with cached collars and interiors.
class Window {
public:
    explicit Window(ComplexPtr X) : X_(std::move(X)), fd_(frontier_distances(*X_)) {}

    const ComplexPtr& complex() const { return X_; }
    const std::vector<int>& frontier_distance() const { return fd_; }

    // N_w(frontier)
    const Subcomplex& collar(int w) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = collars_.find(w);
        if (it != collars_.end()) return it->second;
        if (!filtration_) filtration_ = std::make_shared<NeighborhoodFiltration>(frontier_subcomplex(X_));
        return collars_.emplace(w, filtration_->neighborhood(w)).first->second;
    }

    // Full subcomplex on vertices at frontier distance >= c.
    const Subcomplex& interior(int c) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = interiors_.find(c);
        if (it != interiors_.end()) return it->second;
        std::vector<std::uint8_t> mask(X_->vertex_count());
        for (std::size_t v = 0; v < mask.size(); ++v) mask[v] = fd_[v] >= c;
        return interiors_.emplace(c, Subcomplex::induced(X_, mask)).first->second;
    }

private:
    ComplexPtr X_;
    std::vector<int> fd_;
    mutable std::mutex mutex_;
    mutable std::shared_ptr<NeighborhoodFiltration> filtration_;
    mutable std::map<int, Subcomplex> collars_;
    mutable std::map<int, Subcomplex> interiors_;
};

// Homology of (S, A) cut down to the window interior at margin c.
inline PairPtr homology_pair(const Window& W, const Subcomplex& S, const Subcomplex& A, bool reduced, int margin = 0) {
    if (margin <= 0) return std::make_shared<PairComplex>(S, A, Theory::homology, reduced);
    const auto& I = W.interior(margin);
    return std::make_shared<PairComplex>(S.intersect(I), A.intersect(I), Theory::homology, reduced);
}

inline bool truncated_by(const Window& W, const Subcomplex& S, int margin) {
    return margin > 0 && !S.subset_of(W.interior(margin));
}

// Windowed compactly supported cohomology: cohomology of (S, A + S cap Col_w).
inline PairPtr cohomology_pair(const Window& W, const Subcomplex& S, const Subcomplex& A, int collar = 1,
                               bool reduced = false) {
    Subcomplex rel = A.unite(S.intersect(W.collar(collar)));
    return std::make_shared<PairComplex>(S, rel, Theory::cohomology, reduced);
}

inline bool meets_collar(const Window& W, const Subcomplex& S, int collar) {
    return !S.intersect(W.collar(collar)).is_empty();
}

// ---- entry points ----------------------------------------------------------

inline GradedGroup homology(const Subcomplex& S, int k, bool reduced) {
    PairComplex P(S, Subcomplex::empty(S.parent()), Theory::homology, reduced);
    return graded(P, k, reduced ? "H~" : "H", false);
}

inline GradedGroup relative_homology(const Subcomplex& S, const Subcomplex& A, int k) {
    PairComplex P(S, A, Theory::homology, false);
    return graded(P, k, "H_rel", false);
}

inline GradedGroup cohomology(const Subcomplex& S, int k) {
    PairComplex P(S, Subcomplex::empty(S.parent()), Theory::cohomology, false);
    return graded(P, k, "H^", false);
}

inline GradedGroup cohomology_c(const Window& W, const Subcomplex& S, int k, int collar = 1) {
    auto P = cohomology_pair(W, S, Subcomplex::empty(S.parent()), collar);
    return graded(*P, k, "H_c", meets_collar(W, S, collar));
}

using ChainFunction = std::function<Chain(const Chain&)>;

// Map on (co)homology induced by a chain-level function (default: identity on ambient chains).
inline GroupMap induced_map(const PairComplex& src, int k, const PairComplex& tgt, int k2,
                            const ChainFunction& f = nullptr) {
    GroupMap m = GroupMap::zero(src.group(k), tgt.group(k2));
    auto gens = src.generators(k);
    for (std::size_t j = 0; j < gens.size(); ++j) {
        Chain image = f ? f(gens[j]) : gens[j];
        if (image.zero()) image.dim = k2;
        if (image.dim != k2) throw Error("induced map: chain lands in the wrong degree");
        auto c = tgt.classify(image);
        for (std::size_t i = 0; i < c.size(); ++i) m.matrix(i, j) = c[i];
    }
    if (!m.well_defined()) throw Error("induced map is not well defined on torsion");
    return m;
}

// Induced map of an inclusion of pairs, in the theory's natural direction
// (homology: small -> big; cohomology: big -> small by restriction).
inline GroupMap induced_map(const PairComplex& a, const PairComplex& b, int k) {
    if (a.theory() != b.theory()) throw Error("induced map: theory mismatch");
    if (a.theory() == Theory::homology) {
        if (!a.S().subset_of(b.S()) || !a.A().subset_of(b.A())) throw Error("induced map: not an inclusion of pairs");
    } else if (!b.S().subset_of(a.S())) {
        throw Error("induced map: restriction target is not a subcomplex");
    }
    return induced_map(a, k, b, k);
}

} // namespace coarsetop

namespace coarsetop {

// Standard alternating-sign boundary C_k -> C_{k-1} on the whole complex.
inline IntegerMatrix boundary_matrix(const SimplicialComplex& X, int k) {
    IntegerMatrix M;
    M.rows = X.count(k - 1);
    M.cols = X.count(k);
    for (std::size_t i = 0; i < M.cols; ++i) {
        Chain c{k, {{static_cast<std::int32_t>(i), 1}}};
        M.columns.push_back(X.boundary(c).terms);
    }
    return M;
}

// Simplices sigma of dimension >= 1 with d(d sigma) != 0, counting the augmentation.
inline std::size_t boundary_squared_defects(const SimplicialComplex& X) {
    std::size_t bad = 0;
    for (int k = 1; k <= X.dim(); ++k)
        for (std::size_t i = 0; i < X.count(k); ++i) {
            Chain c{k, {{static_cast<std::int32_t>(i), 1}}};
            if (!X.boundary(X.boundary(c)).terms.empty()) ++bad;
        }
    return bad;
}

} // namespace coarsetop
