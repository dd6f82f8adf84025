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

#include <sstream>
#include <string>
#include <vector>

#include "smith.hpp"

namespace coarsetop {

// Z^free_rank + Z/t_1 + ... with t_1 | t_2 | ...; coordinates list free parts first.
struct AbelianGroup {
    std::size_t free_rank = 0;
    std::vector<BigInt> torsion;

    std::size_t generators() const { return free_rank + torsion.size(); }
    bool trivial() const { return generators() == 0; }
    bool operator==(const AbelianGroup&) const = default;

    // Relation lattice as columns.
    BigMatrix relations() const {
        BigMatrix T(generators(), torsion.size());
        for (std::size_t i = 0; i < torsion.size(); ++i) T(free_rank + i, i) = torsion[i];
        return T;
    }
    BigVector reduce(BigVector x) const {
        for (std::size_t i = 0; i < torsion.size(); ++i) x[free_rank + i] = mod_floor(x[free_rank + i], torsion[i]);
        return x;
    }
    bool is_zero(const BigVector& x) const {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i < free_rank ? x[i] != 0 : x[i] % torsion[i - free_rank] != 0) return false;
        }
        return true;
    }
    std::string str() const {
        if (trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        if (free_rank > 0) {
            os << "Z";
            if (free_rank > 1) os << "^" << free_rank;
            first = false;
        }
        for (const auto& t : torsion) {
            os << (first ? "" : " + ") << "Z/" << t;
            first = false;
        }
        return os.str();
    }
};

// Quotient Z^n / L for L spanned by the columns of `lattice`.
// Returns the group and the change of coordinates Z^n -> group coordinates.
struct Quotient {
    AbelianGroup group;
    BigMatrix to_coords;    // generators() x n
    BigMatrix from_coords;  // n x generators(): lifts of the group generators
};

inline Quotient quotient_lattice(std::size_t n, const BigMatrix& lattice) {
    Quotient q;
    auto s = smith_normal_form(lattice);
    // U L V = D; coordinates y = U x; y_i mod d_i for i < rank, free for i >= rank.
    std::vector<std::size_t> rows;
    for (std::size_t i = s.rank; i < n; ++i) rows.push_back(i);
    std::vector<std::size_t> tors;
    for (std::size_t i = 0; i < s.rank; ++i) if (s.diagonal[i] != 1) tors.push_back(i);
    q.group.free_rank = rows.size();
    for (std::size_t i : tors) q.group.torsion.push_back(s.diagonal[i]);
    std::vector<std::size_t> order = rows;
    order.insert(order.end(), tors.begin(), tors.end());
    q.to_coords = BigMatrix(order.size(), n);
    q.from_coords = BigMatrix(n, order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            q.to_coords(k, j) = s.U(order[k], j);
            q.from_coords(j, k) = s.Uinv(j, order[k]);
        }
    }
    return q;
}

// Homomorphism between presented groups; matrix is target.generators() x source.generators().
struct GroupMap {
    AbelianGroup source, target;
    BigMatrix matrix;

    static GroupMap zero(const AbelianGroup& s, const AbelianGroup& t) {
        return {s, t, BigMatrix(t.generators(), s.generators())};
    }
    static GroupMap identity(const AbelianGroup& g) {
        return {g, g, BigMatrix::identity(g.generators())};
    }

    void canonicalize() {
        for (std::size_t i = 0; i < target.torsion.size(); ++i)
            for (std::size_t j = 0; j < matrix.cols; ++j) {
                auto& x = matrix(target.free_rank + i, j);
                x = mod_floor(x, target.torsion[i]);
            }
    }
    BigVector apply(const BigVector& x) const { return target.reduce(matrix * x); }

    // Torsion generators must land in elements of compatible order.
    bool well_defined() const {
        for (std::size_t i = 0; i < source.torsion.size(); ++i) {
            BigVector e(source.generators(), 0);
            e[source.free_rank + i] = source.torsion[i];
            if (!target.is_zero(matrix * e)) return false;
        }
        return true;
    }
    bool is_zero() const {
        for (std::size_t j = 0; j < source.generators(); ++j)
            if (!target.is_zero(matrix.column(j))) return false;
        return true;
    }
    bool operator==(const GroupMap& o) const {
        if (!(source == o.source) || !(target == o.target)) return false;
        for (std::size_t j = 0; j < source.generators(); ++j) {
            auto a = matrix.column(j), b = o.matrix.column(j);
            for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
            if (!target.is_zero(a)) return false;
        }
        return true;
    }
};

inline GroupMap compose(const GroupMap& g, const GroupMap& f) {
    if (!(f.target == g.source)) throw Error("composing maps with mismatched groups");
    GroupMap h{f.source, g.target, g.matrix * f.matrix};
    h.canonicalize();
    return h;
}

// [F | T_target]
inline BigMatrix with_relations(const BigMatrix& F, const AbelianGroup& target) {
    BigMatrix T = target.relations();
    BigMatrix M(target.generators(), F.cols + T.cols);
    for (std::size_t i = 0; i < M.rows; ++i) {
        for (std::size_t j = 0; j < F.cols; ++j) M(i, j) = F(i, j);
        for (std::size_t j = 0; j < T.cols; ++j) M(i, F.cols + j) = T(i, j);
    }
    return M;
}

// Generators of Ker f as columns in source coordinates.
inline BigMatrix kernel_generators(const GroupMap& f) {
    std::size_t n = f.source.generators();
    if (n == 0) return BigMatrix(0, 0);
    BigMatrix K = kernel_basis(with_relations(f.matrix, f.target));
    BigMatrix out(n, K.cols);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < K.cols; ++j) out(i, j) = K(i, j);
    return out;
}

// Does y lie in the subgroup generated by the columns of G inside `group`?
inline bool in_subgroup(const BigMatrix& G, const AbelianGroup& group, const BigVector& y) {
    if (group.is_zero(y)) return true;
    if (G.cols == 0 && group.torsion.empty()) return false;
    return solve_integer(with_relations(G, group), y).has_value();
}

inline bool image_contains(const GroupMap& f, const BigVector& y) {
    return in_subgroup(f.matrix, f.target, y);
}

// Ker f contained in Ker g (same source).
inline bool kernel_contained(const GroupMap& f, const GroupMap& g) {
    BigMatrix K = kernel_generators(f);
    for (std::size_t j = 0; j < K.cols; ++j)
        if (!g.target.is_zero(g.matrix * K.column(j))) return false;
    return true;
}

// Im h contained in Im f (same target).
inline bool image_contained(const GroupMap& h, const GroupMap& f) {
    for (std::size_t j = 0; j < h.source.generators(); ++j)
        if (!image_contains(f, h.matrix.column(j))) return false;
    return true;
}

inline bool is_injective(const GroupMap& f) {
    BigMatrix K = kernel_generators(f);
    for (std::size_t j = 0; j < K.cols; ++j)
        if (!f.source.is_zero(K.column(j))) return false;
    return true;
}

inline bool is_surjective(const GroupMap& f) {
    for (std::size_t i = 0; i < f.target.generators(); ++i) {
        BigVector e(f.target.generators(), 0);
        e[i] = 1;
        if (!image_contains(f, e)) return false;
    }
    return true;
}

inline bool is_isomorphism(const GroupMap& f) { return is_injective(f) && is_surjective(f); }

// Im f as an abstract group: Z^n / (Ker f + source relations).
inline AbelianGroup image_group(const GroupMap& f) {
    std::size_t n = f.source.generators();
    if (n == 0) return {};
    BigMatrix K = kernel_generators(f);
    BigMatrix S = f.source.relations();
    BigMatrix L(n, K.cols + S.cols);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < K.cols; ++j) L(i, j) = K(i, j);
        for (std::size_t j = 0; j < S.cols; ++j) L(i, K.cols + j) = S(i, j);
    }
    if (L.cols == 0) return {n, {}};
    return quotient_lattice(n, L).group;
}

inline std::size_t map_rank(const GroupMap& f) { return image_group(f).free_rank; }

inline AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    // Coordinates of a + b are re-sorted into canonical form only at the level of
    // structure; maps into sums use block_sum_coords.
    AbelianGroup s;
    s.free_rank = a.free_rank + b.free_rank;
    s.torsion = a.torsion;
    s.torsion.insert(s.torsion.end(), b.torsion.begin(), b.torsion.end());
    return s;
}

// Coordinate position of the k-th coordinate of summand a (first) or b in direct_sum(a, b).
inline std::size_t sum_position(const AbelianGroup& a, const AbelianGroup& b, bool first, std::size_t k) {
    if (first) return k < a.free_rank ? k : b.free_rank + k;
    return k < b.free_rank ? a.free_rank + k : a.generators() + k;
}

} // namespace coarsetop
