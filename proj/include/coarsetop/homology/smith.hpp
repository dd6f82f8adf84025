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
#include <optional>
#include <vector>

#include "../core/integer.hpp"
#include "../core/sparse.hpp"

namespace coarsetop {

template <class T>
struct Dense {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;

    Dense() = default;
    Dense(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, T(0)) {}
    static Dense identity(std::size_t n) {
        Dense I(n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = T(1);
        return I;
    }
    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    bool operator==(const Dense&) const = default;
    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](const T& x) { return x == 0; });
    }
    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows);
        for (std::size_t i = 0; i < rows; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_column(std::size_t j, const std::vector<T>& c) {
        for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = c[i];
    }
};

using BigMatrix = Dense<BigInt>;
using BigVector = std::vector<BigInt>;

template <class T>
Dense<T> operator*(const Dense<T>& A, const Dense<T>& B) {
    if (A.cols != B.rows) throw Error("matrix shape mismatch");
    Dense<T> C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            if (A(i, k) == 0) continue;
            for (std::size_t j = 0; j < B.cols; ++j)
                if (B(k, j) != 0) C(i, j) = Arith<T>::add(C(i, j), Arith<T>::mul(A(i, k), B(k, j)));
        }
    return C;
}

inline BigVector operator*(const BigMatrix& A, const BigVector& x) {
    BigVector y(A.rows, 0);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j)
            if (A(i, j) != 0 && x[j] != 0) y[i] += A(i, j) * x[j];
    return y;
}

template <class T>
Dense<BigInt> to_big(const Dense<T>& A) {
    Dense<BigInt> B(A.rows, A.cols);
    for (std::size_t k = 0; k < A.a.size(); ++k) B.a[k] = BigInt(A.a[k]);
    return B;
}

// Sparse integer matrix stored by columns.
struct IntegerMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<SparseVec> columns;

    Dense<Integer> dense() const {
        Dense<Integer> D(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (const auto& t : columns[j]) D(t.index, j) = t.coef;
        return D;
    }
    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& c : columns) n += c.size();
        return n;
    }
};

template <class T>
struct SmithForm {
    std::vector<T> diagonal;  // d_1 | d_2 | ..., length = rank
    std::size_t rank = 0;
    Dense<T> U, Uinv, V, Vinv;  // U A V = D
};

namespace detail {

template <class T>
struct SmithRunner {
    Dense<T> A;
    bool track;
    Dense<T> U, Uinv, V, Vinv;
    using Ar = Arith<T>;

    void row_add(std::size_t i, std::size_t j, const T& c) {  // row_i += c row_j
        if (c == 0) return;
        for (std::size_t k = 0; k < A.cols; ++k) if (A(j, k) != 0) A(i, k) = Ar::add(A(i, k), Ar::mul(c, A(j, k)));
        if (!track) return;
        for (std::size_t k = 0; k < U.cols; ++k) if (U(j, k) != 0) U(i, k) = Ar::add(U(i, k), Ar::mul(c, U(j, k)));
        for (std::size_t k = 0; k < Uinv.rows; ++k) if (Uinv(k, i) != 0) Uinv(k, j) = Ar::sub(Uinv(k, j), Ar::mul(c, Uinv(k, i)));
    }
    void col_add(std::size_t i, std::size_t j, const T& c) {  // col_i += c col_j
        if (c == 0) return;
        for (std::size_t k = 0; k < A.rows; ++k) if (A(k, j) != 0) A(k, i) = Ar::add(A(k, i), Ar::mul(c, A(k, j)));
        if (!track) return;
        for (std::size_t k = 0; k < V.rows; ++k) if (V(k, j) != 0) V(k, i) = Ar::add(V(k, i), Ar::mul(c, V(k, j)));
        for (std::size_t k = 0; k < Vinv.cols; ++k) if (Vinv(i, k) != 0) Vinv(j, k) = Ar::sub(Vinv(j, k), Ar::mul(c, Vinv(i, k)));
    }
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < A.cols; ++k) std::swap(A(i, k), A(j, k));
        if (!track) return;
        for (std::size_t k = 0; k < U.cols; ++k) std::swap(U(i, k), U(j, k));
        for (std::size_t k = 0; k < Uinv.rows; ++k) std::swap(Uinv(k, i), Uinv(k, j));
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < A.rows; ++k) std::swap(A(k, i), A(k, j));
        if (!track) return;
        for (std::size_t k = 0; k < V.rows; ++k) std::swap(V(k, i), V(k, j));
        for (std::size_t k = 0; k < Vinv.cols; ++k) std::swap(Vinv(i, k), Vinv(j, k));
    }
    void row_negate(std::size_t i) {
        for (std::size_t k = 0; k < A.cols; ++k) A(i, k) = Ar::neg(A(i, k));
        if (!track) return;
        for (std::size_t k = 0; k < U.cols; ++k) U(i, k) = Ar::neg(U(i, k));
        for (std::size_t k = 0; k < Uinv.rows; ++k) Uinv(k, i) = Ar::neg(Uinv(k, i));
    }

    SmithForm<T> run() {
        const std::size_t m = A.rows, n = A.cols;
        if (track) {
            U = Uinv = Dense<T>::identity(m);
            V = Vinv = Dense<T>::identity(n);
        }
        SmithForm<T> out;
        std::size_t t = 0;
        while (t < std::min(m, n)) {
            // smallest magnitude, then lexicographic (row, col)
            bool found = false;
            std::size_t pi = 0, pj = 0;
            T best = 0;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (A(i, j) == 0) continue;
                    T mag = Ar::abs(A(i, j));
                    if (!found || mag < best) {
                        found = true;
                        best = mag;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) break;
            row_swap(t, pi);
            col_swap(t, pj);
            for (;;) {
                bool clean = true;
                for (std::size_t i = t + 1; i < m; ++i) {
                    if (A(i, t) == 0) continue;
                    T q = Ar::fdiv(A(i, t), A(t, t));
                    row_add(i, t, Ar::neg(q));
                    if (A(i, t) != 0) clean = false;
                }
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (A(t, j) == 0) continue;
                    T q = Ar::fdiv(A(t, j), A(t, t));
                    col_add(j, t, Ar::neg(q));
                    if (A(t, j) != 0) clean = false;
                }
                if (!clean) {
                    // bring the smallest remaining entry of row/column t to the pivot
                    T mag = Ar::abs(A(t, t));
                    std::size_t bi = t, bj = t;
                    for (std::size_t i = t + 1; i < m; ++i)
                        if (A(i, t) != 0 && Ar::abs(A(i, t)) < mag) { mag = Ar::abs(A(i, t)); bi = i; bj = t; }
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (A(t, j) != 0 && Ar::abs(A(t, j)) < mag) { mag = Ar::abs(A(t, j)); bi = t; bj = j; }
                    row_swap(t, bi);
                    col_swap(t, bj);
                    continue;
                }
                bool divisible = true;
                for (std::size_t i = t + 1; i < m && divisible; ++i)
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (A(i, j) != 0 && A(i, j) % A(t, t) != 0) {
                            row_add(t, i, T(1));
                            divisible = false;
                            break;
                        }
                if (divisible) break;
            }
            if (A(t, t) < 0) row_negate(t);
            out.diagonal.push_back(A(t, t));
            ++t;
        }
        out.rank = t;
        if (track) {
            out.U = std::move(U);
            out.Uinv = std::move(Uinv);
            out.V = std::move(V);
            out.Vinv = std::move(Vinv);
        }
        return out;
    }
};

template <class T>
SmithForm<BigInt> promote(SmithForm<T>&& s) {
    SmithForm<BigInt> b;
    for (const auto& d : s.diagonal) b.diagonal.push_back(BigInt(d));
    b.rank = s.rank;
    b.U = to_big(s.U);
    b.Uinv = to_big(s.Uinv);
    b.V = to_big(s.V);
    b.Vinv = to_big(s.Vinv);
    return b;
}

} // namespace detail

// Exact Smith normal form. Runs in int64 and restarts with big integers on overflow.
inline SmithForm<BigInt> smith_normal_form(const Dense<Integer>& A, bool transforms = true) {
    try {
        detail::SmithRunner<Integer> r{A, transforms, {}, {}, {}, {}};
        return detail::promote(r.run());
    } catch (const OverflowError&) {
        detail::SmithRunner<BigInt> r{to_big(A), transforms, {}, {}, {}, {}};
        return r.run();
    }
}

inline SmithForm<BigInt> smith_normal_form(const BigMatrix& A, bool transforms = true) {
    // try to fit in int64 first
    bool fits = true;
    Dense<Integer> small(A.rows, A.cols);
    for (std::size_t k = 0; k < A.a.size(); ++k) {
        if (A.a[k] > INT64_MAX / 4 || A.a[k] < INT64_MIN / 4) { fits = false; break; }
        small.a[k] = static_cast<Integer>(A.a[k]);
    }
    if (fits) return smith_normal_form(small, transforms);
    detail::SmithRunner<BigInt> r{A, transforms, {}, {}, {}, {}};
    return r.run();
}

inline SmithForm<BigInt> smith_normal_form(const IntegerMatrix& A, bool transforms = true) {
    return smith_normal_form(A.dense(), transforms);
}

// Diagonal matrix of a Smith form with the given shape.
inline BigMatrix smith_diagonal(const SmithForm<BigInt>& s, std::size_t rows, std::size_t cols) {
    BigMatrix D(rows, cols);
    for (std::size_t i = 0; i < s.rank; ++i) D(i, i) = s.diagonal[i];
    return D;
}

// Integer solution of A x = b, if any.
inline std::optional<BigVector> solve_integer(const BigMatrix& A, const BigVector& b) {
    auto s = smith_normal_form(A);
    BigVector c = s.U * b;
    BigVector y(A.cols, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < s.rank) {
            if (c[i] % s.diagonal[i] != 0) return std::nullopt;
            y[i] = c[i] / s.diagonal[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V * y;
}

// Basis of the integer kernel of A, as columns.
inline BigMatrix kernel_basis(const BigMatrix& A) {
    auto s = smith_normal_form(A);
    BigMatrix K(A.cols, A.cols - s.rank);
    for (std::size_t j = s.rank; j < A.cols; ++j)
        for (std::size_t i = 0; i < A.cols; ++i) K(i, j - s.rank) = s.V(i, j);
    return K;
}

} // namespace coarsetop
