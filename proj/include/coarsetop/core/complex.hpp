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
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "integer.hpp"
#include "sparse.hpp"

namespace coarsetop {

inline constexpr int kMaxDim = 7;

using VertexLabel = std::int64_t;
using SimplexIndex = std::int32_t;
using Vertex = std::int32_t;

struct BuildOptions {
    // Optional per-label model coordinates, flat with coord_dim entries per label
    // listed in the same order as `labels`.
    int coord_dim = 0;
    std::vector<VertexLabel> labels;
    std::vector<int> coords;
};

class SimplicialComplex {
public:
    int dim() const { return static_cast<int>(cells_.size()) - 1; }
    std::size_t count(int d) const {
        if (d < 0 || d > dim()) return 0;
        return cells_[d].size() / static_cast<std::size_t>(d + 1);
    }
    std::size_t vertex_count() const { return labels_.size(); }
    std::size_t total_count() const {
        std::size_t n = 0;
        for (int d = 0; d <= dim(); ++d) n += count(d);
        return n;
    }

    std::span<const Vertex> vertices_of(int d, SimplexIndex i) const {
        return {cells_[d].data() + static_cast<std::size_t>(i) * (d + 1),
                static_cast<std::size_t>(d + 1)};
    }
    // Face j omits vertex j; boundary sign (-1)^j.
    std::span<const SimplexIndex> faces_of(int d, SimplexIndex i) const {
        return {faces_[d].data() + static_cast<std::size_t>(i) * (d + 1),
                static_cast<std::size_t>(d + 1)};
    }
    std::span<const SimplexIndex> cofaces_of(int d, SimplexIndex i) const {
        if (d >= dim()) return {};
        const auto& off = coface_offsets_[d];
        return {coface_list_[d].data() + off[i], off[i + 1] - off[i]};
    }

    std::optional<SimplexIndex> find(std::span<const Vertex> sorted_vertices) const {
        int d = static_cast<int>(sorted_vertices.size()) - 1;
        if (d < 0 || d > dim()) return std::nullopt;
        std::size_t lo = 0, hi = count(d);
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            auto v = vertices_of(d, static_cast<SimplexIndex>(mid));
            if (std::lexicographical_compare(v.begin(), v.end(), sorted_vertices.begin(),
                                             sorted_vertices.end())) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if (lo < count(d)) {
            auto v = vertices_of(d, static_cast<SimplexIndex>(lo));
            if (std::equal(v.begin(), v.end(), sorted_vertices.begin())) {
                return static_cast<SimplexIndex>(lo);
            }
        }
        return std::nullopt;
    }

    VertexLabel label(Vertex v) const { return labels_[v]; }
    const std::vector<VertexLabel>& labels() const { return labels_; }
    std::optional<Vertex> vertex_of_label(VertexLabel l) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
        if (it == labels_.end() || *it != l) return std::nullopt;
        return static_cast<Vertex>(it - labels_.begin());
    }

    const std::vector<Vertex>& frontier() const { return frontier_; }
    bool is_frontier(Vertex v) const { return frontier_mask_[v] != 0; }

    int coordinate_dim() const { return coord_dim_; }
    std::span<const int> coordinates(Vertex v) const {
        return {coords_.data() + static_cast<std::size_t>(v) * coord_dim_,
                static_cast<std::size_t>(coord_dim_)};
    }

    // Maximal simplices as vertex tuples, by dimension then lexicographic.
    std::vector<std::vector<Vertex>> maximal_simplices() const {
        std::vector<std::vector<Vertex>> out;
        for (int d = 0; d <= dim(); ++d) {
            for (std::size_t i = 0; i < count(d); ++i) {
                auto s = static_cast<SimplexIndex>(i);
                if (cofaces_of(d, s).empty()) {
                    auto v = vertices_of(d, s);
                    out.emplace_back(v.begin(), v.end());
                }
            }
        }
        return out;
    }

    Chain boundary(const Chain& c) const {
        if (c.dim <= 0) {
            // augmentation
            Integer s = 0;
            if (c.dim == 0) for (const auto& t : c.terms) s = checked_add(s, t.coef);
            Chain out{-1, {}};
            if (s != 0) out.terms.push_back({0, s});
            return out;
        }
        std::vector<Term> terms;
        for (const auto& t : c.terms) {
            auto f = faces_of(c.dim, t.index);
            for (int j = 0; j <= c.dim; ++j) {
                terms.push_back({f[j], (j % 2 == 0) ? t.coef : checked_sub(0, t.coef)});
            }
        }
        return {c.dim - 1, normalize(std::move(terms))};
    }

    // Coboundary with delta = transpose of boundary; dim -1 is the augmentation cochain.
    Chain coboundary(const Chain& c) const {
        std::vector<Term> terms;
        if (c.dim == -1) {
            Integer a = c.terms.empty() ? 0 : c.terms[0].coef;
            if (a != 0) {
                for (std::size_t v = 0; v < vertex_count(); ++v) {
                    terms.push_back({static_cast<std::int32_t>(v), a});
                }
            }
            return {0, normalize(std::move(terms))};
        }
        for (const auto& t : c.terms) {
            for (SimplexIndex tau : cofaces_of(c.dim, t.index)) {
                terms.push_back({tau, checked_mul(t.coef, face_sign(c.dim + 1, tau, t.index))});
            }
        }
        return {c.dim + 1, normalize(std::move(terms))};
    }

    // Sign of face sigma in the boundary of tau (dimension d).
    Integer face_sign(int d, SimplexIndex tau, SimplexIndex sigma) const {
        auto f = faces_of(d, tau);
        for (int j = 0; j <= d; ++j) {
            if (f[j] == sigma) return (j % 2 == 0) ? 1 : -1;
        }
        return 0;
    }

    std::string summary() const {
        std::ostringstream os;
        os << "dim " << dim() << ", counts";
        for (int d = 0; d <= dim(); ++d) os << ' ' << count(d);
        os << ", frontier " << frontier_.size();
        return os.str();
    }

private:
    friend SimplicialComplex build_complex(const std::vector<std::vector<VertexLabel>>&,
                                           const std::vector<VertexLabel>&, const BuildOptions&);

    std::vector<VertexLabel> labels_;
    std::vector<std::vector<Vertex>> cells_;
    std::vector<std::vector<SimplexIndex>> faces_;
    std::vector<std::vector<std::size_t>> coface_offsets_;
    std::vector<std::vector<SimplexIndex>> coface_list_;
    std::vector<Vertex> frontier_;
    std::vector<std::uint8_t> frontier_mask_;
    int coord_dim_ = 0;
    std::vector<int> coords_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

namespace detail {

// Sort flat tuples of width w and drop duplicates.
inline std::vector<Vertex> sort_unique_tuples(std::vector<Vertex> flat, int w) {
    std::size_t n = flat.size() / w;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(flat.begin() + a * w, flat.begin() + (a + 1) * w,
                                            flat.begin() + b * w, flat.begin() + (b + 1) * w);
    });
    std::vector<Vertex> out;
    out.reserve(flat.size());
    for (std::size_t k = 0; k < n; ++k) {
        auto first = flat.begin() + order[k] * w;
        if (!out.empty() && std::equal(first, first + w, out.end() - w)) continue;
        out.insert(out.end(), first, first + w);
    }
    return out;
}

} // namespace detail

inline SimplicialComplex build_complex(const std::vector<std::vector<VertexLabel>>& max_simplices,
                                       const std::vector<VertexLabel>& frontier,
                                       const BuildOptions& options = {}) {
    SimplicialComplex X;
    int top = -1;
    for (const auto& s : max_simplices) {
        if (s.empty()) throw Error("empty simplex");
        top = std::max(top, static_cast<int>(s.size()) - 1);
        for (VertexLabel l : s) X.labels_.push_back(l);
    }
    if (top > kMaxDim) throw Error("simplex dimension exceeds " + std::to_string(kMaxDim));
    std::sort(X.labels_.begin(), X.labels_.end());
    X.labels_.erase(std::unique(X.labels_.begin(), X.labels_.end()), X.labels_.end());

    std::vector<std::vector<Vertex>> listed(top + 1);
    for (const auto& s : max_simplices) {
        std::vector<Vertex> v;
        for (VertexLabel l : s) v.push_back(*X.vertex_of_label(l));
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
            throw Error("simplex with repeated vertex");
        }
        auto& flat = listed[v.size() - 1];
        flat.insert(flat.end(), v.begin(), v.end());
    }
    for (int d = 0; d <= top; ++d) {
        std::size_t before = listed[d].size();
        auto u = detail::sort_unique_tuples(listed[d], d + 1);
        if (u.size() != before) {
            throw Error("duplicate maximal simplex in dimension " + std::to_string(d));
        }
    }

    X.cells_.assign(top + 1, {});
    if (top >= 0) X.cells_[top] = detail::sort_unique_tuples(listed[top], top + 1);
    for (int d = top - 1; d >= 0; --d) {
        std::vector<Vertex> flat = std::move(listed[d]);
        const auto& above = X.cells_[d + 1];
        std::size_t n = above.size() / (d + 2);
        flat.reserve(flat.size() + n * (d + 2) * (d + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (int j = 0; j <= d + 1; ++j) {
                for (int k = 0; k <= d + 1; ++k) {
                    if (k != j) flat.push_back(above[i * (d + 2) + k]);
                }
            }
        }
        X.cells_[d] = detail::sort_unique_tuples(std::move(flat), d + 1);
    }
    // vertices: every label occurs, so cells_[0] == 0..V-1
    X.faces_.assign(top + 1, {});
    for (int d = 1; d <= top; ++d) {
        std::size_t n = X.count(d);
        X.faces_[d].resize(n * (d + 1));
        std::vector<Vertex> buf(d);
        for (std::size_t i = 0; i < n; ++i) {
            auto v = X.vertices_of(d, static_cast<SimplexIndex>(i));
            for (int j = 0; j <= d; ++j) {
                int k = 0;
                for (int m = 0; m <= d; ++m) if (m != j) buf[k++] = v[m];
                X.faces_[d][i * (d + 1) + j] = *X.find(buf);
            }
        }
    }
    X.faces_[0].resize(X.count(0));
    std::iota(X.faces_[0].begin(), X.faces_[0].end(), 0);

    X.coface_offsets_.assign(std::max(top, 0), {});
    X.coface_list_.assign(std::max(top, 0), {});
    for (int d = 0; d < top; ++d) {
        auto& off = X.coface_offsets_[d];
        off.assign(X.count(d) + 1, 0);
        for (SimplexIndex f : X.faces_[d + 1]) ++off[f + 1];
        for (std::size_t i = 0; i < X.count(d); ++i) off[i + 1] += off[i];
        auto& lst = X.coface_list_[d];
        lst.resize(X.faces_[d + 1].size());
        std::vector<std::size_t> cursor(off.begin(), off.end() - 1);
        std::size_t n = X.count(d + 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (int j = 0; j <= d + 1; ++j) {
                SimplexIndex f = X.faces_[d + 1][i * (d + 2) + j];
                lst[cursor[f]++] = static_cast<SimplexIndex>(i);
            }
        }
    }

    X.frontier_mask_.assign(X.vertex_count(), 0);
    for (VertexLabel l : frontier) {
        auto v = X.vertex_of_label(l);
        if (!v) throw Error("frontier vertex " + std::to_string(l) + " is not in any simplex");
        X.frontier_mask_[*v] = 1;
    }
    for (std::size_t v = 0; v < X.vertex_count(); ++v) {
        if (X.frontier_mask_[v]) X.frontier_.push_back(static_cast<Vertex>(v));
    }

    if (options.coord_dim > 0) {
        X.coord_dim_ = options.coord_dim;
        X.coords_.assign(X.vertex_count() * options.coord_dim, 0);
        for (std::size_t i = 0; i < options.labels.size(); ++i) {
            auto v = X.vertex_of_label(options.labels[i]);
            if (!v) continue;
            for (int c = 0; c < options.coord_dim; ++c) {
                X.coords_[static_cast<std::size_t>(*v) * options.coord_dim + c] =
                    options.coords[i * options.coord_dim + c];
            }
        }
    }
    return X;
}

inline ComplexPtr make_complex(const std::vector<std::vector<VertexLabel>>& max_simplices,
                               const std::vector<VertexLabel>& frontier,
                               const BuildOptions& options = {}) {
    return std::make_shared<const SimplicialComplex>(build_complex(max_simplices, frontier, options));
}

// Closed-under-faces subset of a parent complex.
class Subcomplex {
public:
    Subcomplex() = default;
    explicit Subcomplex(ComplexPtr parent) : parent_(std::move(parent)) {
        member_.resize(parent_->dim() + 1);
        for (int d = 0; d <= parent_->dim(); ++d) member_[d].assign(parent_->count(d), 0);
    }

    static Subcomplex empty(ComplexPtr parent) { return Subcomplex(std::move(parent)); }
    static Subcomplex whole(ComplexPtr parent) {
        Subcomplex S(std::move(parent));
        for (auto& m : S.member_) std::fill(m.begin(), m.end(), 1);
        return S;
    }
    // Full (induced) subcomplex on a vertex set.
    static Subcomplex induced(ComplexPtr parent, const std::vector<std::uint8_t>& vertex_mask) {
        Subcomplex S(std::move(parent));
        const auto& X = *S.parent_;
        for (int d = 0; d <= X.dim(); ++d) {
            for (std::size_t i = 0; i < X.count(d); ++i) {
                auto v = X.vertices_of(d, static_cast<SimplexIndex>(i));
                S.member_[d][i] = std::all_of(v.begin(), v.end(),
                                              [&](Vertex x) { return vertex_mask[x] != 0; });
            }
        }
        return S;
    }
    // Smallest subcomplex containing the marked simplices.
    static Subcomplex closure(ComplexPtr parent, std::vector<std::vector<std::uint8_t>> marks) {
        Subcomplex S(std::move(parent));
        const auto& X = *S.parent_;
        marks.resize(X.dim() + 1);
        for (int d = 0; d <= X.dim(); ++d) marks[d].resize(X.count(d), 0);
        for (int d = X.dim(); d >= 1; --d) {
            for (std::size_t i = 0; i < X.count(d); ++i) {
                if (!marks[d][i]) continue;
                for (SimplexIndex f : X.faces_of(d, static_cast<SimplexIndex>(i))) marks[d - 1][f] = 1;
            }
        }
        S.member_ = std::move(marks);
        return S;
    }

    const ComplexPtr& parent() const { return parent_; }
    const SimplicialComplex& complex() const { return *parent_; }
    bool contains(int d, SimplexIndex i) const {
        return d >= 0 && d < static_cast<int>(member_.size()) && member_[d][i] != 0;
    }
    const std::vector<std::uint8_t>& mask(int d) const { return member_[d]; }
    std::vector<SimplexIndex> simplices(int d) const {
        std::vector<SimplexIndex> out;
        if (d < 0 || d >= static_cast<int>(member_.size())) return out;
        for (std::size_t i = 0; i < member_[d].size(); ++i) {
            if (member_[d][i]) out.push_back(static_cast<SimplexIndex>(i));
        }
        return out;
    }
    std::vector<Vertex> vertices() const { return simplices(0); }
    std::vector<std::uint8_t> vertex_mask() const { return member_.empty() ? std::vector<std::uint8_t>{} : member_[0]; }
    std::size_t size(int d) const {
        if (d < 0 || d >= static_cast<int>(member_.size())) return 0;
        return static_cast<std::size_t>(std::count(member_[d].begin(), member_[d].end(), 1));
    }
    int dim() const {
        for (int d = static_cast<int>(member_.size()) - 1; d >= 0; --d) if (size(d) > 0) return d;
        return -1;
    }
    bool is_empty() const { return member_.empty() || size(0) == 0; }

    Subcomplex unite(const Subcomplex& o) const {
        check_same(o);
        Subcomplex S = *this;
        for (std::size_t d = 0; d < member_.size(); ++d)
            for (std::size_t i = 0; i < member_[d].size(); ++i) S.member_[d][i] |= o.member_[d][i];
        return S;
    }
    Subcomplex intersect(const Subcomplex& o) const {
        check_same(o);
        Subcomplex S = *this;
        for (std::size_t d = 0; d < member_.size(); ++d)
            for (std::size_t i = 0; i < member_[d].size(); ++i) S.member_[d][i] &= o.member_[d][i];
        return S;
    }
    bool subset_of(const Subcomplex& o) const {
        check_same(o);
        for (std::size_t d = 0; d < member_.size(); ++d)
            for (std::size_t i = 0; i < member_[d].size(); ++i)
                if (member_[d][i] && !o.member_[d][i]) return false;
        return true;
    }
    bool operator==(const Subcomplex& o) const {
        return parent_ == o.parent_ && member_ == o.member_;
    }
    bool is_closed() const {
        const auto& X = *parent_;
        for (int d = 1; d <= X.dim(); ++d)
            for (std::size_t i = 0; i < X.count(d); ++i)
                if (member_[d][i])
                    for (SimplexIndex f : X.faces_of(d, static_cast<SimplexIndex>(i)))
                        if (!member_[d - 1][f]) return false;
        return true;
    }
    // Simplices of this complex that are absent from `o`, as raw marks (not closed).
    std::vector<std::vector<std::uint8_t>> minus_marks(const Subcomplex& o) const {
        check_same(o);
        auto m = member_;
        for (std::size_t d = 0; d < m.size(); ++d)
            for (std::size_t i = 0; i < m[d].size(); ++i) m[d][i] = member_[d][i] && !o.member_[d][i];
        return m;
    }
    void set(int d, SimplexIndex i, bool on) { member_[d][i] = on ? 1 : 0; }

private:
    void check_same(const Subcomplex& o) const {
        if (parent_ != o.parent_) throw Error("subcomplexes of different parents");
    }
    ComplexPtr parent_;
    std::vector<std::vector<std::uint8_t>> member_;
};

} // namespace coarsetop
