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

#include <array>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "../core/complex_io.hpp"
#include "../generators/grid.hpp"
#include "chain_map.hpp"
#include "orientation.hpp"

namespace coarsetop {

// Chain on a grid with every simplex written as vertex offsets from a base point.
struct Template {
    int dim = 0;
    std::vector<std::pair<std::vector<int>, Integer>> terms;  // flat offsets (dim+1)*n
};

// Simplex type = offsets of its vertices from the first vertex; base = that vertex.
inline std::pair<std::vector<int>, std::vector<int>> simplex_type(const SimplicialComplex& X, int d, SimplexIndex s) {
    int n = X.coordinate_dim();
    auto v = X.vertices_of(d, s);
    auto b = X.coordinates(v[0]);
    std::vector<int> base(b.begin(), b.end()), key;
    for (Vertex w : v) {
        auto x = X.coordinates(w);
        for (int i = 0; i < n; ++i) key.push_back(x[i] - base[i]);
    }
    return {key, base};
}

inline std::optional<Chain> instantiate(const SimplicialComplex& X, const Grid& g, const Template& t,
                                        const std::vector<int>& base) {
    int n = g.n;
    Chain c{t.dim, {}};
    std::vector<Term> terms;
    std::vector<Vertex> verts(t.dim + 1);
    std::vector<int> x(n);
    for (const auto& [off, coef] : t.terms) {
        for (int k = 0; k <= t.dim; ++k) {
            for (int i = 0; i < n; ++i) x[i] = base[i] + off[k * n + i];
            if (!g.inside(x)) return std::nullopt;
            verts[k] = g.vertex(x);
        }
        auto idx = X.find(verts);
        if (!idx) return std::nullopt;
        terms.push_back({*idx, coef});
    }
    c.terms = normalize(std::move(terms));
    return c;
}

// Translation-invariant linear map on Kuhn grids, one template per simplex type.
struct InvariantMap {
    std::string name;
    MapKind kind = MapKind::chain_to_cochain;
    int n = 0;
    std::map<std::vector<int>, Template> by_type;

    int target_dim(int d) const {
        ChainMapRecord r;
        r.kind = kind;
        r.n = n;
        return r.target_dim(d);
    }

    std::optional<Chain> column(const SimplicialComplex& X, const Grid& g, int d, SimplexIndex s) const {
        auto [key, base] = simplex_type(X, d, s);
        auto it = by_type.find(key);
        if (it == by_type.end()) throw Error(name + ": no template for a simplex type of dimension " + std::to_string(d));
        return instantiate(X, g, it->second, base);
    }

    std::optional<Chain> apply(const SimplicialComplex& X, const Grid& g, const Chain& c) const {
        Chain out{target_dim(c.dim), {}};
        if (c.dim < 0 || c.dim > X.dim()) return out;
        for (const auto& t : c.terms) {
            auto col = column(X, g, c.dim, t.index);
            if (!col) return std::nullopt;
            out.terms = axpy(out.terms, t.coef, col->terms);
        }
        return out;
    }

    ChainMapRecord record(const ComplexPtr& X) const {
        ChainMapRecord r;
        r.name = name;
        r.kind = kind;
        r.n = n;
        r.source = X;
        r.target = X;
        Grid g = grid_of(*X);
        auto self = std::make_shared<InvariantMap>(*this);
        r.column = [self, X, g](int d, SimplexIndex s) { return self->column(*X, g, d, s); };
        return r;
    }

    int reach() const {
        int r = 0;
        for (const auto& [key, t] : by_type)
            for (const auto& [off, c] : t.terms)
                for (int x : off) r = std::max(r, std::abs(x));
        return r;
    }
};

struct PoincareCertificate {
    int n = 0;
    int reference_window = 0;
    InvariantMap P;        // chains -> cochains of degree n - k
    InvariantMap Pbar;     // cochains -> chains of dimension n - k
    InvariantMap Phi;      // Pbar P - id = d Phi + Phi d
    InvariantMap Phibar;   // P Pbar - id = delta Phibar + Phibar delta
    int max_fill_radius = 0;

    std::array<const InvariantMap*, 4> maps() const { return {&P, &Pbar, &Phi, &Phibar}; }
};

namespace detail {

// boundary without augmentation
inline Chain bnd(const SimplicialComplex& X, const Chain& c) {
    if (c.dim <= 0) return {c.dim - 1, {}};
    return X.boundary(c);
}

inline Chain cobnd(const SimplicialComplex& X, const Chain& c) {
    if (c.dim >= X.dim()) return {c.dim + 1, {}};
    return X.coboundary(c);
}

inline Template to_template(const SimplicialComplex& X, const Chain& c, const std::vector<int>& base) {
    Template t;
    t.dim = c.dim;
    int n = X.coordinate_dim();
    for (const auto& term : c.terms) {
        std::vector<int> off;
        for (Vertex w : X.vertices_of(c.dim, term.index)) {
            auto x = X.coordinates(w);
            for (int i = 0; i < n; ++i) off.push_back(x[i] - base[i]);
        }
        t.terms.push_back({std::move(off), term.coef});
    }
    return t;
}

struct CertificateBuilder {
    int n;
    ComplexPtr ref;
    Grid g;
    std::vector<int> origin;
    std::vector<std::vector<SimplexIndex>> reps;  // per dimension, simplices based at the origin
    std::vector<int> fd;
    int max_radius;
    int used_radius = 0;

    CertificateBuilder(int n_, int W, int max_r) : n(n_), ref(grid_window(n_, W)), g{n_, W}, origin(n_, 0), max_radius(max_r) {
        reps.resize(n + 1);
        Vertex o = g.vertex(origin);
        for (int d = 0; d <= n; ++d)
            for (std::size_t i = 0; i < ref->count(d); ++i)
                if (ref->vertices_of(d, static_cast<SimplexIndex>(i))[0] == o) reps[d].push_back(static_cast<SimplexIndex>(i));
        fd = frontier_distances(*ref);
    }

    Chain eval(const InvariantMap& m, const Chain& c) {
        auto out = m.apply(*ref, g, c);
        if (!out) throw Error("PD certificate: reference window too small for " + m.name);
        check_inside(*out, m.name);
        return *out;
    }
    void check_inside(const Chain& c, const std::string& what) {
        for (Vertex v : support_vertices(*ref, c))
            if (fd[v] < 2) throw Error("PD certificate: reference window too small for " + what);
    }
    Chain solve(const Chain& t, Theory th, const std::string& what) {
        auto r = fill(ref, t, th, max_radius, th == Theory::homology ? 0 : 1);
        if (!r) throw Error("PD certificate: fill infeasible within radius " + std::to_string(max_radius) + " for " + what);
        used_radius = std::max(used_radius, r->radius);
        check_inside(r->chain, what);
        return r->chain;
    }
    void store(InvariantMap& m, int d, SimplexIndex s, const Chain& image) {
        auto [key, base] = simplex_type(*ref, d, s);
        m.by_type[key] = to_template(*ref, image, base);
    }
    Chain unit(int d, SimplexIndex s) const { return {d, {{s, 1}}}; }
};

} // namespace detail

// Builds P, Pbar, Phi, Phibar on a reference window by degree-wise fills; the templates then
// apply to every Kuhn grid window of the same dimension.
inline PoincareCertificate build_poincare_certificate(int n, int reference_window = 0, int max_radius = 6) {
    if (n < 1 || n > 3) throw Error("PD certificate: grid dimension must be 1, 2 or 3");
    if (reference_window == 0) reference_window = n == 3 ? 8 : 10;
    detail::CertificateBuilder B(n, reference_window, max_radius);
    const auto& X = *B.ref;
    PoincareCertificate cert;
    cert.n = n;
    cert.reference_window = reference_window;
    cert.P = {"P", MapKind::chain_to_cochain, n, {}};
    cert.Pbar = {"Pbar", MapKind::cochain_to_chain, n, {}};
    cert.Phi = {"Phi", MapKind::chain_homotopy, n, {}};
    cert.Phibar = {"Phibar", MapKind::cochain_homotopy, n, {}};

    // P on vertices: the positively oriented top simplex based at the vertex.
    {
        SimplexIndex tau = B.reps[n].front();
        int o = simplex_orientation(X, n, tau);
        B.store(cert.P, 0, B.reps[0].front(), Chain{n, {{tau, o}}});
    }
    for (int d = 1; d <= n; ++d) {
        for (SimplexIndex s : B.reps[d]) {
            Chain t = B.eval(cert.P, detail::bnd(X, B.unit(d, s)));
            B.store(cert.P, d, s, B.solve(t, Theory::cohomology, "P"));
        }
    }
    // Pbar on top cochains: the base vertex with the simplex orientation.
    for (SimplexIndex tau : B.reps[n]) {
        int o = simplex_orientation(X, n, tau);
        B.store(cert.Pbar, n, tau, Chain{0, {{X.vertices_of(n, tau)[0], o}}});
    }
    for (int j = n - 1; j >= 0; --j) {
        for (SimplexIndex s : B.reps[j]) {
            Chain t = B.eval(cert.Pbar, detail::cobnd(X, B.unit(j, s)));
            B.store(cert.Pbar, j, s, B.solve(t, Theory::homology, "Pbar"));
        }
    }
    for (int d = 0; d <= n; ++d) {
        for (SimplexIndex s : B.reps[d]) {
            Chain sigma = B.unit(d, s);
            Chain t = B.eval(cert.Pbar, B.eval(cert.P, sigma)) - sigma;
            if (d > 0) t = t - B.eval(cert.Phi, detail::bnd(X, sigma));
            if (d == n) {
                if (!t.zero()) throw Error("PD certificate: top-dimensional homotopy obstruction is nonzero");
                B.store(cert.Phi, d, s, Chain{d + 1, {}});
                continue;
            }
            B.store(cert.Phi, d, s, B.solve(t, Theory::homology, "Phi"));
        }
    }
    for (int j = n; j >= 0; --j) {
        for (SimplexIndex s : B.reps[j]) {
            Chain xi = B.unit(j, s);
            Chain t = B.eval(cert.P, B.eval(cert.Pbar, xi)) - xi;
            if (j < n) t = t - B.eval(cert.Phibar, detail::cobnd(X, xi));
            if (j == 0) {
                if (!t.zero()) throw Error("PD certificate: degree-zero homotopy obstruction is nonzero");
                B.store(cert.Phibar, j, s, Chain{-1, {}});
                continue;
            }
            B.store(cert.Phibar, j, s, B.solve(t, Theory::cohomology, "Phibar"));
        }
    }
    cert.max_fill_radius = B.used_radius;
    return cert;
}

struct IdentityAudit {
    // chain map P, chain map Pbar, Pbar P - id, P Pbar - id
    std::array<std::size_t, 4> checked{};
    std::array<std::size_t, 4> failed{};
    std::size_t skipped = 0;
    int interior_margin = 0;  // every simplex with all vertices at frontier distance >= margin was checked
    bool exact() const { return failed == std::array<std::size_t, 4>{}; }
};

inline IdentityAudit audit_certificate(const PoincareCertificate& cert, const ComplexPtr& Xp) {
    const auto& X = *Xp;
    Grid g = grid_of(X);
    if (g.n != cert.n) throw Error("audit_certificate: dimension mismatch");
    auto fd = frontier_distances(X);
    IdentityAudit a;
    int worst_skipped = -1;
    auto clean = [&](const std::vector<std::optional<Chain>>& cs) {
        for (const auto& c : cs) {
            if (!c) return false;
            for (Vertex v : support_vertices(X, *c)) if (fd[v] < 1) return false;
        }
        return true;
    };
    auto same = [](const Chain& a, const Chain& b) { return (a - b).zero(); };
    for (int d = 0; d <= cert.n; ++d) {
        for (std::size_t i = 0; i < X.count(d); ++i) {
            auto s = static_cast<SimplexIndex>(i);
            Chain u{d, {{s, 1}}};
            int m = kInfinity;
            for (Vertex v : X.vertices_of(d, s)) m = std::min(m, fd[v]);
            Chain du = detail::bnd(X, u), cu = detail::cobnd(X, u);
            auto Pu = cert.P.apply(X, g, u), Pdu = cert.P.apply(X, g, du);
            auto Bu = cert.Pbar.apply(X, g, u), Bcu = cert.Pbar.apply(X, g, cu);
            auto Fu = cert.Phi.apply(X, g, u), Fdu = cert.Phi.apply(X, g, du);
            auto Gu = cert.Phibar.apply(X, g, u), Gcu = cert.Phibar.apply(X, g, cu);
            std::optional<Chain> BPu, PBu;
            if (Pu) BPu = cert.Pbar.apply(X, g, *Pu);
            if (Bu) PBu = cert.P.apply(X, g, *Bu);
            if (!clean({Pu, Pdu, Bu, Bcu, Fu, Fdu, Gu, Gcu, BPu, PBu})) {
                ++a.skipped;
                worst_skipped = std::max(worst_skipped, m);
                continue;
            }
            bool ok[4] = {
                same(detail::cobnd(X, *Pu), *Pdu),
                same(detail::bnd(X, *Bu), *Bcu),
                same(*BPu - u, detail::bnd(X, *Fu) + *Fdu),
                same(*PBu - u, detail::cobnd(X, *Gu) + *Gcu),
            };
            for (int k = 0; k < 4; ++k) {
                ++a.checked[k];
                if (!ok[k]) ++a.failed[k];
            }
        }
    }
    a.interior_margin = worst_skipped + 1;
    return a;
}

struct CertificateMeasure {
    int P = 0, Pbar = 0, Phi = 0, Phibar = 0;
    int D0() const { return std::max({P, Pbar, Phi, Phibar}); }
};

// Displacement of P, Pbar and Lipschitz constants of Phi, Phibar, measured on one simplex of
// each type (the maps are translation invariant).
inline CertificateMeasure measure_certificate(const PoincareCertificate& cert, const ComplexPtr& X) {
    Grid g = grid_of(*X);
    std::vector<std::pair<int, SimplexIndex>> sample;
    for (int d = 0; d <= cert.n; ++d) {
        for (std::size_t i = 0; i < X->count(d); ++i) {
            auto s = static_cast<SimplexIndex>(i);
            auto x = X->coordinates(X->vertices_of(d, s)[0]);
            if (std::all_of(x.begin(), x.end(), [](int c) { return c == 0; })) sample.push_back({d, s});
        }
    }
    CertificateMeasure m;
    auto P = measure_map(cert.P.record(X), sample, true, 16);
    auto B = measure_map(cert.Pbar.record(X), sample, true, 16);
    auto F = measure_map(cert.Phi.record(X), sample, true, 16);
    auto G = measure_map(cert.Phibar.record(X), sample, true, 16);
    m.P = P.displacement;
    m.Pbar = B.displacement;
    m.Phi = F.lipschitz;
    m.Phibar = G.lipschitz;
    return m;
}

// ---- certificate files -----------------------------------------------------------

inline json invariant_map_to_json(const InvariantMap& m) {
    json types = json::array();
    for (const auto& [key, t] : m.by_type) {
        json terms = json::array();
        for (const auto& [off, c] : t.terms) terms.push_back({off, c});
        types.push_back({{"source", key}, {"dim", t.dim}, {"terms", terms}});
    }
    return {{"name", m.name}, {"kind", map_kind_name(m.kind)}, {"types", types}};
}

inline InvariantMap invariant_map_from_json(const json& j, MapKind kind, int n) {
    InvariantMap m;
    m.name = j.at("name").get<std::string>();
    m.kind = kind;
    m.n = n;
    for (const auto& t : j.at("types")) {
        Template tp;
        tp.dim = t.at("dim").get<int>();
        for (const auto& term : t.at("terms")) tp.terms.push_back({term.at(0).get<std::vector<int>>(), term.at(1).get<Integer>()});
        m.by_type[t.at("source").get<std::vector<int>>()] = std::move(tp);
    }
    return m;
}

inline json certificate_to_json(const PoincareCertificate& c) {
    return {{"format", "coarsetop-pd-certificate"},
            {"n", c.n},
            {"reference_window", c.reference_window},
            {"max_fill_radius", c.max_fill_radius},
            {"P", invariant_map_to_json(c.P)},
            {"Pbar", invariant_map_to_json(c.Pbar)},
            {"Phi", invariant_map_to_json(c.Phi)},
            {"Phibar", invariant_map_to_json(c.Phibar)}};
}

inline PoincareCertificate certificate_from_json(const json& j) {
    if (j.value("format", "") != "coarsetop-pd-certificate") throw Error("not a PD certificate file");
    PoincareCertificate c;
    c.n = j.at("n").get<int>();
    c.reference_window = j.at("reference_window").get<int>();
    c.max_fill_radius = j.at("max_fill_radius").get<int>();
    c.P = invariant_map_from_json(j.at("P"), MapKind::chain_to_cochain, c.n);
    c.Pbar = invariant_map_from_json(j.at("Pbar"), MapKind::cochain_to_chain, c.n);
    c.Phi = invariant_map_from_json(j.at("Phi"), MapKind::chain_homotopy, c.n);
    c.Phibar = invariant_map_from_json(j.at("Phibar"), MapKind::cochain_homotopy, c.n);
    return c;
}

inline void save_certificate(const PoincareCertificate& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << certificate_to_json(c).dump(1) << '\n';
}

inline PoincareCertificate load_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    return certificate_from_json(json::parse(in));
}

} // namespace coarsetop
