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

// One PASS/FAIL line per acceptance criterion. Exit status 1 if any criterion fails.

#include <coarsetop/duality/annulus.hpp>
#include <coarsetop/duality/coarse_ad.hpp>
#include <coarsetop/duality/cyclic_order.hpp>
#include <coarsetop/duality/pd_maps.hpp>
#include <coarsetop/generators/baumslag_solitar.hpp>
#include <coarsetop/generators/corpus.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace coarsetop;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void need(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::vector<int> range(int lo, int hi) {
    std::vector<int> r;
    for (int i = lo; i <= hi; ++i) r.push_back(i);
    return r;
}

std::shared_ptr<const PoincareCertificate> certificate(int n) {
    static std::map<int, std::shared_ptr<const PoincareCertificate>> cache;
    auto& c = cache[n];
    if (!c) c = std::make_shared<const PoincareCertificate>(build_poincare_certificate(n));
    return c;
}

bool verified(const Verdict& v) { return v.status == Status::verified; }

// 1: boundary squared and Mayer-Vietoris on the corpus, under a minute
void criterion1(Outcome& o) {
    auto t0 = Clock::now();
    auto entries = corpus();
    std::size_t ok = 0;
    for (const auto& e : entries) {
        auto c = check_corpus_entry(e);
        o.need(c.dd_defects == 0, e.name + " dd");
        o.need(c.mv_exact, e.name + " Mayer-Vietoris");
        if (c.dd_defects == 0 && c.mv_exact) ++ok;
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    o.need(entries.size() >= 20, "fewer than 20 complexes");
    o.need(s < 60.0, "took over a minute");
    o.detail << ok << "/" << entries.size() << " complexes, both windows, " << s << " s";
}

// 2: a hyperplane has two stable deep components
void criterion2(Outcome& o) {
    struct Case { int n, W; std::vector<int> R; };
    for (const auto& c : {Case{2, 30, {1, 2, 3, 4, 5, 6, 8, 10}}, Case{3, 12, {1, 2, 3, 4}}}) {
        auto X = grid_window(c.n, c.W);
        auto st = component_stability(hyperplane(X, c.n - 1, 0), c.R);
        bool ok = true;
        for (std::size_t i = 0; i < st.R.size(); ++i) ok = ok && st.deep_counts[i] == 2 && st.stable[i];
        o.need(ok, "n=" + std::to_string(c.n));
        o.detail << "n=" << c.n << " W=" << c.W << ": 2 stable deep components for R=" << c.R.front() << ".." << c.R.back()
                 << "; ";
    }
}

// 3: deep counts 1, 2, 3
void criterion3(Outcome& o) {
    struct Case { const char* name; std::function<Embedding()> make; std::size_t expect; std::vector<int> R; };
    std::vector<Case> cases{
        {"point", [] { return grid_embedding(0, 2, 16, 16); }, 1, range(1, 4)},
        {"line", [] { return grid_embedding(1, 2, 16, 16); }, 2, range(1, 4)},
        {"3-sheet book", [] { return extract_subcomplex(halfplane_book(grid_window(3, 8), 3)); }, 3, range(1, 3)},
    };
    for (const auto& c : cases) {
        auto dc = deep_count_vs_cohomology(c.make(), c.R);
        o.need(dc.agrees() && dc.predicted == c.expect, c.name);
        o.detail << c.name << " " << dc.components.deep_counts.front() << " (1+rank Hc = " << dc.predicted << "); ";
    }
}

// 4: certificate identities exact and D0 window-independent
void criterion4(Outcome& o) {
    for (auto [n, w0, w1] : {std::tuple{2, 10, 14}, std::tuple{3, 6, 8}}) {
        auto cert = certificate(n);
        int D[2];
        int i = 0;
        for (int W : {w0, w1}) {
            auto X = grid_window(n, W);
            auto a = audit_certificate(*cert, X);
            o.need(a.exact(), "n=" + std::to_string(n) + " W=" + std::to_string(W) + " identities");
            for (int k = 0; k < 4; ++k) o.need(a.checked[k] > 0, "identity checked nowhere");
            D[i++] = measure_certificate(*cert, X).D0();
        }
        o.need(D[0] == D[1], "D0 differs across windows in n=" + std::to_string(n));
        o.detail << "n=" << n << " D0=" << D[0] << " at W=" << w0 << "," << w1 << "; ";
    }
}

// 5: (e1)-(e4) approximately mono and epi with omega - R <= 2 D0
void criterion5(Outcome& o) {
    auto X = grid_window(2, 20);
    Window W(X);
    auto s = make_duality_setup(W, certificate(2));
    std::vector<std::pair<std::string, Subcomplex>> Ks{
        {"vertex", grid_point(X)}, {"ring", grid_ring(X, 2)}, {"line", hyperplane(X, 0, 0)}};
    int worst = 0;
    std::size_t checks = 0;
    for (const auto& [name, K] : Ks)
        for (int k = 0; k <= 2; ++k)
            for (auto v : {PdVariant::e1, PdVariant::e2, PdVariant::e3, PdVariant::e4})
                for (bool fw : {true, false}) {
                    auto c = check_pd_variant(s, K, k, v, fw, range(1, 8));
                    ++checks;
                    worst = std::max(worst, c.max_gap());
                    o.need(c.verified() && c.compatible, name + " " + c.label + " k=" + std::to_string(k));
                    o.need(c.max_gap() <= 2 * s.D0, name + " " + c.label + " gap");
                }
    o.detail << checks << " variant checks, max omega-R " << worst << " <= 2*D0 = " << 2 * s.D0;
}

// 6: pushforward, g o f ~ id and coarse Alexander duality
void criterion6(Outcome& o) {
    struct Case { const char* name; int m, n, W; std::vector<int> degrees; std::vector<int> R; };
    for (const auto& c : {Case{"line->plane", 1, 2, 16, {0, 1}, range(1, 6)}, Case{"plane->space", 2, 3, 12, {0, 2}, range(1, 4)}}) {
        auto e = grid_embedding(c.m, c.n, c.W, c.W);
        Window W(e.X);
        auto s = make_duality_setup(W, certificate(c.n));
        auto p = pushforward_g(e);
        auto h = gf_homotopy(e, p);
        o.need(p.undefined == 0, std::string(c.name) + " g undefined");
        o.need(h.exact(), std::string(c.name) + " homotopy");
        o.need(compare_projection(e, p).ok(), std::string(c.name) + " projection");
        int gap = 0;
        for (int k : c.degrees) {
            auto a = verify_coarse_ad(s, e, k, c.R);
            o.need(verified(a.part1) && verified(a.part2), std::string(c.name) + " k=" + std::to_string(k));
            o.need(a.max_gap() <= 2 * s.D0, std::string(c.name) + " R'-R");
            gap = std::max(gap, a.max_gap());
        }
        o.detail << c.name << ": homotopy on " << h.checked << " simplices, max R'-R " << gap << "; ";
    }
}

// 7: bilateral proximity constant
void criterion7(Outcome& o) {
    auto X = grid_window(2, 16);
    for (auto [name, K] : std::vector<std::pair<std::string, Subcomplex>>{{"point", grid_point(X)}, {"line", hyperplane(X, 1, 0)}}) {
        o.detail << name << " D";
        for (int R : {2, 3, 4}) {
            auto r = bilateral_proximity(K, R, 3);
            o.need(r.constant, name + " R=" + std::to_string(R));
            o.detail << " " << r.D;
        }
        o.detail << "; ";
    }
}

// 8: cyclic order of three sheets, in a book and in BS(2,3)
void criterion8(Outcome& o) {
    {
        auto X = grid_window(3, 8);
        Window W(X);
        std::vector<Subcomplex> sheets;
        for (int i = 0; i < 3; ++i) sheets.push_back(book_sheet(X, 3, i));
        for (int R : {1, 2}) {
            auto c = cyclic_order_experiment(W, sheets, R, 1);
            o.need(c.consistent() && c.deep == 3, "book R=" + std::to_string(R) + " " + c.problem);
        }
        o.detail << "book: single 3-cycle at R=1,2; ";
    }
    auto bs = bs_ray_window(2, 3, 3, 1, 3, 3, 3);
    Window W(bs.B.X);
    std::vector<Subcomplex> sheets;
    for (const auto& s : bs.Y.sheets) sheets.push_back(bs.B.image(s));
    auto c = cyclic_order_experiment(W, sheets, 1, 0);
    o.need(c.consistent() && c.deep == 3 && c.single_cycle, "BS(2,3) " + c.problem);
    bool acyclic = std::all_of(c.pair_acyclic.begin(), c.pair_acyclic.end(), [](bool b) { return b; });
    o.need(acyclic, "BS(2,3) sheet pairs acyclic");
    o.detail << "BS(2,3) rays at depth 3: " << c.deep << " deep components, order";
    for (int i : c.order) o.detail << " " << i;
}

// 9: annulus around a vertex and vanishing towers of a net
void criterion9(Outcome& o) {
    auto X = grid_window(2, 16);
    Window W(X);
    auto P = grid_point(X);
    NeighborhoodFiltration filt(P);
    for (int R : {3, 4, 5, 6}) {
        auto a = annulus_homology(W, filt, 2, R, 1);
        o.need(a.group.group == AbelianGroup{1, {}} && a.widening_iso, "annulus R=" + std::to_string(R));
    }
    auto na = nested_annuli(W, P, 3, 3, 6);
    o.need(na.ok(), "nested annuli");
    auto v = vanishing_tower_test(W, grid_net(X, 3, 6), 2, range(0, 6));
    o.need(verified(v[0]) && verified(v[1]), "net vanishing");
    o.detail << "H~1 A(2,R) = Z with iso widening for R=3..6; net pro-zero in degrees 0,1 (omega-R " << v[0].max_gap()
             << ", " << v[1].max_gap() << ")";
}

// 10: windowed ranks agree across window sizes
void criterion10(Outcome& o) {
    auto ranks = [](int W) {
        auto X = grid_window(2, W);
        Window win(X);
        std::vector<std::size_t> out;
        auto add = [&](const Tower& T) {
            for (const auto& g : T.groups) out.push_back(g.group.free_rank);
        };
        add(complement_tower(win, hyperplane(X, 1, 0), 0, Kind::Hred, range(1, 4)));
        add(complement_tower(win, grid_point(X), 1, Kind::Hred, range(1, 4)));
        add(neighborhood_tower(win, hyperplane(X, 1, 0), 1, Kind::Hc, range(1, 4)));
        out.push_back(cohomology_c(win, Subcomplex::whole(X), 2).group.free_rank);
        return out;
    };
    auto a = ranks(16), b = ranks(24);
    o.need(a == b, "grid tower ranks");
    std::size_t stable = 0;
    auto entries = corpus();
    for (const auto& e : entries) {
        bool s = check_corpus_entry(e).stable();
        o.need(s, e.name);
        stable += s;
    }
    o.detail << a.size() << " tower ranks equal at W=16,24; " << stable << "/" << entries.size() << " corpus entries stable";
}

} // namespace

int main() {
    std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"boundary squared and Mayer-Vietoris on the corpus", criterion1},
        {"hyperplane separates into two stable deep components", criterion2},
        {"deep component counts 1, 2, 3", criterion3},
        {"Poincare certificate identities and D0", criterion4},
        {"(e1)-(e4) approximately mono and epi", criterion5},
        {"pushforward, g o f ~ id, coarse Alexander duality", criterion6},
        {"bilateral proximity constant", criterion7},
        {"cyclic order for the book and BS(2,3)", criterion8},
        {"annulus tower and vanishing towers", criterion9},
        {"windowed ranks agree across window sizes", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        double s = std::chrono::duration<double>(Clock::now() - t0).count();
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -- "
                  << o.detail.str() << " (" << s << " s)" << std::endl;
    }
    return failed ? 1 : 0;
}
