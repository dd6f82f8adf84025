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
#include <string>
#include <vector>

#include "../towers/systems.hpp"

namespace coarsetop {

struct SheetAdjacency {
    std::size_t component = 0;
    std::vector<int> hausdorff;          // per sheet: max over its interior vertices of the distance to the frontier
    std::vector<std::size_t> nearest;    // per sheet: frontier vertices whose unique nearest sheet it is
    std::vector<int> sheets;             // sheets with nearest > 0
    int cover = 0;                       // max distance from the frontier to the two sheets
};

struct CyclicOrder {
    int R = 0;
    int threshold = 0;  // bound on the cover distance
    std::size_t sheets = 0;
    std::size_t deep = 0;
    std::vector<SheetAdjacency> adjacency;
    std::vector<bool> pair_acyclic;  // audit of W_i u W_j, lexicographic pairs
    std::vector<int> order;          // cyclic order starting at sheet 0
    std::string problem;
    bool single_cycle = false;
    bool consistent() const { return problem.empty() && single_cycle; }
};

inline Subcomplex vertex_frontier_in(const Subcomplex& C, const Subcomplex& N) {
    // vertices of C that are also in N (C = component of closure(X - N))
    auto m = C.vertex_mask();
    auto n = N.vertex_mask();
    for (std::size_t v = 0; v < m.size(); ++v) m[v] = m[v] && n[v];
    return Subcomplex::induced(C.parent(), m);
}

// Cyclic order of the sheets of a book W = u W_i from the deep components of X - N_R(W).
// A component is adjacent to the sheets that are the unique nearest sheet of some interior
// vertex of its frontier; its frontier must lie within the threshold of those two sheets.
inline CyclicOrder cyclic_order_experiment(const Window& Win, const std::vector<Subcomplex>& sheets, int R, int margin,
                                           std::optional<int> threshold = std::nullopt, bool audit = true) {
    const auto& X = *Win.complex();
    CyclicOrder out;
    out.R = R;
    out.sheets = sheets.size();
    out.threshold = threshold ? *threshold : 2 * R + 2;
    if (sheets.size() < 2) throw Error("cyclic_order_experiment: need at least two sheets");
    auto W = sheets[0];
    for (std::size_t i = 1; i < sheets.size(); ++i) W = W.unite(sheets[i]);
    if (audit) {
        for (std::size_t i = 0; i < sheets.size(); ++i)
            for (std::size_t j = i + 1; j < sheets.size(); ++j) {
                auto U = sheets[i].unite(sheets[j]);
                PairComplex P(U, Subcomplex::empty(U.parent()), Theory::homology, true);
                bool ok = true;
                for (int k = 0; k <= U.dim(); ++k) ok = ok && P.group(k).trivial();
                out.pair_acyclic.push_back(ok);
                if (!ok && out.problem.empty())
                    out.problem = "sheets " + std::to_string(i) + "," + std::to_string(j) + " not acyclic";
            }
    }
    NeighborhoodFiltration filt(W);
    auto dc = deep_components(filt, R);
    out.deep = dc.deep.size();
    auto N = filt.neighborhood(R);
    const auto& fd = Win.frontier_distance();
    std::vector<std::vector<int>> dsheet;
    for (const auto& s : sheets) dsheet.push_back(distances_from(s));

    std::vector<std::vector<int>> graph(sheets.size());
    for (std::size_t c = 0; c < dc.deep.size(); ++c) {
        SheetAdjacency a;
        a.component = c;
        auto F = vertex_frontier_in(dc.deep[c], N);
        auto dF = distances_from(F);
        a.nearest.assign(sheets.size(), 0);
        for (Vertex v : F.vertices()) {
            if (fd[v] < margin) continue;
            int best = kInfinity, who = -1;
            for (std::size_t i = 0; i < sheets.size(); ++i) {
                if (dsheet[i][v] < best) {
                    best = dsheet[i][v];
                    who = static_cast<int>(i);
                } else if (dsheet[i][v] == best) {
                    who = -1;
                }
            }
            if (who >= 0) ++a.nearest[who];
        }
        for (std::size_t i = 0; i < sheets.size(); ++i) {
            int h = 0;
            for (Vertex v : sheets[i].vertices()) if (fd[v] >= margin) h = std::max(h, dF[v]);
            a.hausdorff.push_back(h);
            if (a.nearest[i] > 0) a.sheets.push_back(static_cast<int>(i));
        }
        if (a.sheets.size() == 2) {
            for (Vertex v : F.vertices()) {
                if (fd[v] < margin) continue;
                a.cover = std::max(a.cover, std::min(dsheet[a.sheets[0]][v], dsheet[a.sheets[1]][v]));
            }
            if (a.cover > out.threshold && out.problem.empty())
                out.problem = "component " + std::to_string(c) + " frontier not covered by its two sheets";
            graph[a.sheets[0]].push_back(a.sheets[1]);
            graph[a.sheets[1]].push_back(a.sheets[0]);
        } else if (out.problem.empty()) {
            out.problem = "component " + std::to_string(c) + " is adjacent to " + std::to_string(a.sheets.size()) + " sheets";
        }
        out.adjacency.push_back(std::move(a));
    }
    if (!out.problem.empty()) return out;

    // single cycle through all sheets, every sheet of degree 2
    for (const auto& nb : graph) {
        if (nb.size() != 2) {
            out.problem = "adjacency graph is not 2-regular";
            return out;
        }
    }
    out.order.push_back(0);
    int prev = -1, cur = 0;
    while (true) {
        auto nb = graph[cur];
        std::sort(nb.begin(), nb.end());
        int next;
        if (prev < 0) next = nb[0];
        else if (nb[0] == prev && nb[1] == prev) next = prev;  // k = 2
        else next = nb[0] == prev ? nb[1] : nb[0];
        if (next == 0) break;
        if (static_cast<int>(out.order.size()) > static_cast<int>(sheets.size())) break;
        out.order.push_back(next);
        prev = cur;
        cur = next;
    }
    out.single_cycle = out.order.size() == sheets.size() && out.deep == sheets.size();
    if (!out.single_cycle) out.problem = "adjacency graph is not a single cycle";
    return out;
}

} // namespace coarsetop
