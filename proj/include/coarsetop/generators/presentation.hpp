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
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "../core/complex.hpp"

namespace coarsetop {

// Generators are lowercase letters; the uppercase letter is the inverse.
struct Presentation {
    std::string generators;
    std::vector<std::string> relators;
};

inline char inverse_letter(char c) {
    return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                       : static_cast<char>(std::tolower(c));
}

inline std::string inverse_word(const std::string& w) {
    std::string r(w.rbegin(), w.rend());
    for (auto& c : r) c = inverse_letter(c);
    return r;
}

inline std::string free_reduce(const std::string& w) {
    std::string out;
    for (char c : w) {
        if (!out.empty() && out.back() == inverse_letter(c)) out.pop_back();
        else out.push_back(c);
    }
    return out;
}

// "a,b | abAB" or "a,b|" ; whitespace ignored.
inline Presentation parse_presentation(const std::string& text) {
    Presentation P;
    std::string s;
    for (char c : text) if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    auto bar = s.find('|');
    std::string gens = s.substr(0, bar);
    std::string rels = bar == std::string::npos ? "" : s.substr(bar + 1);
    for (char c : gens) {
        if (c == ',') continue;
        if (!std::islower(static_cast<unsigned char>(c))) throw Error("presentation: generators must be lowercase letters");
        if (P.generators.find(c) != std::string::npos) throw Error("presentation: repeated generator");
        P.generators.push_back(c);
    }
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        for (char c : cur)
            if (P.generators.find(static_cast<char>(std::tolower(c))) == std::string::npos)
                throw Error(std::string("presentation: unknown letter ") + c);
        auto r = free_reduce(cur);
        if (!r.empty()) P.relators.push_back(r);
        cur.clear();
    };
    for (char c : rels) {
        if (c == ',') flush();
        else cur.push_back(c);
    }
    flush();
    return P;
}

// Baumslag-Solitar presentation <a, b | b a^p B = a^q>.
inline Presentation bs_presentation(int p, int q) {
    auto power = [](int k) { return std::string(static_cast<std::size_t>(std::abs(k)), k >= 0 ? 'a' : 'A'); };
    return {"ab", {free_reduce("b" + power(p) + "B" + power(-q))}};
}

// Bounded Knuth-Bendix completion for the shortlex order with a < A < b < B < ...
class Rewriter {
public:
    Rewriter(const Presentation& P, std::size_t max_rules = 256, std::size_t max_passes = 32) : P_(P) {
        for (char g : P.generators) {
            char G = inverse_letter(g);
            add(std::string{g, G}, "");
            add(std::string{G, g}, "");
        }
        for (const auto& r : P.relators) add(r, "");
        complete_ = complete(max_rules, max_passes);
    }

    bool complete() const { return complete_; }
    std::size_t rule_count() const { return rules_.size(); }

    std::string reduce(std::string w) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [l, r] : rules_) {
                auto pos = w.find(l);
                if (pos != std::string::npos) {
                    w.replace(pos, l.size(), r);
                    changed = true;
                    break;
                }
            }
        }
        return w;
    }

    bool less(const std::string& a, const std::string& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return rank(a[i]) < rank(b[i]);
        return false;
    }

private:
    int rank(char c) const {
        auto i = P_.generators.find(static_cast<char>(std::tolower(c)));
        return static_cast<int>(2 * i + (std::isupper(static_cast<unsigned char>(c)) ? 1 : 0));
    }

    bool add(std::string a, std::string b) {
        a = reduce(a);
        b = reduce(b);
        if (a == b) return false;
        if (less(a, b)) std::swap(a, b);
        rules_.emplace_back(a, b);
        return true;
    }

    void interreduce() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < rules_.size(); ++i) {
                auto rule = rules_[i];
                rules_.erase(rules_.begin() + static_cast<std::ptrdiff_t>(i));
                auto l = reduce(rule.first), r = reduce(rule.second);
                if (l == r) {
                    changed = true;
                    break;
                }
                if (less(l, r)) std::swap(l, r);
                rules_.insert(rules_.begin() + static_cast<std::ptrdiff_t>(i), {l, r});
                if (l != rule.first || r != rule.second) {
                    changed = true;
                    break;
                }
            }
        }
    }

    bool complete(std::size_t max_rules, std::size_t max_passes) {
        for (std::size_t pass = 0; pass < max_passes; ++pass) {
            interreduce();
            std::vector<std::pair<std::string, std::string>> pending;
            for (const auto& [l1, r1] : rules_) {
                for (const auto& [l2, r2] : rules_) {
                    // suffix of l1 = prefix of l2
                    for (std::size_t k = 1; k < std::min(l1.size(), l2.size()); ++k) {
                        if (l1.compare(l1.size() - k, k, l2, 0, k) != 0) continue;
                        std::string w1 = r1 + l2.substr(k);
                        std::string w2 = l1.substr(0, l1.size() - k) + r2;
                        auto a = reduce(w1), b = reduce(w2);
                        if (a != b) pending.emplace_back(a, b);
                    }
                    // l2 inside l1
                    if (l2.size() < l1.size()) {
                        auto pos = l1.find(l2);
                        if (pos != std::string::npos) {
                            auto a = reduce(r1);
                            auto b = reduce(l1.substr(0, pos) + r2 + l1.substr(pos + l2.size()));
                            if (a != b) pending.emplace_back(a, b);
                        }
                    }
                }
            }
            if (pending.empty()) return true;
            for (auto& [a, b] : pending) {
                add(a, b);
                if (rules_.size() > max_rules) return false;
            }
        }
        return false;
    }

    Presentation P_;
    std::vector<std::pair<std::string, std::string>> rules_;
    bool complete_ = false;
};

struct CayleyWindow {
    ComplexPtr X;
    std::vector<std::string> elements;  // normal forms of group vertices (index = vertex label)
    std::size_t group_vertices = 0;
    std::size_t cells = 0;
    bool exact = true;                  // word problem solved exactly (complete rewriting system)
    std::string warning;
};

// Universal-cover window of the presentation complex: ball of the given word radius,
// relator cells coned off, edges subdivided only where they are loops or multi-edges.
inline CayleyWindow cayley_2complex(const Presentation& P, int radius, std::size_t max_vertices = 200000) {
    Rewriter rw(P);
    CayleyWindow out;
    out.exact = rw.complete();
    if (!out.exact) out.warning = "rewriting system incomplete; identifications may be missing";
    std::string letters;
    for (char g : P.generators) {
        letters.push_back(g);
        letters.push_back(inverse_letter(g));
    }
    std::map<std::string, int> id;
    std::vector<int> length;
    std::vector<std::string> frontier_words{""};
    id[""] = 0;
    out.elements.push_back("");
    length.push_back(0);
    for (int r = 1; r <= radius; ++r) {
        std::vector<std::string> next;
        for (const auto& w : frontier_words) {
            for (char c : letters) {
                auto u = rw.reduce(w + c);
                if (id.count(u)) continue;
                id[u] = static_cast<int>(out.elements.size());
                out.elements.push_back(u);
                length.push_back(r);
                next.push_back(u);
                if (out.elements.size() > max_vertices) {
                    out.warning = "enumeration budget exceeded";
                    radius = r;
                    break;
                }
            }
        }
        frontier_words = std::move(next);
    }
    int nv = static_cast<int>(out.elements.size());
    out.group_vertices = static_cast<std::size_t>(nv);
    auto mult = [&](int g, char c) -> int {
        auto it = id.find(rw.reduce(out.elements[g] + c));
        return it == id.end() ? -1 : it->second;
    };

    // labelled edges (g, generator): count simplicial multiplicity
    std::map<std::pair<int, int>, int> multiplicity;
    for (int g = 0; g < nv; ++g)
        for (char c : P.generators) {
            int h = mult(g, c);
            if (h >= 0) ++multiplicity[{std::min(g, h), std::max(g, h)}];
        }
    int next_label = nv;
    std::map<std::pair<int, char>, int> midpoint;
    std::vector<std::vector<VertexLabel>> tops;
    std::set<VertexLabel> frontier;
    std::vector<std::uint8_t> complete(nv, 1);
    for (int g = 0; g < nv; ++g)
        for (char c : letters) if (mult(g, c) < 0) complete[g] = 0;

    // simplicial path of the labelled edge from g along letter c
    auto edge_path = [&](int g, char c) -> std::vector<int> {
        bool inv = std::isupper(static_cast<unsigned char>(c));
        int from = inv ? mult(g, c) : g;
        char gen = inv ? inverse_letter(c) : c;
        if (from < 0) return {};
        int to = mult(from, gen);
        if (to < 0) return {};
        bool subdivide = from == to || multiplicity[{std::min(from, to), std::max(from, to)}] > 1;
        std::vector<int> path{from};
        if (subdivide) {
            auto it = midpoint.find({from, gen});
            if (it == midpoint.end()) it = midpoint.emplace(std::make_pair(from, gen), next_label++).first;
            path.push_back(it->second);
        }
        path.push_back(to);
        if (inv) std::reverse(path.begin(), path.end());
        return path;
    };

    for (int g = 0; g < nv; ++g)
        for (char c : P.generators) {
            auto path = edge_path(g, c);
            if (path.empty()) continue;
            for (std::size_t i = 0; i + 1 < path.size(); ++i)
                tops.push_back({path[i], path[i + 1]});
            if (path.size() == 3 && (!complete[path.front()] || !complete[path.back()])) frontier.insert(path[1]);
        }

    // relator cells: one lift per (g, relator)
    for (int g = 0; g < nv; ++g) {
        for (const auto& word : P.relators) {
            std::vector<int> boundary;
            int cur = g;
            bool inside = true;
            for (char c : word) {
                auto path = edge_path(cur, c);
                if (path.empty()) {
                    inside = false;
                    break;
                }
                boundary.insert(boundary.end(), path.begin(), path.end() - 1);
                cur = path.back();
            }
            if (!inside) {
                // every vertex on the partial boundary misses this cell
                complete[cur] = 0;
                for (int v : boundary) if (v < nv) complete[v] = 0;
                continue;
            }
            if (cur != g) throw Error("cayley_2complex: relator does not close up; word problem failed");
            int centre = next_label++;
            ++out.cells;
            std::set<std::vector<VertexLabel>> tris;
            for (std::size_t i = 0; i < boundary.size(); ++i) {
                int a = boundary[i], b = boundary[(i + 1) % boundary.size()];
                if (a == b) continue;
                std::vector<VertexLabel> t{centre, std::min(a, b), std::max(a, b)};
                if (tris.insert(t).second) tops.push_back(t);
            }
        }
    }
    // cells whose vertices have incomplete stars mark their centres
    for (const auto& t : tops) {
        if (t.size() != 3) continue;
        if ((t[1] < nv && !complete[t[1]]) || (t[2] < nv && !complete[t[2]])) frontier.insert(t[0]);
    }
    for (int g = 0; g < nv; ++g) if (!complete[g] || length[g] == radius) frontier.insert(g);
    if (tops.empty()) tops.push_back({0});
    // drop edges that are faces of triangles (keep maximal simplices only)
    std::set<std::pair<VertexLabel, VertexLabel>> tri_edges;
    for (const auto& t : tops)
        if (t.size() == 3) {
            tri_edges.insert({t[0], t[1]});
            tri_edges.insert({t[0], t[2]});
            tri_edges.insert({t[1], t[2]});
        }
    std::vector<std::vector<VertexLabel>> maximal;
    std::set<std::vector<VertexLabel>> dedupe;
    for (auto t : tops) {
        std::sort(t.begin(), t.end());
        if (t.size() == 2 && tri_edges.count({t[0], t[1]})) continue;
        if (dedupe.insert(t).second) maximal.push_back(t);
    }
    out.X = make_complex(maximal, std::vector<VertexLabel>(frontier.begin(), frontier.end()));
    return out;
}

} // namespace coarsetop
