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

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "complex.hpp"

namespace coarsetop {

using json = nlohmann::json;

inline json complex_to_json(const SimplicialComplex& X) {
    json j;
    j["dim"] = X.dim();
    j["vertices"] = X.labels();
    json maxs = json::array();
    for (const auto& s : X.maximal_simplices()) {
        json t = json::array();
        for (Vertex v : s) t.push_back(X.label(v));
        maxs.push_back(std::move(t));
    }
    j["maximal_simplices"] = std::move(maxs);
    json fr = json::array();
    for (Vertex v : X.frontier()) fr.push_back(X.label(v));
    j["frontier"] = std::move(fr);
    if (X.coordinate_dim() > 0) {
        json c = json::array();
        for (std::size_t v = 0; v < X.vertex_count(); ++v) {
            auto x = X.coordinates(static_cast<Vertex>(v));
            c.push_back(std::vector<int>(x.begin(), x.end()));
        }
        j["coordinates"] = std::move(c);
    }
    return j;
}

inline SimplicialComplex complex_from_json(const json& j) {
    if (!j.contains("maximal_simplices") || !j["maximal_simplices"].is_array()) {
        throw Error("complex file: missing maximal_simplices array");
    }
    std::vector<std::vector<VertexLabel>> maxs;
    for (const auto& t : j["maximal_simplices"]) maxs.push_back(t.get<std::vector<VertexLabel>>());
    std::vector<VertexLabel> fr;
    if (j.contains("frontier")) fr = j["frontier"].get<std::vector<VertexLabel>>();
    BuildOptions opt;
    if (j.contains("coordinates")) {
        auto labels = j.at("vertices").get<std::vector<VertexLabel>>();
        const auto& c = j["coordinates"];
        if (c.size() != labels.size()) throw Error("complex file: coordinates/vertices size mismatch");
        opt.labels = labels;
        opt.coord_dim = c.empty() ? 0 : static_cast<int>(c[0].size());
        for (const auto& x : c) {
            auto v = x.get<std::vector<int>>();
            if (static_cast<int>(v.size()) != opt.coord_dim) throw Error("complex file: ragged coordinates");
            opt.coords.insert(opt.coords.end(), v.begin(), v.end());
        }
    }
    auto X = build_complex(maxs, fr, opt);
    if (j.contains("vertices")) {
        auto labels = j["vertices"].get<std::vector<VertexLabel>>();
        std::sort(labels.begin(), labels.end());
        if (labels != X.labels()) throw Error("complex file: vertex list does not match simplices");
    }
    if (j.contains("dim") && j["dim"].get<int>() != X.dim()) {
        throw Error("complex file: declared dim " + std::to_string(j["dim"].get<int>()) +
                    " but simplices give " + std::to_string(X.dim()));
    }
    return X;
}

inline SimplicialComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error(path + ": " + e.what());
    }
    return complex_from_json(j);
}

inline void save_complex(const SimplicialComplex& X, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << complex_to_json(X).dump() << '\n';
}

} // namespace coarsetop
