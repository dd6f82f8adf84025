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
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace coarsetop {

inline constexpr const char* kVersion = "0.1.0";

// Malformed configuration or arguments (exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string id;          // output stem
    std::string name;        // registry name
    nlohmann::json generator;  // {kind, params} or {kind: "file", paths: [a, b]}
    std::array<int, 2> windows{};
    nlohmann::json K;        // subcomplex spec
    nlohmann::json Y;        // source complex spec for embeddings
    std::vector<int> R;
    std::vector<int> degrees;
    nlohmann::json options = nlohmann::json::object();
    nlohmann::json raw;
};

struct RunConfig {
    std::vector<ExperimentConfig> experiments;
    std::string out_dir = ".";
    bool svg = false;
    nlohmann::json raw;
};

namespace detail {

template <class T>
T field(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw UsageError(where + ": missing \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw UsageError(where + ": bad value for \"" + key + "\"");
    }
}

} // namespace detail

inline ExperimentConfig parse_experiment(const nlohmann::json& j, std::size_t index) {
    std::string where = "experiments[" + std::to_string(index) + "]";
    if (!j.is_object()) throw UsageError(where + ": expected an object");
    ExperimentConfig c;
    c.raw = j;
    c.name = detail::field<std::string>(j, "name", where);
    c.id = j.value("id", c.name + "-" + std::to_string(index));
    c.generator = j.value("generator", nlohmann::json::object());
    if (!c.generator.is_object() || !c.generator.contains("kind")) throw UsageError(where + ": generator needs a kind");
    std::vector<int> w;
    if (c.generator.value("kind", "") == "file") {
        auto paths = detail::field<std::vector<std::string>>(c.generator, "paths", where + ".generator");
        if (paths.size() != 2) throw UsageError(where + ": file generator needs two paths (two window sizes)");
        w = {0, 1};
    } else {
        w = detail::field<std::vector<int>>(c.generator, "window", where + ".generator");
        if (w.size() != 2 || w[0] >= w[1] || w[0] < 0)
            throw UsageError(where + ": generator.window must be two strictly increasing sizes");
    }
    c.windows = {w[0], w[1]};
    c.K = j.value("K", nlohmann::json());
    c.Y = j.value("Y", nlohmann::json());
    if (j.contains("R")) {
        c.R = detail::field<std::vector<int>>(j, "R", where);
        if (c.R.empty()) throw UsageError(where + ": empty R list");
        for (std::size_t i = 0; i < c.R.size(); ++i) {
            if (c.R[i] < 0) throw UsageError(where + ": negative radius");
            if (i > 0 && c.R[i] <= c.R[i - 1]) throw UsageError(where + ": R list must be strictly increasing");
        }
    }
    if (j.contains("degrees")) c.degrees = detail::field<std::vector<int>>(j, "degrees", where);
    if (j.contains("options")) c.options = j["options"];
    return c;
}

inline RunConfig parse_run_config(const nlohmann::json& j) {
    if (!j.is_object()) throw UsageError("config: expected a JSON object");
    RunConfig rc;
    rc.raw = j;
    if (j.contains("output")) {
        const auto& o = j["output"];
        rc.out_dir = o.value("dir", rc.out_dir);
        rc.svg = o.value("svg", false);
    }
    if (!j.contains("experiments") || !j["experiments"].is_array() || j["experiments"].empty())
        throw UsageError("config: \"experiments\" must be a non-empty array");
    for (std::size_t i = 0; i < j["experiments"].size(); ++i) rc.experiments.push_back(parse_experiment(j["experiments"][i], i));
    for (std::size_t i = 0; i < rc.experiments.size(); ++i)
        for (std::size_t k = i + 1; k < rc.experiments.size(); ++k)
            if (rc.experiments[i].id == rc.experiments[k].id) throw UsageError("config: duplicate id " + rc.experiments[i].id);
    return rc;
}

inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
    return parse_run_config(j);
}

} // namespace coarsetop
