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

#include <catch2/catch_amalgamated.hpp>

#include <coarsetop/cli/experiments.hpp>
#include <coarsetop/core/complex_io.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace coarsetop;
namespace fs = std::filesystem;

namespace {

struct Output {
    int code = -1;
    std::string text;
};

// Runs the CLI with stderr folded into stdout.
Output cli(const std::string& args) {
    std::string cmd = std::string("\"") + COARSETOP_BIN + "\" " + args + " 2>&1";
    Output out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.text.append(buf.data(), n);
    int status = pclose(p);
    out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("coarsetop_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path write(const std::string& name, const std::string& text) const {
        auto p = path / name;
        std::ofstream(p) << text;
        return p;
    }
};

const char* kSmallJordan = R"({
  "experiments": [
    {"id": "plane", "name": "jordan-separation",
     "generator": {"kind": "grid", "params": {"n": 2}, "window": [10, 14]},
     "K": {"kind": "hyperplane", "axis": 1, "offset": 0},
     "R": [1, 2, 3, 4]}
  ]
})";

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

} // namespace

TEST_CASE("list names every experiment") {
    auto o = cli("list");
    CHECK(o.code == 0);
    CHECK(experiment_registry().size() == 8);
    for (const auto& e : experiment_registry()) CHECK(o.text.find(e.name) != std::string::npos);
    for (const char* name : {"jordan-separation", "deep-count-formula", "pd-certificate", "coarse-ad", "annulus-tower",
                             "vanishing-tower", "cyclic-order", "bs-sigma-audit"})
        CHECK(find_experiment(name) != nullptr);
}

TEST_CASE("usage errors exit with 2") {
    TempDir tmp("usage");
    CHECK(cli("").code == 2);
    CHECK(cli("bogus").code == 2);
    CHECK(cli("run").code == 2);
    CHECK(cli("run " + quoted(tmp.path / "missing.json")).code == 2);

    auto unknown = tmp.write("unknown.json", R"({"experiments": [{"name": "no-such-thing",
        "generator": {"kind": "grid", "params": {"n": 2}, "window": [4, 6]}, "R": [1]}]})");
    auto o = cli("run " + quoted(unknown) + " -o " + quoted(tmp.path / "out"));
    CHECK(o.code == 2);
    CHECK(o.text.find("no-such-thing") != std::string::npos);
    CHECK(o.text.find("jordan-separation") != std::string::npos);

    auto emptyR = tmp.write("empty_r.json", R"({"experiments": [{"name": "jordan-separation",
        "generator": {"kind": "grid", "params": {"n": 2}, "window": [4, 6]}, "K": {"kind": "hyperplane"}, "R": []}]})");
    o = cli("run " + quoted(emptyR));
    CHECK(o.code == 2);
    CHECK(o.text.find("empty R") != std::string::npos);

    auto bad_json = tmp.write("bad.json", "{ not json");
    CHECK(cli("run " + quoted(bad_json)).code == 2);
}

TEST_CASE("config validation") {
    using nlohmann::json;
    auto base = json::parse(kSmallJordan);
    CHECK_NOTHROW(parse_run_config(base));

    auto j = base;
    j["experiments"][0]["generator"]["window"] = {14, 10};
    CHECK_THROWS_AS(parse_run_config(j), UsageError);
    j = base;
    j["experiments"][0]["R"] = {3, 2};
    CHECK_THROWS_AS(parse_run_config(j), UsageError);
    j = base;
    j["experiments"][0]["R"] = {-1, 2};
    CHECK_THROWS_AS(parse_run_config(j), UsageError);
    j = base;
    j["experiments"][0]["generator"].erase("kind");
    CHECK_THROWS_AS(parse_run_config(j), UsageError);
    j = base;
    j["experiments"].push_back(j["experiments"][0]);
    CHECK_THROWS_AS(parse_run_config(j), UsageError);
    j = base;
    j["experiments"] = json::array();
    CHECK_THROWS_AS(parse_run_config(j), UsageError);
    j = base;
    j["experiments"][0]["generator"] = {{"kind", "file"}, {"paths", {"a.json"}}};
    CHECK_THROWS_AS(parse_run_config(j), UsageError);
}

TEST_CASE("radii beyond the valid range are usage errors") {
    TempDir tmp("radii");
    auto cfg = tmp.write("far.json", R"({"experiments": [{"name": "jordan-separation",
        "generator": {"kind": "grid", "params": {"n": 2}, "window": [6, 8]},
        "K": {"kind": "hyperplane", "axis": 1, "offset": 0}, "R": [1, 2, 40]}]})");
    auto o = cli("run " + quoted(cfg) + " -o " + quoted(tmp.path / "out"));
    CHECK(o.code == 2);
}

TEST_CASE("stability compares rows across windows") {
    ExperimentReport rep;
    rep.runs[0].status = rep.runs[1].status = Status::verified;
    rep.runs[0].rows.push_back(count_row(1, 0, "deep_components", 2));
    rep.runs[1].rows.push_back(count_row(1, 0, "deep_components", 2));
    finish_report(rep);
    CHECK(rep.stable);
    CHECK(rep.status == Status::verified);

    rep.runs[1].rows[0].free_rank = 3;
    rep.stability.clear();
    finish_report(rep);
    CHECK_FALSE(rep.stable);
    CHECK(rep.status == Status::refuted);

    std::vector<ExperimentReport> reps(1);
    reps[0].status = Status::verified;
    CHECK(exit_code(reps) == 0);
    reps[0].status = Status::inconclusive;
    CHECK(exit_code(reps) == 3);
    reps[0].status = Status::refuted;
    CHECK(exit_code(reps) == 1);
}

TEST_CASE("run writes deterministic reports") {
    TempDir tmp("run");
    auto cfg = tmp.write("jordan.json", kSmallJordan);
    auto a = cli("run " + quoted(cfg) + " -q -o " + quoted(tmp.path / "a"));
    auto b = cli("run " + quoted(cfg) + " -q --svg -o " + quoted(tmp.path / "b"));
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.text.empty());

    auto csv = slurp(tmp.path / "a" / "plane.csv");
    CHECK(csv == slurp(tmp.path / "b" / "plane.csv"));
    CHECK(slurp(tmp.path / "a" / "plane.json") == slurp(tmp.path / "b" / "plane.json"));
    CHECK(fs::exists(tmp.path / "b" / "plane.svg"));
    CHECK_FALSE(fs::exists(tmp.path / "a" / "plane.svg"));

    std::istringstream lines(csv);
    std::string header, line;
    std::getline(lines, header);
    CHECK(header == "window,R,degree,quantity,free_rank,torsion,map_rank,verdict,stable");
    std::size_t deep_rows = 0;
    while (std::getline(lines, line)) {
        if (line.find(",deep_components,") == std::string::npos) continue;
        ++deep_rows;
        CHECK(line.find(",deep_components,2,") != std::string::npos);
    }
    CHECK(deep_rows == 8);

    auto j = nlohmann::json::parse(slurp(tmp.path / "a" / "plane.json"));
    CHECK(j["status"] == "verified");
    CHECK(j["version"] == kVersion);
    CHECK(j["runs"].size() == 2);
}

TEST_CASE("shipped configs parse and name known experiments") {
    fs::path dir = fs::path(COARSETOP_SOURCE_DIR) / "configs";
    std::size_t n = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        INFO(entry.path().string());
        auto rc = load_run_config(entry.path().string());
        CHECK_NOTHROW(validate_names(rc));
        ++n;
    }
    CHECK(n >= 8);
}

TEST_CASE("validate reports homology and validity") {
    TempDir tmp("validate");
    auto path = tmp.path / "torus.json";
    std::vector<std::vector<VertexLabel>> t;
    for (int i = 0; i < 7; ++i) {
        t.push_back({i, (i + 1) % 7, (i + 3) % 7});
        t.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    save_complex(*make_complex(t, {}), path.string());
    auto o = cli("validate " + quoted(path));
    CHECK(o.code == 0);
    CHECK(o.text.find("H~1 Z^2") != std::string::npos);
    CHECK(o.text.find("H~2 Z") != std::string::npos);
    CHECK(o.text.find("valid") != std::string::npos);

    auto bad = tmp.write("bad.json", R"({"maximal_simplices": [[0, 1]], "dim": 3})");
    o = cli("validate " + quoted(bad));
    CHECK(o.code == 1);
    CHECK(o.text.find("declared dim") != std::string::npos);
}
