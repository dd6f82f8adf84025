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
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "../towers/tower.hpp"
#include "config.hpp"

namespace coarsetop {

// One windowed quantity. R = -1 and degree = -1 mean "not indexed".
struct ReportRow {
    int R = -1;
    int degree = -1;
    std::string quantity;
    std::size_t free_rank = 0;
    std::vector<std::string> torsion;
    std::optional<std::size_t> map_rank;
    std::string verdict;

    auto key() const { return std::make_tuple(quantity, degree, R); }
    bool same_value(const ReportRow& o) const {
        return free_rank == o.free_rank && torsion == o.torsion && map_rank == o.map_rank;
    }
};

inline ReportRow group_row(int R, int degree, std::string quantity, const AbelianGroup& g, std::string verdict = {}) {
    ReportRow r;
    r.R = R;
    r.degree = degree;
    r.quantity = std::move(quantity);
    r.free_rank = g.free_rank;
    for (const auto& t : g.torsion) r.torsion.push_back(t.str());
    r.verdict = std::move(verdict);
    return r;
}

inline ReportRow count_row(int R, int degree, std::string quantity, std::size_t n, std::string verdict = {}) {
    ReportRow r;
    r.R = R;
    r.degree = degree;
    r.quantity = std::move(quantity);
    r.free_rank = n;
    r.verdict = std::move(verdict);
    return r;
}

struct WindowResult {
    int window = 0;
    Status status = Status::inconclusive;
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;
    nlohmann::json details = nlohmann::json::object();

    // Failing conditions move the status towards refuted, never back.
    void require(bool ok, const std::string& what) {
        if (!ok) {
            status = Status::refuted;
            notes.push_back("failed: " + what);
        }
    }
};

struct StabilityEntry {
    std::string quantity;
    int degree = -1, R = -1;
    bool both = false;
    bool agree = false;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::array<WindowResult, 2> runs;
    std::vector<StabilityEntry> stability;
    bool stable = true;
    Status status = Status::inconclusive;
    std::string error;  // set when the experiment raised
};

inline void assess_stability(ExperimentReport& rep) {
    std::map<std::tuple<std::string, int, int>, std::array<const ReportRow*, 2>> m;
    for (int w = 0; w < 2; ++w)
        for (const auto& r : rep.runs[w].rows) m[r.key()][w] = &r;
    rep.stable = true;
    for (const auto& [key, pair] : m) {
        StabilityEntry e;
        std::tie(e.quantity, e.degree, e.R) = key;
        e.both = pair[0] && pair[1];
        e.agree = e.both && pair[0]->same_value(*pair[1]);
        if (e.both && !e.agree) rep.stable = false;
        rep.stability.push_back(e);
    }
}

inline void finish_report(ExperimentReport& rep) {
    assess_stability(rep);
    auto a = rep.runs[0].status, b = rep.runs[1].status;
    if (!rep.error.empty() || a == Status::refuted || b == Status::refuted || !rep.stable) rep.status = Status::refuted;
    else if (a == Status::verified && b == Status::verified) rep.status = Status::verified;
    else rep.status = Status::inconclusive;
}

namespace detail {

inline std::string torsion_text(const std::vector<std::string>& t) {
    if (t.empty()) return "-";
    std::ostringstream os;
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? " " : "") << t[i];
    return os.str();
}

inline std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

inline std::string report_csv(const ExperimentReport& rep) {
    std::map<std::tuple<std::string, int, int>, const StabilityEntry*> st;
    for (const auto& e : rep.stability) st[{e.quantity, e.degree, e.R}] = &e;
    std::ostringstream os;
    os << "window,R,degree,quantity,free_rank,torsion,map_rank,verdict,stable\n";
    for (const auto& run : rep.runs) {
        for (const auto& r : run.rows) {
            const auto* e = st.at(r.key());
            os << run.window << ',' << r.R << ',' << r.degree << ',' << detail::csv_cell(r.quantity) << ',' << r.free_rank << ','
               << detail::torsion_text(r.torsion) << ',' << (r.map_rank ? std::to_string(*r.map_rank) : "") << ','
               << detail::csv_cell(r.verdict) << ',' << (!e->both ? "n/a" : (e->agree ? "yes" : "no")) << '\n';
        }
    }
    return os.str();
}

inline nlohmann::json report_json(const ExperimentReport& rep) {
    nlohmann::json j;
    j["tool"] = "coarsetop";
    j["version"] = kVersion;
    j["config"] = rep.config.raw;
    j["experiment"] = rep.config.name;
    j["status"] = status_name(rep.status);
    j["stable"] = rep.stable;
    if (!rep.error.empty()) j["error"] = rep.error;
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& run : rep.runs) {
        nlohmann::json r;
        r["window"] = run.window;
        r["status"] = status_name(run.status);
        r["notes"] = run.notes;
        r["details"] = run.details;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : run.rows) {
            nlohmann::json x{{"R", row.R}, {"degree", row.degree}, {"quantity", row.quantity},
                             {"free_rank", row.free_rank}, {"torsion", row.torsion}, {"verdict", row.verdict}};
            if (row.map_rank) x["map_rank"] = *row.map_rank;
            rows.push_back(std::move(x));
        }
        r["rows"] = std::move(rows);
        runs.push_back(std::move(r));
    }
    j["runs"] = std::move(runs);
    nlohmann::json st = nlohmann::json::array();
    for (const auto& e : rep.stability) {
        if (!e.both) continue;
        st.push_back({{"quantity", e.quantity}, {"degree", e.degree}, {"R", e.R}, {"agree", e.agree}});
    }
    j["stability"] = std::move(st);
    return j;
}

// Free rank against R, one polyline per (quantity, degree, window).
inline std::string report_svg(const ExperimentReport& rep) {
    struct Series {
        std::string label;
        std::vector<std::pair<int, std::size_t>> pts;
    };
    std::vector<Series> series;
    std::map<std::string, std::size_t> at;
    int r_lo = 0, r_hi = 1;
    std::size_t y_hi = 1;
    bool first = true;
    for (const auto& run : rep.runs) {
        for (const auto& r : run.rows) {
            if (r.R < 0) continue;
            std::string label = r.quantity + " k=" + std::to_string(r.degree) + " W=" + std::to_string(run.window);
            auto it = at.find(label);
            if (it == at.end()) {
                it = at.emplace(label, series.size()).first;
                series.push_back({label, {}});
            }
            series[it->second].pts.push_back({r.R, r.free_rank});
            if (first) r_lo = r_hi = r.R;
            first = false;
            r_lo = std::min(r_lo, r.R);
            r_hi = std::max(r_hi, r.R);
            y_hi = std::max(y_hi, r.free_rank);
        }
    }
    if (r_hi == r_lo) ++r_hi;
    const int w = 640, h = 360, pad = 48;
    static const char* colors[] = {"#1b6ca8", "#d1495b", "#66a182", "#edae49", "#8d6a9f", "#2e4057"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h + 20 * series.size() << "\">\n";
    os << "<text x=\"" << pad << "\" y=\"20\" font-family=\"monospace\" font-size=\"13\">" << rep.config.id << " ("
       << rep.config.name << ")</text>\n";
    os << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad << "\" y2=\"" << h - pad << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << h - pad << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << w / 2 << "\" y=\"" << h - 12 << "\" font-family=\"monospace\" font-size=\"12\">R</text>\n";
    os << "<text x=\"8\" y=\"" << pad - 8 << "\" font-family=\"monospace\" font-size=\"12\">rank (max " << y_hi << ")</text>\n";
    auto X = [&](int R) { return pad + (w - 2 * pad) * (R - r_lo) / (r_hi - r_lo); };
    auto Y = [&](std::size_t v) { return h - pad - static_cast<int>((h - 2 * pad) * v / y_hi); };
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* c = colors[s % 6];
        os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\" points=\"";
        for (auto [R, v] : series[s].pts) os << X(R) << ',' << Y(v) << ' ';
        os << "\"/>\n";
        os << "<text x=\"" << pad << "\" y=\"" << h + 20 * s << "\" fill=\"" << c << "\" font-family=\"monospace\" font-size=\"12\">"
           << series[s].label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
}

inline std::vector<std::filesystem::path> write_report(const ExperimentReport& rep, const std::string& dir, bool svg) {
    std::filesystem::create_directories(dir);
    std::filesystem::path base = std::filesystem::path(dir) / rep.config.id;
    std::vector<std::filesystem::path> out{base.string() + ".csv", base.string() + ".json"};
    write_text(out[0], report_csv(rep));
    write_text(out[1], report_json(rep).dump(2) + "\n");
    if (svg) {
        out.push_back(base.string() + ".svg");
        write_text(out.back(), report_svg(rep));
    }
    return out;
}

} // namespace coarsetop
