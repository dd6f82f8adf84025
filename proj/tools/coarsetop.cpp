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

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include <coarsetop/cli/experiments.hpp>
#include <coarsetop/core/geometry.hpp>
#include <coarsetop/homology/theories.hpp>

using namespace coarsetop;

namespace {

constexpr int kOk = 0, kRefuted = 1, kUsage = 2;

int cmd_list() {
    for (const auto& e : experiment_registry()) std::cout << e.name << "\t" << e.summary << "\n";
    return kOk;
}

int cmd_run(const std::string& path, const std::string& out_override, bool svg, bool quiet) {
    auto rc = load_run_config(path);
    if (!out_override.empty()) rc.out_dir = out_override;
    rc.svg = rc.svg || svg;
    auto reports = run_all(rc);
    for (const auto& rep : reports) {
        auto files = write_report(rep, rc.out_dir, rc.svg);
        if (quiet) continue;
        std::cout << rep.config.id << " [" << rep.config.name << "] " << status_name(rep.status)
                  << (rep.stable ? "" : " (window sizes disagree)") << "\n";
        for (std::size_t w = 0; w < 2; ++w) {
            const auto& run = rep.runs[w];
            std::cout << "  window " << run.window << ": " << status_name(run.status) << "\n";
            for (const auto& n : run.notes) std::cout << "    " << n << "\n";
        }
        if (!rep.error.empty()) std::cout << "  error: " << rep.error << "\n";
        for (const auto& f : files) std::cout << "  wrote " << f.string() << "\n";
    }
    return exit_code(reports);
}

int cmd_validate(const std::string& path) {
    auto Xv = load_complex(path);
    auto X = std::make_shared<const SimplicialComplex>(std::move(Xv));
    std::cout << "dim " << X->dim() << "\n";
    for (int d = 0; d <= X->dim(); ++d) std::cout << "simplices[" << d << "] " << X->count(d) << "\n";
    std::cout << "frontier " << X->frontier().size() << "\n";
    auto g = geometry_stats(*X);
    std::cout << "max link simplices " << g.max_link_simplices << "\n";
    auto dd = boundary_squared_defects(*X);
    std::cout << "dd defects " << dd << "\n";
    auto whole = Subcomplex::whole(X);
    for (int k = 0; k <= X->dim(); ++k) std::cout << "H~" << k << " " << homology(whole, k, true).group.str() << "\n";
    std::cout << (dd == 0 ? "valid" : "invalid") << "\n";
    return dd == 0 ? kOk : kRefuted;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarsetop: coarse topology experiments on finite windows"};
    app.set_version_flag("--version", std::string("coarsetop ") + kVersion);
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run the experiments of a JSON config");
    std::string config, out_dir;
    bool svg = false, quiet = false;
    run->add_option("config", config, "experiment config (JSON)")->required();
    run->add_option("-o,--out", out_dir, "output directory (overrides output.dir)");
    run->add_flag("--svg", svg, "also write SVG plots");
    run->add_flag("-q,--quiet", quiet, "no summary on stdout");

    auto* list = app.add_subcommand("list", "list the named experiments");

    auto* validate = app.add_subcommand("validate", "check a complex file");
    std::string complex_file;
    validate->add_option("complex-file", complex_file, "complex (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*list) return cmd_list();
        if (*run) return cmd_run(config, out_dir, svg, quiet);
        if (*validate) return cmd_validate(complex_file);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRefuted;
    }
    return kUsage;
}
