// Copyright 2026 The tdoped Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end for the experiment harness.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tdoped/harness.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitNumerical = 4;

struct Flags {
    std::string config_path;
    std::string verify_path;
    uint64_t seed = 0;
    uint64_t samples = 0;
    unsigned qubits = 0;
    unsigned depth = 0;
    std::vector<unsigned> t_gates;
    std::string out;
    unsigned workers = 0;
    size_t bins = 0;
    size_t omega_window = 0;
    size_t spacing_bins = 0;
    double spacing_max = 0;
    std::string degeneracy;
    double bin_width = 0;
    std::string sre_method;
    unsigned resolution = 0;
    size_t density_bins = 0;
    unsigned restarts = 0;
    bool allow_large = false;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tdoped::UsageError("cannot read config " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Random T-doped brick-wall Clifford circuit experiments"};
    Flags f;
    app.add_option("--config", f.config_path, "JSON config file; flags override its values");
    app.add_option("--verify-manifest", f.verify_path, "Re-run a manifest and compare output checksums");
    auto *seed = app.add_option("--seed", f.seed, "Master seed");
    auto *samples = app.add_option("--samples", f.samples, "Number of samples N_s");
    auto *qubits = app.add_option("--qubits", f.qubits, "Number of qubits N");
    auto *depth = app.add_option("--depth", f.depth, "Brick-wall depth D (default 5N)");
    auto *t_gates = app.add_option("--t-gates", f.t_gates, "T-gate counts, comma separated")->delimiter(',');
    auto *out = app.add_option("--out", f.out, "Output directory");
    auto *workers = app.add_option("--workers", f.workers, "Worker threads");
    auto *bins = app.add_option("--bins", f.bins, "Correlation histogram bins over [0, 2pi)");
    auto *omega = app.add_option("--omega-window", f.omega_window, "Half-width of the omega(pi) window in bins");
    auto *spacing_bins = app.add_option("--spacing-bins", f.spacing_bins, "Spacing histogram bins");
    auto *spacing_max = app.add_option("--spacing-max", f.spacing_max, "Spacing histogram range in mean spacings");
    auto *degeneracy = app.add_option("--degeneracy", f.degeneracy, "Degeneracy counting: spacings or pairs")
                           ->check(CLI::IsMember({"spacings", "pairs"}));
    auto *bin_width = app.add_option("--bin-width", f.bin_width, "m2 histogram bin width");
    auto *sre_method =
        app.add_option("--sre-method", f.sre_method, "SRE evaluation: direct or fast")->check(CLI::IsMember({"direct", "fast"}));
    auto *resolution = app.add_option("--resolution", f.resolution, "Bloch map polar resolution");
    auto *density_bins = app.add_option("--density-bins", f.density_bins, "Bloch map density bins");
    auto *restarts = app.add_option("--restarts", f.restarts, "N=2 maximization restarts (appendix-a)");
    app.add_flag("--allow-large", f.allow_large, "Acknowledge running above the default qubit caps");

    for (const char *kind : {"orbits", "spectrum", "spacing", "magic", "bloch-map", "haar-baseline", "appendix-a"}) {
        app.add_subcommand(kind, std::string("Run the ") + kind + " experiment")->fallthrough();
    }
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (!f.verify_path.empty()) {
            const auto report = tdoped::verify_manifest(f.verify_path);
            for (const auto &m : report.mismatches) std::cerr << "mismatch: " << m << '\n';
            std::cout << (report.ok ? "manifest verified" : "manifest verification FAILED") << '\n';
            return report.ok ? 0 : 1;
        }

        tdoped::RunConfig cfg;
        bool have_kind = false;
        if (!f.config_path.empty()) {
            const std::string text = read_file(f.config_path);
            cfg = tdoped::config_from_json(text);
            have_kind = text.find("\"kind\"") != std::string::npos;
        }
        if (!app.get_subcommands().empty()) {
            cfg.kind = tdoped::parse_kind(app.get_subcommands().front()->get_name());
            have_kind = true;
        }
        if (!have_kind) {
            std::cerr << "error: choose an experiment subcommand or set kind in --config\n" << app.help();
            return kExitUsage;
        }
        if (*seed) cfg.seed = f.seed;
        if (*samples) cfg.samples = f.samples;
        if (*qubits) cfg.n_qubits = f.qubits;
        if (*depth) cfg.depth = f.depth;
        if (*t_gates) cfg.t_gates = f.t_gates;
        if (*out) cfg.out_dir = f.out;
        if (*workers) cfg.workers = f.workers;
        if (*bins) cfg.correlation_bins = f.bins;
        if (*omega) cfg.omega_window_bins = f.omega_window;
        if (*spacing_bins) cfg.spacing_bins = f.spacing_bins;
        if (*spacing_max) cfg.spacing_max = f.spacing_max;
        if (*degeneracy) {
            cfg.degeneracy = f.degeneracy == "pairs" ? tdoped::DegeneracyCount::kPairs : tdoped::DegeneracyCount::kSpacings;
        }
        if (*bin_width) cfg.magic_bin_width = f.bin_width;
        if (*sre_method) cfg.sre_method = f.sre_method == "fast" ? tdoped::SreMethod::kFast : tdoped::SreMethod::kDirect;
        if (*resolution) cfg.bloch_resolution = f.resolution;
        if (*density_bins) cfg.bloch_density_bins = f.density_bins;
        if (*restarts) cfg.appendix_restarts = f.restarts;
        if (f.allow_large) cfg.allow_large = true;

        const auto diags = tdoped::validate(cfg);
        if (!diags.empty()) {
            bool resource = false;
            for (const auto &d : diags) {
                std::cerr << "error: " << d.field << ": " << d.message << '\n';
                resource = resource || d.kind == tdoped::Diagnostic::Kind::kResource;
            }
            return resource ? kExitResource : kExitUsage;
        }
        const auto manifest = tdoped::run(cfg);
        for (const auto &file : manifest.files) std::cout << cfg.out_dir << '/' << file.path << '\n';
        std::cout << cfg.out_dir << '/' << tdoped::kManifestName << '\n';
        return 0;
    } catch (const tdoped::ResourceError &e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return kExitResource;
    } catch (const tdoped::NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
