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

#include "tdoped/harness.h"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <numbers>
#include <sstream>

#include "tdoped/orbits.h"
#include "tdoped/parallel.h"

#ifndef TDOPED_VERSION
#define TDOPED_VERSION "0.0.0"
#endif

namespace tdoped {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
// Hard limits that the acknowledgment flag cannot lift.
constexpr unsigned kMagicHardCap = 16;

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::kOrbits, "orbits"},       {ExperimentKind::kSpectrum, "spectrum"},
    {ExperimentKind::kSpacing, "spacing"},     {ExperimentKind::kMagic, "magic"},
    {ExperimentKind::kBlochMap, "bloch-map"},  {ExperimentKind::kHaarBaseline, "haar-baseline"},
    {ExperimentKind::kAppendixA, "appendix-a"},
};

bool uses_qubits(ExperimentKind kind) {
    return kind != ExperimentKind::kBlochMap && kind != ExperimentKind::kAppendixA;
}

bool uses_circuits(ExperimentKind kind) {
    return kind == ExperimentKind::kOrbits || kind == ExperimentKind::kSpectrum || kind == ExperimentKind::kSpacing ||
           kind == ExperimentKind::kMagic;
}

unsigned hard_cap(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::kOrbits:
            return kMaxOrbitQubits;
        case ExperimentKind::kSpectrum:
        case ExperimentKind::kSpacing:
        case ExperimentKind::kHaarBaseline:
            return kDenseQubitCap;
        case ExperimentKind::kMagic:
            return kMagicHardCap;
        default:
            return ~0u;
    }
}

std::string num(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string sre_method_name(SreMethod m) { return m == SreMethod::kFast ? "fast" : "direct"; }

std::string degeneracy_name(DegeneracyCount m) { return m == DegeneracyCount::kPairs ? "pairs" : "spacings"; }

class OutputSink {
   public:
    explicit OutputSink(fs::path dir) : dir_(std::move(dir)) {}

    void write(const std::string &name, const std::string &content) {
        std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
        files_.push_back(OutputFile{name, sha256_hex(content), content.size()});
    }

    std::vector<OutputFile> take() { return std::move(files_); }

   private:
    fs::path dir_;
    std::vector<OutputFile> files_;
};

std::string sweep_tag(std::string_view kind, unsigned n_t) {
    return std::string(kind) + "/nt=" + std::to_string(n_t);
}

std::vector<PhaseSpectrum> circuit_spectra(const RunConfig &cfg, unsigned n_t, uint64_t first, uint64_t count,
                                           std::string_view kind) {
    std::vector<PhaseSpectrum> out(count);
    const std::string tag = sweep_tag(kind, n_t);
    parallel_for(count, cfg.workers, [&](size_t i) {
        Rng rng = sample_stream(cfg.seed, tag, first + i);
        Circuit c = build_brickwall(cfg.n_qubits, cfg.resolved_depth(), n_t, rng, cfg.seed);
        out[i] = eigenphases(circuit_to_matrix(c, hard_cap(cfg.kind)));
    });
    return out;
}

template <class Sink>
void for_each_spectrum_chunk(const RunConfig &cfg, unsigned n_t, std::string_view kind, Sink &&sink) {
    const uint64_t chunk = 64ull * std::max(1u, cfg.workers);
    for (uint64_t first = 0; first < cfg.samples; first += chunk) {
        const uint64_t count = std::min(chunk, cfg.samples - first);
        for (const auto &s : circuit_spectra(cfg, n_t, first, count, kind)) sink(s);
    }
}

void run_orbits(const RunConfig &cfg, OutputSink &sink) {
    const unsigned n = cfg.n_qubits, depth = cfg.resolved_depth();
    std::vector<OrbitCensus> censuses(cfg.samples);
    parallel_for(cfg.samples, cfg.workers, [&](size_t i) {
        Rng rng = sample_stream(cfg.seed, "orbits", i);
        censuses[i] = decompose_orbits(circuit_clifford_part(build_brickwall(n, depth, 0, rng, cfg.seed)));
    });
    OrbitEnsemble ens(n, cfg.seed);
    std::ostringstream samples;
    samples << "sample,seed,max_length,orbits,total_strings\n";
    for (size_t i = 0; i < censuses.size(); ++i) {
        ens.add(censuses[i]);
        uint64_t orbits = 0;
        for (const auto &[key, count] : censuses[i].orbits()) orbits += count;
        samples << i << ',' << derive_seed(cfg.seed, "orbits", i) << ',' << max_orbit_length(censuses[i]) << ','
                << orbits << ',' << censuses[i].total_strings() << '\n';
    }
    std::ostringstream census;
    census << "length,parity,orbits,strings,probability\n";
    for (const auto &[key, strings] : ens.string_totals()) {
        census << key.length << ',' << key.parity << ',' << ens.orbit_totals().at(key) << ',' << strings << ','
               << num(ens.probability(key)) << '\n';
    }
    const Staircase stairs = integrated_probability(ens);
    std::ostringstream staircase;
    staircase << "x,integrated_probability,l_max\n";
    for (const auto &[x, value] : stairs.jumps) staircase << num(x) << ',' << num(value) << ',' << num(stairs.l_max) << '\n';
    sink.write("orbits_census.csv", census.str());
    sink.write("orbits_staircase.csv", staircase.str());
    sink.write("orbits_samples.csv", samples.str());
}

void run_spectrum(const RunConfig &cfg, OutputSink &sink) {
    const size_t d = size_t{1} << cfg.n_qubits;
    std::ostringstream summary;
    summary << "n_qubits,depth,n_t,samples,bins,omega_window,omega_pi\n";
    for (unsigned n_t : cfg.t_gates) {
        CorrelationHistogram h(cfg.correlation_bins, d);
        for_each_spectrum_chunk(cfg, n_t, "spectrum", [&](const PhaseSpectrum &s) { h.add(s); });
        std::ostringstream out;
        out << "theta,chi,chi_stderr,chi_cue\n";
        const double w = h.bin_width();
        for (size_t k = 0; k < h.bins(); ++k) {
            const double c = h.bin_center(k);
            out << num(c) << ',' << num(h.density(k)) << ',' << num(h.density_stderr(k)) << ','
                << num(chi_cue_average(c - 0.5 * w, c + 0.5 * w, static_cast<double>(d))) << '\n';
        }
        sink.write("spectrum_nt" + std::to_string(n_t) + ".csv", out.str());
        const double window = static_cast<double>(2 * cfg.omega_window_bins + 1) * w;
        summary << cfg.n_qubits << ',' << cfg.resolved_depth() << ',' << n_t << ',' << cfg.samples << ','
                << cfg.correlation_bins << ',' << num(window) << ',' << num(peak_weight(h, std::numbers::pi, window))
                << '\n';
    }
    sink.write("spectrum_summary.csv", summary.str());
}

void run_spacing(const RunConfig &cfg, OutputSink &sink) {
    std::vector<unsigned> sweep = cfg.t_gates;
    sweep.push_back(0);
    std::sort(sweep.begin(), sweep.end());
    sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
    std::vector<SpacingHistogram> hists;
    for (unsigned n_t : sweep) {
        SpacingHistogram h(cfg.spacing_bins, cfg.spacing_max);
        for_each_spectrum_chunk(cfg, n_t, "spacing", [&](const PhaseSpectrum &s) { h.add(s); });
        std::ostringstream out;
        out << "s,density\n";
        for (size_t k = 0; k < h.bins(); ++k) out << num(h.bin_center(k)) << ',' << num(h.density(k)) << '\n';
        sink.write("spacing_nt" + std::to_string(n_t) + ".csv", out.str());
        hists.push_back(std::move(h));
    }
    std::ostringstream summary;
    summary << "n_qubits,depth,n_t,samples,spacings,degenerate,g,g_ratio,max_sum_error\n";
    const SpacingHistogram &base = hists.front();
    for (size_t i = 0; i < sweep.size(); ++i) {
        const auto &h = hists[i];
        std::string ratio = base.degenerate(cfg.degeneracy) > 0 ? num(degeneracy_fraction(h, base, cfg.degeneracy)) : "";
        summary << cfg.n_qubits << ',' << cfg.resolved_depth() << ',' << sweep[i] << ',' << cfg.samples << ','
                << h.spacings() << ',' << h.degenerate(cfg.degeneracy) << ',' << num(h.degeneracy(cfg.degeneracy))
                << ',' << ratio << ',' << num(h.max_sum_error()) << '\n';
    }
    sink.write("spacing_summary.csv", summary.str());
}

std::string magic_histogram_csv(const MagicDistribution &dist, double bin_width) {
    std::ostringstream out;
    out << "m2,rho\n";
    for (const auto &[m2, rho] : dist.density_histogram(bin_width)) out << num(m2) << ',' << num(rho) << '\n';
    return out.str();
}

void run_magic(const RunConfig &cfg, OutputSink &sink) {
    std::ostringstream summary;
    summary << "n_qubits,depth,n_t,samples,mean_M2,stderr_M2,mean_m2,stderr_m2,discrete\n";
    for (unsigned n_t : cfg.t_gates) {
        MagicEnsembleOptions opts;
        opts.n_qubits = cfg.n_qubits;
        opts.depth = cfg.resolved_depth();
        opts.n_t_gates = n_t;
        opts.samples = cfg.samples;
        opts.seed = derive_seed(cfg.seed, "magic-sweep", n_t);
        opts.workers = cfg.workers;
        opts.method = cfg.sre_method;
        const MagicDistribution dist = sample_magic_distribution(opts);
        sink.write("magic_nt" + std::to_string(n_t) + ".csv", magic_histogram_csv(dist, cfg.magic_bin_width));
        summary << cfg.n_qubits << ',' << opts.depth << ',' << n_t << ',' << cfg.samples << ',' << num(dist.mean())
                << ',' << num(dist.stderr_mean()) << ',' << num(dist.mean_density()) << ','
                << num(dist.stderr_density()) << ',' << (dist.is_discrete() ? 1 : 0) << '\n';
    }
    sink.write("magic_summary.csv", summary.str());
}

void run_haar(const RunConfig &cfg, OutputSink &sink) {
    const MagicDistribution dist =
        haar_magic_baseline(cfg.n_qubits, cfg.samples, cfg.seed, cfg.workers, cfg.sre_method);
    sink.write("haar_baseline_density.csv", magic_histogram_csv(dist, cfg.magic_bin_width));
    std::ostringstream summary;
    summary << "n_qubits,samples,mean_M2,stderr_M2,mean_m2,stderr_m2,lower_bound_m2\n";
    summary << cfg.n_qubits << ',' << cfg.samples << ',' << num(dist.mean()) << ',' << num(dist.stderr_mean()) << ','
            << num(dist.mean_density()) << ',' << num(dist.stderr_density()) << ','
            << num(haar_density_lower_bound(cfg.n_qubits)) << '\n';
    sink.write("haar_baseline_summary.csv", summary.str());
}

void run_bloch(const RunConfig &cfg, OutputSink &sink) {
    const BlochMap map = bloch_magic_map(cfg.bloch_resolution, cfg.bloch_density_bins);
    std::ostringstream grid;
    grid << "theta,phi,M2\n";
    for (const auto &node : map.nodes) grid << num(node.theta) << ',' << num(node.phi) << ',' << num(node.m2) << '\n';
    std::ostringstream density;
    density << "m2,density\n";
    for (size_t k = 0; k < map.density.size(); ++k) {
        density << num((static_cast<double>(k) + 0.5) * map.density_bin_width) << ',' << num(map.density[k]) << '\n';
    }
    std::ostringstream summary;
    summary << "resolution,haar_mean,max_m2,bound\n"
            << map.resolution << ',' << num(map.haar_mean) << ',' << num(map.max_m2) << ',' << num(sre_upper_bound(1))
            << '\n';
    sink.write("bloch_map.csv", grid.str());
    sink.write("bloch_density.csv", density.str());
    sink.write("bloch_summary.csv", summary.str());
}

void run_appendix(const RunConfig &cfg, OutputSink &sink) {
    const AppendixAReport r = verify_appendix_a(cfg.seed, cfg.appendix_restarts);
    std::ostringstream out;
    out << "quantity,value\n"
        << "n1_sre," << num(r.n1_sre) << '\n'
        << "n1_target," << num(r.n1_target) << '\n'
        << "n1_pass," << (r.n1_pass ? 1 : 0) << '\n'
        << "n3_tuples," << r.n3_tuples << '\n'
        << "n3_maximal_tuples," << r.n3_maximal_tuples << '\n'
        << "n3_maximal_up_to_phase," << r.n3_maximal_up_to_phase << '\n'
        << "n3_target," << num(r.n3_target) << '\n'
        << "n3_example_sre," << num(r.n3_example_sre) << '\n'
        << "n2_max_found," << num(r.n2_max_found) << '\n'
        << "n2_bound," << num(r.n2_bound) << '\n'
        << "n2_margin," << num(r.n2_margin) << '\n'
        << "n2_restarts," << r.n2_restarts << '\n';
    sink.write("appendix_a.csv", out.str());
}

Json config_json(const RunConfig &c) {
    Json j;
    j["schema_version"] = kConfigSchemaVersion;
    j["kind"] = std::string(kind_name(c.kind));
    j["n_qubits"] = c.n_qubits;
    j["depth"] = c.resolved_depth();
    j["t_gates"] = c.t_gates;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["out"] = c.out_dir;
    j["workers"] = c.workers;
    j["correlation_bins"] = c.correlation_bins;
    j["omega_window_bins"] = c.omega_window_bins;
    j["spacing_bins"] = c.spacing_bins;
    j["spacing_max"] = c.spacing_max;
    j["degeneracy"] = degeneracy_name(c.degeneracy);
    j["magic_bin_width"] = c.magic_bin_width;
    j["sre_method"] = sre_method_name(c.sre_method);
    j["bloch_resolution"] = c.bloch_resolution;
    j["bloch_density_bins"] = c.bloch_density_bins;
    j["appendix_restarts"] = c.appendix_restarts;
    j["allow_large"] = c.allow_large;
    return j;
}

RunConfig config_from(const Json &j, RunConfig c) {
    if (!j.is_object()) throw UsageError("config: expected a JSON object");
    if (!j.contains("schema_version")) throw UsageError("config: missing schema_version");
    if (j.at("schema_version").get<int>() != kConfigSchemaVersion) {
        throw UsageError("config: unsupported schema_version " + j.at("schema_version").dump());
    }
    try {
        for (const auto &[key, value] : j.items()) {
            if (key == "schema_version") {
            } else if (key == "kind") {
                c.kind = parse_kind(value.get<std::string>());
            } else if (key == "n_qubits") {
                c.n_qubits = value.get<unsigned>();
            } else if (key == "depth") {
                if (value.is_null()) {
                    c.depth.reset();
                } else {
                    c.depth = value.get<unsigned>();
                }
            } else if (key == "t_gates") {
                c.t_gates = value.is_array() ? value.get<std::vector<unsigned>>() : std::vector{value.get<unsigned>()};
            } else if (key == "samples") {
                c.samples = value.get<uint64_t>();
            } else if (key == "seed") {
                c.seed = value.get<uint64_t>();
            } else if (key == "out") {
                c.out_dir = value.get<std::string>();
            } else if (key == "workers") {
                c.workers = value.get<unsigned>();
            } else if (key == "correlation_bins") {
                c.correlation_bins = value.get<size_t>();
            } else if (key == "omega_window_bins") {
                c.omega_window_bins = value.get<size_t>();
            } else if (key == "spacing_bins") {
                c.spacing_bins = value.get<size_t>();
            } else if (key == "spacing_max") {
                c.spacing_max = value.get<double>();
            } else if (key == "degeneracy") {
                const auto s = value.get<std::string>();
                if (s != "spacings" && s != "pairs") throw UsageError("config: degeneracy must be spacings or pairs");
                c.degeneracy = s == "pairs" ? DegeneracyCount::kPairs : DegeneracyCount::kSpacings;
            } else if (key == "magic_bin_width") {
                c.magic_bin_width = value.get<double>();
            } else if (key == "sre_method") {
                const auto s = value.get<std::string>();
                if (s != "direct" && s != "fast") throw UsageError("config: sre_method must be direct or fast");
                c.sre_method = s == "fast" ? SreMethod::kFast : SreMethod::kDirect;
            } else if (key == "bloch_resolution") {
                c.bloch_resolution = value.get<unsigned>();
            } else if (key == "bloch_density_bins") {
                c.bloch_density_bins = value.get<size_t>();
            } else if (key == "appendix_restarts") {
                c.appendix_restarts = value.get<unsigned>();
            } else if (key == "allow_large") {
                c.allow_large = value.get<bool>();
            } else {
                throw UsageError("config: unknown key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    return c;
}

std::string format_diagnostics(const std::vector<Diagnostic> &diags) {
    std::string msg;
    for (const auto &d : diags) {
        if (!msg.empty()) msg += "; ";
        msg += d.field + ": " + d.message;
    }
    return msg;
}

std::string seed_rule() {
    return "sample seed = derive_seed(master, tag, index) = mix64(mix64(master ^ fnv1a64(tag)) + mix64(index)), "
           "mix64 = splitmix64 finalizer, engine mt19937_64; tags: orbits, spectrum/nt=K, spacing/nt=K, "
           "haar-baseline, appendix-a; magic uses master' = derive_seed(master, magic-sweep, K) then tag magic";
}

}  // namespace

std::string_view kind_name(ExperimentKind kind) {
    for (const auto &[k, name] : kKindNames) {
        if (k == kind) return name;
    }
    throw InternalError("unknown experiment kind");
}

ExperimentKind parse_kind(std::string_view name) {
    for (const auto &[k, n] : kKindNames) {
        if (n == name) return k;
    }
    throw UsageError("unknown experiment kind '" + std::string(name) + "'");
}

unsigned resource_cap(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::kOrbits:
            return kOrbitQubitCap;
        case ExperimentKind::kSpectrum:
        case ExperimentKind::kSpacing:
            return kSpectralQubitCap;
        case ExperimentKind::kMagic:
        case ExperimentKind::kHaarBaseline:
            return kMagicQubitCap;
        default:
            return ~0u;
    }
}

std::vector<Diagnostic> validate(const RunConfig &c) {
    using K = Diagnostic::Kind;
    std::vector<Diagnostic> out;
    auto usage = [&](std::string field, std::string msg) { out.push_back({K::kUsage, std::move(field), std::move(msg)}); };

    if (uses_qubits(c.kind)) {
        if (c.n_qubits == 0) {
            usage("n_qubits", "must be at least 1");
        } else if (c.n_qubits > hard_cap(c.kind)) {
            out.push_back({K::kResource, "n_qubits",
                           std::to_string(c.n_qubits) + " exceeds the hard limit " +
                               std::to_string(hard_cap(c.kind)) + " for " + std::string(kind_name(c.kind))});
        } else if (c.n_qubits > resource_cap(c.kind) && !c.allow_large) {
            out.push_back({K::kResource, "n_qubits",
                           std::to_string(c.n_qubits) + " exceeds the default cap " +
                               std::to_string(resource_cap(c.kind)) + " for " + std::string(kind_name(c.kind)) +
                               " (pass allow_large to override)"});
        }
    }
    if (c.depth && *c.depth == 0) usage("depth", "must be at least 1");
    if (c.samples == 0) usage("samples", "must be at least 1");
    if (c.workers == 0) usage("workers", "must be at least 1");
    if (c.out_dir.empty()) usage("out", "output directory is required");
    if (uses_circuits(c.kind)) {
        if (c.t_gates.empty()) usage("t_gates", "sweep list must be nonempty");
        const uint64_t cells = uint64_t{c.resolved_depth()} * c.n_qubits;
        for (unsigned n_t : c.t_gates) {
            if (n_t > cells) {
                out.push_back({K::kCapacity, "t_gates",
                               std::to_string(n_t) + " T gates exceed the " + std::to_string(cells) +
                                   " (layer, qubit) cells of depth " + std::to_string(c.resolved_depth())});
            }
        }
        if (c.kind == ExperimentKind::kOrbits &&
            std::any_of(c.t_gates.begin(), c.t_gates.end(), [](unsigned t) { return t != 0; })) {
            usage("t_gates", "orbit census analyzes Clifford circuits only; use 0");
        }
    }
    if (c.kind == ExperimentKind::kSpectrum) {
        if (c.correlation_bins < 4) usage("correlation_bins", "must be at least 4");
        if (2 * c.omega_window_bins + 1 >= c.correlation_bins) usage("omega_window_bins", "window wider than the circle");
    }
    if (c.kind == ExperimentKind::kSpacing) {
        if (c.spacing_bins == 0) usage("spacing_bins", "must be at least 1");
        if (!(c.spacing_max > 0)) usage("spacing_max", "must be positive");
    }
    if ((c.kind == ExperimentKind::kMagic || c.kind == ExperimentKind::kHaarBaseline) && !(c.magic_bin_width > 0)) {
        usage("magic_bin_width", "must be positive");
    }
    if (c.kind == ExperimentKind::kBlochMap) {
        if (c.bloch_resolution < 2) usage("bloch_resolution", "must be at least 2");
        if (c.bloch_density_bins == 0) usage("bloch_density_bins", "must be at least 1");
    }
    if (c.kind == ExperimentKind::kAppendixA && c.appendix_restarts == 0) {
        usage("appendix_restarts", "must be at least 1");
    }
    return out;
}

RunConfig config_from_json(const std::string &text, RunConfig base) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    return config_from(j, std::move(base));
}

std::string config_to_json(const RunConfig &config) { return config_json(config).dump(2) + "\n"; }

RunManifest run(const RunConfig &config) {
    const auto diags = validate(config);
    if (!diags.empty()) {
        const bool resource = std::any_of(diags.begin(), diags.end(),
                                          [](const Diagnostic &d) { return d.kind == Diagnostic::Kind::kResource; });
        if (resource) throw ResourceError(format_diagnostics(diags));
        throw UsageError(format_diagnostics(diags));
    }
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(config.out_dir);
    OutputSink sink(config.out_dir);
    switch (config.kind) {
        case ExperimentKind::kOrbits:
            run_orbits(config, sink);
            break;
        case ExperimentKind::kSpectrum:
            run_spectrum(config, sink);
            break;
        case ExperimentKind::kSpacing:
            run_spacing(config, sink);
            break;
        case ExperimentKind::kMagic:
            run_magic(config, sink);
            break;
        case ExperimentKind::kHaarBaseline:
            run_haar(config, sink);
            break;
        case ExperimentKind::kBlochMap:
            run_bloch(config, sink);
            break;
        case ExperimentKind::kAppendixA:
            run_appendix(config, sink);
            break;
    }
    RunManifest m;
    m.config = config;
    m.config.depth = config.resolved_depth();
    m.artifact_version = TDOPED_VERSION;
    m.seed_rule = seed_rule();
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    m.files = sink.take();
    std::ofstream(fs::path(config.out_dir) / kManifestName, std::ios::binary | std::ios::trunc) << manifest_to_json(m);
    return m;
}

std::string manifest_to_json(const RunManifest &m) {
    Json j;
    j["schema_version"] = kConfigSchemaVersion;
    j["artifact_version"] = m.artifact_version;
    j["config"] = config_json(m.config);
    j["seed_rule"] = m.seed_rule;
    j["wall_seconds"] = m.wall_seconds;
    Json files = Json::array();
    for (const auto &f : m.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    j["files"] = files;
    return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string &text) {
    RunManifest m;
    try {
        const Json j = Json::parse(text);
        m.config = config_from(j.at("config"), RunConfig{});
        m.artifact_version = j.at("artifact_version").get<std::string>();
        m.seed_rule = j.at("seed_rule").get<std::string>();
        m.wall_seconds = j.at("wall_seconds").get<double>();
        for (const auto &f : j.at("files")) {
            m.files.push_back(OutputFile{f.at("path").get<std::string>(), f.at("sha256").get<std::string>(),
                                         f.at("bytes").get<uint64_t>()});
        }
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(std::string("manifest: ") + e.what());
    }
    return m;
}

VerifyReport verify_manifest(const std::string &manifest_path) {
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw UsageError("cannot read manifest " + manifest_path);
    std::stringstream text;
    text << in.rdbuf();
    const RunManifest m = manifest_from_json(text.str());
    const fs::path original = fs::path(manifest_path).parent_path();

    std::string pattern = (fs::temp_directory_path() / "tdoped-verify-XXXXXX").string();
    if (mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("cannot create scratch directory");
    const fs::path scratch = pattern;
    RunConfig cfg = m.config;
    cfg.out_dir = scratch.string();

    VerifyReport report;
    try {
        const RunManifest rerun = run(cfg);
        for (const auto &f : m.files) {
            auto it = std::find_if(rerun.files.begin(), rerun.files.end(),
                                   [&](const OutputFile &g) { return g.path == f.path; });
            if (it == rerun.files.end()) {
                report.mismatches.push_back(f.path + ": not produced by re-run");
            } else if (it->sha256 != f.sha256) {
                report.mismatches.push_back(f.path + ": re-run checksum differs");
            }
            const fs::path on_disk = original / f.path;
            if (!fs::exists(on_disk)) {
                report.mismatches.push_back(f.path + ": missing from " + original.string());
            } else if (file_sha256(on_disk.string()) != f.sha256) {
                report.mismatches.push_back(f.path + ": file on disk differs from manifest");
            }
        }
        for (const auto &g : rerun.files) {
            if (std::none_of(m.files.begin(), m.files.end(), [&](const OutputFile &f) { return f.path == g.path; })) {
                report.mismatches.push_back(g.path + ": produced by re-run but absent from manifest");
            }
        }
    } catch (...) {
        fs::remove_all(scratch);
        throw;
    }
    fs::remove_all(scratch);
    report.ok = report.mismatches.empty();
    return report;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 15];
    }
    return out;
}

std::string file_sha256(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

}  // namespace tdoped
