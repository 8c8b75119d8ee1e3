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

#ifndef TDOPED_HARNESS_H
#define TDOPED_HARNESS_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tdoped/errors.h"
#include "tdoped/magic.h"
#include "tdoped/spectra.h"

namespace tdoped {

/// Invalid run configuration; the message lists every diagnostic.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class ExperimentKind { kOrbits, kSpectrum, kSpacing, kMagic, kBlochMap, kHaarBaseline, kAppendixA };

std::string_view kind_name(ExperimentKind kind);
/// Throws UsageError for unknown names.
ExperimentKind parse_kind(std::string_view name);

inline constexpr int kConfigSchemaVersion = 1;

struct RunConfig {
    ExperimentKind kind = ExperimentKind::kOrbits;
    unsigned n_qubits = 3;
    std::optional<unsigned> depth;  // 5N when unset
    std::vector<unsigned> t_gates{0};
    uint64_t samples = 16;
    uint64_t seed = 1;
    std::string out_dir = "out";
    unsigned workers = 1;

    size_t correlation_bins = 16000;
    size_t omega_window_bins = 16;  // half-width of the omega(pi) window, in bins
    size_t spacing_bins = 200;
    double spacing_max = 5.0;
    DegeneracyCount degeneracy = DegeneracyCount::kSpacings;
    double magic_bin_width = 0.01;
    SreMethod sre_method = SreMethod::kFast;
    unsigned bloch_resolution = 64;
    size_t bloch_density_bins = 100;
    unsigned appendix_restarts = 64;

    /// Acknowledges running above the default resource caps.
    bool allow_large = false;

    unsigned resolved_depth() const { return depth.value_or(default_depth(n_qubits)); }
};

/// Default qubit caps per experiment family.
inline constexpr unsigned kSpectralQubitCap = 9;
inline constexpr unsigned kOrbitQubitCap = 13;
inline constexpr unsigned kMagicQubitCap = 10;

unsigned resource_cap(ExperimentKind kind);

struct Diagnostic {
    enum class Kind { kUsage, kCapacity, kResource };
    Kind kind;
    std::string field;
    std::string message;
};

/// All violations; empty means run() would start.
std::vector<Diagnostic> validate(const RunConfig &config);

/// Config document (JSON with a schema_version field). Missing keys keep defaults.
RunConfig config_from_json(const std::string &text, RunConfig base = {});
std::string config_to_json(const RunConfig &config);

struct OutputFile {
    std::string path;  // relative to the output directory
    std::string sha256;
    uint64_t bytes = 0;
};

struct RunManifest {
    RunConfig config;
    std::string artifact_version;
    std::string seed_rule;
    double wall_seconds = 0;
    std::vector<OutputFile> files;
};

inline constexpr const char *kManifestName = "manifest.json";

/// Runs the experiment, writes CSV outputs and manifest.json into config.out_dir.
/// Throws UsageError (invalid config), ResourceError (cap exceeded) before any work.
RunManifest run(const RunConfig &config);

std::string manifest_to_json(const RunManifest &m);
RunManifest manifest_from_json(const std::string &text);

struct VerifyReport {
    bool ok = false;
    std::vector<std::string> mismatches;
};

/// Re-runs the manifest's config into a scratch directory and compares checksums.
VerifyReport verify_manifest(const std::string &manifest_path);

std::string sha256_hex(std::string_view data);
std::string file_sha256(const std::string &path);

}  // namespace tdoped

#endif
