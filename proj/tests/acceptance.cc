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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Pass criterion numbers as arguments to run
// a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "tdoped/circuit.h"
#include "tdoped/magic.h"
#include "tdoped/orbits.h"
#include "tdoped/parallel.h"
#include "tdoped/rng.h"
#include "tdoped/spectra.h"

namespace {

using namespace tdoped;

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr uint64_t kSeed = 20260101;
const double kMH = 2 - std::log2(3.0);

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Orbit censuses of deep Clifford circuits, shared by criteria 1 and 2.
struct OrbitRuns {
    std::vector<OrbitEnsemble> ensembles;  // index N
    std::vector<bool> sum_rule_ok;
    std::vector<uint64_t> max_length;
};

const OrbitRuns &orbit_runs() {
    static const OrbitRuns runs = [] {
        OrbitRuns r;
        r.ensembles.resize(11);
        r.sum_rule_ok.assign(11, true);
        r.max_length.assign(11, 0);
        for (unsigned n = 2; n <= 10; ++n) {
            const uint64_t samples = 1000;
            std::vector<OrbitCensus> censuses(samples);
            parallel_for(samples, workers(), [&](size_t i) {
                Rng rng = sample_stream(kSeed, "acceptance/orbits/" + std::to_string(n), i);
                censuses[i] = decompose_orbits(circuit_clifford_part(build_brickwall(n, default_depth(n), 0, rng)));
            });
            r.ensembles[n] = OrbitEnsemble(n, kSeed);
            for (const auto &c : censuses) {
                uint64_t total = 0;
                for (const auto &[key, count] : c.orbits()) total += key.length * count;
                if (total != PauliString::count(n)) r.sum_rule_ok[n] = false;
                r.ensembles[n].add(c);
            }
            r.max_length[n] = r.ensembles[n].max_length();
        }
        return r;
    }();
    return runs;
}

Outcome c1_sum_rule() {
    const auto &r = orbit_runs();
    std::string detail;
    bool ok = true;
    for (unsigned n = 2; n <= 10; ++n) {
        ok = ok && r.sum_rule_ok[n] && r.ensembles[n].samples() == 1000;
        detail += fmt("N=%u:%s ", n, r.sum_rule_ok[n] ? "ok" : "VIOLATED");
    }
    return {ok, detail + "(1000 circuits each, exact integer sum = 4^N)"};
}

Outcome c2_lmax() {
    const auto &r = orbit_runs();
    bool ok = true;
    std::string detail;
    for (unsigned n : {4u, 6u, 8u}) {
        const uint64_t target = uint64_t{2} << n;
        const bool equal = r.max_length[n] == target;
        const bool bounded = r.max_length[n] <= target;
        ok = ok && equal && bounded;
        detail += fmt("N=%u: max L=%llu vs 2^(N+1)=%llu%s; ", n, static_cast<unsigned long long>(r.max_length[n]),
                      static_cast<unsigned long long>(target), bounded ? "" : " EXCEEDS");
    }
    return {ok, detail + "(1000 circuits each)"};
}

std::vector<double> fold_and_sort(std::vector<double> v) {
    for (auto &x : v) {
        x = wrap_phase(x);
        if (kTwoPi - x < 1e-9) x = 0;
    }
    std::sort(v.begin(), v.end());
    return v;
}

Outcome c3_duality() {
    double worst = 0;
    int circuits = 0;
    for (unsigned n : {2u, 3u, 4u}) {
        for (uint64_t i = 0; i < 50; ++i) {
            Rng rng = sample_stream(kSeed, "acceptance/duality/" + std::to_string(n), i);
            const auto c = build_brickwall(n, default_depth(n), 0, rng);
            const auto s = eigenphases(circuit_to_matrix(c));
            std::vector<double> diffs;
            for (double a : s.phases) {
                for (double b : s.phases) diffs.push_back(a - b);
            }
            const auto lhs = fold_and_sort(std::move(diffs));
            const auto rhs = fold_and_sort(orbit_eigenphases(circuit_clifford_part(c)));
            if (lhs.size() != rhs.size()) return {false, "multiset sizes differ"};
            for (size_t k = 0; k < lhs.size(); ++k) worst = std::max(worst, std::abs(lhs[k] - rhs[k]));
            ++circuits;
        }
    }
    return {worst <= 1e-8, fmt("%d circuits at N=2,3,4; max phase mismatch %.3g (tol 1e-8)", circuits, worst)};
}

CorrelationHistogram circuit_correlation(unsigned n, unsigned depth, unsigned n_t, uint64_t samples, size_t bins,
                                         const std::string &tag) {
    CorrelationHistogram h(bins, size_t{1} << n);
    const uint64_t chunk = 256;
    for (uint64_t first = 0; first < samples; first += chunk) {
        const uint64_t count = std::min(chunk, samples - first);
        std::vector<PhaseSpectrum> spectra(count);
        parallel_for(count, workers(), [&](size_t i) {
            Rng rng = sample_stream(kSeed, tag, first + i);
            spectra[i] = eigenphases(circuit_to_matrix(build_brickwall(n, depth, n_t, rng)));
        });
        for (const auto &s : spectra) h.add(s);
    }
    return h;
}

Outcome c4_cue() {
    const unsigned n = 5;
    const size_t d = 32, bins = 256;
    const auto h = circuit_correlation(n, 25, 20, 4096, bins, "acceptance/cue");
    const double w = h.bin_width();
    double chi2 = 0;
    size_t used = 0;
    for (size_t k = 0; k < bins; ++k) {
        const double c = h.bin_center(k);
        if (std::min(c, kTwoPi - c) < kTwoPi / d) continue;
        const double expected = chi_cue_average(c - w / 2, c + w / 2, static_cast<double>(d));
        const double z = (h.density(k) - expected) / h.density_stderr(k);
        chi2 += z * z;
        ++used;
    }
    const double reduced = chi2 / static_cast<double>(used);
    return {reduced < 2, fmt("N=5 D=25 N_T=20 N_s=4096, %zu of %zu bins, reduced chi2 = %.3f (< 2)", used, bins, reduced)};
}

Outcome c5_peaks() {
    bool ok = true;
    std::string detail;
    const size_t bins = 16000;
    const long long neighborhood = 200, core = 5;
    for (unsigned n : {3u, 5u}) {
        const auto h = circuit_correlation(n, default_depth(n), 0, 1024, bins, "acceptance/peaks/" + std::to_string(n));
        detail += fmt("N=%u:", n);
        for (const auto &[name, theta] : std::vector<std::pair<const char *, double>>{
                 {"pi", std::numbers::pi},
                 {"2pi/3", 2 * std::numbers::pi / 3},
                 {"pi/2", std::numbers::pi / 2},
                 {"pi/3", std::numbers::pi / 3}}) {
            const auto k = static_cast<long long>(h.bin_of(theta));
            std::vector<double> local;
            for (long long j = k - neighborhood; j <= k + neighborhood; ++j) {
                if (std::abs(j - k) <= core) continue;
                local.push_back(h.density(static_cast<size_t>((j + static_cast<long long>(bins)) % static_cast<long long>(bins))));
            }
            std::nth_element(local.begin(), local.begin() + static_cast<long>(local.size() / 2), local.end());
            const double median = local[local.size() / 2];
            const double peak = h.density(static_cast<size_t>(k));
            const bool pass = peak > 5 * median;
            ok = ok && pass;
            detail += fmt(" %s peak=%.3g median=%.3g%s", name, peak, median, pass ? "" : " FAIL");
        }
        detail += "; ";
    }
    return {ok, detail + "(16000 bins, N_s=1024, median over +-200 bins excluding +-5)"};
}

struct LineFit {
    double slope, intercept, r2, rms;
};

LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        ss_res += std::pow(y[i] - slope * x[i] - intercept, 2);
        ss_tot += std::pow(y[i] - sy / n, 2);
    }
    return {slope, intercept, 1 - ss_res / ss_tot, std::sqrt(ss_res / n)};
}

Outcome c6_omega() {
    const size_t bins = 16000, half_window = 16;
    std::vector<double> omega, x, logs;
    bool decreasing = true, positive = true;
    std::string values;
    for (unsigned n_t = 0; n_t <= 6; ++n_t) {
        const auto h = circuit_correlation(5, 25, n_t, 2048, bins, "acceptance/omega/" + std::to_string(n_t));
        const double w = peak_weight(h, std::numbers::pi, static_cast<double>(2 * half_window + 1) * h.bin_width());
        if (!omega.empty() && !(w < omega.back())) decreasing = false;
        omega.push_back(w);
        values += fmt("%.3g ", w);
        if (w > 0) {
            x.push_back(n_t);
            logs.push_back(std::log(w));
        } else {
            positive = false;
        }
    }
    const LineFit fit = x.size() >= 2 ? fit_line(x, logs) : LineFit{0, 0, 0, 0};
    const bool ok = decreasing && positive && fit.slope < 0 && fit.r2 > 0.9;
    return {ok, fmt("omega(pi) for N_T=0..6: %s; strictly decreasing=%s; log fit slope=%.3f R2=%.4f "
                    "(N=5 D=25 N_s=2048, window +-16 of 16000 bins)",
                    values.c_str(), decreasing ? "yes" : "no", fit.slope, fit.r2)};
}

Outcome c7_degeneracy() {
    const uint64_t samples = 4096;
    const unsigned n_min = 4, n_max = 7, t_max = 3;
    std::vector<std::vector<double>> ratio(n_max + 1, std::vector<double>(t_max + 1, 0));
    std::string detail;
    for (unsigned n = n_min; n <= n_max; ++n) {
        std::vector<SpacingHistogram> hist;
        for (unsigned n_t = 0; n_t <= t_max; ++n_t) {
            SpacingHistogram h;
            const std::string tag = "acceptance/degeneracy/" + std::to_string(n) + "/" + std::to_string(n_t);
            const uint64_t chunk = 256;
            for (uint64_t first = 0; first < samples; first += chunk) {
                std::vector<PhaseSpectrum> spectra(chunk);
                parallel_for(chunk, workers(), [&](size_t i) {
                    Rng rng = sample_stream(kSeed, tag, first + i);
                    spectra[i] = eigenphases(circuit_to_matrix(build_brickwall(n, default_depth(n), n_t, rng)));
                });
                for (const auto &s : spectra) h.add(s);
            }
            hist.push_back(std::move(h));
        }
        detail += fmt("N=%u g0=%.4f ratios:", n, hist[0].degeneracy());
        for (unsigned n_t = 0; n_t <= t_max; ++n_t) {
            ratio[n][n_t] = degeneracy_fraction(hist[n_t], hist[0]);
            detail += fmt(" %.3g", ratio[n][n_t]);
        }
        detail += "; ";
    }
    bool dec_t = true, dec_n = true, positive = true;
    std::vector<double> x_prod, x_t, y;
    for (unsigned n = n_min; n <= n_max; ++n) {
        for (unsigned n_t = 0; n_t <= t_max; ++n_t) {
            if (n_t > 0 && !(ratio[n][n_t] < ratio[n][n_t - 1])) dec_t = false;
            if (n_t > 0 && n > n_min && !(ratio[n][n_t] < ratio[n - 1][n_t])) dec_n = false;
            if (!(ratio[n][n_t] > 0)) {
                positive = false;
                continue;
            }
            x_prod.push_back(static_cast<double>(n * n_t));
            x_t.push_back(static_cast<double>(n_t));
            y.push_back(std::log(ratio[n][n_t]));
        }
    }
    const LineFit by_prod = fit_line(x_prod, y), by_t = fit_line(x_t, y);
    const bool collapse = by_prod.rms < by_t.rms;
    detail += fmt("decreasing in N_T=%s, in N=%s, all ratios > 0=%s; rms residual of log ratio vs N*N_T=%.3f, "
                  "vs N_T=%.3f (N_s=%llu, D=5N)",
                  dec_t ? "yes" : "no", dec_n ? "yes" : "no", positive ? "yes" : "no", by_prod.rms, by_t.rms,
                  static_cast<unsigned long long>(samples));
    return {dec_t && dec_n && positive && collapse, detail};
}

Outcome c8_golden() {
    double worst = 0;
    for (unsigned n = 1; n <= 8; ++n) worst = std::max(worst, std::abs(sre(StateVector::zero(n))));
    const double t_state = sre(bloch_state(std::acos(1 / std::sqrt(3.0)), std::numbers::pi / 4));
    auto th = StateVector::zero(1);
    Eigen::Matrix2cd hadamard;
    hadamard << 1, 1, 1, -1;
    apply_gate(th, 0, hadamard / std::sqrt(2.0));
    apply_t(th, 0);
    const double h_state = sre(th);
    const double example = sre(appendix_a_example_state());
    worst = std::max({worst, std::abs(t_state - std::log2(1.5)), std::abs(h_state - kMH),
                      std::abs(example - std::log2(4.5))});
    return {worst <= 1e-9, fmt("|0>^N: 0, |T>: %.12f, TH|0>: %.12f, N=3 example: %.12f; max error %.2g (tol 1e-9)",
                               t_state, h_state, example, worst)};
}

Outcome c9_appendix() {
    const auto r = verify_appendix_a(kSeed, 64);
    const bool ok = r.n3_maximal_tuples == 448 || r.n3_maximal_up_to_phase == 448;
    return {ok, fmt("%llu tuples scanned; maximal states: %llu as coefficient tuples, %llu up to global phase "
                    "(expected 448); N=1 T-type %s; N=2 max found %.6f < %.6f (margin %.4f, 64 restarts)",
                    static_cast<unsigned long long>(r.n3_tuples), static_cast<unsigned long long>(r.n3_maximal_tuples),
                    static_cast<unsigned long long>(r.n3_maximal_up_to_phase), r.n1_pass ? "ok" : "FAIL",
                    r.n2_max_found, r.n2_bound, r.n2_margin)};
}

MagicDistribution magic_run(unsigned n, unsigned depth, unsigned n_t, uint64_t samples, const std::string &tag) {
    MagicEnsembleOptions opts;
    opts.n_qubits = n;
    opts.depth = depth;
    opts.n_t_gates = n_t;
    opts.samples = samples;
    opts.seed = derive_seed(kSeed, tag, n_t);
    opts.workers = workers();
    opts.method = SreMethod::kFast;
    return sample_magic_distribution(opts);
}

Outcome c10_bimodal() {
    const auto dist = magic_run(6, 30, 1, 4096, "acceptance/bimodal");
    const auto values = dist.distinct_values();
    std::string list;
    for (const auto &[v, c] : values) list += fmt("%.12f (x%llu) ", v, static_cast<unsigned long long>(c));
    const bool ok = values.size() == 2 && std::abs(values[0].first) <= 1e-9 && std::abs(values[1].first - kMH) <= 1e-9;
    return {ok, "N=6 D=30 N_T=1 N_s=4096 distinct M2: " + list};
}

Outcome c11_linear() {
    bool ok = true;
    std::string detail;
    for (unsigned n : {5u, 6u}) {
        for (unsigned n_t = 2; n_t <= n; ++n_t) {
            const auto dist = magic_run(n, 5 * n, n_t, 4096, "acceptance/linear/" + std::to_string(n));
            const double target = kMH * n_t;
            const double rel = dist.mean() / target - 1;
            const bool pass = std::abs(rel) <= 0.10;
            ok = ok && pass;
            detail += fmt("N=%u N_T=%u <M2>=%.4f+-%.4f vs %.4f (%+.1f%%)%s; ", n, n_t, dist.mean(), dist.stderr_mean(),
                          target, 100 * rel, pass ? "" : " FAIL");
        }
    }
    return {ok, detail + "(N_s=4096, D=5N, tolerance 10%)"};
}

Outcome c12_haar() {
    const unsigned n = 6, depth = 30, n_t = depth * n;
    const uint64_t samples = 1 << 14;
    const auto circ = magic_run(n, depth, n_t, samples, "acceptance/haar-circuits");
    const auto haar = haar_magic_baseline(n, samples, derive_seed(kSeed, "acceptance/haar", 0), workers(),
                                          SreMethod::kFast);
    const double diff = circ.mean_density() - haar.mean_density();
    const double sigma = std::hypot(circ.stderr_density(), haar.stderr_density());
    const double bound = std::log2(67.0 / 4) / 6;
    const bool ok = std::abs(diff) <= 3 * sigma && haar.mean_density() >= bound;
    return {ok, fmt("N=6 D=30 N_T=%u: <m2>=%.5f+-%.5f, Haar <m2>=%.5f+-%.5f, diff=%.2f sigma (<= 3); "
                    "Haar mean vs bound %.5f (N_s=%llu each)",
                    n_t, circ.mean_density(), circ.stderr_density(), haar.mean_density(), haar.stderr_density(),
                    diff / sigma, bound, static_cast<unsigned long long>(samples))};
}

Outcome c13_self_averaging() {
    const unsigned n = 3, depth = 15, n_t = 3;
    const auto direct = magic_run(n, depth, n_t, 1 << 16, "acceptance/self-averaging");
    const uint64_t circuits = 4096, states = 64;
    std::vector<double> per_circuit(circuits);
    parallel_for(circuits, workers(), [&](size_t i) {
        Rng rng = sample_stream(kSeed, "acceptance/nsp", i);
        const auto u = build_brickwall(n, depth, n_t, rng);
        per_circuit[i] = non_stabilizing_power_mc(u, states, rng, SreMethod::kFast).mean;
    });
    double mean = 0;
    for (double v : per_circuit) mean += v;
    mean /= static_cast<double>(circuits);
    double var = 0;
    for (double v : per_circuit) var += (v - mean) * (v - mean);
    const double se = std::sqrt(var / static_cast<double>(circuits - 1) / static_cast<double>(circuits));
    const double sigma = std::hypot(direct.stderr_mean(), se);
    const double diff = direct.mean() - mean;
    return {std::abs(diff) <= 2 * sigma,
            fmt("N=3 D=15 N_T=3: state-sampled <M2>=%.5f+-%.5f (N_s=65536), circuit-averaged NSP=%.5f+-%.5f "
                "(4096 circuits x 64 states), diff=%.2f sigma (<= 2)",
                direct.mean(), direct.stderr_mean(), mean, se, diff / sigma)};
}

StateVector property_state(unsigned n, uint64_t i, Rng &rng) {
    if (i % 2 == 0) {
        std::normal_distribution<double> g;
        std::vector<Amplitude> a(size_t{1} << n);
        for (auto &v : a) v = Amplitude(g(rng), g(rng));
        return StateVector::normalized(std::move(a));
    }
    auto psi = StateVector::zero(n);
    std::uniform_int_distribution<unsigned> nt(0, 5 * n * n);
    apply_circuit(psi, build_brickwall(n, default_depth(n), nt(rng), rng));
    return psi;
}

Outcome c14_properties() {
    const uint64_t states = 1200;
    double inv = 0, add = 0, bound_excess = -1, norm = 0, methods = 0;
    for (uint64_t i = 0; i < states; ++i) {
        Rng rng = sample_stream(kSeed, "acceptance/properties", i);
        const unsigned n = 1 + static_cast<unsigned>(i % 4);
        auto psi = property_state(n, i / 4, rng);
        const double m = sre(psi, SreMethod::kDirect);
        methods = std::max(methods, std::abs(m - sre(psi, SreMethod::kFast)));
        bound_excess = std::max(bound_excess, m - sre_upper_bound(n));
        double total = 0;
        for (double xi : string_distribution(psi)) total += xi;
        norm = std::max(norm, std::abs(total - 1));
        auto moved = psi;
        apply_circuit(moved, build_brickwall(n, default_depth(n), 0, rng));
        inv = std::max(inv, std::abs(sre(moved) - m));
        if (n <= 2) {
            const auto other = property_state(1, i, rng);
            add = std::max(add, std::abs(sre(tensor(psi, other)) - m - sre(other)));
        }
    }
    const bool ok = inv <= 1e-9 && add <= 1e-9 && bound_excess <= 1e-9 && norm <= 1e-9 && methods <= 1e-9;
    return {ok, fmt("%llu states N=1..4: Clifford invariance %.2g, additivity (1+1, 2+1) %.2g, max M2-bound %.2g, "
                    "Xi normalization %.2g, direct vs fast %.2g (tol 1e-9)",
                    static_cast<unsigned long long>(states), inv, add, bound_excess, norm, methods)};
}

void staircase_info() {
    const auto &r = orbit_runs();
    const auto s = integrated_probability(r.ensembles[10]);
    std::string detail;
    for (const auto &[name, x] : std::vector<std::pair<const char *, double>>{{"1/4", 0.25}, {"3/8", 0.375}, {"1/2", 0.5}}) {
        detail += fmt(" I rise over %s+-0.01: %.4f;", name, s(x + 0.01) - s(x - 0.01));
    }
    std::printf("[INFO] staircase N=10, L_max scale %.0f:%s\n", s.l_max, detail.c_str());
}

}  // namespace

int main(int argc, char **argv) {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"orbit sum rule", c1_sum_rule},
        {"L_max law", c2_lmax},
        {"orbit/spectrum duality", c3_duality},
        {"CUE convergence of chi", c4_cue},
        {"Clifford peak structure", c5_peaks},
        {"omega(pi) suppression", c6_omega},
        {"degeneracy scaling", c7_degeneracy},
        {"SRE golden values", c8_golden},
        {"maximal-magic enumeration", c9_appendix},
        {"N_T=1 bimodality", c10_bimodal},
        {"linear magic growth", c11_linear},
        {"Haar saturation", c12_haar},
        {"self-averaging", c13_self_averaging},
        {"SRE property suite", c14_properties},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!selected.empty() && !selected.count(id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
        if (id == 2) staircase_info();
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
