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

#include "tdoped/spectra.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "tdoped/errors.h"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace tdoped {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

void apply_signed_pauli(const SignedPauli &p, std::span<const Amplitude> in, std::span<Amplitude> out) {
    apply_pauli(p.string(), in, out);
    if (p.negative()) {
        for (auto &a : out) a = -a;
    }
}

}  // namespace

DenseUnitary::DenseUnitary(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw DimensionError("unitary must be a nonempty square matrix");
    }
}

double DenseUnitary::unitarity_defect() const {
    const Eigen::Index d = dimension();
    if (d <= 64) {
        Eigen::MatrixXcd e = m_ * m_.adjoint() - Eigen::MatrixXcd::Identity(d, d);
        return e.cwiseAbs().maxCoeff();
    }
    // Columns of U^dag U: spot check a handful.
    double worst = 0;
    for (Eigen::Index j : {Eigen::Index{0}, d / 3, d / 2, d - 1}) {
        Eigen::VectorXcd col = m_.adjoint() * m_.col(j);
        col(j) -= 1.0;
        worst = std::max(worst, col.cwiseAbs().maxCoeff());
    }
    return worst;
}

DenseUnitary clifford_unitary(const CliffordTableau &t) {
    const unsigned n = t.n_qubits();
    if (n > kDenseQubitCap) {
        throw ResourceError("clifford_unitary is capped at " + std::to_string(kDenseQubitCap) + " qubits");
    }
    const size_t d = size_t{1} << n;
    std::vector<Amplitude> v(d), tmp(d);

    // U|0> is the joint +1 eigenvector of the Z images; project basis vectors until one survives.
    bool found = false;
    for (size_t k = 0; k < d && !found; ++k) {
        std::fill(v.begin(), v.end(), Amplitude{0});
        v[k] = 1;
        for (unsigned q = 0; q < n; ++q) {
            apply_signed_pauli(t.z_image(q), v, tmp);
            for (size_t i = 0; i < d; ++i) v[i] = 0.5 * (v[i] + tmp[i]);
        }
        double norm = 0;
        for (const auto &a : v) norm += std::norm(a);
        if (norm > 1e-6) {
            double s = 1 / std::sqrt(norm);
            for (auto &a : v) a *= s;
            found = true;
        }
    }
    if (!found) {
        throw InternalError("no stabilizer state for tableau Z images");
    }
    for (const auto &a : v) {
        if (std::abs(a) > 1e-9) {
            Amplitude phase = std::conj(a) / std::abs(a);
            for (auto &b : v) b *= phase;
            break;
        }
    }

    Eigen::MatrixXcd m(d, d);
    std::vector<std::vector<Amplitude>> cols(d);
    cols[0] = v;
    for (size_t b = 1; b < d; ++b) {
        // U|b> = prod over set bits of (U X_q U^dag) U|0>; X images commute.
        unsigned bit = static_cast<unsigned>(std::countr_zero(b));
        unsigned q = n - 1 - bit;
        cols[b].resize(d);
        apply_signed_pauli(t.x_image(q), cols[b ^ (size_t{1} << bit)], cols[b]);
    }
    for (size_t b = 0; b < d; ++b) {
        for (size_t i = 0; i < d; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) = cols[b][i];
    }
    return DenseUnitary(std::move(m));
}

Eigen::Matrix2cd t_gate_matrix() {
    Eigen::Matrix2cd t = Eigen::Matrix2cd::Zero();
    t(0, 0) = 1;
    t(1, 1) = std::polar(1.0, std::numbers::pi / 4);
    return t;
}

DenseUnitary circuit_to_matrix(const Circuit &c, unsigned max_qubits) {
    const unsigned n = c.n_qubits();
    if (n > max_qubits) {
        throw ResourceError("dense circuit matrix for " + std::to_string(n) + " qubits exceeds cap of " +
                            std::to_string(max_qubits));
    }
    const Eigen::Index d = Eigen::Index{1} << n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
    const Amplitude t_phase = std::polar(1.0, std::numbers::pi / 4);

    auto t_begin = c.t_gates().begin();
    for (unsigned l = 0; l < c.depth(); ++l) {
        for (const auto &brick : c.layers()[l]) {
            const Eigen::Matrix4cd g = clifford_unitary(brick.gate).matrix();
            const Eigen::Index hi = Eigen::Index{1} << (n - 1 - brick.first_qubit);
            const Eigen::Index lo = hi >> 1;
            for (Eigen::Index col = 0; col < d; ++col) {
                Amplitude *v = u.col(col).data();
                for (Eigen::Index r = 0; r < d; ++r) {
                    if (r & (hi | lo)) continue;
                    const Eigen::Index idx[4] = {r, r | lo, r | hi, r | hi | lo};
                    const Amplitude in[4] = {v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]};
                    for (int k = 0; k < 4; ++k) {
                        v[idx[k]] = g(k, 0) * in[0] + g(k, 1) * in[1] + g(k, 2) * in[2] + g(k, 3) * in[3];
                    }
                }
            }
        }
        for (; t_begin != c.t_gates().end() && t_begin->layer == l; ++t_begin) {
            const Eigen::Index bit = Eigen::Index{1} << (n - 1 - t_begin->qubit);
            for (Eigen::Index r = 0; r < d; ++r) {
                if (r & bit) u.row(r) *= t_phase;
            }
        }
    }
    return DenseUnitary(std::move(u));
}

double wrap_phase(double theta) {
    double w = std::fmod(theta, kTwoPi);
    if (w < 0) w += kTwoPi;
    if (w >= kTwoPi) w = 0;
    return w;
}

PhaseSpectrum eigenphases(const DenseUnitary &u) {
    const auto d = static_cast<lapack_int>(u.dimension());
    Eigen::MatrixXcd a = u.matrix();
    std::vector<Amplitude> lambda(static_cast<size_t>(d));
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', d, a.data(), d, lambda.data(), nullptr, 1, nullptr, 1);
    if (info != 0) {
        throw NumericalError("zgeev failed with info=" + std::to_string(info) + " for d=" + std::to_string(d));
    }
    PhaseSpectrum s;
    s.phases.reserve(lambda.size());
    for (const auto &z : lambda) {
        double drift = std::abs(std::abs(z) - 1.0);
        if (drift > 1e-9) {
            throw NumericalError("eigenvalue modulus drift " + std::to_string(drift) + " exceeds 1e-9");
        }
        s.phases.push_back(wrap_phase(std::arg(z)));
    }
    std::sort(s.phases.begin(), s.phases.end());
    return s;
}

CorrelationHistogram::CorrelationHistogram(size_t bins, size_t dimension)
    : dim_(dimension), counts_(bins, 0), sum_sq_(bins, 0.0), scratch_(bins, 0) {
    if (bins == 0) throw ContractError("histogram needs at least one bin");
    if (dimension < 2) throw ContractError("correlation function needs d >= 2");
}

double CorrelationHistogram::bin_width() const { return kTwoPi / static_cast<double>(counts_.size()); }

double CorrelationHistogram::bin_center(size_t k) const { return static_cast<double>(k) * bin_width(); }

size_t CorrelationHistogram::bin_of(double theta) const {
    const auto bins = static_cast<double>(counts_.size());
    auto k = static_cast<long long>(std::llround(wrap_phase(theta) / kTwoPi * bins));
    return static_cast<size_t>(k) % counts_.size();
}

void CorrelationHistogram::add(const PhaseSpectrum &s) {
    if (s.dimension() != dim_) {
        throw ContractError("spectrum dimension " + std::to_string(s.dimension()) + " differs from histogram d=" +
                            std::to_string(dim_));
    }
    std::vector<size_t> touched;
    for (size_t i = 0; i < dim_; ++i) {
        for (size_t j = 0; j < dim_; ++j) {
            if (i == j) continue;
            size_t k = bin_of(s.phases[i] - s.phases[j]);
            if (scratch_[k]++ == 0) touched.push_back(k);
        }
    }
    for (size_t k : touched) {
        counts_[k] += scratch_[k];
        sum_sq_[k] += static_cast<double>(scratch_[k]) * static_cast<double>(scratch_[k]);
        scratch_[k] = 0;
    }
    ++samples_;
}

void CorrelationHistogram::merge(const CorrelationHistogram &other) {
    if (other.bins() != bins() || other.dim_ != dim_) {
        throw ContractError("merging incompatible correlation histograms");
    }
    for (size_t k = 0; k < bins(); ++k) {
        counts_[k] += other.counts_[k];
        sum_sq_[k] += other.sum_sq_[k];
    }
    samples_ += other.samples_;
}

double CorrelationHistogram::density(size_t k) const {
    if (samples_ == 0) return 0;
    const double pairs = static_cast<double>(dim_) * static_cast<double>(dim_ - 1);
    return static_cast<double>(counts_[k]) / (static_cast<double>(samples_) * pairs * bin_width());
}

double CorrelationHistogram::density_stderr(size_t k) const {
    if (samples_ < 2) return 0;
    const double ns = static_cast<double>(samples_);
    const double scale = 1.0 / (static_cast<double>(dim_) * static_cast<double>(dim_ - 1) * bin_width());
    const double mean = static_cast<double>(counts_[k]) / ns;
    const double var = std::max(0.0, (sum_sq_[k] - ns * mean * mean) / (ns - 1));
    return scale * std::sqrt(var / ns);
}

CorrelationHistogram correlation_function(std::span<const PhaseSpectrum> spectra, size_t bins) {
    if (spectra.empty()) {
        throw ContractError("correlation_function needs at least one spectrum");
    }
    CorrelationHistogram h(bins, spectra.front().dimension());
    for (const auto &s : spectra) h.add(s);
    return h;
}

double chi_cue(double theta, double d) {
    const double half = 0.5 * wrap_phase(theta);
    const double s = std::sin(half);
    double ratio = 1.0;
    if (std::abs(s) > 1e-12) {
        const double num = std::sin(d * half);
        ratio = (num * num) / (d * d * s * s);
    }
    return d / (kTwoPi * (d - 1)) * (1.0 - ratio);
}

double chi_cue_average(double lo, double hi, double d) {
    static constexpr double kNodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                         0.9061798459386640};
    static constexpr double kWeights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                           0.4786286704993665, 0.2369268850561891};
    if (hi <= lo) return chi_cue(lo, d);
    // Enough panels to resolve the oscillation period 2 pi / d.
    const int panels = std::max(8, static_cast<int>(std::ceil((hi - lo) * d / kTwoPi * 16)));
    const double h = (hi - lo) / panels;
    double sum = 0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * h;
        for (int k = 0; k < 5; ++k) sum += kWeights[k] * chi_cue(mid + 0.5 * h * kNodes[k], d);
    }
    return sum * 0.5 * h / (hi - lo);
}

double peak_weight(const CorrelationHistogram &h, double theta0, double window) {
    const double w = h.bin_width();
    if (theta0 < 0 || theta0 >= kTwoPi) {
        throw ContractError("peak position outside [0, 2 pi)");
    }
    if (window < w || window >= kTwoPi) {
        throw ContractError("peak window must span at least one bin and less than 2 pi");
    }
    const auto center = static_cast<long long>(h.bin_of(theta0));
    const auto half = static_cast<long long>(std::floor(0.5 * window / w + 1e-9));
    const auto bins = static_cast<long long>(h.bins());
    const auto d = static_cast<double>(h.dimension());
    double excess = 0;
    for (long long k = center - half; k <= center + half; ++k) {
        const auto b = static_cast<size_t>(((k % bins) + bins) % bins);
        const double c = static_cast<double>(k) * w;
        excess += (h.density(b) - chi_cue_average(c - 0.5 * w, c + 0.5 * w, d)) * w;
    }
    return std::max(0.0, excess);
}

SpacingHistogram::SpacingHistogram(size_t bins, double s_max, double epsilon)
    : s_max_(s_max), epsilon_(epsilon), counts_(bins, 0) {
    if (bins == 0 || !(s_max > 0)) throw ContractError("spacing histogram needs bins > 0 and s_max > 0");
}

void SpacingHistogram::add(const PhaseSpectrum &s) {
    const size_t d = s.dimension();
    if (d == 0) return;
    const double scale = static_cast<double>(d) / kTwoPi;
    double sum = 0;
    uint64_t run = 1;  // current cluster multiplicity
    auto close_cluster = [&] {
        degenerate_pairs_ += run * (run - 1) / 2;
        run = 1;
    };
    for (size_t j = 0; j < d; ++j) {
        const double zeta = j + 1 < d ? s.phases[j + 1] - s.phases[j] : s.phases[0] + kTwoPi - s.phases[d - 1];
        if (zeta < 0) {
            throw ContractError("level_spacing needs sorted spectra");
        }
        sum += zeta;
        const double u = zeta * scale;
        if (u >= s_max_) {
            ++overflow_;
        } else {
            ++counts_[static_cast<size_t>(u / s_max_ * static_cast<double>(counts_.size()))];
        }
        if (zeta < epsilon_) {
            ++degenerate_spacings_;
            if (j + 1 < d) ++run;
        } else if (j + 1 < d) {
            close_cluster();
        }
    }
    close_cluster();
    spacings_ += d;
    ++samples_;
    max_sum_error_ = std::max(max_sum_error_, std::abs(sum - kTwoPi));
}

void SpacingHistogram::merge(const SpacingHistogram &other) {
    if (other.bins() != bins() || other.s_max_ != s_max_ || other.epsilon_ != epsilon_) {
        throw ContractError("merging incompatible spacing histograms");
    }
    for (size_t k = 0; k < bins(); ++k) counts_[k] += other.counts_[k];
    overflow_ += other.overflow_;
    spacings_ += other.spacings_;
    samples_ += other.samples_;
    degenerate_spacings_ += other.degenerate_spacings_;
    degenerate_pairs_ += other.degenerate_pairs_;
    max_sum_error_ = std::max(max_sum_error_, other.max_sum_error_);
}

uint64_t SpacingHistogram::degenerate(DegeneracyCount mode) const {
    return mode == DegeneracyCount::kSpacings ? degenerate_spacings_ : degenerate_pairs_;
}

double SpacingHistogram::degeneracy(DegeneracyCount mode) const {
    if (spacings_ == 0) return 0;
    return static_cast<double>(degenerate(mode)) / static_cast<double>(spacings_);
}

double SpacingHistogram::density(size_t k) const {
    if (spacings_ == 0) return 0;
    return static_cast<double>(counts_[k]) / (static_cast<double>(spacings_) * bin_width());
}

SpacingHistogram level_spacing(std::span<const PhaseSpectrum> spectra, size_t bins, double s_max, double epsilon) {
    SpacingHistogram h(bins, s_max, epsilon);
    for (const auto &s : spectra) h.add(s);
    return h;
}

double degeneracy_fraction(const SpacingHistogram &doped, const SpacingHistogram &baseline, DegeneracyCount mode) {
    const double g0 = baseline.degeneracy(mode);
    if (!(g0 > 0)) {
        throw ContractError("degeneracy baseline g(0) is zero");
    }
    return doped.degeneracy(mode) / g0;
}

DenseUnitary haar_unitary(Eigen::Index d, Rng &rng) {
    if (d < 2) throw ContractError("haar_unitary needs d >= 2");
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd z(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            double re = gauss(rng);
            double im = gauss(rng);
            z(i, j) = Amplitude(re, im);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const auto &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < d; ++j) {
        const Amplitude rjj = r(j, j);
        const double mag = std::abs(rjj);
        if (mag > 0) q.col(j) *= rjj / mag;
    }
    return DenseUnitary(std::move(q));
}

}  // namespace tdoped
