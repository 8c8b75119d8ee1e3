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

#ifndef TDOPED_SPECTRA_H
#define TDOPED_SPECTRA_H

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "tdoped/circuit.h"
#include "tdoped/rng.h"

namespace tdoped {

/// Default cap on qubits for dense d x d matrices.
inline constexpr unsigned kDenseQubitCap = 10;
/// Spacings below this many radians count as degenerate.
inline constexpr double kDegeneracyEpsilon = 1e-9;

/// Square unitary matrix. Dimension need not be a power of two.
class DenseUnitary {
   public:
    DenseUnitary() = default;
    explicit DenseUnitary(Eigen::MatrixXcd m);

    static DenseUnitary identity(Eigen::Index d) { return DenseUnitary(Eigen::MatrixXcd::Identity(d, d)); }

    Eigen::Index dimension() const { return m_.rows(); }
    const Eigen::MatrixXcd &matrix() const { return m_; }

    /// max |(U U^dag - I)_{ij}|, estimated from a few columns when d > 64.
    double unitarity_defect() const;

   private:
    Eigen::MatrixXcd m_;
};

/// Dense matrix of a Clifford tableau. Global phase is fixed by making the
/// first nonzero amplitude of U|0...0> real and positive.
DenseUnitary clifford_unitary(const CliffordTableau &t);

/// T gate diag(1, e^{i pi/4}).
Eigen::Matrix2cd t_gate_matrix();

/// Product of all layer matrices and T factors. Throws ResourceError above max_qubits.
DenseUnitary circuit_to_matrix(const Circuit &c, unsigned max_qubits = kDenseQubitCap);

/// Sorted eigenphases in [0, 2 pi).
struct PhaseSpectrum {
    std::vector<double> phases;
    size_t dimension() const { return phases.size(); }
};

/// Throws NumericalError if the eigensolver fails or a modulus drifts from 1 by more than 1e-9.
PhaseSpectrum eigenphases(const DenseUnitary &u);

/// Wraps an angle into [0, 2 pi).
double wrap_phase(double theta);

/// Histogram of ordered-pair eigenphase differences theta_i - theta_j mod 2 pi, i != j.
///
/// Bin k is centered on k * 2pi / bins, so exact rational multiples of 2 pi
/// with denominators dividing `bins` land in the middle of a bin.
class CorrelationHistogram {
   public:
    CorrelationHistogram(size_t bins, size_t dimension);

    void add(const PhaseSpectrum &s);
    void merge(const CorrelationHistogram &other);

    size_t bins() const { return counts_.size(); }
    size_t dimension() const { return dim_; }
    uint64_t samples() const { return samples_; }
    double bin_width() const;
    double bin_center(size_t k) const;
    size_t bin_of(double theta) const;
    const std::vector<uint64_t> &counts() const { return counts_; }

    /// Normalized so sum(density) * bin_width == 1.
    double density(size_t k) const;
    /// Standard error of density(k) from the spread of per-sample histograms.
    double density_stderr(size_t k) const;

   private:
    size_t dim_;
    uint64_t samples_ = 0;
    std::vector<uint64_t> counts_;
    std::vector<double> sum_sq_;
    std::vector<uint64_t> scratch_;
};

CorrelationHistogram correlation_function(std::span<const PhaseSpectrum> spectra, size_t bins);

/// CUE two-point density (1/2pi) d/(d-1) (1 - sin^2(d t/2) / (d^2 sin^2(t/2))), 2pi-periodic.
double chi_cue(double theta, double d);
/// Mean of chi_cue over [lo, hi] by composite Gauss-Legendre quadrature.
double chi_cue_average(double lo, double hi, double d);

/// Excess integrated density over chi_cue in bins centered within
/// [theta0 - window/2, theta0 + window/2]; clamped at 0.
double peak_weight(const CorrelationHistogram &h, double theta0, double window);

enum class DegeneracyCount {
    kSpacings,  // adjacent spacings below epsilon (sum of multiplicity - 1)
    kPairs,     // degenerate pairs within clusters (sum of m (m - 1) / 2)
};

/// Nearest-neighbour spacing statistics, spacings in units s = zeta d / 2 pi.
/// The wrap spacing theta_1 + 2 pi - theta_d is included.
class SpacingHistogram {
   public:
    SpacingHistogram(size_t bins = 200, double s_max = 5.0, double epsilon = kDegeneracyEpsilon);

    void add(const PhaseSpectrum &s);
    void merge(const SpacingHistogram &other);

    size_t bins() const { return counts_.size(); }
    double s_max() const { return s_max_; }
    double bin_width() const { return s_max_ / static_cast<double>(counts_.size()); }
    double bin_center(size_t k) const { return (static_cast<double>(k) + 0.5) * bin_width(); }
    const std::vector<uint64_t> &counts() const { return counts_; }
    uint64_t overflow() const { return overflow_; }
    uint64_t spacings() const { return spacings_; }
    uint64_t samples() const { return samples_; }
    uint64_t degenerate(DegeneracyCount mode = DegeneracyCount::kSpacings) const;
    /// Degenerate count per spacing, g.
    double degeneracy(DegeneracyCount mode = DegeneracyCount::kSpacings) const;
    /// Density over s; overflow counts toward the normalization.
    double density(size_t k) const;
    /// Largest |sum of spacings - 2 pi| seen in any sample.
    double max_sum_error() const { return max_sum_error_; }

   private:
    double s_max_;
    double epsilon_;
    std::vector<uint64_t> counts_;
    uint64_t overflow_ = 0;
    uint64_t spacings_ = 0;
    uint64_t samples_ = 0;
    uint64_t degenerate_spacings_ = 0;
    uint64_t degenerate_pairs_ = 0;
    double max_sum_error_ = 0;
};

SpacingHistogram level_spacing(std::span<const PhaseSpectrum> spectra, size_t bins = 200, double s_max = 5.0,
                               double epsilon = kDegeneracyEpsilon);

/// g(N_T) / g(0). Throws ContractError if the baseline has no degeneracies.
double degeneracy_fraction(const SpacingHistogram &doped, const SpacingHistogram &baseline,
                           DegeneracyCount mode = DegeneracyCount::kSpacings);

/// Haar-random d x d unitary: QR of a complex Ginibre matrix with the R
/// diagonal phases folded back into Q.
DenseUnitary haar_unitary(Eigen::Index d, Rng &rng);

}  // namespace tdoped

#endif
