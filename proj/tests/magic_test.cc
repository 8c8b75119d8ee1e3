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

#include "tdoped/magic.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.h"
#include "tdoped/errors.h"

namespace tdoped {
namespace {

const double kMH = 2 - std::log2(3.0);

StateVector from_dense(const oracle::Vec &v) { return StateVector(std::vector<Amplitude>(v.data(), v.data() + v.size())); }

oracle::Vec to_dense(const StateVector &s) {
    oracle::Vec v(static_cast<Eigen::Index>(s.dimension()));
    for (size_t i = 0; i < s.dimension(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
    return v;
}

StateVector magic_state(unsigned n, Rng &rng) {
    auto psi = StateVector::zero(n);
    apply_circuit(psi, build_brickwall(n, default_depth(n), std::min(2 * n, 5 * n * n), rng));
    return psi;
}

TEST(StateVector, ConstructionChecks) {
    EXPECT_THROW(StateVector({1.0, 1.0}), ContractError);
    EXPECT_THROW(StateVector({1.0, 0.0, 0.0}), DimensionError);
    EXPECT_THROW(StateVector::normalized({0.0, 0.0}), ContractError);
    const auto s = StateVector::normalized({3.0, 4.0});
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
    EXPECT_EQ(StateVector::zero(3).dimension(), 8u);
}

TEST(Gates, ApplyMatchesDenseEmbedding) {
    Rng rng(51);
    for (unsigned n = 2; n <= 4; ++n) {
        const auto dense = oracle::random_state(size_t{1} << n, rng);
        for (unsigned q = 0; q + 1 < n; ++q) {
            const auto g = two_qubit_clifford_from_index(static_cast<uint32_t>(rng() % kTwoQubitCliffordCount));
            const Eigen::Matrix4cd m = clifford_unitary(g).matrix();
            auto psi = from_dense(dense);
            apply_gate(psi, q, q + 1, m);
            EXPECT_LT((to_dense(psi) - oracle::embed(m, n, q) * dense).norm(), 1e-12);
            auto phi = from_dense(dense);
            apply_t(phi, q);
            EXPECT_LT((to_dense(phi) - oracle::embed(oracle::t_gate(), n, q) * dense).norm(), 1e-12);
            auto chi = from_dense(dense);
            apply_gate(chi, q + 1, oracle::hadamard());
            EXPECT_LT((to_dense(chi) - oracle::embed(oracle::hadamard(), n, q + 1) * dense).norm(), 1e-12);
        }
    }
    auto psi = StateVector::zero(2);
    EXPECT_THROW(apply_t(psi, 2), ContractError);
    EXPECT_THROW(apply_gate(psi, 1, 1, Eigen::Matrix4cd::Identity()), ContractError);
}

TEST(Gates, TensorMatchesKronecker) {
    Rng rng(52);
    const auto a = oracle::random_state(2, rng), b = oracle::random_state(4, rng);
    EXPECT_LT((to_dense(tensor(from_dense(a), from_dense(b))) - oracle::kron(a, b)).norm(), 1e-12);
}

TEST(Sre, GoldenValues) {
    for (unsigned n = 1; n <= 5; ++n) EXPECT_NEAR(sre(StateVector::zero(n)), 0.0, 1e-9);
    const double theta = std::acos(1 / std::sqrt(3.0));
    EXPECT_NEAR(sre(bloch_state(theta, std::numbers::pi / 4)), std::log2(1.5), 1e-9);
    auto th = StateVector::zero(1);
    apply_gate(th, 0, oracle::hadamard());
    apply_t(th, 0);
    EXPECT_NEAR(sre(th), kMH, 1e-9);
    EXPECT_NEAR(h_state_magic(), kMH, 1e-15);
    EXPECT_NEAR(sre(appendix_a_example_state()), std::log2(4.5), 1e-9);
}

TEST(Sre, MatchesDenseDefinitionAndFastPath) {
    Rng rng(53);
    for (unsigned n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto dense = oracle::random_state(size_t{1} << n, rng);
            const auto psi = from_dense(dense);
            if (n <= 3) EXPECT_NEAR(sre(psi), oracle::sre(dense, n), 1e-9);
            EXPECT_NEAR(sre(psi, SreMethod::kFast), sre(psi, SreMethod::kDirect), 1e-9);
        }
    }
}

TEST(Sre, StringDistributionIsNormalized) {
    Rng rng(54);
    for (unsigned n = 1; n <= 4; ++n) {
        const auto xi = string_distribution(from_dense(oracle::random_state(size_t{1} << n, rng)));
        double sum = 0;
        for (double v : xi) {
            EXPECT_GE(v, 0);
            sum += v;
        }
        EXPECT_NEAR(sum, 1.0, 1e-9);
    }
}

TEST(Sre, CliffordInvariance) {
    Rng rng(55);
    for (unsigned n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            auto psi = magic_state(n, rng);
            const double before = sre(psi);
            apply_circuit(psi, build_brickwall(n, default_depth(n), 0, rng));
            EXPECT_NEAR(sre(psi), before, 1e-9);
            apply_clifford(psi, circuit_clifford_part(build_brickwall(n, 3, 0, rng)));
            EXPECT_NEAR(sre(psi), before, 1e-9);
        }
    }
}

TEST(Sre, AdditiveOnProducts) {
    Rng rng(56);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = from_dense(oracle::random_state(2, rng));
        const auto b = from_dense(oracle::random_state(2, rng));
        const auto c = from_dense(oracle::random_state(4, rng));
        EXPECT_NEAR(sre(tensor(a, b)), sre(a) + sre(b), 1e-9);
        EXPECT_NEAR(sre(tensor(c, a)), sre(c) + sre(a), 1e-9);
    }
}

TEST(Sre, StabilizerStatesHaveNoMagic) {
    for (const auto &s : single_qubit_stabilizer_states()) EXPECT_NEAR(sre(s), 0, 1e-12);
    Rng rng(57);
    for (unsigned n = 1; n <= 5; ++n) EXPECT_NEAR(sre(random_stabilizer_state(n, rng)), 0, 1e-9);
}

TEST(Sre, UpperBound) {
    EXPECT_NEAR(sre_upper_bound(1), std::log2(1.5), 1e-15);
    EXPECT_NEAR(sre_upper_bound(3), std::log2(4.5), 1e-15);
    Rng rng(58);
    for (unsigned n = 1; n <= 4; ++n) {
        for (int k = 0; k < 50; ++k) {
            EXPECT_LE(sre(from_dense(oracle::random_state(size_t{1} << n, rng))), sre_upper_bound(n) + 1e-9);
        }
    }
}

TEST(Distribution, CliffordCircuitsGiveZero) {
    MagicEnsembleOptions opts{4, 20, 0, 64, 3, 1, SreMethod::kDirect};
    const auto dist = sample_magic_distribution(opts);
    ASSERT_EQ(dist.samples(), 64u);
    for (double v : dist.values()) EXPECT_NEAR(v, 0, 1e-9);
    EXPECT_EQ(dist.distinct_values().size(), 1u);
}

TEST(Distribution, SingleTIsBimodal) {
    MagicEnsembleOptions opts{4, 20, 1, 400, 4, 1, SreMethod::kFast};
    const auto dist = sample_magic_distribution(opts);
    const auto values = dist.distinct_values();
    ASSERT_EQ(values.size(), 2u);
    EXPECT_NEAR(values[0].first, 0, 1e-9);
    EXPECT_NEAR(values[1].first, kMH, 1e-9);
    EXPECT_TRUE(dist.is_discrete());
    const auto rho = dist.density_histogram();
    ASSERT_EQ(rho.size(), 2u);
    EXPECT_NEAR(rho[0].second + rho[1].second, 1.0, 1e-12);
}

TEST(Distribution, WorkerCountDoesNotChangeValues) {
    MagicEnsembleOptions opts{3, 15, 4, 50, 5, 1, SreMethod::kFast};
    const auto one = sample_magic_distribution(opts);
    opts.workers = 3;
    EXPECT_EQ(sample_magic_distribution(opts).values(), one.values());
}

TEST(Distribution, CapacityError) {
    MagicEnsembleOptions opts{2, 2, 5, 1, 0, 1, SreMethod::kFast};
    EXPECT_THROW(sample_magic_distribution(opts), CapacityError);
}

TEST(Distribution, ContinuousHistogramIsADensity) {
    MagicDistribution d(2);
    Rng rng(59);
    for (int k = 0; k < 500; ++k) d.add(sre(from_dense(oracle::random_state(4, rng))));
    ASSERT_FALSE(d.is_discrete());
    double total = 0;
    for (const auto &[m, rho] : d.density_histogram(0.01)) total += rho * 0.01;
    EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(NonStabilizingPower, SingleTOnOneQubitIsExact) {
    const Circuit c(1, {{}}, {{0, 0}});
    Rng rng(60);
    const auto est = non_stabilizing_power_mc(c, 0, rng);
    EXPECT_TRUE(est.exact);
    EXPECT_EQ(est.n_states, 6u);
    EXPECT_NEAR(est.mean, 2.0 / 3.0 * kMH, 1e-12);
}

TEST(NonStabilizingPower, CliffordIsZeroAndDenseOverloadAgrees) {
    Rng rng(61);
    const auto c = build_brickwall(3, 15, 0, rng);
    const auto est = non_stabilizing_power_mc(c, 20, rng);
    EXPECT_NEAR(est.mean, 0, 1e-9);
    const auto doped = build_brickwall(3, 15, 3, rng);
    Rng r1(62), r2(62);
    const auto a = non_stabilizing_power_mc(doped, 30, r1);
    const auto b = non_stabilizing_power_mc(circuit_to_matrix(doped), 30, r2);
    EXPECT_NEAR(a.mean, b.mean, 1e-9);
    EXPECT_THROW(non_stabilizing_power_mc(c, 1, rng), ContractError);
}

TEST(Haar, BaselineRespectsLowerBound) {
    const auto dist = haar_magic_baseline(3, 2000, 63);
    EXPECT_GT(dist.mean_density(), haar_density_lower_bound(3));
    EXPECT_NEAR(haar_density_lower_bound(6), std::log2(67.0 / 4) / 6, 1e-15);
}

TEST(Haar, SingleQubitMeanMatchesBlochAverage) {
    const auto dist = haar_magic_baseline(1, 20000, 64);
    const auto map = bloch_magic_map(200);
    EXPECT_LT(std::abs(dist.mean() - map.haar_mean), 2 * dist.stderr_mean());
}

TEST(Bloch, ExtremaAtOctahedronAndCubeDirections) {
    const auto map = bloch_magic_map(24);
    EXPECT_NEAR(bloch_sre(0, 0), 0, 1e-12);
    EXPECT_NEAR(bloch_sre(std::numbers::pi / 2, 0), 0, 1e-12);
    EXPECT_NEAR(bloch_sre(std::numbers::pi / 2, std::numbers::pi / 2), 0, 1e-12);
    EXPECT_NEAR(bloch_sre(std::numbers::pi, 0), 0, 1e-12);
    const double theta = std::acos(1 / std::sqrt(3.0));
    for (int k = 0; k < 4; ++k) {
        const double phi = std::numbers::pi / 4 + k * std::numbers::pi / 2;
        EXPECT_NEAR(bloch_sre(theta, phi), std::log2(1.5), 1e-9);
        EXPECT_NEAR(bloch_sre(std::numbers::pi - theta, phi), std::log2(1.5), 1e-9);
    }
    EXPECT_LE(map.max_m2, std::log2(1.5) + 1e-12);
    double total = 0;
    for (double v : map.density) total += v * map.density_bin_width;
    EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(AppendixA, Report) {
    const auto r = verify_appendix_a(1, 8);
    EXPECT_TRUE(r.n1_pass);
    EXPECT_EQ(r.n3_tuples, 65535u);
    EXPECT_EQ(r.n3_maximal_tuples, 448u);
    EXPECT_LT(r.n2_max_found, r.n2_bound);
    EXPECT_GT(r.n2_margin, 0);
}

}  // namespace
}  // namespace tdoped
