// Copyright 2026 The Maestro Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "maestro/errors.hpp"
#include "maestro/generators.hpp"
#include "maestro/metrics.hpp"
#include "maestro/mps.hpp"
#include "maestro/statevector.hpp"

#include "oracle.hpp"
#include "stats.hpp"

#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <cmath>
#include <limits>

using namespace maestro;

namespace {

double max_diff(const std::vector<complex_t> &a, std::span<const complex_t> b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

MpsState build(const Circuit &c, std::size_t chi) {
    MpsState s(c.n_qubits, chi);
    for (const auto &inst : c.ops) {
        s.apply(inst);
    }
    return s;
}

// Schmidt rank of the cut between qubits [0, cut] and the rest, from an SVD of
// the reshaped reference vector.
std::size_t schmidt_rank(const std::vector<std::complex<double>> &amp, std::size_t n, std::size_t cut) {
    const std::size_t rows = std::size_t{1} << (cut + 1), cols = std::size_t{1} << (n - cut - 1);
    Eigen::MatrixXcd m(rows, cols);
    for (std::size_t i = 0; i < amp.size(); ++i) {
        m(i % rows, i / rows) = amp[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    std::size_t r = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        r += svd.singularValues()(k) > 1e-10 ? 1 : 0;
    }
    return r;
}

} // namespace

TEST(Mps, HadamardOnSiteZero) {
    MpsState s(3, 8);
    s.apply(Instruction{GateKind::H, {}, {0}, std::nullopt});
    EXPECT_NEAR(std::abs(s.site(0, 0)(0, 0)), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(s.site(0, 1)(0, 0)), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(s.bond_dimensions(), (std::vector<std::size_t>{1, 1}));
}

TEST(Mps, XOnQubitOne) {
    Circuit c(3, 0);
    c.x(1);
    const auto amp = build(c, 4).to_amplitudes();
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(std::abs(amp[i]), i == 0b010 ? 1.0 : 0.0, 1e-15);
    }
}

TEST(Mps, RzOnRandomStateMatchesStateVector) {
    Rng rng(21);
    Circuit c = gen::random_circuit(4, 30, rng);
    c.rz(0.7, 2);
    const StateVector ref = sv::simulate(c);
    EXPECT_LT(max_diff(build(c, 16).to_amplitudes(), ref.amplitudes()), 1e-10);
}

TEST(Mps, SingleQubitGateLeavesBondsAlone) {
    Rng rng(22);
    MpsState s = build(gen::random_circuit(5, 40, rng), 32);
    const auto before = s.bond_dimensions();
    s.apply(Instruction{GateKind::U, {0.3, 1.1, -0.4}, {3}, std::nullopt});
    EXPECT_EQ(s.bond_dimensions(), before);
}

TEST(Mps, CxOnOneZero) {
    Circuit c(2, 0);
    c.x(0).cx(0, 1);
    const MpsState s = build(c, 4);
    EXPECT_EQ(s.bond_dimension(0), 1u);
    EXPECT_NEAR(std::abs(s.to_amplitudes()[0b11]), 1.0, 1e-15);
}

TEST(Mps, GhzFourBondsAreTwo) {
    const Circuit c = gen::ghz(4);
    const MpsState s = build(c, 4);
    const auto ref = oracle::simulate(c).amp;
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(s.bond_dimension(i), schmidt_rank(ref, 4, i));
        EXPECT_EQ(s.bond_dimension(i), 2u);
    }
    const auto amp = s.to_amplitudes();
    EXPECT_NEAR(std::abs(amp[0] - 1 / std::sqrt(2.0)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(amp[15] - 1 / std::sqrt(2.0)), 0.0, 1e-10);
}

TEST(Mps, GhzFourAtChiOneIsTruncated) {
    const Circuit c = gen::ghz(4);
    EXPECT_GT(build(c, 1).truncation_error(), 0.0);
    EXPECT_LT(mirror_fidelity(c, BackendKind::Mps, 1, 1000, 3), 0.95);
}

TEST(Mps, NonAdjacentGateMatchesStateVector) {
    Circuit c(5, 0);
    c.h(0).t(0).h(4).cx(0, 4).cz(4, 1).swap(0, 3).ry(0.4, 2).cx(3, 1);
    const StateVector ref = sv::simulate(c);
    EXPECT_LT(max_diff(build(c, 32).to_amplitudes(), ref.amplitudes()), 1e-10);
}

TEST(MpsRun, ProductCircuitOnThirtyQubits) {
    Rng rng(23);
    Circuit c(30, 30);
    for (std::size_t q = 0; q < 30; ++q) {
        c.ry(rng.uniform() * M_PI, q);
    }
    EXPECT_EQ(mps::simulate(c, 4).max_bond_dimension(), 1u);
    c.measure_all();
    mps::Options opt;
    opt.chi_max = 4;
    EXPECT_EQ(mps::run(c, 100, 1, opt).shots, 100u);
}

TEST(MpsRun, GhzTwentyAtChiTwo) {
    Circuit c = gen::ghz(20);
    c.measure_all();
    mps::Options opt;
    opt.chi_max = 2;
    const RunResult r = mps::run(c, 1000, 4, opt);
    for (const auto &[k, v] : r.counts) {
        EXPECT_TRUE(k == std::string(20, '0') || k == std::string(20, '1')) << k;
    }
    EXPECT_EQ(r.chi, std::optional<std::size_t>(2));
}

TEST(MpsRun, QaoaMatchesStateVectorDistribution) {
    Circuit c = gen::qaoa_layer(8, gen::ring_edges(8), 0.8, 0.35);
    c.measure_all();
    mps::Options opt;
    opt.chi_max = 256;
    const RunResult r = mps::run(c, 100000, 5, opt);
    EXPECT_GT(stats::gof_pvalue(r.counts, oracle::terminal_distribution(c)), 0.001);
}

TEST(MpsRun, MidCircuitMatchesBranchEnumeration) {
    Rng rng(24);
    Circuit c = gen::random_clifford_t(5, 30, rng);
    c.n_clbits = 5;
    c.measure(1, 4);
    c.h(1).cx(1, 3);
    c.reset(0);
    for (std::size_t q = 0; q < 4; ++q) {
        c.measure(q, q);
    }
    mps::Options opt;
    opt.chi_max = 64;
    const RunResult r = mps::run(c, 4096, 6, opt);
    EXPECT_GT(stats::gof_pvalue(r.counts, oracle::exact_distribution(c)), 0.001);
}

TEST(MpsRun, Errors) {
    EXPECT_THROW(mps::run(gen::ghz(3), 10, 1), NoMeasurementsError);
    Circuit c = gen::ghz(3);
    c.measure_all();
    EXPECT_THROW(mps::run(c, 0, 1), ValidationError);
    mps::Options zero;
    zero.chi_max = 0;
    EXPECT_THROW(mps::run(c, 10, 1, zero), ValidationError);
}

TEST(MpsRun, DeterministicAndThreadIndependent) {
    Rng rng(25);
    Circuit c = gen::hardware_efficient(8, 2, rng);
    c.measure_all();
    mps::Options a, b;
    a.run.max_threads = 1;
    b.run.max_threads = 3;
    EXPECT_EQ(mps::run(c, 2000, 9, a).counts, mps::run(c, 2000, 9, b).counts);
}

TEST(FidelityLoop, ProductCircuitAcceptsFirstIteration) {
    Circuit c(6, 0);
    for (std::size_t q = 0; q < 6; ++q) {
        c.rx(0.3 * double(q + 1), q);
    }
    c.measure_all();
    const auto r = mps::run_with_fidelity_loop(c, 500, 1);
    EXPECT_EQ(r.chi, 4u);
    EXPECT_EQ(r.iterations, 1u);
    EXPECT_DOUBLE_EQ(r.fidelity, 1.0);
    EXPECT_EQ(r.result.chi, std::optional<std::size_t>(4));
}

TEST(FidelityLoop, GhzSixStartingAtOneAcceptsAtTwo) {
    Circuit c = gen::ghz(6);
    const auto ref = oracle::simulate(c).amp;
    for (std::size_t cut = 0; cut < 5; ++cut) {
        ASSERT_EQ(schmidt_rank(ref, 6, cut), 2u);
    }
    c.measure_all();
    mps::FidelityLoopOptions opt;
    opt.chi_init = 1;
    const auto r = mps::run_with_fidelity_loop(c, 500, 2, opt);
    EXPECT_EQ(r.chi, 2u);
    EXPECT_EQ(r.iterations, 2u);
    EXPECT_GE(r.fidelity, 0.95);
}

TEST(FidelityLoop, InfeasibleAtCap) {
    Rng rng(26);
    Circuit c = gen::random_clifford_t(10, 200, rng);
    c.measure_all();
    mps::FidelityLoopOptions opt;
    opt.chi_init = 1;
    opt.chi_cap = 2;
    EXPECT_THROW(mps::run_with_fidelity_loop(c, 100, 1, opt), InfeasibleAtCapError);
    opt.threshold = 0.0;
    EXPECT_THROW(mps::run_with_fidelity_loop(c, 100, 1, opt), ValidationError);
}

TEST(MpsProperty, ExactAtLargeChi) {
    Rng rng(27);
    for (int trial = 0; trial < 30; ++trial) {
        const Circuit c = gen::random_circuit(6, 60, rng);
        const StateVector ref = sv::simulate(c);
        EXPECT_LT(max_diff(mps::simulate(c, 64).to_amplitudes(), ref.amplitudes()), 1e-9);
    }
}

TEST(MpsProperty, TruncationErrorNonIncreasingInChi) {
    Rng rng(28);
    std::vector<Circuit> circuits{gen::ghz(8), gen::ghz(12)};
    for (int i = 0; i < 4; ++i) {
        circuits.push_back(gen::qaoa_layer(8, gen::ring_edges(8), rng.uniform() * M_PI, rng.uniform() * M_PI));
    }
    for (const auto &c : circuits) {
        double previous = std::numeric_limits<double>::infinity();
        for (std::size_t chi : {1, 2, 4, 8}) {
            const double e = mps::simulate(c, chi).truncation_error();
            EXPECT_LE(e, previous + 1e-12) << "chi=" << chi;
            previous = e;
        }
    }
}

TEST(MpsProperty, BondBoundAndNormAfterEveryInstruction) {
    Rng rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng.below(8);
        const std::size_t chi = std::size_t{1} << rng.below(5);
        MpsState s(n, chi);
        for (const auto &inst : gen::random_circuit(n, 40, rng).ops) {
            s.apply(inst);
            ASSERT_NEAR(s.norm_squared(), 1.0, 1e-10);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const std::size_t cap = std::min<std::size_t>(chi, std::size_t{1} << std::min(i + 1, n - i - 1));
                ASSERT_LE(s.bond_dimension(i), cap);
                ASSERT_EQ(s.site(i, 0).cols(), s.site(i + 1, 0).rows());
            }
        }
    }
}

TEST(MpsProperty, SequentialSamplingIsSound) {
    Rng rng(30);
    for (int trial = 0; trial < 3; ++trial) {
        const std::size_t n = 4 + rng.below(7);
        Circuit c = gen::random_circuit(n, 6 * n, rng);
        c.measure_all();
        mps::Options opt;
        opt.chi_max = 64;
        const RunResult r = mps::run(c, 100000, 40 + trial, opt);
        EXPECT_GT(stats::gof_pvalue(r.counts, oracle::terminal_distribution(c)), 0.001) << "n=" << n;
    }
}
