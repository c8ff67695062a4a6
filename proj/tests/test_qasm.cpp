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

#include "maestro/circuit.hpp"
#include "maestro/errors.hpp"
#include "maestro/features.hpp"
#include "maestro/generators.hpp"
#include "maestro/statevector.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace maestro;

namespace {

ParseError::Kind parse_error_kind(const std::string &src) {
    try {
        parse_qasm(src);
    } catch (const ParseError &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no ParseError for: " << src;
    return ParseError::Kind::Syntax;
}

Instruction op(GateKind k, std::vector<std::size_t> q, std::vector<double> p = {}) {
    return Instruction{k, std::move(p), std::move(q), std::nullopt};
}

} // namespace

TEST(Qasm, ParsesGhzChain) {
    const Circuit c = parse_qasm("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3]; h q[0]; cx q[0],q[1]; cx q[1],q[2];");
    EXPECT_EQ(c.n_qubits, 3u);
    EXPECT_EQ(c.n_clbits, 0u);
    ASSERT_EQ(c.ops.size(), 3u);
    EXPECT_EQ(c.ops[0], op(GateKind::H, {0}));
    EXPECT_EQ(c.ops[1], op(GateKind::CX, {0, 1}));
    EXPECT_EQ(c.ops[2], op(GateKind::CX, {1, 2}));
}

TEST(Qasm, ParsesRotationAndMeasure) {
    const Circuit c = parse_qasm("qreg q[1]; creg c[1]; rz(0.5) q[0]; measure q[0]->c[0];");
    ASSERT_EQ(c.ops.size(), 2u);
    EXPECT_EQ(c.ops[0].kind, GateKind::Rz);
    EXPECT_DOUBLE_EQ(c.ops[0].params.at(0), 0.5);
    EXPECT_EQ(c.ops[1].kind, GateKind::Measure);
    EXPECT_EQ(c.ops[1].qubits, std::vector<std::size_t>{0});
    EXPECT_EQ(c.ops[1].clbit, std::optional<std::size_t>{0});
}

TEST(Qasm, IndexOutOfBounds) {
    EXPECT_EQ(parse_error_kind("qreg q[2]; cx q[0],q[5];"), ParseError::Kind::IndexOutOfBounds);
}

TEST(Qasm, DuplicateQubitRejected) {
    EXPECT_EQ(parse_error_kind("qreg q[2]; cx q[1],q[1];"), ParseError::Kind::DuplicateQubit);
}

TEST(Qasm, UnsupportedGateAndFeatures) {
    EXPECT_EQ(parse_error_kind("qreg q[1]; ccx q[0];"), ParseError::Kind::UnsupportedGate);
    EXPECT_EQ(parse_error_kind("qreg q[1]; creg c[1]; if(c==1) x q[0];"), ParseError::Kind::UnsupportedFeature);
    EXPECT_EQ(parse_error_kind("gate foo a { h a; }"), ParseError::Kind::UnsupportedFeature);
}

TEST(Qasm, SyntaxErrorReportsPosition) {
    try {
        parse_qasm("qreg q[2];\nh q[0]\ncx q[0],q[1];");
        FAIL() << "expected a syntax error";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.kind(), ParseError::Kind::Syntax);
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.column(), 1u);
    }
}

TEST(Qasm, RegistersFlattenInDeclarationOrder) {
    const Circuit c = parse_qasm("qreg a[2]; qreg b[3]; creg m[2]; creg n[1]; x b[1]; measure b[2] -> n[0];");
    EXPECT_EQ(c.n_qubits, 5u);
    EXPECT_EQ(c.n_clbits, 3u);
    EXPECT_EQ(c.ops[0].qubits[0], 3u);
    EXPECT_EQ(c.ops[1].qubits[0], 4u);
    EXPECT_EQ(*c.ops[1].clbit, 2u);
}

TEST(Qasm, RegisterBroadcast) {
    const Circuit c = parse_qasm("qreg q[3]; creg c[3]; h q; measure q -> c;");
    ASSERT_EQ(c.ops.size(), 6u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(c.ops[i], op(GateKind::H, {i}));
        EXPECT_EQ(c.ops[3 + i].qubits[0], i);
        EXPECT_EQ(*c.ops[3 + i].clbit, i);
    }
}

TEST(Qasm, ExpressionsAndComments) {
    const Circuit c = parse_qasm("// header\nqreg q[1]; /* block */ u3(pi/2, -pi, 2*0.25^2) q[0]; rx(sin(pi/2)) q[0];");
    ASSERT_EQ(c.ops.size(), 2u);
    EXPECT_DOUBLE_EQ(c.ops[0].params[0], M_PI / 2);
    EXPECT_DOUBLE_EQ(c.ops[0].params[1], -M_PI);
    EXPECT_DOUBLE_EQ(c.ops[0].params[2], 0.125);
    EXPECT_DOUBLE_EQ(c.ops[1].params[0], 1.0);
}

TEST(Qasm, BarrierKeptAsMarker) {
    const Circuit c = parse_qasm("qreg q[2]; h q[0]; barrier q; h q[1];");
    ASSERT_EQ(c.ops.size(), 3u);
    EXPECT_EQ(c.ops[1].kind, GateKind::Barrier);
    EXPECT_EQ(c.ops[1].qubits.size(), 2u);
}

TEST(Qasm, RoundTripRandomCircuits) {
    Rng rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng.below(8);
        Circuit c = gen::random_circuit(n, rng.below(40), rng);
        if (rng.coin()) {
            c.reset(rng.below(n));
        }
        c.measure_all();
        const Circuit back = parse_qasm(to_qasm(c));
        ASSERT_EQ(back, c) << to_qasm(c);
    }
}

TEST(Circuit, BuilderValidates) {
    Circuit c(2, 1);
    EXPECT_THROW(c.cx(0, 0), ValidationError);
    EXPECT_THROW(c.h(2), ValidationError);
    EXPECT_THROW(c.measure(0, 1), ValidationError);
    EXPECT_THROW(c.add(GateKind::Rx, {0}), ValidationError);
}

TEST(Clifford, Classification) {
    Circuit a(2, 1);
    a.h(0).s(0).cx(0, 1).measure(0, 0);
    EXPECT_TRUE(is_clifford(a));
    Circuit b(2, 0);
    b.h(0).t(0).cx(0, 1);
    EXPECT_FALSE(is_clifford(b));
    Circuit r(1, 0);
    r.rz(M_PI / 2, 0);
    EXPECT_FALSE(is_clifford(r));
}

TEST(Inverse, Examples) {
    Circuit a(2, 0);
    a.h(0).cx(0, 1);
    EXPECT_EQ(inverse_circuit(a).ops, (std::vector<Instruction>{op(GateKind::CX, {0, 1}), op(GateKind::H, {0})}));
    Circuit t(1, 0);
    t.t(0);
    EXPECT_EQ(inverse_circuit(t).ops, std::vector<Instruction>{op(GateKind::Tdg, {0})});
    Circuit rs(1, 0);
    rs.rz(0.3, 0).s(0);
    EXPECT_EQ(inverse_circuit(rs).ops,
              (std::vector<Instruction>{op(GateKind::Sdg, {0}), op(GateKind::Rz, {0}, {-0.3})}));
    Circuit m(1, 1);
    m.measure(0, 0);
    EXPECT_THROW(inverse_circuit(m), ValidationError);
}

TEST(Inverse, MirrorReturnsToZero) {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(6);
        Circuit c = gen::random_circuit(n, 5 + rng.below(40), rng);
        const Circuit inv = inverse_circuit(c);
        c.ops.insert(c.ops.end(), inv.ops.begin(), inv.ops.end());
        const auto state = oracle::simulate(c);
        ASSERT_NEAR(std::abs(state.amp[0]), 1.0, 1e-10);
    }
}

TEST(Features, GhzThree) {
    Circuit c = gen::ghz(3);
    c.measure_all();
    const CircuitFeatures f = extract_features(c);
    EXPECT_EQ(f.n_qubits, 3u);
    EXPECT_TRUE(f.is_clifford);
    EXPECT_TRUE(f.terminal_measurement_only);
    EXPECT_EQ(f.count(GateClass::OneQubitClifford), 1u);
    EXPECT_EQ(f.count(GateClass::TwoQubit), 2u);
    EXPECT_EQ(f.count(GateClass::Measure), 3u);
    EXPECT_EQ(f.total_gates, 6u);
    EXPECT_EQ(f.entanglement_proxy, 1u);
    EXPECT_EQ(f.depth, 4u);
}

TEST(Features, SingleTMakesNonClifford) {
    Circuit c(2, 0);
    c.h(0).t(1).cx(0, 1);
    const auto f = extract_features(c);
    EXPECT_FALSE(f.is_clifford);
    EXPECT_EQ(f.count(GateClass::OneQubitNonClifford), 1u);
}

TEST(Features, TerminalDetection) {
    Circuit a(2, 2);
    a.h(0).measure(0, 0).h(1).measure(1, 1);
    EXPECT_TRUE(extract_features(a).terminal_measurement_only);
    Circuit b(2, 2);
    b.h(0).measure(0, 0).h(0);
    EXPECT_FALSE(extract_features(b).terminal_measurement_only);
    Circuit r(1, 1);
    r.reset(0).h(0).measure(0, 0);
    EXPECT_FALSE(extract_features(r).terminal_measurement_only);
}

// Recount by a second pass that shares nothing with the extractor.
TEST(Features, RecountCliffordT) {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        Circuit c = gen::random_clifford_t(8, 80, rng);
        c.measure_all();
        std::size_t c1 = 0, nc1 = 0, two = 0, meas = 0;
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> graph;
        std::vector<std::size_t> cuts(7, 0);
        for (const auto &inst : c.ops) {
            const std::string name(gate_name(inst.kind));
            if (name == "measure") {
                ++meas;
            } else if (inst.qubits.size() == 2) {
                ++two;
                const auto lo = std::min(inst.qubits[0], inst.qubits[1]);
                const auto hi = std::max(inst.qubits[0], inst.qubits[1]);
                ++graph[{lo, hi}];
                for (std::size_t k = lo; k < hi; ++k) {
                    ++cuts[k];
                }
            } else if (name == "t" || name == "tdg") {
                ++nc1;
            } else {
                ++c1;
            }
        }
        const auto f = extract_features(c);
        EXPECT_EQ(f.count(GateClass::OneQubitClifford), c1);
        EXPECT_EQ(f.count(GateClass::OneQubitNonClifford), nc1);
        EXPECT_EQ(f.count(GateClass::TwoQubit), two);
        EXPECT_EQ(f.count(GateClass::Measure), meas);
        EXPECT_EQ(f.interaction_graph, graph);
        EXPECT_EQ(f.entanglement_proxy, *std::max_element(cuts.begin(), cuts.end()));
    }
}

TEST(Features, InvariantsOnRandomCircuits) {
    Rng rng(9);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng.below(7);
        Circuit c = rng.coin() ? gen::random_circuit(n, rng.below(30), rng) : gen::random_clifford(n, rng.below(30), rng);
        c.n_clbits = n;
        for (std::size_t k = rng.below(4); k > 0; --k) {
            const std::size_t q = rng.below(n);
            switch (rng.below(3)) {
            case 0: c.measure(q, q); break;
            case 1: c.reset(q); break;
            default: c.h(q); break;
            }
        }
        const auto f = extract_features(c);
        std::size_t sum = 0;
        for (auto v : f.counts_by_class) {
            sum += v;
        }
        ASSERT_EQ(sum, f.total_gates);
        if (f.is_clifford) {
            ASSERT_EQ(f.count(GateClass::OneQubitNonClifford), 0u);
        }
        // Definition check, written independently.
        bool terminal = true;
        std::vector<bool> measured(n, false);
        for (const auto &inst : c.ops) {
            if (inst.kind == GateKind::Reset) {
                terminal = false;
            } else if (inst.kind == GateKind::Measure) {
                measured[inst.qubits[0]] = true;
            } else if (inst.kind != GateKind::Barrier) {
                for (auto q : inst.qubits) {
                    terminal = terminal && !measured[q];
                }
            }
        }
        ASSERT_EQ(f.terminal_measurement_only, terminal);
        ASSERT_EQ(extract_features(c), f);
    }
}
