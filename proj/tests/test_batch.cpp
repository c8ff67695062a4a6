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

#include "maestro/batch.hpp"
#include "maestro/errors.hpp"

#include "models.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>

using namespace maestro;

namespace {

// First three circuits of each family: the smallest ones.
std::vector<Circuit> small_suite() {
    const auto suite = generate_torture_suite(5);
    std::vector<Circuit> out;
    for (std::size_t f = 0; f < 3; ++f) {
        for (std::size_t i = 0; i < 3; ++i) {
            out.push_back(suite[30 * f + i]);
        }
    }
    return out;
}

std::filesystem::path scratch_dir(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST(Suite, ShapeAndFamilies) {
    const auto suite = generate_torture_suite(1);
    ASSERT_EQ(suite.size(), 90u);
    std::set<std::string> names;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const Circuit &c = suite[i];
        names.insert(c.name);
        EXPECT_TRUE(is_terminal_measurement_only(c));
        EXPECT_TRUE(has_measurements(c));
        EXPECT_GE(c.n_qubits, 4u);
        if (i < 30) {
            EXPECT_EQ(c.name.rfind("a_clifford", 0), 0u);
            EXPECT_TRUE(is_clifford(c)) << c.name;
            EXPECT_LE(c.n_qubits, 24u);
        } else if (i < 60) {
            EXPECT_EQ(c.name.rfind("b_lowent", 0), 0u);
            EXPECT_LE(c.n_qubits, 24u);
        } else {
            EXPECT_EQ(c.name.rfind("c_highent", 0), 0u);
            EXPECT_FALSE(is_clifford(c)) << c.name;
            EXPECT_LE(c.n_qubits, 12u);
        }
    }
    EXPECT_EQ(names.size(), 90u);
    EXPECT_TRUE(std::is_sorted(suite.begin(), suite.end(),
                               [](const Circuit &a, const Circuit &b) { return a.name < b.name; }));
}

TEST(Suite, DeterministicPerSeed) {
    EXPECT_EQ(generate_torture_suite(3), generate_torture_suite(3));
    EXPECT_NE(generate_torture_suite(3), generate_torture_suite(4));
}

TEST(Suite, WrittenFilesParseBack) {
    const auto dir = scratch_dir("maestro_suite_test");
    const auto paths = write_torture_suite(dir.string(), 2);
    ASSERT_EQ(paths.size(), 90u);
    const auto suite = generate_torture_suite(2);
    for (std::size_t i = 0; i < paths.size(); i += 7) {
        std::ifstream in(paths[i]);
        const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        EXPECT_EQ(parse_qasm(text), suite[i]);
    }
    std::filesystem::remove_all(dir);
}

TEST(Policy, Names) {
    for (auto p : {BatchPolicy::FixedSvThreshold, BatchPolicy::FixedMps, BatchPolicy::Auto, BatchPolicy::FixedStab}) {
        EXPECT_EQ(policy_from_name(policy_name(p)), p);
    }
    EXPECT_FALSE(policy_from_name("fastest").has_value());
}

TEST(Batch, TotalsAreSumsOfRecords) {
    const auto model = models::shaped();
    const auto circuits = small_suite();
    BatchOptions opt;
    opt.shots = 200;
    opt.mirror_shots = 200;
    for (auto p : {BatchPolicy::FixedSvThreshold, BatchPolicy::FixedMps, BatchPolicy::Auto}) {
        const BatchReport r = run_batch(circuits, p, &model, opt);
        ASSERT_EQ(r.circuits.size(), circuits.size());
        double wall = 0, pred = 0;
        for (const auto &rec : r.circuits) {
            wall += rec.wall_seconds;
            pred += rec.prediction_seconds;
            EXPECT_TRUE(rec.error.empty()) << rec.name << ": " << rec.error;
        }
        EXPECT_DOUBLE_EQ(r.wall_seconds(), wall);
        EXPECT_DOUBLE_EQ(r.prediction_seconds(), pred);
        EXPECT_DOUBLE_EQ(r.total_seconds(), wall + pred);
        EXPECT_EQ(r.failures(), 0u);
        if (p != BatchPolicy::Auto) {
            EXPECT_EQ(pred, 0.0);
        }

        const auto j = nlohmann::json::parse(r.to_json());
        EXPECT_EQ(j.at("policy"), std::string(policy_name(p)));
        EXPECT_EQ(j.at("circuits").size(), circuits.size());
        EXPECT_DOUBLE_EQ(j.at("totals").at("total_seconds").get<double>(), wall + pred);
        EXPECT_EQ(j.at("totals").at("failures").get<std::size_t>(), 0u);
    }
}

TEST(Batch, RoutingFollowsPolicy) {
    const auto model = models::shaped();
    const auto circuits = small_suite();
    BatchOptions opt;
    opt.shots = 100;
    opt.mirror_shots = 100;
    const auto mps = run_batch(circuits, BatchPolicy::FixedMps, &model, opt);
    for (const auto &rec : mps.circuits) {
        EXPECT_EQ(rec.backend, BackendKind::Mps);
        ASSERT_TRUE(rec.chi && rec.fidelity);
        EXPECT_GE(*rec.fidelity, 0.95);
    }
    const auto sv = run_batch(circuits, BatchPolicy::FixedSvThreshold, &model, opt);
    for (const auto &rec : sv.circuits) {
        EXPECT_EQ(rec.backend, BackendKind::StateVector);
    }
    const auto stab = run_batch(circuits, BatchPolicy::FixedStab, &model, opt);
    std::size_t non_clifford = 0;
    for (std::size_t i = 0; i < circuits.size(); ++i) {
        non_clifford += is_clifford(circuits[i]) ? 0 : 1;
        EXPECT_EQ(stab.circuits[i].error.empty(), is_clifford(circuits[i]));
    }
    EXPECT_EQ(stab.failures(), non_clifford);
    const auto automatic = run_batch(circuits, BatchPolicy::Auto, &model, opt);
    for (std::size_t i = 0; i < circuits.size(); ++i) {
        const auto report = select_backend(circuits[i], model, opt.shots);
        EXPECT_EQ(automatic.circuits[i].backend, report.chosen);
        EXPECT_TRUE(automatic.circuits[i].predicted_seconds.has_value());
    }
    EXPECT_THROW(run_batch(circuits, BatchPolicy::Auto, nullptr, opt), CalibrationError);
}

TEST(Batch, CountsReproducible) {
    const auto model = models::shaped();
    const auto circuits = small_suite();
    BatchOptions opt;
    opt.shots = 300;
    opt.seed = 17;
    const auto a = run_batch(circuits, BatchPolicy::Auto, &model, opt);
    const auto b = run_batch(circuits, BatchPolicy::Auto, &model, opt);
    for (std::size_t i = 0; i < circuits.size(); ++i) {
        EXPECT_EQ(a.circuits[i].counts, b.circuits[i].counts) << circuits[i].name;
        std::size_t total = 0;
        for (const auto &[k, v] : a.circuits[i].counts) {
            total += v;
            EXPECT_EQ(k.size(), circuits[i].n_clbits);
        }
        EXPECT_EQ(total, 300u);
    }
}

TEST(Batch, DirectoryRecordsParseFailures) {
    const auto dir = scratch_dir("maestro_batch_dir");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "a_good.qasm") << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\n"
                                          "h q[0];\ncx q[0],q[1];\nmeasure q -> c;\n";
    std::ofstream(dir / "b_bad.qasm") << "OPENQASM 2.0;\nqreg q[1];\nfoo q[0];\n";
    std::ofstream(dir / "notes.txt") << "ignored";
    const auto model = models::shaped();
    BatchOptions opt;
    opt.shots = 50;
    const auto r = run_batch(dir.string(), BatchPolicy::Auto, &model, opt);
    ASSERT_EQ(r.circuits.size(), 2u);
    EXPECT_EQ(r.circuits[0].name, "a_good");
    EXPECT_TRUE(r.circuits[0].error.empty());
    EXPECT_EQ(r.circuits[1].name, "b_bad");
    EXPECT_FALSE(r.circuits[1].error.empty());
    EXPECT_EQ(r.failures(), 1u);
    std::filesystem::remove_all(dir);
}
