// Copyright 2026 The design-certify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "dcert/io.hpp"
#include "dcert/rng.hpp"
#include "test_util.hpp"

using namespace dcert;

TEST_CASE("real formatting keeps 17 significant digits and round-trips") {
    CHECK(format_real(0.5) == "5.0000000000000000e-01");
    Rng rng(135);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = rng.normal() * std::pow(10.0, static_cast<double>(
                                                            static_cast<int>(rng.next_u64() % 9)) -
                                                            4.0);
        CHECK(std::stod(format_real(x)) == x);
    }
}

TEST_CASE("ensemble documents round-trip byte for byte") {
    const StateEnsemble tetra = tetrahedron_sic();
    const std::string text = ensemble_to_string(tetra);
    const StateEnsemble back = parse_ensemble(text);
    CHECK(back.dim() == 2);
    CHECK(back.size() == 4);
    CHECK(ensemble_to_string(back) == text);
    for (int x = 0; x < 4; ++x) {
        for (int i = 0; i < 2; ++i) {
            CHECK(back.state(x).pure_state()[i] == tetra.state(x).pure_state()[i]);
        }
    }
}

TEST_CASE("mixed-state ensemble documents round-trip") {
    Rng rng(975);
    std::vector<State> states;
    states.push_back(State::mixed(testutil::random_density(3, rng)));
    states.push_back(State::pure(testutil::random_pure(3, rng)));
    states.push_back(State::mixed(testutil::random_density(3, rng)));
    const StateEnsemble ens(3, std::move(states));
    const std::string text = ensemble_to_string(ens);
    const StateEnsemble back = parse_ensemble(text);
    CHECK(ensemble_to_string(back) == text);
    CHECK_FALSE(back.state(0).is_pure());
    CHECK(back.state(1).is_pure());
}

TEST_CASE("ensemble parser rejects malformed documents") {
    CHECK_THROWS_AS(parse_ensemble("not json"), FormatError);
    CHECK_THROWS_AS(parse_ensemble("{\"dim\": 2}"), FormatError);
    CHECK_THROWS_AS(parse_ensemble("{\"dim\": 2, \"states\": [[[1, 0]]]}"), FormatError);
    // Structurally valid but physically invalid: not normalized.
    CHECK_THROWS_AS(parse_ensemble("{\"dim\": 2, \"states\": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]}"),
                    FormatError);
}

TEST_CASE("behavior tables round-trip through text") {
    const StateEnsemble tetra = tetrahedron_sic();
    const BehaviorTable behavior =
        simulate_behavior(tetra, usd_measurements_for(tetra), NoiseModel(0.005, 0.55));
    const std::string text = behavior_to_string(behavior);
    const BehaviorTable back = parse_behavior(text);
    CHECK(back.n_states() == 4);
    CHECK(back.dim() == 2);
    for (const auto& [y1, y2] : state_pairs(4)) {
        for (int x = 0; x < 4; ++x) {
            for (Outcome b : kOutcomes) {
                CHECK(back.prob(x, y1, y2, b) == behavior.prob(x, y1, y2, b));
            }
        }
    }
    CHECK(behavior_to_string(back) == text);
}

TEST_CASE("behavior parser rejects malformed tables") {
    CHECK_THROWS_AS(parse_behavior(""), FormatError);
    CHECK_THROWS_AS(parse_behavior("x y1 y2 b p\n"), FormatError); // no dim, no rows
    CHECK_THROWS_AS(parse_behavior("# dim 2\nwrong header\n1 1 2 1 0.5\n"), FormatError);
    // Incomplete: a single row.
    CHECK_THROWS_AS(parse_behavior("# dim 2\nx y1 y2 b p\n1 1 2 1 1.0\n"), FormatError);

    // A complete, consistent two-state table parses.
    const std::string good =
        "# dim 2\n"
        "x y1 y2 b p\n"
        "1 1 2 1 5.0000000000000000e-01\n"
        "1 1 2 2 0.0000000000000000e+00\n"
        "1 1 2 perp 5.0000000000000000e-01\n"
        "2 1 2 1 0.0000000000000000e+00\n"
        "2 1 2 2 5.0000000000000000e-01\n"
        "2 1 2 perp 5.0000000000000000e-01\n";
    const BehaviorTable table = parse_behavior(good);
    CHECK(table.prob(0, 0, 1, Outcome::first) == 0.5);

    // Rows that break normalization fail validation.
    std::string bad = good;
    bad.replace(bad.find("5.0000000000000000e-01"), 22, "9.0000000000000000e-01");
    CHECK_THROWS_AS(parse_behavior(bad), FormatError);
}

TEST_CASE("atomic writes land complete files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "dcert-io-test";
    fs::create_directories(dir);
    const std::string path = (dir / "ensemble.json").string();
    write_ensemble(path, tetrahedron_sic());
    CHECK(read_ensemble(path).size() == 4);
    CHECK_FALSE(fs::exists(path + ".tmp"));
    fs::remove_all(dir);
}

TEST_CASE("report serialization carries config and fields") {
    CertificationReport report;
    report.n_states = 4;
    report.d_assumed = 2;
    report.order = 2;
    report.score = 2.0 / 3.0;
    report.bound = 2.0 / 3.0;
    report.design_certified = true;
    report.eta_lower = 0.318;
    report.notes.push_back("eps=0");
    const std::string json = report_to_json("certify-design", {{"seed", "7"}}, report);
    CHECK(json.find("\"command\": \"certify-design\"") != std::string::npos);
    CHECK(json.find("\"seed\": \"7\"") != std::string::npos);
    CHECK(json.find("\"eta_lower\": 0.318") != std::string::npos);
    CHECK(json.find("min_dimension") == std::string::npos); // absent when not computed
}
