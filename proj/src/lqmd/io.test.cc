// Copyright 2026 The lqmd Authors
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

#include "lqmd/io.h"

#include <random>
#include <sstream>

#include "gtest/gtest.h"

using namespace lqmd;

TEST(io, rational_and_amplitude_round_trip) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; i++) {
        Integer num = std::uniform_int_distribution<long>(-1000000, 1000000)(rng);
        Integer den = std::uniform_int_distribution<long>(1, 1000000)(rng);
        Rational q = make_rational(num, den) * pow2(std::uniform_int_distribution<long>(-300, 300)(rng));
        ASSERT_EQ(rational_from_json(Json::parse(rational_json(q).dump())), q);
        Rational sq = q < 0 ? Rational(-q) : q;
        auto a = ExactAmplitude::from_sq(sq == 0 ? 0 : (i % 2 ? 1 : -1), sq);
        ASSERT_EQ(amplitude_from_json(Json::parse(amplitude_json(a).dump())), a);
    }
}

TEST(io, rational_json_fields) {
    auto j = rational_json(Rational(2, 3));
    ASSERT_EQ(j["num"], "2");
    ASSERT_EQ(j["den"], "3");
    ASSERT_DOUBLE_EQ(j["float"].get<double>(), 2.0 / 3.0);
    // Far below the double range the float field flushes to zero; the exact fields are unaffected.
    auto tiny = rational_json(pow2(-5000));
    ASSERT_EQ(tiny["float"].get<double>(), 0.0);
    ASSERT_EQ(tiny["num"], "1");
}

TEST(io, branch_table_json) {
    auto params = PlanParams::make(8, Rational(2, 3));
    auto leaves = enumerate_branches(spm_plan(params), params);
    auto j = branches_json(leaves);
    ASSERT_EQ(j.size(), 128u);
    const auto &last = j.back();
    ASSERT_EQ(last["outcomes"], "1111111");
    ASSERT_EQ(last["class"], "ETA");
    ASSERT_EQ(last["level"], 8);
    ASSERT_EQ(rational_from_json(last["probability"]), leaves.back().probability);
    ASSERT_EQ(amplitude_from_json(last["bob_amp1"]), leaves.back().bob_state.amp1());
    for (auto key : {"outcomes", "probability", "class", "level", "bob_amp0", "bob_amp1"}) {
        ASSERT_TRUE(j.front().contains(key)) << key;
    }
}

TEST(io, branch_table_csv) {
    auto params = PlanParams::make(4, Rational(2, 3));
    std::ostringstream out;
    write_branches_csv(out, enumerate_branches(cpm_plan(params), params));
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    ASSERT_EQ(line.rfind("outcomes,probability_num,probability_den,probability_float,class,level,", 0), 0u);
    std::getline(in, line);
    ASSERT_EQ(line.rfind("000,1,8,0.125,MU_PLUS,1,1,1,16,0.25,1,1,16,0.25", 0), 0u) << line;
    int rows = 1;
    while (std::getline(in, line)) {
        rows++;
    }
    ASSERT_EQ(rows, 8);
}

TEST(io, protocol_json_schema) {
    ProtocolConfig config;
    config.seed = 2;
    config.trials = 2;
    config.groups = 3;
    config.per_group = 5;
    auto trials = run_protocol(config);
    auto j = protocol_json(config, trials, summarize(config, trials));
    ASSERT_EQ(j["config"]["seed"], 2);
    ASSERT_EQ(j["config"]["strategy"], "spm");
    ASSERT_EQ(j["per_trial"].size(), 2u);
    const auto &g = j["per_trial"][0]["per_group"];
    ASSERT_EQ(g.size(), 3u);
    for (const auto &row : g) {
        ASSERT_EQ(row["zeros"].get<int>() + row["ones"].get<int>(), 5);
        ASSERT_TRUE(row["decision"] == "cpm" || row["decision"] == "spm");
        ASSERT_TRUE(row.contains("ratio"));
    }
    ASSERT_TRUE(j["per_trial"][0].contains("eta_hits"));
    ASSERT_TRUE(j["per_trial"][0].contains("overall_decision"));
    ASSERT_EQ(rational_from_json(j["summary"]["oracle_p1"]), Rational(1, 2));
    ASSERT_EQ(j["summary"]["w_values"].size(), 5u);
    ASSERT_EQ(j["summary"]["w_values"][4]["value"], "inf");

    std::ostringstream csv;
    write_groups_csv(csv, trials);
    ASSERT_EQ(csv.str().rfind("trial,group,zeros,ones,ratio,decision,truth\n", 0), 0u);
}

TEST(io, report_json_and_table) {
    auto report = reference_checkpoints(PlanParams::make(8, Rational(2, 3)));
    auto j = report_json(report);
    ASSERT_EQ(j.size(), report.checks.size());
    for (const auto &row : j) {
        for (auto key : {"check_name", "expected_value", "computed_value", "tolerance", "status"}) {
            ASSERT_TRUE(row.contains(key)) << key;
        }
    }
    std::ostringstream table;
    write_report_table(table, report);
    ASSERT_NE(table.str().find("PASS"), std::string::npos);
    ASSERT_NE(table.str().find("NOT_REPRODUCED"), std::string::npos);
    ASSERT_EQ(table.str().find("FAIL "), std::string::npos);
}
