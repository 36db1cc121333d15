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

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace lqmd {

namespace {

// JSON has no infinity; non-finite floats are written as strings.
Json float_json(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    return v;
}

std::string csv_float(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

}  // namespace

Json rational_json(const Rational &value) {
    return Json{
        {"num", value.get_num().get_str()},
        {"den", value.get_den().get_str()},
        {"float", float_json(to_double(value))},
    };
}

Rational rational_from_json(const Json &j) {
    return make_rational(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
}

Json amplitude_json(const ExactAmplitude &a) {
    return Json{
        {"sign", a.sign()},
        {"mag_sq", rational_json(a.mag_sq())},
        {"float", float_json(a.to_double())},
    };
}

ExactAmplitude amplitude_from_json(const Json &j) {
    return ExactAmplitude::from_sq(j.at("sign").get<int>(), rational_from_json(j.at("mag_sq")));
}

Json branches_json(const std::vector<BranchRecord> &branches) {
    Json out = Json::array();
    for (const auto &b : branches) {
        out.push_back(Json{
            {"outcomes", b.outcomes},
            {"probability", rational_json(b.probability)},
            {"class", std::string(leaf_class_name(b.leaf_class))},
            {"level", b.level},
            {"bob_amp0", amplitude_json(b.bob_state.amp0())},
            {"bob_amp1", amplitude_json(b.bob_state.amp1())},
        });
    }
    return out;
}

void write_branches_csv(std::ostream &out, const std::vector<BranchRecord> &branches) {
    out << "outcomes,probability_num,probability_den,probability_float,class,level,"
           "bob_amp0_sign,bob_amp0_sq_num,bob_amp0_sq_den,bob_amp0_float,"
           "bob_amp1_sign,bob_amp1_sq_num,bob_amp1_sq_den,bob_amp1_float\n";
    auto amp = [&](const ExactAmplitude &a) {
        out << a.sign() << ',' << a.mag_sq().get_num().get_str() << ',' << a.mag_sq().get_den().get_str() << ','
            << csv_float(a.to_double());
    };
    for (const auto &b : branches) {
        out << b.outcomes << ',' << b.probability.get_num().get_str() << ',' << b.probability.get_den().get_str()
            << ',' << csv_float(to_double(b.probability)) << ',' << leaf_class_name(b.leaf_class) << ',' << b.level
            << ',';
        amp(b.bob_state.amp0());
        out << ',';
        amp(b.bob_state.amp1());
        out << '\n';
    }
}

Json config_json(const ProtocolConfig &config) {
    return Json{
        {"n", config.params.n},
        {"x_sq", rational_json(config.params.x_sq)},
        {"per_group", config.per_group},
        {"groups", config.groups},
        {"strategy", std::string(strategy_name(config.strategy))},
        {"seed", config.seed},
        {"trials", config.trials},
        {"threshold", config.threshold},
    };
}

namespace {

Json trial_json(const TrialResult &t) {
    Json groups = Json::array();
    for (const auto &g : t.groups) {
        groups.push_back(Json{
            {"zeros", g.zeros},
            {"ones", g.ones},
            {"ratio", float_json(g.ratio())},
            {"decision", std::string(decision_name(g.decision))},
        });
    }
    Json out{
        {"per_group", std::move(groups)},
        {"eta_hits", t.eta_hits},
        {"overall_decision", std::string(decision_name(t.decision))},
    };
    if (t.truth) {
        out["truth"] = std::string(decision_name(*t.truth));
    }
    return out;
}

}  // namespace

Json protocol_json(const ProtocolConfig &config, const std::vector<TrialResult> &trials, const ProtocolSummary &summary) {
    Json per_trial = Json::array();
    for (const auto &t : trials) {
        per_trial.push_back(trial_json(t));
    }
    Json w_values = Json::array();
    for (size_t i = 0; i < summary.w_values.size(); i++) {
        const auto &w = summary.w_values[i];
        w_values.push_back(Json{
            {"l", i + 1},
            {"value", w ? rational_json(*w) : Json("inf")},
        });
    }
    return Json{
        {"config", config_json(config)},
        {"per_trial", std::move(per_trial)},
        {"summary",
         Json{
             {"states", summary.states},
             {"ones", summary.ones},
             {"empirical_p1", summary.empirical_p1},
             {"oracle_p1", rational_json(summary.oracle_p1)},
             {"w_values", std::move(w_values)},
         }},
    };
}

void write_groups_csv(std::ostream &out, const std::vector<TrialResult> &trials) {
    out << "trial,group,zeros,ones,ratio,decision,truth\n";
    for (size_t t = 0; t < trials.size(); t++) {
        const auto &trial = trials[t];
        for (size_t g = 0; g < trial.groups.size(); g++) {
            const auto &c = trial.groups[g];
            out << t << ',' << g << ',' << c.zeros << ',' << c.ones << ',' << csv_float(c.ratio()) << ','
                << decision_name(c.decision) << ',' << (trial.truth ? decision_name(*trial.truth) : "") << '\n';
        }
    }
}

Json discrimination_json(const ProtocolConfig &config, const DiscriminationReport &report) {
    auto cell = [&](Decision truth, Decision decided) {
        return report.confusion[static_cast<int>(truth)][static_cast<int>(decided)];
    };
    Json per_trial = Json::array();
    for (const auto &t : report.trials) {
        per_trial.push_back(trial_json(t));
    }
    return Json{
        {"config", config_json(config)},
        {"confusion",
         Json{
             {"truth_cpm_decided_cpm", cell(Decision::cpm, Decision::cpm)},
             {"truth_cpm_decided_spm", cell(Decision::cpm, Decision::spm)},
             {"truth_spm_decided_cpm", cell(Decision::spm, Decision::cpm)},
             {"truth_spm_decided_spm", cell(Decision::spm, Decision::spm)},
         }},
        {"accuracy", report.accuracy},
        {"chance", 0.5},
        {"sigma", report.sigma},
        {"within_3_sigma_of_chance", report.within_3_sigma_of_chance},
        {"per_trial", std::move(per_trial)},
    };
}

Json report_json(const CheckpointReport &report) {
    Json out = Json::array();
    for (const auto &c : report.checks) {
        out.push_back(Json{
            {"check_name", c.name},
            {"expected_value", c.expected_value},
            {"computed_value", c.computed_value},
            {"computed_float", float_json(c.computed_float)},
            {"tolerance", c.tolerance},
            {"status", std::string(check_status_name(c.status))},
        });
    }
    return out;
}

void write_report_table(std::ostream &out, const CheckpointReport &report) {
    auto shorten = [](const std::string &s) {
        return s.size() <= 40 ? s : s.substr(0, 37) + "...";
    };
    out << std::left << std::setw(15) << "STATUS" << std::setw(30) << "CHECK" << std::setw(42) << "EXPECTED"
        << std::setw(42) << "COMPUTED" << "TOLERANCE\n";
    for (const auto &c : report.checks) {
        out << std::left << std::setw(15) << check_status_name(c.status) << std::setw(30) << c.name << std::setw(42)
            << shorten(c.expected_value) << std::setw(42) << shorten(c.computed_value) << c.tolerance << '\n';
    }
}

}  // namespace lqmd
