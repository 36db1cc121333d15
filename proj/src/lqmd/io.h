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

#ifndef _LQMD_IO_H
#define _LQMD_IO_H

#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "lqmd/oracle.h"

namespace lqmd {

using Json = nlohmann::ordered_json;

/// {"num": "...", "den": "...", "float": ...}. The decimal strings are authoritative.
Json rational_json(const Rational &value);
/// Inverse of rational_json; the float field is ignored.
Rational rational_from_json(const Json &j);

/// {"sign": s, "mag_sq": rational_json(mag_sq), "float": ...}.
Json amplitude_json(const ExactAmplitude &a);
ExactAmplitude amplitude_from_json(const Json &j);

/// List of {outcomes, probability, class, level, bob_amp0, bob_amp1}.
Json branches_json(const std::vector<BranchRecord> &branches);
/// Header: outcomes,probability_num,probability_den,probability_float,class,level,
/// bob_amp0_sign,bob_amp0_sq_num,bob_amp0_sq_den,bob_amp0_float,bob_amp1_sign,... .
void write_branches_csv(std::ostream &out, const std::vector<BranchRecord> &branches);

Json config_json(const ProtocolConfig &config);
/// {config, per_trial: [{per_group: [{zeros, ones, ratio, decision}], eta_hits, overall_decision}],
///  summary: {empirical_p1, oracle_p1, w_values}}.
Json protocol_json(const ProtocolConfig &config, const std::vector<TrialResult> &trials, const ProtocolSummary &summary);
/// Header: trial,group,zeros,ones,ratio,decision (plus truth when present).
void write_groups_csv(std::ostream &out, const std::vector<TrialResult> &trials);

Json discrimination_json(const ProtocolConfig &config, const DiscriminationReport &report);

/// List of {check_name, expected_value, computed_value, computed_float, tolerance, status}.
Json report_json(const CheckpointReport &report);
/// Fixed-width PASS/FAIL table.
void write_report_table(std::ostream &out, const CheckpointReport &report);

}  // namespace lqmd

#endif
