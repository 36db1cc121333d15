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

#ifndef _LQMD_ORACLE_H
#define _LQMD_ORACLE_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lqmd/protocol.h"

namespace lqmd {

/// Bob's exact marginal (p0, p1) with Alice's outcomes summed out over every leaf of the plan.
std::pair<Rational, Rational> bob_marginal(const MeasurementPlan &plan, const PlanParams &params);

enum class CheckStatus { pass, fail, not_reproduced };

std::string_view check_status_name(CheckStatus s);

struct Check {
    std::string name;
    /// Reference value, or the reference formula evaluated, as text.
    std::string expected_value;
    /// Value recomputed by the engine, exact where possible.
    std::string computed_value;
    double computed_float = 0;
    std::string tolerance;
    CheckStatus status = CheckStatus::fail;
};

struct CheckpointReport {
    std::vector<Check> checks;

    /// No check failed. not_reproduced rows record reported claims the oracle refutes and do not
    /// count as failures.
    bool all_pass() const;
    const Check *find(std::string_view name) const;
};

/// Recomputes the reference constants, collapse table, probabilities, eta readout ratio and W
/// values from the engine and compares each with its reference target.
///
/// Rows whose reference value only exists for the 8-qubit, x^2 = 2/3 instance are emitted only for
/// that instance; structural rows (leaf count, completeness, telescoping identity, no-signaling)
/// are emitted for any parameters.
CheckpointReport reference_checkpoints(const PlanParams &params);

/// No-signaling and completeness over CPM, SPM and `random_plans` random adaptive plans at every
/// n in [3, max_n].
CheckpointReport invariant_checks(int random_plans, int max_n, uint64_t seed);

/// Closed-form checkpoint states along the all-perp SPM path: phi_1 (after nu), phi'_1, and for
/// k >= 2 phi_k, phi'_k, finishing with the eta leaf. Each entry pairs a label with the history
/// leading to it.
struct CascadeCheckpoint {
    std::string label;
    History history;
    ChainState expected;
};

std::vector<CascadeCheckpoint> cascade_checkpoints(const PlanParams &params);

/// The engine's state after `history`.
ChainState state_after(const MeasurementPlan &plan, const PlanParams &params, std::string_view history);

struct ProtocolSummary {
    uint64_t states = 0;
    uint64_t ones = 0;
    double empirical_p1 = 0;
    Rational oracle_p1;
    /// w_statistic(l) for l = 1..per_group.
    std::vector<std::optional<Rational>> w_values;
};

ProtocolSummary summarize(const ProtocolConfig &config, const std::vector<TrialResult> &trials);

}  // namespace lqmd

#endif
