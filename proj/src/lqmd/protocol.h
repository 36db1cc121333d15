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

#ifndef _LQMD_PROTOCOL_H
#define _LQMD_PROTOCOL_H

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lqmd/plans.h"

namespace lqmd {

/// Counter-based random stream keyed by (seed, trial, group, state).
///
/// Output i of a stream depends only on the key and i, so any partition of the work over threads
/// reproduces the serial result.
class StreamRng {
   public:
    /// 256-bit unsigned integer, most significant word first.
    using Wide = std::array<uint64_t, 4>;

    StreamRng(uint64_t seed, uint64_t trial, uint64_t group, uint64_t state);

    uint64_t next_u64();
    Wide next_wide();

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

/// Exact comparison threshold ceil(p * 2^256) for a rational probability p in [0, 1].
/// A uniform 256-bit draw u selects the event iff u < threshold, which happens with probability
/// p up to a bias below 2^-256.
class Threshold {
   public:
    Threshold() = default;
    explicit Threshold(const Rational &p);

    bool admits(const StreamRng::Wide &draw) const {
        return full_ || draw < words_;
    }

   private:
    StreamRng::Wide words_{};
    bool full_ = false;
};

enum class Strategy { cpm, spm, random_per_state };
enum class Decision { cpm, spm };

std::string_view strategy_name(Strategy s);
std::string_view decision_name(Decision d);
/// Accepts "cpm", "spm", "random". Throws std::invalid_argument otherwise.
Strategy parse_strategy(std::string_view text);

MeasurementPlan plan_for(Decision strategy, const PlanParams &params);

/// Precomputed outcome tree of a plan, for fast exact sampling.
///
/// Each internal node stores the threshold of its first outcome and each leaf stores Bob's
/// P(0) threshold, so sampling draws one 256-bit uniform per Alice qubit plus one for Bob and
/// touches no big-number arithmetic.
class BranchSampler {
   public:
    struct Sample {
        uint32_t leaf;
        int bob_bit;
    };

    BranchSampler(const MeasurementPlan &plan, const PlanParams &params);

    Sample sample(StreamRng &rng) const;

    int alice_qubits() const {
        return alice_qubits_;
    }
    const BranchRecord &leaf(uint32_t index) const {
        return leaves_.at(index);
    }
    const std::vector<BranchRecord> &leaves() const {
        return leaves_;
    }

   private:
    int alice_qubits_;
    std::vector<Threshold> node_first_;
    std::vector<Threshold> leaf_bob_zero_;
    std::vector<BranchRecord> leaves_;
};

struct StateSample {
    History outcomes;
    int bob_bit;
};

/// Draws one run of the plan by walking the engine directly with exact rational comparisons.
/// Consumes the stream exactly as BranchSampler::sample does.
StateSample sample_state(const MeasurementPlan &plan, const PlanParams &params, StreamRng &rng);

/// Ratio statistic for l eta-leaves among per_group states: the weight of l eta leaves read as
/// |1> over per_group - l first-stage mu leaves read as |0>, generalized to m Alice qubits.
/// Returns std::nullopt (infinite) when l == per_group. Throws std::domain_error unless
/// 0 <= l <= per_group.
std::optional<Rational> w_statistic(int l, const PlanParams &params, int per_group);

struct ProtocolConfig {
    PlanParams params;
    int per_group = 30;
    int groups = 20;
    Strategy strategy = Strategy::spm;
    uint64_t seed = 0;
    int trials = 1;
    /// A group is called SPM when ones >= threshold * zeros.
    double threshold = 1.33;

    /// Throws std::domain_error on nonpositive counts or a nonpositive threshold.
    void validate() const;
};

struct GroupCounts {
    int zeros = 0;
    int ones = 0;
    Decision decision = Decision::cpm;

    /// ones / zeros; +inf when zeros == 0.
    double ratio() const;
};

struct TrialResult {
    std::vector<GroupCounts> groups;
    int eta_hits = 0;
    Decision decision = Decision::cpm;
    /// Strategy actually used when the trial's strategy was itself drawn at random.
    std::optional<Decision> truth;
};

Decision decide_group(int zeros, int ones, double threshold);
/// Strict majority of SPM groups; ties go to CPM.
Decision decide_trial(const std::vector<GroupCounts> &groups);

std::vector<TrialResult> run_protocol(const ProtocolConfig &config);

struct DiscriminationReport {
    std::vector<TrialResult> trials;
    /// confusion[truth][decided], indexed by Decision.
    std::array<std::array<int, 2>, 2> confusion{};
    double accuracy = 0;
    double sigma = 0;
    bool within_3_sigma_of_chance = false;
};

/// Each trial picks CPM or SPM with a fair coin from its own stream, runs every group with that
/// strategy, and lets Bob's threshold rule guess it. config.strategy is ignored.
DiscriminationReport discriminate(const ProtocolConfig &config);

/// Counts of sampled leaf levels 1..m+1 (index 0 unused) over `samples` runs of the plan.
std::vector<uint64_t> sample_level_census(
    const MeasurementPlan &plan, const PlanParams &params, uint64_t samples, uint64_t seed);

/// Exact probability of each level 1..m+1 (index 0 unused).
std::vector<Rational> level_probabilities(const std::vector<BranchRecord> &branches, int alice_qubits);

struct GoodnessOfFit {
    double statistic = 0;
    int degrees_of_freedom = 0;
    double p_value = 1;
    /// Number of cells after pooling.
    int cells = 0;
};

/// Pearson chi-square test. Cells are ordered by decreasing expected count and consecutive cells
/// are pooled until each holds at least `min_expected`.
GoodnessOfFit chi_square_fit(
    const std::vector<uint64_t> &observed, const std::vector<Rational> &probabilities, double min_expected = 5);

}  // namespace lqmd

#endif
