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

#include "lqmd/protocol.h"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lqmd {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr unsigned kDrawBits = 256;
// Group index reserved for per-trial draws such as the discrimination ground truth.
constexpr uint64_t kTrialStream = ~uint64_t{0};

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Integer wide_to_integer(const StreamRng::Wide &w) {
    Integer out;
    mpz_import(out.get_mpz_t(), w.size(), 1, sizeof(uint64_t), 0, 0, w.data());
    return out;
}

// True iff the draw selects an event of probability p, i.e. draw < p * 2^256.
bool exact_admits(const StreamRng::Wide &draw, const Rational &p) {
    Integer lhs = wide_to_integer(draw) * p.get_den();
    Integer rhs = p.get_num();
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), kDrawBits);
    return lhs < rhs;
}

Decision coin_strategy(StreamRng &rng) {
    return (rng.next_u64() >> 63) ? Decision::spm : Decision::cpm;
}

}  // namespace

StreamRng::StreamRng(uint64_t seed, uint64_t trial, uint64_t group, uint64_t state) {
    uint64_t k = mix64(seed + kGolden);
    k = mix64(k ^ mix64(trial + 2 * kGolden));
    k = mix64(k ^ mix64(group + 3 * kGolden));
    k = mix64(k ^ mix64(state + 4 * kGolden));
    key_ = k;
}

uint64_t StreamRng::next_u64() {
    counter_++;
    return mix64(key_ + counter_ * kGolden);
}

StreamRng::Wide StreamRng::next_wide() {
    Wide w;
    for (auto &word : w) {
        word = next_u64();
    }
    return w;
}

Threshold::Threshold(const Rational &p) {
    if (p < 0 || p > 1) {
        throw std::domain_error("threshold probability outside [0, 1]: " + to_string(p));
    }
    if (p == 1) {
        full_ = true;
        return;
    }
    Integer scaled = p.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), kDrawBits);
    Integer t;
    mpz_cdiv_q(t.get_mpz_t(), scaled.get_mpz_t(), p.get_den_mpz_t());
    size_t count = 0;
    std::array<uint64_t, 4> raw{};
    mpz_export(raw.data(), &count, 1, sizeof(uint64_t), 0, 0, t.get_mpz_t());
    // Right-align into the big-endian word array.
    std::copy(raw.begin(), raw.begin() + count, words_.begin() + (words_.size() - count));
}

std::string_view strategy_name(Strategy s) {
    switch (s) {
        case Strategy::cpm:
            return "cpm";
        case Strategy::spm:
            return "spm";
        case Strategy::random_per_state:
            return "random";
    }
    return "?";
}

std::string_view decision_name(Decision d) {
    return d == Decision::cpm ? "cpm" : "spm";
}

Strategy parse_strategy(std::string_view text) {
    if (text == "cpm") {
        return Strategy::cpm;
    }
    if (text == "spm") {
        return Strategy::spm;
    }
    if (text == "random") {
        return Strategy::random_per_state;
    }
    throw std::invalid_argument("unknown strategy '" + std::string(text) + "'");
}

MeasurementPlan plan_for(Decision strategy, const PlanParams &params) {
    return strategy == Decision::cpm ? cpm_plan(params) : spm_plan(params);
}

BranchSampler::BranchSampler(const MeasurementPlan &plan, const PlanParams &params)
    : alice_qubits_(plan.alice_qubits()) {
    if (alice_qubits_ > 24) {
        throw std::domain_error("sampler tree too large");
    }
    leaves_ = enumerate_branches(plan, params);
    size_t internal = (size_t{1} << alice_qubits_) - 1;
    node_first_.resize(internal);

    // Walk the tree again to record each node's conditional first-outcome probability.
    struct Frame {
        ChainState state;
        History history;
        size_t node;
    };
    std::vector<Frame> stack{{ghz_state(params.n), "", 0}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.state.norm_sq() == 0) {
            continue;
        }
        auto pair = measure_next(f.state, plan.basis_for(f.history));
        node_first_[f.node] = Threshold(pair.first.probability);
        if (static_cast<int>(f.history.size()) + 1 < alice_qubits_) {
            stack.push_back({std::move(pair.second.state), f.history + '1', 2 * f.node + 2});
            stack.push_back({std::move(pair.first.state), f.history + '0', 2 * f.node + 1});
        }
    }

    leaf_bob_zero_.reserve(leaves_.size());
    for (const auto &leaf : leaves_) {
        if (leaf.probability == 0) {
            leaf_bob_zero_.emplace_back();
        } else {
            leaf_bob_zero_.emplace_back(bob_distribution(leaf.bob_state).first);
        }
    }
}

BranchSampler::Sample BranchSampler::sample(StreamRng &rng) const {
    size_t node = 0;
    uint32_t leaf = 0;
    for (int d = 0; d < alice_qubits_; d++) {
        uint32_t bit = node_first_[node].admits(rng.next_wide()) ? 0 : 1;
        leaf = (leaf << 1) | bit;
        node = 2 * node + 1 + bit;
    }
    int bob_bit = leaf_bob_zero_[leaf].admits(rng.next_wide()) ? 0 : 1;
    return Sample{leaf, bob_bit};
}

StateSample sample_state(const MeasurementPlan &plan, const PlanParams &params, StreamRng &rng) {
    ChainState state = ghz_state(params.n);
    History history;
    while (state.remaining() > 1) {
        auto pair = measure_next(state, plan.basis_for(history));
        if (exact_admits(rng.next_wide(), pair.first.probability)) {
            history.push_back('0');
            state = std::move(pair.first.state);
        } else {
            history.push_back('1');
            state = std::move(pair.second.state);
        }
    }
    int bob_bit = exact_admits(rng.next_wide(), bob_distribution(state).first) ? 0 : 1;
    return StateSample{std::move(history), bob_bit};
}

std::optional<Rational> w_statistic(int l, const PlanParams &params, int per_group) {
    params.validate();
    if (per_group < 1 || l < 0 || l > per_group) {
        throw std::domain_error(
            "w statistic needs 0 <= l <= per_group, got l=" + std::to_string(l) + " per_group=" +
            std::to_string(per_group));
    }
    if (l == per_group) {
        return std::nullopt;
    }
    int m = params.alice_qubits();
    long full = (1L << m) - 1;
    long half = (1L << (m - 1)) - 1;
    Constants c = plan_constants(params);
    // Squared weight of x^(2^m-1) / (sqrt(2) T_m x^h y^h), the |1> amplitude of the eta leaf.
    Rational eta_one = rational_pow(params.x_sq, full) /
                       (2 * amp_sq(c.T(m)) * rational_pow(params.x_sq, half) * rational_pow(params.y_sq(), half));
    // Squared weight of x / (g_1 T_1 sqrt(2)) with g_1^2 = 2^(m-1), a first-stage mu leaf's |0>.
    Rational mu_zero = params.x_sq / (pow2(m - 1) * amp_sq(c.T(1)) * 2);
    return Rational(l * eta_one / ((per_group - l) * mu_zero));
}

void ProtocolConfig::validate() const {
    params.validate();
    if (per_group < 1 || groups < 1 || trials < 1) {
        throw std::domain_error("per_group, groups and trials must all be at least 1");
    }
    if (!(threshold > 0) || !std::isfinite(threshold)) {
        throw std::domain_error("decision threshold must be a positive finite number");
    }
}

double GroupCounts::ratio() const {
    if (zeros == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(ones) / zeros;
}

Decision decide_group(int zeros, int ones, double threshold) {
    return ones >= threshold * zeros ? Decision::spm : Decision::cpm;
}

Decision decide_trial(const std::vector<GroupCounts> &groups) {
    auto spm = std::count_if(groups.begin(), groups.end(), [](const GroupCounts &g) {
        return g.decision == Decision::spm;
    });
    return 2 * static_cast<size_t>(spm) > groups.size() ? Decision::spm : Decision::cpm;
}

namespace {

struct Samplers {
    BranchSampler cpm;
    BranchSampler spm;

    explicit Samplers(const PlanParams &params)
        : cpm(cpm_plan(params), params), spm(spm_plan(params), params) {
    }
    const BranchSampler &get(Decision d) const {
        return d == Decision::cpm ? cpm : spm;
    }
};

TrialResult run_trial(
    const ProtocolConfig &config, const Samplers &samplers, uint64_t trial, std::optional<Decision> fixed) {
    TrialResult result;
    result.truth = fixed;
    result.groups.reserve(config.groups);
    for (int g = 0; g < config.groups; g++) {
        GroupCounts counts;
        for (int s = 0; s < config.per_group; s++) {
            StreamRng rng(config.seed, trial, static_cast<uint64_t>(g), static_cast<uint64_t>(s));
            Decision strategy;
            if (fixed) {
                strategy = *fixed;
            } else if (config.strategy == Strategy::random_per_state) {
                strategy = coin_strategy(rng);
            } else {
                strategy = config.strategy == Strategy::cpm ? Decision::cpm : Decision::spm;
            }
            const auto &sampler = samplers.get(strategy);
            auto draw = sampler.sample(rng);
            if (sampler.leaf(draw.leaf).leaf_class == LeafClass::eta) {
                result.eta_hits++;
            }
            (draw.bob_bit ? counts.ones : counts.zeros)++;
        }
        counts.decision = decide_group(counts.zeros, counts.ones, config.threshold);
        result.groups.push_back(counts);
    }
    result.decision = decide_trial(result.groups);
    return result;
}

}  // namespace

std::vector<TrialResult> run_protocol(const ProtocolConfig &config) {
    config.validate();
    Samplers samplers(config.params);
    std::vector<TrialResult> out;
    out.reserve(config.trials);
    for (int t = 0; t < config.trials; t++) {
        out.push_back(run_trial(config, samplers, static_cast<uint64_t>(t), std::nullopt));
    }
    return out;
}

DiscriminationReport discriminate(const ProtocolConfig &config) {
    config.validate();
    Samplers samplers(config.params);
    DiscriminationReport report;
    int correct = 0;
    for (int t = 0; t < config.trials; t++) {
        StreamRng truth_rng(config.seed, static_cast<uint64_t>(t), kTrialStream, 0);
        Decision truth = coin_strategy(truth_rng);
        auto trial = run_trial(config, samplers, static_cast<uint64_t>(t), truth);
        report.confusion[static_cast<int>(truth)][static_cast<int>(trial.decision)]++;
        correct += trial.decision == truth;
        report.trials.push_back(std::move(trial));
    }
    report.accuracy = static_cast<double>(correct) / config.trials;
    report.sigma = std::sqrt(0.25 / config.trials);
    report.within_3_sigma_of_chance = std::abs(report.accuracy - 0.5) <= 3 * report.sigma;
    return report;
}

std::vector<Rational> level_probabilities(const std::vector<BranchRecord> &branches, int alice_qubits) {
    std::vector<Rational> out(alice_qubits + 2, Rational(0));
    for (const auto &b : branches) {
        out.at(b.level) += b.probability;
    }
    return out;
}

std::vector<uint64_t> sample_level_census(
    const MeasurementPlan &plan, const PlanParams &params, uint64_t samples, uint64_t seed) {
    BranchSampler sampler(plan, params);
    std::vector<uint64_t> counts(plan.alice_qubits() + 2, 0);
    for (uint64_t i = 0; i < samples; i++) {
        StreamRng rng(seed, 0, 0, i);
        counts[sampler.leaf(sampler.sample(rng).leaf).level]++;
    }
    return counts;
}

GoodnessOfFit chi_square_fit(
    const std::vector<uint64_t> &observed, const std::vector<Rational> &probabilities, double min_expected) {
    if (observed.size() != probabilities.size()) {
        throw std::invalid_argument("observed and expected cell counts differ");
    }
    double total = std::accumulate(observed.begin(), observed.end(), 0.0);
    struct Cell {
        double observed;
        double expected;
    };
    std::vector<Cell> cells;
    for (size_t i = 0; i < observed.size(); i++) {
        double e = to_double(probabilities[i]) * total;
        if (e == 0 && observed[i] != 0) {
            return GoodnessOfFit{std::numeric_limits<double>::infinity(), 0, 0, 0};
        }
        if (e > 0) {
            cells.push_back({static_cast<double>(observed[i]), e});
        }
    }
    std::stable_sort(cells.begin(), cells.end(), [](const Cell &a, const Cell &b) {
        return a.expected > b.expected;
    });
    std::vector<Cell> pooled;
    Cell acc{0, 0};
    for (const auto &c : cells) {
        acc.observed += c.observed;
        acc.expected += c.expected;
        if (acc.expected >= min_expected) {
            pooled.push_back(acc);
            acc = {0, 0};
        }
    }
    if (acc.expected > 0) {
        if (pooled.empty()) {
            pooled.push_back(acc);
        } else {
            pooled.back().observed += acc.observed;
            pooled.back().expected += acc.expected;
        }
    }
    GoodnessOfFit fit;
    fit.cells = static_cast<int>(pooled.size());
    for (const auto &c : pooled) {
        double d = c.observed - c.expected;
        fit.statistic += d * d / c.expected;
    }
    fit.degrees_of_freedom = fit.cells - 1;
    if (fit.degrees_of_freedom >= 1) {
        boost::math::chi_squared_distribution<double> dist(fit.degrees_of_freedom);
        fit.p_value = boost::math::cdf(boost::math::complement(dist, fit.statistic));
    }
    return fit;
}

}  // namespace lqmd
