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

#include "lqmd/plans.h"

#include <random>
#include <stdexcept>
#include <unordered_map>

namespace lqmd {

namespace {

ExactAmplitude positive_root(const Rational &sq) {
    return ExactAmplitude::from_sq(sq == 0 ? 0 : 1, sq);
}

LeafClass classify_with(const ChainState &leaf, const Rational &reference_x_sq, const ChainState &eta) {
    if (leaf.remaining() != 1 || leaf.norm_sq() == 0) {
        return LeafClass::other;
    }
    auto w0 = positive_root(reference_x_sq);
    auto w1 = positive_root(1 - reference_x_sq);
    if (proportional(leaf, ChainState(1, w0, w1))) {
        return LeafClass::mu_plus;
    }
    if (proportional(leaf, ChainState(1, w0, -w1))) {
        return LeafClass::mu_minus;
    }
    if (proportional(leaf, eta)) {
        return LeafClass::eta;
    }
    return LeafClass::other;
}

struct Enumerator {
    const MeasurementPlan &plan;
    ChainState eta;
    History history;
    std::vector<BranchRecord> out;

    void visit(const ChainState &state) {
        int m = plan.alice_qubits();
        if (static_cast<int>(history.size()) == m) {
            auto first_zero = history.find('0');
            int level = first_zero == History::npos ? m + 1 : static_cast<int>(first_zero) + 1;
            out.push_back(BranchRecord{
                history,
                state.norm_sq(),
                state,
                classify_with(state, plan.reference_x_sq(), eta),
                level,
            });
            return;
        }
        if (state.norm_sq() == 0) {
            // Zero-probability subtree; its leaves still get rows.
            ChainState dead(state.remaining() - 1, ExactAmplitude(), ExactAmplitude());
            for (char c : {'0', '1'}) {
                history.push_back(c);
                visit(dead);
                history.pop_back();
            }
            return;
        }
        auto pair = measure_next(state, plan.basis_for(history));
        history.push_back('0');
        visit(pair.first.state);
        history.back() = '1';
        visit(pair.second.state);
        history.pop_back();
    }
};

}  // namespace

PlanParams PlanParams::make(int n, Rational x_sq) {
    PlanParams p{n, std::move(x_sq)};
    p.x_sq.canonicalize();
    p.validate();
    return p;
}

void PlanParams::validate() const {
    if (n < 3 || n > kMaxQubits) {
        throw std::domain_error(
            "plans need 3 <= n <= " + std::to_string(kMaxQubits) + " qubits, got " + std::to_string(n));
    }
    if (x_sq <= 0 || x_sq >= 1) {
        throw std::domain_error("x^2 must lie strictly between 0 and 1, got " + to_string(x_sq));
    }
}

MeasurementPlan::MeasurementPlan(std::string name, int alice_qubits, Rational reference_x_sq, Rule rule)
    : name_(std::move(name)),
      alice_qubits_(alice_qubits),
      reference_x_sq_(std::move(reference_x_sq)),
      rule_(std::move(rule)) {
    if (alice_qubits_ < 1) {
        throw std::domain_error("a plan needs at least one Alice qubit");
    }
}

Basis MeasurementPlan::basis_for(std::string_view history) const {
    if (static_cast<int>(history.size()) >= alice_qubits_) {
        throw std::domain_error("history '" + std::string(history) + "' already covers every Alice qubit");
    }
    if (history.find_first_not_of("01") != std::string_view::npos) {
        throw std::domain_error("history '" + std::string(history) + "' must consist of '0' and '1'");
    }
    return rule_(history);
}

Constants plan_constants(const PlanParams &params) {
    params.validate();
    int m = params.alice_qubits();
    Rational r = params.ratio();
    Constants c;
    c.f.reserve(m);
    c.t.reserve(m);
    c.f.push_back(ExactAmplitude::one());
    c.t.push_back(ExactAmplitude::one());
    for (int k = 2; k <= m; k++) {
        long e = 1L << (k - 2);
        c.f.push_back(positive_root(rational_pow(r, e) + rational_pow(r, -e)));
        c.t.push_back(c.t.back() * c.f.back());
    }
    return c;
}

MeasurementPlan cpm_plan(const PlanParams &params) {
    params.validate();
    Basis pm = Basis::plus_minus();
    return MeasurementPlan("cpm", params.alice_qubits(), Rational(1, 2), [pm](std::string_view) {
        return pm;
    });
}

Basis spm_basis(int k, const PlanParams &params) {
    params.validate();
    int m = params.alice_qubits();
    if (k < 1 || k > m - 1) {
        throw std::domain_error(
            "lambda stage " + std::to_string(k) + " outside 1.." + std::to_string(m - 1));
    }
    Rational r = params.ratio();
    long e = 1L << (k - 1);
    Rational up = rational_pow(r, e);
    Rational down = rational_pow(r, -e);
    Rational f_sq = up + down;
    return Basis::make(positive_root(up / f_sq), positive_root(down / f_sq));
}

MeasurementPlan spm_plan(const PlanParams &params) {
    params.validate();
    int m = params.alice_qubits();
    std::vector<Basis> cascade;
    cascade.reserve(m);
    cascade.push_back(Basis::make(positive_root(params.x_sq), positive_root(params.y_sq())));
    for (int k = 1; k <= m - 1; k++) {
        cascade.push_back(spm_basis(k, params));
    }
    Basis pm = Basis::plus_minus();
    return MeasurementPlan("spm", m, params.x_sq, [cascade = std::move(cascade), pm](std::string_view history) {
        if (history.find('0') != std::string_view::npos) {
            return pm;
        }
        return cascade[history.size()];
    });
}

MeasurementPlan random_plan(const PlanParams &params, uint64_t seed) {
    params.validate();
    int m = params.alice_qubits();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> den_dist(2, 1024);
    std::bernoulli_distribution coin(0.5);
    std::unordered_map<History, Basis> table;
    std::vector<History> frontier{""};
    while (!frontier.empty()) {
        History h = std::move(frontier.back());
        frontier.pop_back();
        int den = den_dist(rng);
        int num = std::uniform_int_distribution<int>(1, den - 1)(rng);
        Rational c0_sq(num, den);
        c0_sq.canonicalize();
        auto c0 = ExactAmplitude::from_sq(coin(rng) ? 1 : -1, c0_sq);
        auto c1 = ExactAmplitude::from_sq(coin(rng) ? 1 : -1, 1 - c0_sq);
        table.emplace(h, Basis::make(c0, c1));
        if (static_cast<int>(h.size()) + 1 < m) {
            frontier.push_back(h + '1');
            frontier.push_back(h + '0');
        }
    }
    return MeasurementPlan(
        "random-" + std::to_string(seed), m, params.x_sq, [table = std::move(table)](std::string_view history) {
            return table.at(History(history));
        });
}

std::string_view leaf_class_name(LeafClass c) {
    switch (c) {
        case LeafClass::mu_plus:
            return "MU_PLUS";
        case LeafClass::mu_minus:
            return "MU_MINUS";
        case LeafClass::eta:
            return "ETA";
        case LeafClass::other:
            return "OTHER";
    }
    return "OTHER";
}

bool proportional(const ChainState &a, const ChainState &b) {
    if (a.norm_sq() == 0 || b.norm_sq() == 0) {
        return false;
    }
    // a0*b1 == a1*b0 as exact products (sign included).
    return a.amp0() * b.amp1() == a.amp1() * b.amp0();
}

LeafClass classify_leaf(const ChainState &leaf, const PlanParams &params, const Rational &reference_x_sq) {
    return classify_with(leaf, reference_x_sq, eta_state(params).normalized);
}

std::vector<BranchRecord> enumerate_branches(const MeasurementPlan &plan, const PlanParams &params) {
    params.validate();
    if (plan.alice_qubits() != params.alice_qubits()) {
        throw std::domain_error("plan and parameters disagree on the number of Alice qubits");
    }
    Enumerator e{plan, eta_state(params).normalized, {}, {}};
    e.out.reserve(size_t{1} << plan.alice_qubits());
    e.visit(ghz_state(params.n));
    return std::move(e.out);
}

EtaState eta_state(const PlanParams &params) {
    params.validate();
    int m = params.alice_qubits();
    long full = (1L << m) - 1;
    long half = (1L << (m - 1)) - 1;
    Rational x_pow = rational_pow(params.x_sq, full);
    Rational y_pow = rational_pow(params.y_sq(), full);
    Rational total = x_pow + y_pow;
    int sign1 = m % 2 == 0 ? 1 : -1;
    ChainState normalized(1, positive_root(y_pow / total), ExactAmplitude::from_sq(sign1, x_pow / total));

    Constants c = plan_constants(params);
    Rational t_sq = amp_sq(c.T(m));
    Rational scale_sq = total / (2 * t_sq * rational_pow(params.x_sq, half) * rational_pow(params.y_sq(), half));
    auto scale = positive_root(scale_sq);
    ChainState leaf(1, normalized.amp0() * scale, normalized.amp1() * scale);
    return EtaState{std::move(normalized), std::move(leaf), std::move(scale)};
}

Census census(const std::vector<BranchRecord> &branches) {
    Census out;
    for (const auto &b : branches) {
        out[{b.level, b.leaf_class}]++;
    }
    return out;
}

std::string census_string(const std::vector<BranchRecord> &branches, int alice_qubits) {
    std::vector<int> per_level(alice_qubits + 2, 0);
    for (const auto &b : branches) {
        per_level.at(b.level)++;
    }
    std::string out;
    for (int level = 1; level <= alice_qubits + 1; level++) {
        if (level > 1) {
            out += '/';
        }
        out += std::to_string(per_level[level]);
    }
    return out;
}

}  // namespace lqmd
