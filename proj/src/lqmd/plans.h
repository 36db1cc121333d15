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

#ifndef _LQMD_PLANS_H
#define _LQMD_PLANS_H

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lqmd/ghz_engine.h"

namespace lqmd {

/// Enumeration is exponential in the qubit count and the SPM exponents double per stage.
constexpr int kMaxQubits = 16;

/// GHZ size and the nu-basis weight x^2 (y^2 = 1 - x^2).
struct PlanParams {
    int n = 8;
    Rational x_sq{2, 3};

    /// Throws std::domain_error unless 3 <= n <= kMaxQubits and 0 < x_sq < 1.
    static PlanParams make(int n, Rational x_sq);
    void validate() const;

    /// Alice holds every qubit but the last.
    int alice_qubits() const {
        return n - 1;
    }
    Rational y_sq() const {
        return 1 - x_sq;
    }
    /// x^2 / y^2.
    Rational ratio() const {
        return x_sq / y_sq();
    }
};

/// Outcome history, one character per measured Alice qubit: '0' for the first basis vector, '1' for
/// the second.
using History = std::string;

/// Adaptive strategy: the basis for Alice's next qubit as a function of her outcomes so far.
class MeasurementPlan {
   public:
    using Rule = std::function<Basis(std::string_view history)>;

    /// `reference_x_sq` is the weight w for which leaves proportional to (sqrt(w), +-sqrt(1-w))
    /// count as mu+/mu- leaves. It is x^2 for the SPM cascade and 1/2 (the |+>, |-> states) for CPM.
    MeasurementPlan(std::string name, int alice_qubits, Rational reference_x_sq, Rule rule);

    const std::string &name() const {
        return name_;
    }
    int alice_qubits() const {
        return alice_qubits_;
    }
    const Rational &reference_x_sq() const {
        return reference_x_sq_;
    }

    /// Throws std::domain_error when the history is not shorter than alice_qubits() or contains
    /// characters other than '0' and '1'.
    Basis basis_for(std::string_view history) const;

   private:
    std::string name_;
    int alice_qubits_;
    Rational reference_x_sq_;
    Rule rule_;
};

/// F_1..F_m and their running products T_1..T_m (index 0 holds F_1 / T_1).
struct Constants {
    std::vector<ExactAmplitude> f;
    std::vector<ExactAmplitude> t;

    const ExactAmplitude &F(int k) const {
        return f.at(k - 1);
    }
    const ExactAmplitude &T(int k) const {
        return t.at(k - 1);
    }
};

Constants plan_constants(const PlanParams &params);

MeasurementPlan cpm_plan(const PlanParams &params);

/// Basis lambda_k used on Alice's qubit k+1 while every earlier outcome was "perp".
/// Throws std::domain_error unless 1 <= k <= m - 1.
Basis spm_basis(int k, const PlanParams &params);

/// nu basis on the first qubit, lambda_k cascade while outcomes stay "perp", and {|+>, |->} on
/// everything after the first "plus" outcome.
MeasurementPlan spm_plan(const PlanParams &params);

/// Plan with an independent random real basis at every node of the history tree. Every basis has
/// c0^2 strictly between 0 and 1 (denominators up to 1024) and random signs.
MeasurementPlan random_plan(const PlanParams &params, uint64_t seed);

enum class LeafClass { mu_plus, mu_minus, eta, other };

std::string_view leaf_class_name(LeafClass c);

struct BranchRecord {
    History outcomes;
    /// Probability of the full outcome sequence, equal to bob_state.norm_sq().
    Rational probability;
    ChainState bob_state;
    LeafClass leaf_class;
    /// 1-based position of the first '0' outcome (where the SPM cascade switches to {|+>, |->}), or
    /// m + 1 for the all-'1' history.
    int level;
};

/// All 2^m leaves in lexicographic outcome order.
std::vector<BranchRecord> enumerate_branches(const MeasurementPlan &plan, const PlanParams &params);

/// Classifies a single-qubit leaf by exact proportionality: mu+/mu- against
/// (sqrt(w), +-sqrt(1-w)) for the plan's reference weight w, eta against the all-perp shape
/// (y^(2^m-1), (-1)^m x^(2^m-1)). mu is tested first.
LeafClass classify_leaf(const ChainState &leaf, const PlanParams &params, const Rational &reference_x_sq);

/// True when a == c*b for some nonzero real c.
bool proportional(const ChainState &a, const ChainState &b);

struct EtaState {
    /// Unit-norm eta on Bob's qubit.
    ChainState normalized;
    /// P * eta, the unnormalized all-perp leaf.
    ChainState leaf;
    /// P.
    ExactAmplitude scale;
};

EtaState eta_state(const PlanParams &params);

/// Leaf counts keyed by (level, class).
using Census = std::map<std::pair<int, LeafClass>, int>;

Census census(const std::vector<BranchRecord> &branches);

/// Per-level leaf counts for levels 1..m+1, e.g. "64/32/16/8/4/2/1/1" for SPM at n = 8.
std::string census_string(const std::vector<BranchRecord> &branches, int alice_qubits);

}  // namespace lqmd

#endif
