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

#ifndef _LQMD_GHZ_ENGINE_H
#define _LQMD_GHZ_ENGINE_H

#include <utility>

#include "lqmd/exact_amplitude.h"

namespace lqmd {

/// Orthonormal single-qubit measurement basis {c0|0> + c1|1>, c1|0> - c0|1>}.
struct Basis {
    ExactAmplitude c0;
    ExactAmplitude c1;

    /// Throws std::domain_error unless c0^2 + c1^2 == 1 exactly.
    static Basis make(ExactAmplitude c0, ExactAmplitude c1);
    /// {|+>, |->}.
    static Basis plus_minus();
    /// {|0>, |1>}; the second vector is then -|1>.
    static Basis computational();

    bool operator==(const Basis &other) const = default;
};

/// Unnormalized state amp0|0...0> + amp1|1...1> on the `remaining` unmeasured qubits.
///
/// The squared norm is the cumulative probability of the outcome history that produced it. A state
/// with zero norm is a vanishing branch (its history has probability zero); it can be carried
/// through enumeration but not sampled or read out by Bob.
class ChainState {
   public:
    /// Throws std::domain_error when remaining < 1 or the squared norm exceeds 1.
    ChainState(int remaining, ExactAmplitude amp0, ExactAmplitude amp1);

    int remaining() const {
        return remaining_;
    }
    const ExactAmplitude &amp0() const {
        return amp0_;
    }
    const ExactAmplitude &amp1() const {
        return amp1_;
    }
    Rational norm_sq() const {
        return amp_sq(amp0_) + amp_sq(amp1_);
    }

    bool operator==(const ChainState &other) const = default;

   private:
    int remaining_;
    ExactAmplitude amp0_;
    ExactAmplitude amp1_;
};

struct Branch {
    ChainState state;
    /// Conditional on the parent history.
    Rational probability;
};

struct BranchPair {
    Branch first;
    Branch second;
};

/// (|0...0> + |1...1>)/sqrt(2) on n >= 2 qubits.
ChainState ghz_state(int n);

/// Measures the first remaining qubit (always one of Alice's) in `basis`.
///
/// Throws std::domain_error when fewer than two qubits remain, since the last qubit is Bob's, or
/// when the parent is a vanishing branch.
BranchPair measure_next(const ChainState &state, const Basis &basis);

/// Bob's computational basis outcome distribution (p0, p1) on a single remaining qubit.
std::pair<Rational, Rational> bob_distribution(const ChainState &state);

}  // namespace lqmd

#endif
