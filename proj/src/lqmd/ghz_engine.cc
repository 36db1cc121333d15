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

#include "lqmd/ghz_engine.h"

#include <stdexcept>
#include <string>

namespace lqmd {

Basis Basis::make(ExactAmplitude c0, ExactAmplitude c1) {
    if (amp_sq(c0) + amp_sq(c1) != 1) {
        throw std::domain_error("basis is not normalized: " + c0.str() + ", " + c1.str());
    }
    return Basis{std::move(c0), std::move(c1)};
}

Basis Basis::plus_minus() {
    auto h = ExactAmplitude::from_sq(1, Rational(1, 2));
    return Basis{h, h};
}

Basis Basis::computational() {
    return Basis{ExactAmplitude::one(), ExactAmplitude()};
}

ChainState::ChainState(int remaining, ExactAmplitude amp0, ExactAmplitude amp1)
    : remaining_(remaining), amp0_(std::move(amp0)), amp1_(std::move(amp1)) {
    if (remaining_ < 1) {
        throw std::domain_error("chain state needs at least one qubit");
    }
    if (norm_sq() > 1) {
        throw std::domain_error("chain state squared norm exceeds one: " + to_string(norm_sq()));
    }
}

ChainState ghz_state(int n) {
    if (n < 2) {
        throw std::domain_error("GHZ state needs at least two qubits, got " + std::to_string(n));
    }
    auto h = ExactAmplitude::from_sq(1, Rational(1, 2));
    return ChainState(n, h, h);
}

BranchPair measure_next(const ChainState &state, const Basis &basis) {
    if (state.remaining() < 2) {
        throw std::domain_error("only Bob's qubit remains; Alice has nothing left to measure");
    }
    Rational parent = state.norm_sq();
    if (parent == 0) {
        throw std::domain_error("cannot measure a vanishing branch");
    }
    int rest = state.remaining() - 1;
    ChainState first(rest, state.amp0() * basis.c0, state.amp1() * basis.c1);
    ChainState second(rest, state.amp0() * basis.c1, -(state.amp1() * basis.c0));
    Rational p_first = first.norm_sq() / parent;
    Rational p_second = second.norm_sq() / parent;
    return BranchPair{{std::move(first), std::move(p_first)}, {std::move(second), std::move(p_second)}};
}

std::pair<Rational, Rational> bob_distribution(const ChainState &state) {
    if (state.remaining() != 1) {
        throw std::domain_error(
            "Bob reads out only after Alice is done; " + std::to_string(state.remaining()) + " qubits remain");
    }
    Rational total = state.norm_sq();
    if (total == 0) {
        throw std::domain_error("vanishing branch has no outcome distribution");
    }
    Rational p0 = amp_sq(state.amp0()) / total;
    Rational p1 = amp_sq(state.amp1()) / total;
    return {std::move(p0), std::move(p1)};
}

}  // namespace lqmd
