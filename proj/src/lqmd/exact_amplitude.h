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

#ifndef _LQMD_EXACT_AMPLITUDE_H
#define _LQMD_EXACT_AMPLITUDE_H

#include <compare>
#include <iosfwd>
#include <string>

#include "lqmd/rational.h"

namespace lqmd {

/// A real number of the form sign * sqrt(mag_sq) with mag_sq a nonnegative rational.
///
/// Every amplitude produced by the measurement cascades on GHZ states has this form, and the set is
/// closed under multiplication and division. Sums are never taken on amplitudes, only on their
/// squares (which are plain rationals). mag_sq is kept in lowest terms so that long products such
/// as x^254 stay small and comparisons stay exact.
class ExactAmplitude {
   public:
    /// The zero amplitude.
    ExactAmplitude() = default;

    /// Throws std::domain_error if mag_sq < 0, or if sign is not in {-1, 0, +1}, or if
    /// sign == 0 disagrees with mag_sq == 0.
    static ExactAmplitude from_sq(int sign, Rational mag_sq);
    static ExactAmplitude one();

    int sign() const {
        return sign_;
    }
    const Rational &mag_sq() const {
        return mag_sq_;
    }
    bool is_zero() const {
        return sign_ == 0;
    }

    ExactAmplitude operator*(const ExactAmplitude &other) const;
    /// Throws std::domain_error on division by zero.
    ExactAmplitude operator/(const ExactAmplitude &other) const;
    ExactAmplitude operator-() const;
    ExactAmplitude &operator*=(const ExactAmplitude &other);
    ExactAmplitude pow(unsigned long exponent) const;

    bool operator==(const ExactAmplitude &other) const;

    /// Nearest double to the represented value; for reporting only.
    double to_double() const;
    std::string str() const;

   private:
    ExactAmplitude(int sign, Rational mag_sq) : sign_(sign), mag_sq_(std::move(mag_sq)) {
    }

    int sign_ = 0;
    Rational mag_sq_{0};
};

/// Squared magnitude, i.e. the Born weight carried by this amplitude.
inline const Rational &amp_sq(const ExactAmplitude &a) {
    return a.mag_sq();
}

/// Orders |a| against |b| exactly.
std::strong_ordering cmp_abs(const ExactAmplitude &a, const ExactAmplitude &b);

std::ostream &operator<<(std::ostream &out, const ExactAmplitude &a);

}  // namespace lqmd

#endif
