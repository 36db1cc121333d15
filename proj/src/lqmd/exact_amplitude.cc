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

#include "lqmd/exact_amplitude.h"

#include <mpfr.h>

#include <ostream>
#include <stdexcept>

namespace lqmd {

ExactAmplitude ExactAmplitude::from_sq(int sign, Rational mag_sq) {
    mag_sq.canonicalize();
    if (mag_sq < 0) {
        throw std::domain_error("amplitude with negative squared magnitude " + to_string(mag_sq));
    }
    if (sign < -1 || sign > 1) {
        throw std::domain_error("amplitude sign must be -1, 0 or +1");
    }
    if ((sign == 0) != (mag_sq == 0)) {
        throw std::domain_error("amplitude sign is zero iff the magnitude is zero");
    }
    return ExactAmplitude(sign, std::move(mag_sq));
}

ExactAmplitude ExactAmplitude::one() {
    return ExactAmplitude(1, Rational(1));
}

ExactAmplitude ExactAmplitude::operator*(const ExactAmplitude &other) const {
    if (sign_ == 0 || other.sign_ == 0) {
        return ExactAmplitude();
    }
    return ExactAmplitude(sign_ * other.sign_, mag_sq_ * other.mag_sq_);
}

ExactAmplitude ExactAmplitude::operator/(const ExactAmplitude &other) const {
    if (other.sign_ == 0) {
        throw std::domain_error("amplitude division by zero");
    }
    if (sign_ == 0) {
        return ExactAmplitude();
    }
    return ExactAmplitude(sign_ * other.sign_, mag_sq_ / other.mag_sq_);
}

ExactAmplitude ExactAmplitude::operator-() const {
    return ExactAmplitude(-sign_, mag_sq_);
}

ExactAmplitude &ExactAmplitude::operator*=(const ExactAmplitude &other) {
    *this = *this * other;
    return *this;
}

ExactAmplitude ExactAmplitude::pow(unsigned long exponent) const {
    if (exponent == 0) {
        return one();
    }
    int s = (sign_ < 0 && exponent % 2 == 1) ? -1 : (sign_ == 0 ? 0 : 1);
    return ExactAmplitude(s, rational_pow(mag_sq_, static_cast<long>(exponent)));
}

bool ExactAmplitude::operator==(const ExactAmplitude &other) const {
    return sign_ == other.sign_ && mag_sq_ == other.mag_sq_;
}

double ExactAmplitude::to_double() const {
    if (sign_ == 0) {
        return 0.0;
    }
    // Carry extra bits through the square root so the final rounding dominates.
    mpfr_t q, root;
    mpfr_init2(q, 160);
    mpfr_init2(root, 53);
    mpfr_set_q(q, mag_sq_.get_mpq_t(), MPFR_RNDN);
    mpfr_sqrt(root, q, MPFR_RNDN);
    double result = mpfr_get_d(root, MPFR_RNDN);
    mpfr_clear(q);
    mpfr_clear(root);
    return sign_ * result;
}

std::string ExactAmplitude::str() const {
    if (sign_ == 0) {
        return "0";
    }
    return std::string(sign_ < 0 ? "-" : "+") + "sqrt(" + to_string(mag_sq_) + ")";
}

std::strong_ordering cmp_abs(const ExactAmplitude &a, const ExactAmplitude &b) {
    int c = cmp(a.mag_sq(), b.mag_sq());
    if (c < 0) {
        return std::strong_ordering::less;
    }
    if (c > 0) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::ostream &operator<<(std::ostream &out, const ExactAmplitude &a) {
    return out << a.str();
}

}  // namespace lqmd
