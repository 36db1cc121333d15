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

#ifndef _LQMD_RATIONAL_H
#define _LQMD_RATIONAL_H

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lqmd {

/// Arbitrary precision rationals, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Builds num/den in canonical form. Throws std::domain_error when den is zero.
Rational make_rational(const Integer &num, const Integer &den);

/// Parses "p/q", a plain integer, or a decimal such as "1.655", "-0.25" or "1.7e38".
Rational parse_rational(std::string_view text);

/// base^exponent for any signed exponent (base must be nonzero when exponent < 0).
Rational rational_pow(const Rational &base, long exponent);

/// 2^exponent for any signed exponent.
Rational pow2(long exponent);

/// Round-to-nearest double. Reporting only; values below the double range flush toward zero.
double to_double(const Rational &value);

/// "num/den", or just "num" when the denominator is one.
std::string to_string(const Rational &value);

}  // namespace lqmd

#endif
