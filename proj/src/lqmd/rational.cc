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

#include "lqmd/rational.h"

#include <mpfr.h>

#include <stdexcept>

namespace lqmd {

Rational make_rational(const Integer &num, const Integer &den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational result(num, den);
    result.canonicalize();
    return result;
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) {
        throw std::invalid_argument("empty rational");
    }
    auto parse_int = [&](const std::string &digits) {
        Integer v;
        if (digits.empty() || v.set_str(digits, 10) != 0) {
            throw std::invalid_argument("malformed rational '" + s + "'");
        }
        return v;
    };
    if (auto exp = s.find_first_of("eE"); exp != std::string::npos) {
        std::string power = s.substr(exp + 1);
        if (power.empty() || power.find_first_not_of("+-0123456789") != std::string::npos) {
            throw std::invalid_argument("malformed rational '" + s + "'");
        }
        long e = std::stol(power);
        return parse_rational(s.substr(0, exp)) * rational_pow(Rational(10), e);
    }
    if (auto slash = s.find('/'); slash != std::string::npos) {
        return make_rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        bool negative = s[0] == '-';
        std::string whole = s.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
        std::string frac = s.substr(dot + 1);
        if (whole.empty()) {
            whole = "0";
        }
        if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos ||
            whole.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("malformed rational '" + s + "'");
        }
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Integer num = parse_int(whole) * scale + parse_int(frac);
        return make_rational(negative ? Integer(-num) : num, scale);
    }
    return Rational(parse_int(s));
}

Rational rational_pow(const Rational &base, long exponent) {
    if (exponent == 0) {
        return Rational(1);
    }
    if (exponent < 0 && base == 0) {
        throw std::domain_error("zero raised to a negative power");
    }
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    // Powers of a lowest-terms fraction stay in lowest terms.
    if (exponent < 0) {
        std::swap(num, den);
        if (den < 0) {
            num = -num;
            den = -den;
        }
    }
    Rational result;
    mpz_swap(result.get_num_mpz_t(), num.get_mpz_t());
    mpz_swap(result.get_den_mpz_t(), den.get_mpz_t());
    return result;
}

Rational pow2(long exponent) {
    Integer p = 1;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
    return exponent < 0 ? Rational(Integer(1), p) : Rational(p);
}

double to_double(const Rational &value) {
    mpfr_t tmp;
    mpfr_init2(tmp, 53);
    mpfr_set_q(tmp, value.get_mpq_t(), MPFR_RNDN);
    double result = mpfr_get_d(tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    return result;
}

std::string to_string(const Rational &value) {
    return value.get_str(10);
}

}  // namespace lqmd
