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

#include "gtest/gtest.h"

using namespace lqmd;

TEST(rational, parse_forms) {
    ASSERT_EQ(parse_rational("2/3"), Rational(2, 3));
    ASSERT_EQ(parse_rational("4/6"), Rational(2, 3));
    ASSERT_EQ(parse_rational("-3"), Rational(-3));
    ASSERT_EQ(parse_rational("1.655"), Rational(331, 200));
    ASSERT_EQ(parse_rational("-0.25"), Rational(-1, 4));
    ASSERT_EQ(parse_rational("1e-37"), Rational(Integer(1), Integer("10000000000000000000000000000000000000")));
    ASSERT_EQ(parse_rational("2.5E-1"), Rational(1, 4));
    ASSERT_EQ(parse_rational("1.7e38"), Rational(Integer("170000000000000000000000000000000000000")));
}

TEST(rational, parse_rejects_garbage) {
    ASSERT_THROW(parse_rational(""), std::invalid_argument);
    ASSERT_THROW(parse_rational("abc"), std::invalid_argument);
    ASSERT_THROW(parse_rational("1/"), std::invalid_argument);
    ASSERT_THROW(parse_rational("1.2.3"), std::invalid_argument);
    ASSERT_THROW(parse_rational("1/0"), std::domain_error);
}

TEST(rational, powers) {
    ASSERT_EQ(rational_pow(Rational(2, 3), 3), Rational(8, 27));
    ASSERT_EQ(rational_pow(Rational(2, 3), -2), Rational(9, 4));
    ASSERT_EQ(rational_pow(Rational(-2, 3), -1), Rational(-3, 2));
    ASSERT_EQ(rational_pow(Rational(5, 7), 0), Rational(1));
    ASSERT_THROW(rational_pow(Rational(0), -1), std::domain_error);
    ASSERT_EQ(pow2(10), Rational(1024));
    ASSERT_EQ(pow2(-3), Rational(1, 8));

    // 3^-200 stays exact: numerator 1, denominator 3^200.
    Rational tiny = rational_pow(Rational(1, 3), 200);
    Integer three_200;
    mpz_ui_pow_ui(three_200.get_mpz_t(), 3, 200);
    ASSERT_EQ(tiny.get_num(), 1);
    ASSERT_EQ(tiny.get_den(), three_200);
}

TEST(rational, to_double_rounds_to_nearest) {
    ASSERT_EQ(to_double(Rational(1, 3)), 1.0 / 3.0);
    ASSERT_EQ(to_double(Rational(2, 3)), 2.0 / 3.0);
    ASSERT_EQ(to_double(pow2(127)), 0x1p127);
    // 1 + 2^-53 + 2^-60 is just above the midpoint between 1 and its successor.
    Rational above_mid = 1 + pow2(-53) + pow2(-60);
    ASSERT_EQ(to_double(above_mid), 1.0 + 0x1p-52);
}

TEST(rational, to_string) {
    ASSERT_EQ(to_string(make_rational(6, 4)), "3/2");
    ASSERT_EQ(to_string(Rational(5)), "5");
}
