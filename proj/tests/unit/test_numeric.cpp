/*
 * Copyright 2026 The finkey Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "finkey/numeric.hpp"

using namespace finkey;

namespace {

Rational q(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

BigInt pow2(unsigned long k)
{
    BigInt v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, k);
    return v;
}

}  // namespace

TEST_CASE("decimal parsing is exact")
{
    CHECK(rational_from_decimal("0.02") == q(1, 50));
    CHECK(rational_from_decimal("1") == Rational(1));
    CHECK(rational_from_decimal("0.758059") == q(758059, 1000000));
    CHECK(rational_from_decimal("-0.5") == q(-1, 2));
    CHECK(rational_from_decimal("+12.50") == q(25, 2));
    CHECK(rational_from_decimal(".25") == q(1, 4));
    CHECK(rational_from_decimal("3.") == Rational(3));
    CHECK(rational_from_decimal("0000.0100") == q(1, 100));

    for (const char* bad : {"", "-", ".", "abc", "1.2.3", "1e5", "0x10", " 1", "1 ", "--1", "1,5"})
        CHECK_THROWS_AS(rational_from_decimal(bad), ParseError);
}

TEST_CASE("decimal rendering")
{
    CHECK(to_decimal(q(1, 50)) == "0.02");
    CHECK(to_decimal(Rational(3)) == "3");
    CHECK(to_decimal(q(-1, 8)) == "-0.125");
    CHECK(to_decimal(q(1, 3), 5) == "0.33333");
    CHECK(to_decimal(q(2, 3), 5) == "0.66667");
    CHECK(to_decimal(q(-2, 3), 3) == "-0.667");
    CHECK(has_terminating_decimal(q(7, 40)));
    CHECK_FALSE(has_terminating_decimal(q(1, 6)));

    for (const char* text : {"0.02", "0.758059", "-3.125", "12", "0.000001"})
        CHECK(rational_from_decimal(to_decimal(rational_from_decimal(text))) ==
              rational_from_decimal(text));
}

TEST_CASE("rationals stay canonical and exact")
{
    const Rational r(BigInt(6), BigInt(-4));
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 2);
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), DomainError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 1000000);
    for (int i = 0; i < 500; ++i) {
        const Rational a = q(num(rng), den(rng));
        const Rational b = q(num(rng), den(rng));
        CHECK((a + b) - b == a);
        CHECK((a * b) / (b.is_zero() ? Rational(1) : b) == (b.is_zero() ? Rational(0) : a));
        const int cross =
            cmp(a.numerator() * b.denominator(), b.numerator() * a.denominator());
        CHECK((a < b) == (cross < 0));
        CHECK((a == b) == (cross == 0));
    }
    CHECK(pow(q(2, 3), 3) == q(8, 27));
    CHECK(pow(q(5, 7), 0) == Rational(1));
}

TEST_CASE("counts refuse to go negative")
{
    BigCount a(5UL);
    a -= BigCount(5UL);
    CHECK(a.is_zero());
    CHECK_THROWS_AS(a -= BigCount(1UL), DomainError);
    CHECK(BigCount(pow2(100)).bit_length() == 101);
    CHECK(BigCount(0UL).bit_length() == 0);
    CHECK_THROWS_AS(BigCount(BigInt(-1)), DomainError);
}

TEST_CASE("binomial coefficients")
{
    CHECK(binomial(4, 2) == BigCount(6UL));
    CHECK(binomial(37, 0) == BigCount(1UL));
    CHECK(binomial(37, 37) == BigCount(1UL));
    CHECK_THROWS_AS(binomial(4, -1), DomainError);
    CHECK_THROWS_AS(binomial(4, 5), DomainError);

    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long long> nd(2, 3000);
    for (int i = 0; i < 200; ++i) {
        const long long n = nd(rng);
        const long long l = std::uniform_int_distribution<long long>(1, n - 1)(rng);
        CHECK(binomial(n, l) == binomial(n - 1, l - 1) + binomial(n - 1, l));
    }
}

TEST_CASE("central binomial of 10000 against Pascal's triangle and Stirling")
{
    const long long n = 10000;
    const long long half = n / 2;
    // Left half of each row suffices by symmetry; updating from the right
    // end only reads entries of the previous row.
    std::vector<BigInt> row(static_cast<std::size_t>(half + 1), 0);
    row[0] = 1;
    auto prev = [&](long long r1, long long j) -> const BigInt& {
        return row[static_cast<std::size_t>(std::min(j, r1 - j))];
    };
    for (long long r = 1; r <= n; ++r)
        for (long long l = std::min(r, half); l >= 1; --l)
            row[static_cast<std::size_t>(l)] =
                l == r ? BigInt(1) : BigInt(prev(r - 1, l - 1) + prev(r - 1, l));
    const BigCount c = binomial(n, half);
    CHECK(c.value() == row[static_cast<std::size_t>(half)]);

    const double stirling = static_cast<double>(n) - 0.5 * std::log2(M_PI * half);
    CHECK(std::fabs(static_cast<double>(c.bit_length()) - stirling) <= 10);
    CHECK(std::abs(static_cast<long>(c.bit_length()) - 9995) <= 10);
}

TEST_CASE("log2 of exact values")
{
    CHECK(log2_bits(BigInt(8)) == 3.0);
    CHECK(log2_bits(Rational(1)) == 0.0);
    CHECK(log2_bits(pow2(20000)) == 20000.0);
    CHECK(log2_bits(Rational(BigInt(1), pow2(20000))) == -20000.0);
    CHECK(log2_bits(BigCount(3UL)) == doctest::Approx(std::log2(3.0)).epsilon(1e-15));
    CHECK(log2_bits(q(1001, 1000)) == doctest::Approx(std::log2(1.001)).epsilon(1e-12));
    CHECK(log2_bits(q(999999, 1000000)) ==
          doctest::Approx(std::log1p(-1e-6) / std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(log2_bits(Rational(0)), DomainError);
    CHECK_THROWS_AS(log2_bits(q(-1, 2)), DomainError);
    CHECK_THROWS_AS(log2_bits(BigInt(0)), DomainError);

    // 3^k has no exact double; compare with k log2 3.
    BigInt three;
    mpz_ui_pow_ui(three.get_mpz_t(), 3, 5000);
    CHECK(log2_bits(three) == doctest::Approx(5000 * std::log2(3.0)).epsilon(1e-13));
}

TEST_CASE("log2 is additive across huge magnitudes")
{
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<unsigned long> bits(1, 10000);
    auto random_big = [&](unsigned long nbits) -> BigInt {
        gmp_randclass g(gmp_randinit_default);
        g.seed(rng());
        BigInt v = g.get_z_bits(nbits);
        return v + 1;
    };
    for (int i = 0; i < 200; ++i) {
        const Rational a(random_big(bits(rng)), random_big(bits(rng)));
        const Rational b(random_big(bits(rng)), random_big(bits(rng)));
        CHECK(std::fabs(log2_bits(a * b) - (log2_bits(a) + log2_bits(b))) <= 1e-11);
    }
}
