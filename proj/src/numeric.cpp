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

#include "finkey/numeric.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace finkey {

namespace {

std::size_t bits_of(const BigInt& v)
{
    return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

// a/b with a 64-bit mantissa, for a, b > 0.
long double quotient_ld(const BigInt& a, const BigInt& b)
{
    const long shift = 66 + static_cast<long>(bits_of(b)) - static_cast<long>(bits_of(a));
    BigInt r;
    if (shift >= 0) {
        BigInt scaled = a;
        mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
        mpz_tdiv_q(r.get_mpz_t(), scaled.get_mpz_t(), b.get_mpz_t());
    } else {
        BigInt scaled = b;
        mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
        mpz_tdiv_q(r.get_mpz_t(), a.get_mpz_t(), scaled.get_mpz_t());
    }
    const long extra = static_cast<long>(bits_of(r)) - 64;
    if (extra > 0)
        mpz_tdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(extra));
    const long double top = static_cast<long double>(mpz_get_ui(r.get_mpz_t()));
    return std::ldexp(top, static_cast<int>((extra > 0 ? extra : 0) - shift));
}

long double log2_positive(const BigInt& v)
{
    const std::size_t bits = bits_of(v);
    if (bits <= 64)
        return std::log2(static_cast<long double>(mpz_get_ui(v.get_mpz_t())));
    BigInt top;
    const auto shift = static_cast<mp_bitcnt_t>(bits - 64);
    mpz_tdiv_q_2exp(top.get_mpz_t(), v.get_mpz_t(), shift);
    return std::log2(static_cast<long double>(mpz_get_ui(top.get_mpz_t()))) +
           static_cast<long double>(shift);
}

BigInt pow10(unsigned long k)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
    return r;
}

unsigned long strip_factor(BigInt& v, unsigned long f)
{
    unsigned long count = 0;
    while (mpz_divisible_ui_p(v.get_mpz_t(), f) != 0) {
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), f);
        ++count;
    }
    return count;
}

}  // namespace

BigCount::BigCount(BigInt v) : v_(std::move(v))
{
    if (sgn(v_) < 0)
        throw DomainError("BigCount: negative value " + v_.get_str());
}

std::size_t BigCount::bit_length() const noexcept { return bits_of(v_); }

BigCount& BigCount::operator-=(const BigCount& o)
{
    if (cmp(v_, o.v_) < 0)
        throw DomainError("BigCount: subtraction underflow");
    v_ -= o.v_;
    return *this;
}

Rational::Rational(const BigInt& num, const BigInt& den)
{
    if (sgn(den) == 0)
        throw DomainError("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q))
{
    if (sgn(q_.get_den()) == 0)
        throw DomainError("Rational: zero denominator");
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw DomainError("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Rational pow(const Rational& base, unsigned long exponent)
{
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
    // Powers of a canonical fraction stay canonical.
    mpq_class q;
    q.get_num() = std::move(num);
    q.get_den() = std::move(den);
    return Rational(std::move(q));
}

Rational rational_from_decimal(std::string_view text)
{
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::string digits;
    std::size_t fraction_digits = 0;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            digits.push_back(c);
            if (seen_point)
                ++fraction_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            throw ParseError("malformed decimal: '" + std::string(text) + "'");
        }
    }
    if (digits.empty())
        throw ParseError("malformed decimal: '" + std::string(text) + "'");
    BigInt num(digits, 10);
    if (negative)
        num = -num;
    return Rational(num, pow10(fraction_digits));
}

bool has_terminating_decimal(const Rational& q)
{
    BigInt den = q.denominator();
    strip_factor(den, 2);
    strip_factor(den, 5);
    return den == 1;
}

std::string to_decimal(const Rational& q, unsigned max_fraction_digits)
{
    unsigned long digits = max_fraction_digits;
    if (has_terminating_decimal(q)) {
        BigInt den = q.denominator();
        const unsigned long twos = strip_factor(den, 2);
        const unsigned long fives = strip_factor(den, 5);
        digits = std::min<unsigned long>(std::max(twos, fives), max_fraction_digits);
    }
    // Round half away from zero at the chosen digit count.
    BigInt num = abs(q.numerator()) * pow10(digits) * 2 + q.denominator();
    BigInt den = q.denominator() * 2;
    BigInt scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

    std::string body = scaled.get_str();
    if (digits > 0) {
        if (body.size() <= digits)
            body.insert(0, digits + 1 - body.size(), '0');
        body.insert(body.size() - digits, ".");
        while (body.back() == '0')
            body.pop_back();
        if (body.back() == '.')
            body.pop_back();
    }
    if (q.sign() < 0 && body != "0")
        body.insert(0, "-");
    return body;
}

BigCount binomial(long long n, long long l)
{
    if (n < 0 || l < 0 || l > n)
        throw DomainError("binomial: require 0 <= l <= n, got n=" + std::to_string(n) +
                          " l=" + std::to_string(l));
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(l));
    return BigCount(std::move(r));
}

double log2_bits(const BigInt& v)
{
    if (sgn(v) <= 0)
        throw DomainError("log2_bits: argument must be positive");
    return static_cast<double>(log2_positive(v));
}

double log2_bits(const BigCount& v) { return log2_bits(v.value()); }

double log2_bits(const Rational& q)
{
    if (q.sign() <= 0)
        throw DomainError("log2_bits: argument must be positive");
    const BigInt num = q.numerator();
    const BigInt den = q.denominator();
    const BigInt diff = num - den;
    // Near 1 the two logarithms cancel; go through log1p of the exact offset.
    if (cmp(abs(diff) * 2, den) < 0) {
        if (sgn(diff) == 0)
            return 0.0;
        long double t = quotient_ld(abs(diff), den);
        if (sgn(diff) < 0)
            t = -t;
        return static_cast<double>(std::log1p(t) / std::log(2.0L));
    }
    return static_cast<double>(log2_positive(num) - log2_positive(den));
}

}  // namespace finkey
