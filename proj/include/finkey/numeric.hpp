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

#ifndef FINKEY_NUMERIC_HPP
#define FINKEY_NUMERIC_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace finkey {

/// Signed arbitrary-precision integer. Used for scaled numerators and
/// intermediate sums inside the entropy algorithms.
using BigInt = mpz_class;

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised on arguments outside an operation's mathematical domain.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Exact non-negative integer: multiplicities, ranks and support counts.
class BigCount {
public:
    BigCount() = default;
    BigCount(unsigned long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    explicit BigCount(BigInt v);

    [[nodiscard]] const BigInt& value() const noexcept { return v_; }
    /// Number of bits in the binary representation; 0 for zero.
    [[nodiscard]] std::size_t bit_length() const noexcept;
    [[nodiscard]] bool is_zero() const noexcept { return sgn(v_) == 0; }
    [[nodiscard]] std::string to_string() const { return v_.get_str(); }

    BigCount& operator+=(const BigCount& o) { v_ += o.v_; return *this; }
    /// Throws DomainError if the result would be negative.
    BigCount& operator-=(const BigCount& o);
    BigCount& operator*=(const BigCount& o) { v_ *= o.v_; return *this; }

    friend BigCount operator+(BigCount a, const BigCount& b) { return a += b; }
    friend BigCount operator-(BigCount a, const BigCount& b) { return a -= b; }
    friend BigCount operator*(BigCount a, const BigCount& b) { return a *= b; }

    friend bool operator==(const BigCount& a, const BigCount& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const BigCount& a, const BigCount& b)
    {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    BigInt v_{0};
};

/// Exact fraction, always canonical (lowest terms, positive denominator).
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(const BigInt& v) : q_(v) {}
    explicit Rational(const BigCount& v) : q_(v.value()) {}
    explicit Rational(mpq_class q);

    [[nodiscard]] BigInt numerator() const { return q_.get_num(); }
    [[nodiscard]] BigInt denominator() const { return q_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const noexcept { return q_; }
    [[nodiscard]] int sign() const noexcept { return sgn(q_); }
    [[nodiscard]] bool is_zero() const noexcept { return sign() == 0; }

    /// Nearest double (truncating); only for reporting and test oracles.
    [[nodiscard]] double to_double() const { return q_.get_d(); }
    [[nodiscard]] std::string to_string() const { return q_.get_str(); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_{0};
};

/// Integer power of a rational, exponent >= 0.
Rational pow(const Rational& base, unsigned long exponent);

/// Exact value of a decimal literal such as "-0.02", "1", "12.5", ".5".
Rational rational_from_decimal(std::string_view text);

/// Exact decimal rendering when the value terminates within `max_fraction_digits`
/// fractional digits; otherwise the value rounded to that many digits.
std::string to_decimal(const Rational& q, unsigned max_fraction_digits = 60);

/// True when the decimal expansion of q terminates (denominator of the form 2^a 5^b).
bool has_terminating_decimal(const Rational& q);

/// Exact binomial coefficient; throws DomainError unless 0 <= l <= n.
BigCount binomial(long long n, long long l);

/// log2 of a positive exact value, computed from the bit length and a leading
/// mantissa window so arbitrarily large magnitudes never overflow.
double log2_bits(const BigInt& v);
double log2_bits(const BigCount& v);
double log2_bits(const Rational& q);

}  // namespace finkey

#endif  // FINKEY_NUMERIC_HPP
