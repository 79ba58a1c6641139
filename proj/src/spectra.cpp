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

#include "finkey/spectra.hpp"

#include <string>
#include <utility>

namespace finkey {

namespace {

BigInt upow(unsigned long base, std::uint64_t e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

BigInt bpow(const BigInt& base, std::uint64_t e)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

BigInt lcm(const BigInt& a, const BigInt& b)
{
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProtocolParams

ProtocolParams ProtocolParams::make(int d, std::uint64_t n, Rational beta0, Rational epsilon)
{
    ProtocolParams p{d, n, std::move(beta0), std::move(epsilon)};
    p.validate();
    return p;
}

ProtocolParams ProtocolParams::from_error_rate(int d, std::uint64_t n, const Rational& error_rate,
                                               Rational epsilon)
{
    return make(d, n, Rational(1) - error_rate, std::move(epsilon));
}

Rational ProtocolParams::beta1() const { return (Rational(1) - beta0) / Rational(d - 1); }

Rational ProtocolParams::epsilon_prime() const
{
    const Rational e = epsilon / Rational(8);
    return e * e;
}

void validate_channel(int d, const Rational& beta0)
{
    if (d < 2)
        throw InvalidParams("dimension d must be >= 2, got " + std::to_string(d));
    if (!(beta0 > Rational(1, d)) || beta0 > Rational(1))
        throw InvalidParams("beta0 must satisfy 1/d < beta0 <= 1, got " + to_decimal(beta0, 12));
}

void ProtocolParams::validate() const
{
    validate_channel(d, beta0);
    if (n < 1)
        throw InvalidParams("signal count n must be >= 1");
    if (epsilon.sign() <= 0 || epsilon >= Rational(1))
        throw InvalidParams("epsilon must satisfy 0 < epsilon < 1, got " + to_decimal(epsilon, 12));
}

// ---------------------------------------------------------------------------
// CompressedSpectrum

CompressedSpectrum::CompressedSpectrum(std::vector<Level> levels) : levels_(std::move(levels))
{
    if (levels_.empty())
        throw DomainError("spectrum must have at least one level");
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        const Level& lv = levels_[i];
        if (lv.value.sign() < 0)
            throw DomainError("spectrum value must be non-negative");
        if (lv.multiplicity.is_zero())
            throw DomainError("spectrum multiplicity must be >= 1");
        if (i > 0 && !(levels_[i - 1].value < lv.value))
            throw DomainError("spectrum values must be strictly ascending");
        const BigInt den = lv.value.denominator();
        if (mpz_divisible_p(scale_.get_mpz_t(), den.get_mpz_t()) == 0)
            scale_ = lcm(scale_, den);
        total_dim_ += lv.multiplicity;
    }
    scaled_.reserve(levels_.size());
    masses_.reserve(levels_.size());
    for (const Level& lv : levels_) {
        BigInt factor;
        mpz_divexact(factor.get_mpz_t(), scale_.get_mpz_t(),
                     lv.value.raw().get_den_mpz_t());
        scaled_.emplace_back(lv.value.numerator() * factor);
        masses_.emplace_back(scaled_.back() * lv.multiplicity.value());
    }
}

BigCount CompressedSpectrum::rank() const
{
    BigCount r;
    for (const Level& lv : levels_)
        if (!lv.value.is_zero())
            r += lv.multiplicity;
    return r;
}

Rational CompressedSpectrum::trace() const
{
    BigInt sum;
    for (const BigInt& m : masses_)
        sum += m;
    return Rational(sum, scale_);
}

BigInt CompressedSpectrum::square_sum() const
{
    BigInt sum;
    for (std::size_t i = 0; i < levels_.size(); ++i)
        sum += levels_[i].multiplicity.value() * scaled_[i] * scaled_[i];
    return sum;
}

// ---------------------------------------------------------------------------
// ProbSpectrum

ProbSpectrum::ProbSpectrum(std::vector<Level> levels) : levels_(std::move(levels))
{
    if (levels_.levels().front().value.sign() <= 0)
        throw DomainError("conditional probabilities must be positive");
    if (levels_.trace() != Rational(1))
        throw DomainError("conditional probabilities must sum to 1");
}

// ---------------------------------------------------------------------------
// TensorPowerSpectrum

TensorPowerSpectrum::TensorPowerSpectrum(std::uint64_t n, const Rational& low,
                                         unsigned long low_mult, const Rational& high,
                                         unsigned long high_mult, unsigned long copy_dim,
                                         ZeroLevel zeros)
    : n_(n), low_mult_(low_mult), high_mult_(high_mult)
{
    if (n < 1)
        throw DomainError("tensor power requires n >= 1");
    if (low.sign() < 0 || !(low < high))
        throw DomainError("tensor power requires 0 <= low < high");
    if (low_mult == 0 || high_mult == 0 || copy_dim < low_mult + high_mult)
        throw DomainError("tensor power multiplicities exceed the copy dimension");

    unit_ = lcm(low.denominator(), high.denominator());
    low_num_ = low.numerator() * (unit_ / low.denominator());
    high_num_ = high.numerator() * (unit_ / high.denominator());
    scale_ = bpow(unit_, n);

    const unsigned long live = collapsed() ? high_mult : low_mult + high_mult;
    rank_ = BigCount(upow(live, n));
    if (zeros == ZeroLevel::kKeep)
        zero_mult_ = BigCount(upow(copy_dim, n)) - rank_;
    total_dim_ = rank_ + zero_mult_;
}

std::size_t TensorPowerSpectrum::level_count() const noexcept
{
    const std::size_t nonzero = collapsed() ? 1 : static_cast<std::size_t>(n_) + 1;
    return nonzero + (has_zero_level() ? 1 : 0);
}

bool TensorPowerSpectrum::unit_trace() const
{
    return BigInt(high_mult_) * high_num_ + BigInt(low_mult_) * low_num_ == unit_;
}

BigInt TensorPowerSpectrum::square_sum() const
{
    BigInt per_copy = BigInt(high_mult_) * high_num_ * high_num_;
    if (!collapsed())
        per_copy += BigInt(low_mult_) * low_num_ * low_num_;
    return bpow(per_copy, n_);
}

CompressedSpectrum TensorPowerSpectrum::materialize() const
{
    std::vector<Level> levels;
    levels.reserve(level_count());
    for (Walker w = walk_up(); !w.done(); w.advance())
        levels.push_back({Rational(w.numerator(), scale_), BigCount(w.multiplicity())});
    return CompressedSpectrum(std::move(levels));
}

namespace {

void mul_div(BigInt& x, const BigInt& m, const BigInt& d)
{
    x *= m;
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
}

}  // namespace

TensorPowerSpectrum::Walker::Walker(const TensorPowerSpectrum* spec, bool ascending,
                                    bool squares)
    : spec_(spec), ascending_(ascending), squares_(squares)
{
    if (ascending_ && spec_->has_zero_level()) {
        enter_zero_level();
    } else {
        load_level(ascending_ && !spec_->collapsed() ? 0 : spec_->n_);
    }
}

void TensorPowerSpectrum::Walker::load_level(std::uint64_t l)
{
    const TensorPowerSpectrum& s = *spec_;
    l_ = l;
    at_zero_ = false;
    num_ = bpow(s.high_num_, l);
    mult_ = binomial(static_cast<long long>(s.n_), static_cast<long long>(l)).value() *
            upow(s.high_mult_, l);
    if (l < s.n_) {
        num_ *= bpow(s.low_num_, s.n_ - l);
        mult_ *= upow(s.low_mult_, s.n_ - l);
    }
    mass_ = num_ * mult_;
    if (squares_)
        square_mass_ = mass_ * num_;
}

void TensorPowerSpectrum::Walker::enter_zero_level()
{
    at_zero_ = true;
    num_ = 0;
    mult_ = spec_->zero_mult_.value();
    mass_ = 0;
    square_mass_ = 0;
}

// level l -> l+1: value gains high/low, multiplicity gains (n-l) high_mult / ((l+1) low_mult)
void TensorPowerSpectrum::Walker::step_up()
{
    const TensorPowerSpectrum& s = *spec_;
    num_ *= s.high_num_;
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), s.low_num_.get_mpz_t());
    mpz_mul_ui(mult_.get_mpz_t(), mult_.get_mpz_t(), static_cast<unsigned long>(s.n_ - l_));
    mpz_mul_ui(mult_.get_mpz_t(), mult_.get_mpz_t(), s.high_mult_);
    mpz_divexact_ui(mult_.get_mpz_t(), mult_.get_mpz_t(), static_cast<unsigned long>(l_ + 1));
    mpz_divexact_ui(mult_.get_mpz_t(), mult_.get_mpz_t(), s.low_mult_);

    mass_ *= s.high_num_;
    mpz_mul_ui(mass_.get_mpz_t(), mass_.get_mpz_t(), static_cast<unsigned long>(s.n_ - l_));
    mpz_mul_ui(mass_.get_mpz_t(), mass_.get_mpz_t(), s.high_mult_);
    mpz_divexact_ui(mass_.get_mpz_t(), mass_.get_mpz_t(), static_cast<unsigned long>(l_ + 1));
    mpz_divexact_ui(mass_.get_mpz_t(), mass_.get_mpz_t(), s.low_mult_);
    mpz_divexact(mass_.get_mpz_t(), mass_.get_mpz_t(), s.low_num_.get_mpz_t());
    if (squares_) {
        // square_mass = mass * num, both already advanced
        square_mass_ *= s.high_num_;
        mpz_divexact(square_mass_.get_mpz_t(), square_mass_.get_mpz_t(), s.low_num_.get_mpz_t());
        mpz_mul_ui(square_mass_.get_mpz_t(), square_mass_.get_mpz_t(),
                   static_cast<unsigned long>(s.n_ - l_));
        mpz_mul_ui(square_mass_.get_mpz_t(), square_mass_.get_mpz_t(), s.high_mult_);
        mpz_divexact_ui(square_mass_.get_mpz_t(), square_mass_.get_mpz_t(),
                        static_cast<unsigned long>(l_ + 1));
        mpz_divexact_ui(square_mass_.get_mpz_t(), square_mass_.get_mpz_t(), s.low_mult_);
        mul_div(square_mass_, s.high_num_, s.low_num_);
    }
    ++l_;
}

void TensorPowerSpectrum::Walker::step_down()
{
    const TensorPowerSpectrum& s = *spec_;
    num_ *= s.low_num_;
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), s.high_num_.get_mpz_t());
    mpz_mul_ui(mult_.get_mpz_t(), mult_.get_mpz_t(), static_cast<unsigned long>(l_));
    mpz_mul_ui(mult_.get_mpz_t(), mult_.get_mpz_t(), s.low_mult_);
    mpz_divexact_ui(mult_.get_mpz_t(), mult_.get_mpz_t(), static_cast<unsigned long>(s.n_ - l_ + 1));
    mpz_divexact_ui(mult_.get_mpz_t(), mult_.get_mpz_t(), s.high_mult_);

    mass_ *= s.low_num_;
    mpz_mul_ui(mass_.get_mpz_t(), mass_.get_mpz_t(), static_cast<unsigned long>(l_));
    mpz_mul_ui(mass_.get_mpz_t(), mass_.get_mpz_t(), s.low_mult_);
    mpz_divexact_ui(mass_.get_mpz_t(), mass_.get_mpz_t(), static_cast<unsigned long>(s.n_ - l_ + 1));
    mpz_divexact_ui(mass_.get_mpz_t(), mass_.get_mpz_t(), s.high_mult_);
    mpz_divexact(mass_.get_mpz_t(), mass_.get_mpz_t(), s.high_num_.get_mpz_t());
    if (squares_) {
        mpz_mul_ui(square_mass_.get_mpz_t(), square_mass_.get_mpz_t(),
                   static_cast<unsigned long>(l_));
        mpz_mul_ui(square_mass_.get_mpz_t(), square_mass_.get_mpz_t(), s.low_mult_);
        mpz_divexact_ui(square_mass_.get_mpz_t(), square_mass_.get_mpz_t(),
                        static_cast<unsigned long>(s.n_ - l_ + 1));
        mpz_divexact_ui(square_mass_.get_mpz_t(), square_mass_.get_mpz_t(), s.high_mult_);
        mul_div(square_mass_, s.low_num_, s.high_num_);
        mul_div(square_mass_, s.low_num_, s.high_num_);
    }
    --l_;
}

void TensorPowerSpectrum::Walker::advance()
{
    if (done_)
        return;
    const TensorPowerSpectrum& s = *spec_;
    if (ascending_) {
        if (at_zero_)
            load_level(s.collapsed() ? s.n_ : 0);
        else if (l_ == s.n_)
            done_ = true;
        else
            step_up();
        return;
    }
    if (at_zero_) {
        done_ = true;
    } else if (s.collapsed() || l_ == 0) {
        if (s.has_zero_level()) {
            enter_zero_level();
        } else {
            done_ = true;
        }
    } else {
        step_down();
    }
}

// ---------------------------------------------------------------------------
// The three spectra of the symmetric-attack model

TensorPowerSpectrum eve_levels(const ProtocolParams& params)
{
    params.validate();
    const auto d = static_cast<unsigned long>(params.d);
    const Rational dd(static_cast<long>(d));
    const Rational low = params.beta1() / dd;
    const Rational high = params.beta0 - params.beta1() + low;
    return {params.n, low, d * d - 1, high, 1, d * d, TensorPowerSpectrum::ZeroLevel::kDrop};
}

TensorPowerSpectrum xe_levels(const ProtocolParams& params)
{
    params.validate();
    const auto d = static_cast<unsigned long>(params.d);
    const Rational dd(static_cast<long>(d));
    return {params.n, params.beta1() / dd, d * (d - 1), params.beta0 / dd, d, d * d * d,
            TensorPowerSpectrum::ZeroLevel::kKeep};
}

TensorPowerSpectrum conditional_levels(const ProtocolParams& params)
{
    params.validate();
    const auto d = static_cast<unsigned long>(params.d);
    return {params.n, params.beta1(), d - 1, params.beta0, 1, d,
            TensorPowerSpectrum::ZeroLevel::kDrop};
}

CompressedSpectrum eve_spectrum(const ProtocolParams& params)
{
    return eve_levels(params).materialize();
}

CompressedSpectrum xe_spectrum(const ProtocolParams& params)
{
    return xe_levels(params).materialize();
}

ProbSpectrum conditional_spectrum(const ProtocolParams& params)
{
    return ProbSpectrum(conditional_levels(params).materialize().levels());
}


void TensorPowerSpectrum::Walker::advance(BigInt& weighted, const BigInt& count)
{
    const bool from_zero = at_zero_;
    const bool stepping = !from_zero && !spec_->collapsed() &&
                          (ascending_ ? l_ < spec_->n_ : l_ > 0);
    advance();
    if (done_)
        return;
    if (stepping) {
        if (ascending_)
            mul_div(weighted, spec_->high_num_, spec_->low_num_);
        else
            mul_div(weighted, spec_->low_num_, spec_->high_num_);
    } else {
        weighted = num_ * count;
    }
}

}  // namespace finkey
