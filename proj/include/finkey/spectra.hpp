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

#ifndef FINKEY_SPECTRA_HPP
#define FINKEY_SPECTRA_HPP

#include <cstdint>
#include <vector>

#include "finkey/numeric.hpp"

namespace finkey {

struct InvalidParams : DomainError {
    using DomainError::DomainError;
};

/// Scenario description: dimension d, sifted signal count n, matching
/// probability beta0 and security parameter epsilon.
struct ProtocolParams {
    int d = 2;
    std::uint64_t n = 1;
    Rational beta0{1};
    Rational epsilon{Rational(1, 100)};

    /// Validated construction; throws InvalidParams.
    static ProtocolParams make(int d, std::uint64_t n, Rational beta0, Rational epsilon);
    static ProtocolParams from_error_rate(int d, std::uint64_t n, const Rational& error_rate,
                                          Rational epsilon);

    /// Probability of one particular wrong symbol: (1 - beta0) / (d - 1).
    [[nodiscard]] Rational beta1() const;
    /// Smoothing parameter used for all three entropies: (epsilon / 8)^2.
    [[nodiscard]] Rational epsilon_prime() const;
    [[nodiscard]] Rational error_rate() const { return Rational(1) - beta0; }

    /// Requires d >= 2, n >= 1, 1/d < beta0 <= 1, 0 < epsilon < 1.
    void validate() const;
};

/// Validates the (d, beta0) pair alone.
void validate_channel(int d, const Rational& beta0);

struct Level {
    Rational value;
    BigCount multiplicity;
};

/// Distinct eigenvalues in strictly ascending order with their multiplicities.
///
/// Internally every value is also kept as an integer numerator over one
/// common denominator (the lcm of all value denominators); the entropy
/// algorithms work on those integers so that prefix sums never need
/// rational reduction.
class CompressedSpectrum {
public:
    /// Throws DomainError unless values are >= 0 and strictly ascending and
    /// every multiplicity is >= 1. An empty level list is rejected.
    explicit CompressedSpectrum(std::vector<Level> levels);

    [[nodiscard]] const std::vector<Level>& levels() const noexcept { return levels_; }
    [[nodiscard]] std::size_t level_count() const noexcept { return levels_.size(); }
    [[nodiscard]] const BigCount& total_dim() const noexcept { return total_dim_; }
    /// Number of non-zero eigenvalues counted with multiplicity.
    [[nodiscard]] BigCount rank() const;
    /// Sum of value * multiplicity.
    [[nodiscard]] Rational trace() const;

    [[nodiscard]] const BigInt& scale() const noexcept { return scale_; }
    [[nodiscard]] const BigInt& scaled_value(std::size_t i) const { return scaled_[i]; }
    /// Sum of multiplicity * scaled_value^2, i.e. the purity times scale^2.
    [[nodiscard]] BigInt square_sum() const;

    class Walker {
    public:
        [[nodiscard]] bool done() const noexcept { return pos_ >= spec_->level_count(); }
        [[nodiscard]] const BigInt& numerator() const { return spec_->scaled_[index()]; }
        [[nodiscard]] const BigInt& multiplicity() const
        {
            return spec_->levels_[index()].multiplicity.value();
        }
        /// multiplicity * numerator
        [[nodiscard]] const BigInt& mass() const { return spec_->masses_[index()]; }
        /// multiplicity * numerator^2
        [[nodiscard]] BigInt square_mass() const { return mass() * numerator(); }
        void advance() noexcept { ++pos_; }
        /// Advances and sets weighted = count * (new numerator).
        void advance(BigInt& weighted, const BigInt& count)
        {
            advance();
            if (!done())
                weighted = numerator() * count;
        }

    private:
        friend class CompressedSpectrum;
        Walker(const CompressedSpectrum* spec, bool ascending) : spec_(spec), ascending_(ascending) {}
        [[nodiscard]] std::size_t index() const noexcept
        {
            return ascending_ ? pos_ : spec_->level_count() - 1 - pos_;
        }
        const CompressedSpectrum* spec_;
        bool ascending_;
        std::size_t pos_ = 0;
    };

    [[nodiscard]] Walker walk_up(bool = false) const { return {this, true}; }
    [[nodiscard]] Walker walk_down(bool = false) const { return {this, false}; }

private:
    std::vector<Level> levels_;
    std::vector<BigInt> scaled_;
    std::vector<BigInt> masses_;
    BigInt scale_{1};
    BigCount total_dim_;
};

/// Probability levels of a conditional distribution; same layout as a
/// spectrum but with strictly positive probabilities.
class ProbSpectrum {
public:
    explicit ProbSpectrum(std::vector<Level> levels);

    [[nodiscard]] const std::vector<Level>& levels() const noexcept { return levels_.levels(); }
    [[nodiscard]] const BigCount& support() const noexcept { return levels_.total_dim(); }
    [[nodiscard]] const CompressedSpectrum& as_spectrum() const noexcept { return levels_; }

private:
    CompressedSpectrum levels_;
};

/// n-fold tensor power of a single-copy spectrum with two non-zero values
/// `low` (multiplicity low_mult) < `high` (multiplicity high_mult) and
/// copy_dim - low_mult - high_mult zeros.
///
/// Level l (0 <= l <= n) has value high^l * low^(n-l) and multiplicity
/// C(n,l) * high_mult^l * low_mult^(n-l). Levels are generated on demand by
/// exact one-step recurrences, so memory stays O(n) bits for any n.
class TensorPowerSpectrum {
public:
    enum class ZeroLevel { kKeep, kDrop };

    TensorPowerSpectrum(std::uint64_t n, const Rational& low, unsigned long low_mult,
                        const Rational& high, unsigned long high_mult, unsigned long copy_dim,
                        ZeroLevel zeros);

    [[nodiscard]] std::uint64_t copies() const noexcept { return n_; }
    [[nodiscard]] std::size_t level_count() const noexcept;
    [[nodiscard]] const BigInt& scale() const noexcept { return scale_; }
    [[nodiscard]] const BigCount& total_dim() const noexcept { return total_dim_; }
    [[nodiscard]] const BigCount& rank() const noexcept { return rank_; }
    [[nodiscard]] const BigCount& zero_multiplicity() const noexcept { return zero_mult_; }
    /// True when one copy's values sum to 1 (so every power has unit trace).
    [[nodiscard]] bool unit_trace() const;
    /// Closed form (high_mult*H^2 + low_mult*L^2)^n of the squared-value sum.
    [[nodiscard]] BigInt square_sum() const;

    /// Materialize all levels (used for small n and for cross-checks).
    [[nodiscard]] CompressedSpectrum materialize() const;

    class Walker {
    public:
        [[nodiscard]] bool done() const noexcept { return done_; }
        [[nodiscard]] const BigInt& numerator() const noexcept { return num_; }
        [[nodiscard]] const BigInt& multiplicity() const noexcept { return mult_; }
        /// multiplicity * numerator, advanced by its own recurrence
        [[nodiscard]] const BigInt& mass() const noexcept { return mass_; }
        /// multiplicity * numerator^2; only maintained when requested at walk start
        [[nodiscard]] const BigInt& square_mass() const noexcept { return square_mass_; }
        void advance();
        /// Advances and rescales weighted = count * numerator from the old
        /// level to the new one without a full multiplication.
        void advance(BigInt& weighted, const BigInt& count);

    private:
        friend class TensorPowerSpectrum;
        Walker(const TensorPowerSpectrum* spec, bool ascending, bool squares);
        void load_level(std::uint64_t l);
        void enter_zero_level();
        void step_up();
        void step_down();

        const TensorPowerSpectrum* spec_;
        bool ascending_;
        bool squares_;
        bool at_zero_ = false;
        bool done_ = false;
        std::uint64_t l_ = 0;
        BigInt num_;
        BigInt mult_;
        BigInt mass_;
        BigInt square_mass_;
    };

    [[nodiscard]] Walker walk_up(bool squares = false) const { return {this, true, squares}; }
    [[nodiscard]] Walker walk_down(bool squares = false) const { return {this, false, squares}; }

private:
    [[nodiscard]] bool collapsed() const noexcept { return sgn(low_num_) == 0; }
    [[nodiscard]] bool has_zero_level() const noexcept { return !zero_mult_.is_zero(); }

    std::uint64_t n_;
    BigInt low_num_;
    BigInt high_num_;
    unsigned long low_mult_;
    unsigned long high_mult_;
    BigInt unit_;
    BigInt scale_;
    BigCount zero_mult_;
    BigCount rank_;
    BigCount total_dim_;
};

/// Eve's state: values ((beta0(d+1)-1)/d)^l ((1-beta0)/(d(d-1)))^(n-l) with
/// multiplicity C(n,l)(d^2-1)^(n-l); rank 1 when beta0 = 1.
TensorPowerSpectrum eve_levels(const ProtocolParams& params);
/// Alice's key jointly with Eve: non-zero values (beta0/d)^l (beta1/d)^(n-l)
/// with multiplicity d^n C(n,l)(d-1)^(n-l), plus the zero level.
TensorPowerSpectrum xe_levels(const ProtocolParams& params);
/// P(x | y): probabilities beta0^l beta1^(n-l), count C(n,l)(d-1)^(n-l).
TensorPowerSpectrum conditional_levels(const ProtocolParams& params);

CompressedSpectrum eve_spectrum(const ProtocolParams& params);
CompressedSpectrum xe_spectrum(const ProtocolParams& params);
ProbSpectrum conditional_spectrum(const ProtocolParams& params);

}  // namespace finkey

#endif  // FINKEY_SPECTRA_HPP
