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

#include "finkey/smooth_entropy.hpp"

#include <utility>

namespace finkey {

namespace {

void check_budget(const Rational& eps)
{
    if (eps.sign() < 0 || eps >= Rational(1))
        throw DomainError("smoothing parameter must satisfy 0 <= eps < 1, got " +
                          to_decimal(eps, 12));
}

void check_unit_trace(const CompressedSpectrum& spec)
{
    if (spec.trace() != Rational(1))
        throw DomainError("spectrum does not have unit trace");
}

void check_unit_trace(const TensorPowerSpectrum& spec)
{
    if (!spec.unit_trace())
        throw DomainError("spectrum does not have unit trace");
}

// All level values are numerators over spec.scale(). With eps = p/q, the
// test s <= eps for a scaled sum s becomes q*s <= p*scale, so every
// threshold below is an exact integer comparison.

template <class Spec>
S0Result s0_impl(const Spec& spec, const Rational& eps)
{
    check_budget(eps);
    check_unit_trace(spec);
    const BigInt& scale = spec.scale();
    const BigInt q = eps.denominator();
    const BigInt budget = eps.numerator() * scale;

    RankTrimResult trace;
    BigInt removed = 0;
    BigInt count = 0;
    auto w = spec.walk_up();
    while (!w.done() && sgn(w.numerator()) == 0)
        w.advance();
    for (; !w.done(); w.advance()) {
        BigInt next = removed + w.mass();
        if (q * next <= budget) {
            removed = std::move(next);
            count += w.multiplicity();
            ++trace.b;
            continue;
        }
        BigInt partial;
        BigInt slack = budget - q * removed;
        BigInt unit = q * w.numerator();
        mpz_fdiv_q(partial.get_mpz_t(), slack.get_mpz_t(), unit.get_mpz_t());
        count += partial;
        break;
    }

    const BigCount rank(spec.rank());
    BigCount k(std::move(count));
    if (k >= rank)
        k = rank - BigCount(1);
    trace.remaining_rank = rank - k;
    trace.k = std::move(k);
    trace.s_b = Rational(removed, scale);
    return {log2_bits(trace.remaining_rank), std::move(trace)};
}

template <class Spec>
S2Result s2_impl(const Spec& spec, const Rational& eps)
{
    check_budget(eps);
    check_unit_trace(spec);
    const BigInt& scale = spec.scale();
    const BigInt q = eps.denominator();
    const BigInt budget = eps.numerator() * scale;
    const std::size_t top = spec.level_count() - 1;

    WaterfillSolution sol;
    if (top == 0) {
        // Already flat with no zero levels to raise: nothing to gain.
        auto w = spec.walk_up();
        sol.x = sol.y = Rational(w.numerator(), scale);
        sol.purity = Rational(spec.square_sum(), scale * scale);
        return {-log2_bits(sol.purity), std::move(sol)};
    }

    // Raise the lowest levels: s^-_r = lambda_r * M_r - S_r over levels 0..r-1.
    // weighted tracks lambda_r * M_r so no level needs a full product.
    BigInt low_count = 0;
    BigInt low_sum = 0;
    BigInt low_sq = 0;
    BigInt low_value;
    BigInt low_gap;
    {
        BigInt weighted = 0;
        std::size_t r = 0;
        for (auto w = spec.walk_up(true); !w.done(); w.advance(weighted, low_count), ++r) {
            BigInt gap = weighted - low_sum;
            if (q * gap > budget)
                break;
            sol.b_minus = r;
            low_value = w.numerator();
            low_gap = std::move(gap);
            low_count += w.multiplicity();
            low_sum += w.mass();
            low_sq += w.square_mass();
            weighted += w.mass();
        }
    }

    // Lower the highest levels: s^+_r = S_r - lambda_{m-r} * M_r over the top r.
    BigInt high_count = 0;
    BigInt high_sq = 0;
    BigInt high_value;
    BigInt high_gap;
    {
        BigInt sum = 0;
        BigInt weighted = 0;
        std::size_t r = 0;
        for (auto w = spec.walk_down(true); !w.done(); w.advance(weighted, high_count), ++r) {
            BigInt gap = sum - weighted;
            if (q * gap > budget)
                break;
            sol.b_plus = r;
            high_value = w.numerator();
            high_gap = std::move(gap);
            high_count += w.multiplicity();
            sum += w.mass();
            high_sq += w.square_mass();
            weighted += w.mass();
        }
    }

    const Rational raised_n(low_count);
    const Rational lowered_n(high_count);
    sol.x = Rational(low_value, scale) + (eps - Rational(low_gap, scale)) / raised_n;
    sol.y = Rational(high_value, scale) - (eps - Rational(high_gap, scale)) / lowered_n;
    if (sol.x > sol.y)
        throw EpsilonTooLarge("epsilon too large for spectrum: raised floor " +
                              to_decimal(sol.x, 12) + " exceeds lowered ceiling " +
                              to_decimal(sol.y, 12));

    if (sol.b_minus + sol.b_plus >= top) {
        // The two flattened blocks meet: the whole spectrum is uniform.
        sol.purity = Rational(spec.total_dim()) * sol.x * sol.x;
    } else {
        const BigInt untouched = spec.square_sum() - low_sq - high_sq;
        sol.purity = Rational(untouched, scale * scale) + raised_n * sol.x * sol.x +
                     lowered_n * sol.y * sol.y;
    }
    sol.raised_mass = raised_n * sol.x - Rational(low_sum, scale);
    return {-log2_bits(sol.purity), std::move(sol)};
}

template <class Spec>
H0Result h0_impl(const Spec& spec, const Rational& eps)
{
    check_budget(eps);
    check_unit_trace(spec);
    const BigInt& scale = spec.scale();
    const BigInt q = eps.denominator();
    const BigInt target = (q - eps.numerator()) * scale;

    SupportCutResult trace;
    BigInt mass = 0;
    BigInt count = 0;
    for (auto w = spec.walk_down(); !w.done() && sgn(w.numerator()) != 0; w.advance()) {
        mass += w.mass();
        count += w.multiplicity();
        ++trace.b;
        BigInt excess = q * mass - target;
        if (sgn(excess) >= 0) {
            BigInt unit = q * w.numerator();
            BigInt surplus;
            mpz_fdiv_q(surplus.get_mpz_t(), excess.get_mpz_t(), unit.get_mpz_t());
            count -= surplus;
            break;
        }
    }
    if (count < 1)
        count = 1;
    trace.k = BigCount(std::move(count));
    trace.s_b = Rational(mass, scale);
    return {log2_bits(trace.k), std::move(trace)};
}

}  // namespace

S0Result s0_smooth(const CompressedSpectrum& spec, const Rational& eps)
{
    return s0_impl(spec, eps);
}

S0Result s0_smooth(const TensorPowerSpectrum& spec, const Rational& eps)
{
    return s0_impl(spec, eps);
}

S2Result s2_smooth(const CompressedSpectrum& spec, const Rational& eps)
{
    return s2_impl(spec, eps);
}

S2Result s2_smooth(const TensorPowerSpectrum& spec, const Rational& eps)
{
    return s2_impl(spec, eps);
}

H0Result h0_smooth(const ProbSpectrum& spec, const Rational& eps)
{
    return h0_impl(spec.as_spectrum(), eps);
}

H0Result h0_smooth(const TensorPowerSpectrum& spec, const Rational& eps)
{
    return h0_impl(spec, eps);
}

}  // namespace finkey
