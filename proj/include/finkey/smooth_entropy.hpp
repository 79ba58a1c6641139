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

#ifndef FINKEY_SMOOTH_ENTROPY_HPP
#define FINKEY_SMOOTH_ENTROPY_HPP

#include <cstddef>

#include "finkey/numeric.hpp"
#include "finkey/spectra.hpp"

namespace finkey {

/// Raised when the smoothing budget is large enough that the raised floor
/// would pass the lowered ceiling; the piecewise optimum no longer applies.
struct EpsilonTooLarge : DomainError {
    using DomainError::DomainError;
};

/// Outcome of trimming the smallest eigenvalues within the budget.
struct RankTrimResult {
    std::size_t b = 0;        ///< distinct non-zero levels removed entirely
    BigCount k;               ///< eigenvalues removed in total
    BigCount remaining_rank;  ///< always >= 1
    Rational s_b;             ///< mass of the b fully removed levels
};

/// Flattened spectrum minimizing the purity: the lowest b_minus+1 levels are
/// raised to x, the highest b_plus+1 lowered to y.
struct WaterfillSolution {
    std::size_t b_minus = 0;
    std::size_t b_plus = 0;
    Rational x;
    Rational y;
    Rational purity;       ///< sum of mu^2 * multiplicity
    Rational raised_mass;  ///< mass added below; equals the lowered mass
};

struct SupportCutResult {
    std::size_t b = 0;  ///< distinct top levels needed to reach mass 1 - eps
    BigCount k;         ///< size of the smallest high-probability set, >= 1
    Rational s_b;       ///< mass of those b levels
};

struct S0Result {
    double bits = 0;
    RankTrimResult trace;
};

struct S2Result {
    double bits = 0;
    WaterfillSolution trace;
};

struct H0Result {
    double bits = 0;
    SupportCutResult trace;
};

/// Smooth order-0 entropy log2(min rank) over the eps-ball. Zero levels do
/// not count towards the rank. Requires 0 <= eps < 1 and unit trace.
S0Result s0_smooth(const CompressedSpectrum& spec, const Rational& eps);
S0Result s0_smooth(const TensorPowerSpectrum& spec, const Rational& eps);

/// Smooth order-2 entropy -log2(min purity) over the eps-ball, zero levels
/// included (they may be raised). Throws EpsilonTooLarge if x > y.
S2Result s2_smooth(const CompressedSpectrum& spec, const Rational& eps);
S2Result s2_smooth(const TensorPowerSpectrum& spec, const Rational& eps);

/// Conditional smooth order-0 entropy log2(k), k the fewest strings carrying
/// mass >= 1 - eps.
H0Result h0_smooth(const ProbSpectrum& spec, const Rational& eps);
H0Result h0_smooth(const TensorPowerSpectrum& spec, const Rational& eps);

}  // namespace finkey

#endif  // FINKEY_SMOOTH_ENTROPY_HPP
