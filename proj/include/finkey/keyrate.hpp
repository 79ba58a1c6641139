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

#ifndef FINKEY_KEYRATE_HPP
#define FINKEY_KEYRATE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finkey/numeric.hpp"
#include "finkey/smooth_entropy.hpp"
#include "finkey/spectra.hpp"

namespace finkey {

struct KeyRateResult {
    ProtocolParams params;
    double s2_bits = 0;
    double s0_bits = 0;
    double h0_bits = 0;
    /// S2 - S0 - H0 - 2 log2(1/eps); negative below the threshold.
    double ell_bits = 0;
    double rate = 0;            ///< ell / n
    double rate_clamped = 0;    ///< max(rate, 0)
    double effective_rate = 0;  ///< rate / (d (d + 1)), i.e. ell over n(d+1)d
    double asymptotic_rate = 0;

    WaterfillSolution s2_trace;
    RankTrimResult s0_trace;
    SupportCutResult h0_trace;
};

/// Achievable eps-secure key length for the given scenario; all three
/// entropies are smoothed with eps' = (eps/8)^2.
KeyRateResult key_length(const ProtocolParams& params);

/// Sifted signals available from a total resource budget ntilde = n(d+1)d,
/// rounded down.
std::uint64_t signals_for_resources(int d, std::uint64_t ntilde);

enum class SweepAxis { kSignals, kErrorRate, kEpsilon, kDimension };

struct SweepSpec {
    SweepAxis axis = SweepAxis::kSignals;
    /// Grid values along the axis; integral for the signal and dimension axes.
    std::vector<Rational> grid;
    /// Values for the parameters not being swept.
    ProtocolParams base;
    /// When set, n is derived per point from this resource budget.
    std::optional<std::uint64_t> fixed_ntilde;

    /// start, start+step, ... while <= stop. Throws DomainError on step <= 0.
    static std::vector<Rational> linear_grid(const Rational& start, const Rational& stop,
                                             const Rational& step);
    /// `points` integers spaced geometrically from start to stop, rounded to
    /// nearest and deduplicated.
    static std::vector<Rational> log_grid(std::uint64_t start, std::uint64_t stop,
                                          std::size_t points);
};

struct SweepPoint {
    ProtocolParams params;  ///< as requested; may be invalid when error is set
    std::optional<KeyRateResult> result;
    std::string error;
};

/// Parameters of grid point i, without validation.
ProtocolParams sweep_point_params(const SweepSpec& spec, std::size_t i);

/// Evaluates every grid point, in grid order, on up to `workers` threads.
/// A failing point records its error and the sweep continues.
std::vector<SweepPoint> sweep(const SweepSpec& spec, unsigned workers = 1);

struct ThresholdOptions {
    Rational coarse_step{Rational(1, 100)};
    Rational tolerance{Rational(1, 10000)};
};

struct ThresholdResult {
    /// Bracket [last positive, first non-positive] of raw ell in error rate.
    Rational lower;
    Rational upper;
    bool found = false;  ///< false if ell never changes sign on the scan
    [[nodiscard]] double error_rate() const { return ((lower + upper) / Rational(2)).to_double(); }
};

/// Locates the error rate where the raw key length first turns non-positive:
/// a coarse scan upwards from 0 brackets the sign change, then bisection
/// narrows it to the tolerance.
ThresholdResult threshold_error_rate(int d, std::uint64_t n, const Rational& epsilon,
                                     const ThresholdOptions& options = {});

}  // namespace finkey

#endif  // FINKEY_KEYRATE_HPP
