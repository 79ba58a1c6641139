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

#include "finkey/keyrate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "finkey/asymptotic.hpp"

namespace finkey {

KeyRateResult key_length(const ProtocolParams& params)
{
    params.validate();
    const Rational smoothing = params.epsilon_prime();

    KeyRateResult r;
    r.params = params;
    S2Result s2 = s2_smooth(xe_levels(params), smoothing);
    S0Result s0 = s0_smooth(eve_levels(params), smoothing);
    H0Result h0 = h0_smooth(conditional_levels(params), smoothing);
    r.s2_bits = s2.bits;
    r.s0_bits = s0.bits;
    r.h0_bits = h0.bits;
    r.s2_trace = std::move(s2.trace);
    r.s0_trace = std::move(s0.trace);
    r.h0_trace = std::move(h0.trace);

    const double security_cost = 2.0 * log2_bits(Rational(1) / params.epsilon);
    r.ell_bits = r.s2_bits - r.s0_bits - r.h0_bits - security_cost;
    r.rate = r.ell_bits / static_cast<double>(params.n);
    r.rate_clamped = std::max(r.rate, 0.0);
    r.effective_rate = r.rate / static_cast<double>(params.d * (params.d + 1));
    r.asymptotic_rate = asymptotic_rate(params.d, params.beta0).rate;
    return r;
}

std::uint64_t signals_for_resources(int d, std::uint64_t ntilde)
{
    if (d < 2)
        throw InvalidParams("dimension d must be >= 2, got " + std::to_string(d));
    const auto per_signal = static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d + 1);
    return ntilde / per_signal;
}

std::vector<Rational> SweepSpec::linear_grid(const Rational& start, const Rational& stop,
                                             const Rational& step)
{
    if (step.sign() <= 0)
        throw DomainError("grid step must be positive");
    std::vector<Rational> grid;
    for (Rational v = start; v <= stop; v += step)
        grid.push_back(v);
    return grid;
}

std::vector<Rational> SweepSpec::log_grid(std::uint64_t start, std::uint64_t stop,
                                          std::size_t points)
{
    if (start < 1 || stop < start || points < 1)
        throw DomainError("log grid requires 1 <= start <= stop and points >= 1");
    std::vector<Rational> grid;
    const double ratio = points > 1 ? std::log(static_cast<double>(stop) / static_cast<double>(start)) /
                                          static_cast<double>(points - 1)
                                    : 0.0;
    std::uint64_t last = 0;
    for (std::size_t i = 0; i < points; ++i) {
        auto v = static_cast<std::uint64_t>(
            std::llround(static_cast<double>(start) * std::exp(ratio * static_cast<double>(i))));
        if (i + 1 == points)
            v = stop;
        v = std::clamp(v, start, stop);
        if (v != last)
            grid.emplace_back(static_cast<long>(v));
        last = v;
    }
    return grid;
}

namespace {

std::uint64_t as_count(const Rational& v, const char* what)
{
    if (v.denominator() != 1 || v.sign() <= 0 || !v.numerator().fits_ulong_p())
        throw InvalidParams(std::string(what) + " must be a positive integer, got " +
                            to_decimal(v, 12));
    return v.numerator().get_ui();
}

}  // namespace

ProtocolParams sweep_point_params(const SweepSpec& spec, std::size_t i)
{
    ProtocolParams p = spec.base;
    const Rational& v = spec.grid.at(i);
    switch (spec.axis) {
    case SweepAxis::kSignals:
        p.n = as_count(v, "signal count n");
        break;
    case SweepAxis::kErrorRate:
        p.beta0 = Rational(1) - v;
        break;
    case SweepAxis::kEpsilon:
        p.epsilon = v;
        break;
    case SweepAxis::kDimension: {
        const std::uint64_t d = as_count(v, "dimension d");
        if (d > 1024)
            throw InvalidParams("dimension d too large");
        p.d = static_cast<int>(d);
        break;
    }
    }
    if (spec.fixed_ntilde)
        p.n = signals_for_resources(p.d, *spec.fixed_ntilde);
    return p;
}

std::vector<SweepPoint> sweep(const SweepSpec& spec, unsigned workers)
{
    if (spec.grid.empty())
        throw DomainError("sweep grid must not be empty");
    std::vector<SweepPoint> out(spec.grid.size());
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next++; i < out.size(); i = next++) {
            SweepPoint& pt = out[i];
            pt.params = spec.base;
            try {
                pt.params = sweep_point_params(spec, i);
                pt.result = key_length(pt.params);
            } catch (const std::exception& e) {
                pt.error = e.what();
            }
        }
    };

    const unsigned threads = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(out.size()));
    if (threads == 1) {
        work();
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(work);
    for (std::thread& t : pool)
        t.join();
    return out;
}

ThresholdResult threshold_error_rate(int d, std::uint64_t n, const Rational& epsilon,
                                     const ThresholdOptions& options)
{
    if (options.coarse_step.sign() <= 0 || options.tolerance.sign() <= 0)
        throw DomainError("threshold scan step and tolerance must be positive");
    auto ell_at = [&](const Rational& e) {
        return key_length(ProtocolParams::from_error_rate(d, n, e, epsilon)).ell_bits;
    };

    ThresholdResult res;
    if (ell_at(Rational(0)) <= 0.0)
        return res;

    // Error rates must stay below (d-1)/d.
    const Rational limit(d - 1, d);
    Rational prev(0);
    for (Rational e = options.coarse_step; e < limit; e += options.coarse_step) {
        if (ell_at(e) <= 0.0) {
            res.found = true;
            res.upper = e;
            break;
        }
        prev = e;
    }
    res.lower = prev;
    if (!res.found) {
        res.upper = prev;
        return res;
    }
    while (res.upper - res.lower > options.tolerance) {
        const Rational mid = (res.lower + res.upper) / Rational(2);
        if (ell_at(mid) > 0.0)
            res.lower = mid;
        else
            res.upper = mid;
    }
    return res;
}

}  // namespace finkey
