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
#include <vector>

#include "finkey/asymptotic.hpp"
#include "finkey/keyrate.hpp"
#include "oracle.hpp"

using namespace finkey;

namespace {

Rational q(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

ProtocolParams params(int d, std::uint64_t n, Rational beta0, Rational eps)
{
    return ProtocolParams::make(d, n, std::move(beta0), std::move(eps));
}

void check_identities(const KeyRateResult& r)
{
    const double eps = r.params.epsilon.to_double();
    CHECK(r.ell_bits == doctest::Approx(r.s2_bits - r.s0_bits - r.h0_bits - 2 * std::log2(1 / eps))
                            .epsilon(1e-12));
    CHECK(r.rate == doctest::Approx(r.ell_bits / static_cast<double>(r.params.n)).epsilon(1e-15));
    CHECK(r.rate_clamped == std::max(r.rate, 0.0));
    CHECK(r.effective_rate ==
          doctest::Approx(r.rate / (r.params.d * (r.params.d + 1))).epsilon(1e-15));
}

}  // namespace

TEST_CASE("perfect correlations")
{
    for (int d : {2, 3})
        for (std::uint64_t n : {1U, 10U, 100U}) {
            const ProtocolParams p = params(d, n, Rational(1), q(1, 4));
            const KeyRateResult r = key_length(p);
            CHECK(r.s0_bits == 0.0);
            CHECK(r.h0_bits == 0.0);
            check_identities(r);

            // rho_XE is flat on d^n states with zeros elsewhere; the smoothing
            // moves eps' of mass from the flat block into the zeros.
            const Rational eps = p.epsilon_prime();
            BigInt flat;
            mpz_ui_pow_ui(flat.get_mpz_t(), static_cast<unsigned long>(d), n);
            BigInt all;
            mpz_ui_pow_ui(all.get_mpz_t(), static_cast<unsigned long>(d), 3 * n);
            const Rational zeros(BigInt(all - flat));
            const Rational purity = eps * eps / zeros +
                                    pow(Rational(1) - eps, 2) / Rational(flat);
            CHECK(r.s2_trace.purity == purity);
            CHECK(r.s2_bits == doctest::Approx(-log2_bits(purity)).epsilon(1e-15));
        }
    const KeyRateResult r = key_length(params(2, 100, Rational(1), q(1, 4)));
    CHECK(r.ell_bits == doctest::Approx(96 - 2 * std::log2(1023.0 / 1024.0)).epsilon(1e-12));
    CHECK(std::fabs(r.ell_bits - 96) < 3e-3);
}

TEST_CASE("single copy composed from the oracle")
{
    const ProtocolParams p = params(2, 1, q(9, 10), q(4, 5));
    CHECK(p.epsilon_prime() == q(1, 100));
    const KeyRateResult r = key_length(p);
    const Rational eps = p.epsilon_prime();
    const double s2 = -std::log2(oracle::brute_s2(oracle::single_copy_xe(2, q(9, 10)), eps));
    const double s0 = log2_bits(oracle::brute_s0(oracle::single_copy_eve(2, q(9, 10)), eps));
    const double h0 = log2_bits(oracle::brute_h0(oracle::single_copy_conditional(2, q(9, 10)), eps));
    CHECK(r.s2_bits == doctest::Approx(s2).epsilon(1e-9));
    CHECK(r.s0_bits == s0);
    CHECK(r.h0_bits == h0);
    CHECK(r.ell_bits == doctest::Approx(s2 - s0 - h0 - 2 * std::log2(5.0 / 4.0)).epsilon(1e-9));
    check_identities(r);
}

TEST_CASE("small scenarios composed from dense powers")
{
    for (int d : {2, 3})
        for (unsigned n : {1U, 2U, 3U})
            for (const Rational& b0 : {q(17, 20), q(19, 20)})
                for (const Rational& e : {q(1, 2), q(9, 10)}) {
                    const ProtocolParams p = params(d, n, b0, e);
                    const Rational eps = p.epsilon_prime();
                    const KeyRateResult r = key_length(p);
                    const auto xe = oracle::tensor_power(oracle::single_copy_xe(d, b0), n);
                    const auto eve = oracle::tensor_power(oracle::single_copy_eve(d, b0), n);
                    const auto cond = oracle::tensor_power(oracle::single_copy_conditional(d, b0), n);
                    CHECK(r.s2_trace.purity.to_double() ==
                          doctest::Approx(oracle::brute_s2(xe, eps)).epsilon(1e-9));
                    CHECK(r.s0_trace.remaining_rank == oracle::brute_s0(eve, eps));
                    CHECK(r.h0_trace.k == oracle::brute_h0(cond, eps));
                }
}

TEST_CASE("finite rates near the asymptote")
{
    const KeyRateResult r = key_length(ProtocolParams::from_error_rate(2, 10000, q(1, 50), q(1, 100)));
    CHECK(r.rate >= 0.629);
    CHECK(r.rate < 0.758059);
    CHECK(r.asymptotic_rate == doctest::Approx(0.758059267).epsilon(1e-9));
    check_identities(r);
}

TEST_CASE("key length grows with epsilon")
{
    for (int d : {2, 3})
        for (std::uint64_t n : {50U, 400U}) {
            double prev = -1e300;
            for (long k = 1; k <= 19; ++k) {
                const KeyRateResult r = key_length(params(d, n, q(19, 20), q(k, 20)));
                CHECK(r.ell_bits >= prev);
                CHECK(r.rate < asymptotic_rate(d, q(19, 20)).rate);
                check_identities(r);
                prev = r.ell_bits;
            }
        }
}

TEST_CASE("resource budgets")
{
    CHECK(signals_for_resources(2, 20000) == 3333);
    CHECK(signals_for_resources(3, 20000) == 1666);
    CHECK(signals_for_resources(4, 20000) == 1000);
    CHECK(signals_for_resources(5, 20000) == 666);
    CHECK(signals_for_resources(2, 5) == 0);
}

TEST_CASE("grids")
{
    CHECK(SweepSpec::linear_grid(Rational(0), q(1, 10), q(1, 50)) ==
          std::vector<Rational>{0, q(1, 50), q(1, 25), q(3, 50), q(2, 25), q(1, 10)});
    CHECK(SweepSpec::linear_grid(Rational(1), Rational(1), Rational(1)) == std::vector<Rational>{1});
    CHECK_THROWS_AS(SweepSpec::linear_grid(Rational(0), Rational(1), Rational(0)), DomainError);
    CHECK(SweepSpec::log_grid(10, 10000, 4) == std::vector<Rational>{10, 100, 1000, 10000});
    CHECK(SweepSpec::log_grid(1, 3, 3) == std::vector<Rational>{1, 2, 3});
    CHECK(SweepSpec::log_grid(5, 5, 3) == std::vector<Rational>{5});
    const auto g = SweepSpec::log_grid(100, 10000, 50);
    CHECK(g.front() == Rational(100));
    CHECK(g.back() == Rational(10000));
    CHECK(g.size() == 50);
}

TEST_CASE("sweeps")
{
    SweepSpec spec;
    spec.axis = SweepAxis::kSignals;
    spec.grid = {10, 100, 1000};
    spec.base = ProtocolParams::from_error_rate(2, 1, q(1, 50), q(1, 100));
    const auto points = sweep(spec, 2);
    REQUIRE(points.size() == 3);
    for (std::size_t i = 0; i < points.size(); ++i) {
        REQUIRE(points[i].result.has_value());
        CHECK(points[i].result->params.n == spec.grid[i].numerator().get_ui());
        CHECK(points[i].result->rate < 0.758059);
    }

    SweepSpec dims;
    dims.axis = SweepAxis::kDimension;
    dims.grid = {2, 3, 4, 5};
    dims.base = ProtocolParams::from_error_rate(2, 1, q(1, 100), q(1, 10));
    dims.fixed_ntilde = 20000;
    const auto by_d = sweep(dims, 3);
    REQUIRE(by_d.size() == 4);
    for (std::size_t i = 1; i < by_d.size(); ++i)
        CHECK(by_d[i].result->effective_rate < by_d[i - 1].result->effective_rate);
    CHECK(by_d[3].result->params.n == 666);

    SweepSpec single;
    single.axis = SweepAxis::kEpsilon;
    single.grid = {q(1, 5)};
    single.base = ProtocolParams::from_error_rate(3, 300, q(1, 20), q(1, 100));
    const auto one = sweep(single);
    REQUIRE(one.size() == 1);
    const KeyRateResult direct = key_length(ProtocolParams::from_error_rate(3, 300, q(1, 20), q(1, 5)));
    CHECK(one[0].result->ell_bits == direct.ell_bits);
    CHECK(one[0].result->s2_trace.purity == direct.s2_trace.purity);
    CHECK(one[0].result->h0_trace.k == direct.h0_trace.k);
}

TEST_CASE("sweep output does not depend on the worker count")
{
    SweepSpec spec;
    spec.axis = SweepAxis::kErrorRate;
    spec.grid = SweepSpec::linear_grid(Rational(0), q(3, 20), q(1, 100));
    spec.base = ProtocolParams::make(2, 500, Rational(1), q(1, 10));
    const auto a = sweep(spec, 1);
    const auto b = sweep(spec, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].result.has_value());
        CHECK(a[i].result->ell_bits == b[i].result->ell_bits);
        CHECK(a[i].result->params.beta0 == Rational(1) - spec.grid[i]);
    }
    // rate falls with the error rate below the threshold
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i].result->rate > 0)
            CHECK(a[i].result->rate < a[i - 1].result->rate);
}

TEST_CASE("invalid sweep points are reported and skipped")
{
    SweepSpec spec;
    spec.axis = SweepAxis::kErrorRate;
    spec.grid = {q(1, 50), q(3, 5), q(1, 10)};
    spec.base = ProtocolParams::make(2, 100, Rational(1), q(1, 10));
    const auto pts = sweep(spec);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].result.has_value());
    CHECK_FALSE(pts[1].result.has_value());
    CHECK_FALSE(pts[1].error.empty());
    CHECK(pts[2].result.has_value());

    SweepSpec frac;
    frac.axis = SweepAxis::kSignals;
    frac.grid = {q(5, 2)};
    CHECK_FALSE(sweep(frac)[0].result.has_value());
    CHECK_THROWS_AS(sweep_point_params(frac, 0), InvalidParams);
}

TEST_CASE("threshold search brackets the sign change")
{
    const ThresholdResult t = threshold_error_rate(2, 1000, q(1, 10));
    REQUIRE(t.found);
    CHECK(t.upper - t.lower <= q(1, 10000));
    CHECK(key_length(ProtocolParams::from_error_rate(2, 1000, t.lower, q(1, 10))).ell_bits > 0);
    CHECK(key_length(ProtocolParams::from_error_rate(2, 1000, t.upper, q(1, 10))).ell_bits <= 0);
    CHECK(t.error_rate() > 0.0);
    CHECK(t.error_rate() < 0.11);

    // too few signals for any key at all
    const ThresholdResult none = threshold_error_rate(2, 5, q(1, 10));
    CHECK(none.upper == Rational(0));
}
