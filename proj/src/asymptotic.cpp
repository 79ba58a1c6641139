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

#include "finkey/asymptotic.hpp"

#include <cmath>

#include "finkey/spectra.hpp"

namespace finkey {

namespace {

// Neumaier-compensated sum of -mult * p * log2(p) over the non-zero levels.
double entropy_bits(const std::vector<Level>& levels)
{
    double sum = 0.0;
    double carry = 0.0;
    for (const Level& lv : levels) {
        if (lv.value.is_zero())
            continue;
        const double term = -lv.multiplicity.value().get_d() * lv.value.to_double() *
                            log2_bits(lv.value);
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            carry += (sum - t) + term;
        else
            carry += (term - t) + sum;
        sum = t;
    }
    return sum + carry;
}

}  // namespace

AsymptoticRate asymptotic_rate(int d, const Rational& beta0)
{
    validate_channel(d, beta0);
    const ProtocolParams single{d, 1, beta0, Rational(1, 2)};
    AsymptoticRate r;
    r.s_xe = entropy_bits(xe_spectrum(single).levels());
    r.s_e = entropy_bits(eve_spectrum(single).levels());
    r.h_xy = entropy_bits(conditional_spectrum(single).levels());
    r.rate = r.s_xe - r.s_e - r.h_xy;
    return r;
}

}  // namespace finkey
