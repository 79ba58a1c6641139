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

#ifndef FINKEY_ASYMPTOTIC_HPP
#define FINKEY_ASYMPTOTIC_HPP

#include "finkey/numeric.hpp"

namespace finkey {

/// Per-signal entropies of one copy and their combination, the n -> infinity
/// reference for the finite key rate. All entropies in bits.
struct AsymptoticRate {
    double s_xe = 0;  ///< von Neumann entropy of rho_XE
    double s_e = 0;   ///< von Neumann entropy of rho_E
    double h_xy = 0;  ///< Shannon entropy of X given Y
    double rate = 0;  ///< s_xe - s_e - h_xy
};

/// Requires d >= 2 and 1/d < beta0 <= 1.
AsymptoticRate asymptotic_rate(int d, const Rational& beta0);

}  // namespace finkey

#endif  // FINKEY_ASYMPTOTIC_HPP
