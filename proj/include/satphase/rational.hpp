// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace satphase {

using Rational = boost::rational<std::int64_t>;

/// Accepts `p/q`, integers and finite decimals ("0.25", "-1.5e-1" is not accepted).
/// Throws UsageError on malformed text or overflow.
Rational parse_rational(std::string_view text);

/// `p/q`, or `p` when the denominator is 1.
std::string format_rational(const Rational& r);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace satphase
