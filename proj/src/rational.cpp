// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "satphase/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "satphase/error.hpp"

namespace satphase {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw UsageError("malformed rational '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw UsageError("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_int(text.substr(0, slash), text);
    std::int64_t den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(text, text));

  std::string digits(text.substr(0, dot));
  std::string_view frac = text.substr(dot + 1);
  if (frac.size() > 17) throw UsageError("too many decimals in '" + std::string(text) + "'");
  for (char c : frac)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw UsageError("malformed rational '" + std::string(text) + "'");
  digits += frac;
  if (digits.empty() || digits == "-" || digits == "+") digits += '0';
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  return Rational(parse_int(digits.front() == '+' ? std::string_view(digits).substr(1) : digits, text),
                  den);
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace satphase
