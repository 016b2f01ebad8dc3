#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ultratree {

// Exact nonnegative rational labels. cpp_rational keeps lowest terms
// automatically, so text round-trips are canonical.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

inline Rat harmonic(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("harmonic(0)");
  return Rat(1, n);
}

// "p" when the denominator is 1, else "p/q".
inline std::string format_rat(const Rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace detail {
inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}
}  // namespace detail

// Accepts "p" or "p/q" with optional leading '-', q > 0 after parsing.
inline Rat parse_rat(std::string_view text) {
  std::string_view body = text;
  bool neg = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!detail::all_digits(num) || !detail::all_digits(den))
    throw std::invalid_argument("bad rational: '" + std::string(text) + "'");
  BigInt p{std::string(num)}, q{std::string(den)};
  if (q == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rat r(p, q);
  return neg ? Rat(-r) : r;
}

}  // namespace ultratree
