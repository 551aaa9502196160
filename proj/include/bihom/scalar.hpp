#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bihom {

// Exact rational ground field. mpq_class keeps values canonical
// (gcd(num, den) = 1, den > 0) after every arithmetic operation.
using Scalar = mpq_class;

/// Parses "p" or "p/q" with optional leading minus sign on p.
inline Scalar parse_scalar(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!digits(den))
      throw std::invalid_argument("bad rational denominator in '" +
                                  std::string(text) + "'");
  }
  std::string_view unsigned_num =
      (!num.empty() && num.front() == '-') ? num.substr(1) : num;
  if (!digits(unsigned_num))
    throw std::invalid_argument("bad rational numerator in '" +
                                std::string(text) + "'");

  mpz_class p(std::string(num), 10);
  mpz_class q(den.empty() ? std::string("1") : std::string(den), 10);
  if (q == 0)
    throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                "'");
  Scalar value(p, q);
  value.canonicalize();
  return value;
}

/// Canonical text: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Scalar& value) { return value.get_str(); }

enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^
                             static_cast<std::uint8_t>(b));
}

constexpr bool is_odd(Parity p) { return p == Parity::odd; }

constexpr Parity parity_from_int(int value) {
  return (value & 1) ? Parity::odd : Parity::even;
}

constexpr int to_int(Parity p) { return static_cast<int>(p); }

/// (-1)^{|a||b|}
constexpr int koszul_sign(Parity a, Parity b) {
  return (is_odd(a) && is_odd(b)) ? -1 : 1;
}

}  // namespace bihom
