#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sla {

using Int = std::int64_t;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic left the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace arith {

inline Int checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("integer overflow");
  return static_cast<Int>(v);
}

inline Int add(Int a, Int b) { return checked(static_cast<__int128>(a) + b); }
inline Int sub(Int a, Int b) { return checked(static_cast<__int128>(a) - b); }
inline Int mul(Int a, Int b) { return checked(static_cast<__int128>(a) * b); }

inline Int abs(Int a) { return a < 0 ? sub(0, a) : a; }

inline Int gcd(Int a, Int b) { return std::gcd(abs(a), abs(b)); }

/// lcm(0, x) = 0 is never wanted here; callers pass nonzero values.
inline Int lcm(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  if (a == 0 || b == 0) return 0;
  return mul(a / std::gcd(a, b), b);
}

/// Floor division, b != 0.
inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

/// Least nonnegative residue; m > 0.
inline Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

/// Residue modulo m with the convention that m = 0 means no reduction.
inline Int mod0(Int a, Int m) { return m == 0 ? a : mod(a, arith::abs(m)); }

/// a ≡ 0 (mod m), where m = 0 means a = 0.
inline bool divides(Int m, Int a) { return m == 0 ? a == 0 : a % m == 0; }

struct ExtGcd {
  Int g, x, y;  // a*x + b*y = g
};

inline ExtGcd ext_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

struct Congruence {
  Int residue;  // in [0, modulus)
  Int modulus;  // >= 1
};

/// Combines x ≡ r1 (mod m1) and x ≡ r2 (mod m2); nullopt when incompatible.
inline std::optional<Congruence> crt(Int r1, Int m1, Int r2, Int m2) {
  m1 = abs(m1);
  m2 = abs(m2);
  r1 = mod(r1, m1);
  r2 = mod(r2, m2);
  ExtGcd e = ext_gcd(m1, m2);
  if ((r2 - r1) % e.g != 0) return std::nullopt;
  Int l = mul(m1 / e.g, m2);
  // x = r1 + m1 * k with k ≡ (r2 - r1)/g * inv(m1/g) (mod m2/g)
  Int m2g = m2 / e.g;
  __int128 k = static_cast<__int128>((r2 - r1) / e.g) * e.x;
  Int kk = m2g == 0 ? 0 : static_cast<Int>(((k % m2g) + m2g) % m2g);
  __int128 x = static_cast<__int128>(r1) + static_cast<__int128>(m1) * kk;
  return Congruence{static_cast<Int>(((x % l) + l) % l), l};
}

/// Positive divisors of n != 0, ascending.
inline std::vector<Int> divisors(Int n) {
  n = abs(n);
  std::vector<Int> lo, hi;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      lo.push_back(d);
      if (d != n / d) hi.push_back(n / d);
    }
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

}  // namespace arith
}  // namespace sla
