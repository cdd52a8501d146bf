#pragma once

// Shared exact-arithmetic primitives: big integers, big rationals, integer
// square roots, perfect-power decomposition, Euler's totient.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace arbordyn {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Thrown when an operation would exceed a configured enumeration or growth
// cap. Distinct from std::invalid_argument so callers can map it to a
// "guard" exit path instead of a property failure.
class guard_error : public std::runtime_error {
 public:
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
  BigInt r = 1, b = base;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// Floor of the square root; exact integer Newton iteration.
inline BigInt isqrt(const BigInt& v) {
  if (v < 0) throw std::invalid_argument("isqrt: negative argument");
  return boost::multiprecision::sqrt(v);
}

namespace detail {
// Quick residue filters: a square is = 0,1,4,9,16,17,25,33,36,41,49,57 mod 64,
// and lands in small residue sets mod 63, 65, 11. Rejects ~99% of
// non-squares without a big isqrt.
inline bool square_residue_plausible(const BigInt& v) {
  static const bool m64[64] = {
      1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0,
      0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0,
      0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0};
  if (!m64[static_cast<unsigned>(v & 63)]) return false;
  static bool m63[63], m65[65], m11[11];
  static const bool init = [] {
    for (int i = 0; i < 63; ++i) m63[(i * i) % 63] = true;
    for (int i = 0; i < 65; ++i) m65[(i * i) % 65] = true;
    for (int i = 0; i < 11; ++i) m11[(i * i) % 11] = true;
    return true;
  }();
  (void)init;
  if (!m63[static_cast<unsigned>(v % 63)]) return false;
  if (!m65[static_cast<unsigned>(v % 65)]) return false;
  return m11[static_cast<unsigned>(v % 11)];
}
}  // namespace detail

inline bool is_perfect_square(const BigInt& v) {
  if (v < 0) return false;
  if (v == 0) return true;
  if (!detail::square_residue_plausible(v)) return false;
  BigInt r = isqrt(v);
  return r * r == v;
}

// Floor of the k-th root (k >= 1) by binary search on bit length.
inline BigInt kth_root_floor(const BigInt& v, unsigned k) {
  if (k == 0) throw std::invalid_argument("kth_root_floor: k = 0");
  if (v < 0) throw std::invalid_argument("kth_root_floor: negative argument");
  if (v < 2 || k == 1) return v;
  const std::uint64_t bits = boost::multiprecision::msb(v) + 1;
  BigInt lo = BigInt(1) << ((bits - 1) / k);
  BigInt hi = (BigInt(1) << (bits / k + 1)) + 1;
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (big_pow(mid, k) <= v)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// Writes v as base^exp with exp maximal (base not itself a perfect power).
// v must be >= 2.
inline std::pair<BigInt, unsigned> perfect_power_decomposition(const BigInt& v) {
  if (v < 2) throw std::invalid_argument("perfect_power_decomposition: v < 2");
  BigInt base = v;
  unsigned exp = 1;
  bool progressed = true;
  while (progressed) {
    progressed = false;
    const std::uint64_t bits = boost::multiprecision::msb(base) + 1;
    for (unsigned k = static_cast<unsigned>(bits); k >= 2; --k) {
      BigInt r = kth_root_floor(base, k);
      if (r >= 2 && big_pow(r, k) == base) {
        base = r;
        exp *= k;
        progressed = true;
        break;
      }
    }
  }
  return {base, exp};
}

// Euler's totient by trial division.
inline BigInt euler_totient(BigInt n) {
  if (n <= 0) throw std::invalid_argument("euler_totient: n <= 0");
  BigInt result = n;
  for (BigInt p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

// Modular inverse for gcd(a, m) = 1; throws otherwise.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m),
               new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::invalid_argument("inv_mod: argument not invertible");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m)
                                          : t);
}

}  // namespace arbordyn
