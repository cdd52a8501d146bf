#pragma once

// Empirical natural-density estimation for the set of primes dividing some
// term of an integer orbit a_{n+1} = phi(a_n): exact per-prime membership by
// orbit computation mod p, density checkpoints with exact rational
// proportions, and the factorization-based containment of orbit prime sets.

#include <cstdint>
#include <string>
#include <vector>

#include "arbordyn/numeric.hpp"
#include "arbordyn/poly.hpp"

namespace arbordyn {

// Deterministic sieve of Eratosthenes.
inline std::vector<std::uint32_t> prime_sieve(std::uint32_t limit) {
  if (limit < 2) throw std::invalid_argument("prime_sieve: limit >= 2");
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i)
      composite[j] = true;
  }
  return primes;
}

// phi in Z[x] with deg >= 2 and the zeroth orbit term.
struct IntegerMapSpec {
  Polynomial<BigInt> map;
  BigInt a0;

  IntegerMapSpec(Polynomial<BigInt> phi, BigInt start)
      : map(std::move(phi)), a0(std::move(start)) {
    if (map.degree() < 2)
      throw std::invalid_argument("IntegerMapSpec: degree must be >= 2");
  }
};

namespace detail {
// Coefficients of the map reduced mod p, low to high.
inline std::vector<std::uint64_t> reduce_map(const IntegerMapSpec& spec,
                                             std::uint64_t p) {
  std::vector<std::uint64_t> out;
  for (const auto& c : spec.map.coeffs()) {
    BigInt r = c % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    out.push_back(r.convert_to<std::uint64_t>());
  }
  return out;
}

inline std::uint64_t horner_mod(const std::vector<std::uint64_t>& coeffs,
                                std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;)
    acc = (mul_mod(acc, x, p) + coeffs[i]) % p;
  return acc;
}
}  // namespace detail

// True iff 0 appears in the orbit of a0 mod p before a state repeats. The
// orbit lives in a p-point space, so at most p + 1 steps are needed.
inline bool divides_orbit(const IntegerMapSpec& spec, std::uint32_t p) {
  auto coeffs = detail::reduce_map(spec, p);
  BigInt a = spec.a0 % p;
  if (a < 0) a += p;
  std::uint64_t x = a.convert_to<std::uint64_t>();
  std::vector<bool> seen(p, false);
  while (!seen[x]) {
    if (x == 0) return true;
    seen[x] = true;
    x = detail::horner_mod(coeffs, x, p);
  }
  return x == 0;
}

struct DensityCheckpoint {
  std::uint64_t x_bound = 0;       // X
  std::uint64_t primes_total = 0;  // pi(X)
  std::uint64_t members = 0;       // |{p in P : p <= X}|
  BigRat proportion;
};

struct DensityReport {
  std::string map_text;
  BigInt a0;
  std::vector<DensityCheckpoint> checkpoints;
};

// Exact member counts at each checkpoint; checkpoints beyond x_max are
// clamped away.
inline DensityReport density_curve(const IntegerMapSpec& spec, std::uint32_t x_max,
                                   std::vector<std::uint64_t> checkpoints = {
                                       1000, 10000, 100000}) {
  DensityReport rep;
  rep.a0 = spec.a0;
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                    checkpoints.end());
  while (!checkpoints.empty() && checkpoints.back() > x_max) checkpoints.pop_back();
  if (checkpoints.empty() || checkpoints.back() != x_max)
    checkpoints.push_back(x_max);
  auto primes = prime_sieve(x_max);
  std::uint64_t members = 0, total = 0;
  std::size_t ci = 0;
  for (auto p : primes) {
    while (ci < checkpoints.size() && p > checkpoints[ci]) {
      rep.checkpoints.push_back(
          {checkpoints[ci], total, members, BigRat(members, std::max<std::uint64_t>(total, 1))});
      ++ci;
    }
    ++total;
    if (divides_orbit(spec, p)) ++members;
  }
  for (; ci < checkpoints.size(); ++ci)
    rep.checkpoints.push_back(
        {checkpoints[ci], total, members, BigRat(members, std::max<std::uint64_t>(total, 1))});
  return rep;
}

struct ContainmentReport {
  bool holds = true;
  std::vector<std::uint32_t> violations;
};

// For phi = x^2 + kx and psi = x^2 - kx + k: every p <= X dividing some
// phi^i(a0) + k (i >= 1) must divide some term of the psi-orbit of a0 + k.
inline ContainmentReport theorem13_containment(const BigInt& k, const BigInt& a0,
                                               std::uint32_t x_bound) {
  if (k == 0) throw std::invalid_argument("theorem13_containment: k must be nonzero");
  ContainmentReport rep;
  IntegerMapSpec psi(Polynomial<BigInt>({k, -k, BigInt(1)}), a0 + k);
  for (auto p : prime_sieve(x_bound)) {
    // Does p divide phi^i(a0) + k for some i >= 1? Walk the orbit of a0
    // mod p under phi until a state repeats.
    BigInt kp = k % p, ap = a0 % p;
    if (kp < 0) kp += p;
    if (ap < 0) ap += p;
    const std::uint64_t km = kp.convert_to<std::uint64_t>();
    std::uint64_t x = ap.convert_to<std::uint64_t>();
    std::vector<bool> seen(p, false);
    bool in_p_prime = false;
    while (!seen[x]) {
      seen[x] = true;
      x = (mul_mod(x, x, p) + mul_mod(km, x, p)) % p;  // phi(x) = x^2 + kx
      if ((x + km) % p == 0) {
        in_p_prime = true;
        break;
      }
    }
    if (in_p_prime && !divides_orbit(psi, p)) {
      rep.holds = false;
      rep.violations.push_back(p);
    }
  }
  return rep;
}

}  // namespace arbordyn
