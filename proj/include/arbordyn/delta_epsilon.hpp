#pragma once

// The (delta_n, eps_n) recursion
//     (delta_1, eps_1) = (2k^2, k),
//     (delta_n, eps_n) = (delta^2 + eps^2, delta * eps / k),
// in exact integers and as sparse integer polynomials, together with the
// degree/low-degree closed forms, the structure facts (even exponents,
// square leading coefficient, delta-only recursion), an exact polynomial
// square root by coefficient descent, and finite scans for integer squares.

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "arbordyn/numeric.hpp"

namespace arbordyn {

// Sparse univariate polynomial over Z in the parameter k. No zero
// coefficients are stored; the zero polynomial has an empty support.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::map<long, BigInt> terms) : terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
  static IntPoly monomial(BigInt c, long e) {
    IntPoly p;
    if (c != 0) p.terms_[e] = std::move(c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  long degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first;
  }
  long low_degree() const {
    if (terms_.empty()) throw std::invalid_argument("low_degree of zero polynomial");
    return terms_.begin()->first;
  }
  const BigInt& leading() const {
    if (terms_.empty()) throw std::invalid_argument("leading of zero polynomial");
    return terms_.rbegin()->second;
  }
  BigInt coeff(long e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigInt(0) : it->second;
  }
  const std::map<long, BigInt>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::map<long, BigInt> r = a.terms_;
    for (const auto& [e, c] : b.terms_) {
      auto [it, fresh] = r.emplace(e, c);
      if (!fresh && (it->second += c) == 0) r.erase(it);
    }
    return IntPoly(std::move(r));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::map<long, BigInt> r = a.terms_;
    for (const auto& [e, c] : b.terms_) {
      auto [it, fresh] = r.try_emplace(e, BigInt(-c));
      if (!fresh && (it->second -= c) == 0) r.erase(it);
    }
    return IntPoly(std::move(r));
  }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const long lo = a.low_degree() + b.low_degree();
    const long hi = a.degree() + b.degree();
    std::vector<BigInt> dense(hi - lo + 1, BigInt(0));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) dense[ea + eb - lo] += ca * cb;
    std::map<long, BigInt> r;
    for (long e = lo; e <= hi; ++e)
      if (dense[e - lo] != 0) r.emplace(e, std::move(dense[e - lo]));
    return IntPoly(std::move(r));
  }

  BigInt evaluate(const BigInt& x) const {
    BigInt acc = 0;
    long prev = -1;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (prev >= 0) acc *= big_pow(x, static_cast<std::uint64_t>(prev - it->first));
      acc += it->second;
      prev = it->first;
    }
    if (prev > 0) acc *= big_pow(x, static_cast<std::uint64_t>(prev));
    return acc;
  }

  // Division by k^j; every exponent must be >= j.
  std::optional<IntPoly> divide_by_power(long j) const {
    std::map<long, BigInt> r;
    for (const auto& [e, c] : terms_) {
      if (e < j) return std::nullopt;
      r.emplace(e - j, c);
    }
    return IntPoly(std::move(r));
  }

  // Canonical descending-degree text, e.g. "16*k^8+8*k^6+5*k^4".
  std::string to_string(const std::string& var = "k") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      if (!first) os << (c > 0 ? "+" : "-");
      else if (c < 0) os << "-";
      first = false;
      BigInt a = c > 0 ? c : BigInt(-c);
      if (e == 0) {
        os << a;
      } else {
        if (a != 1) os << a << "*";
        os << var;
        if (e > 1) os << "^" << e;
      }
    }
    return os.str();
  }

 private:
  std::map<long, BigInt> terms_;
};

struct DeltaEpsPair {
  int n = 0;
  BigInt delta, eps;
  BigInt k0;
};

// Exact pairs for n = 1..n_max at a fixed nonzero integer k0. The k0
// division in the eps update is asserted exact at every step. The bit-length
// guard rejects runs whose delta would exceed `max_bits` (delta roughly
// doubles in bit length per step).
inline std::vector<DeltaEpsPair> delta_eps_int(const BigInt& k0, int n_max,
                                               std::uint64_t max_bits = (1u << 26)) {
  if (k0 == 0) throw std::invalid_argument("delta_eps_int: k0 must be nonzero");
  if (n_max < 1) throw std::invalid_argument("delta_eps_int: n_max >= 1");
  std::vector<DeltaEpsPair> out;
  BigInt delta = 2 * k0 * k0, eps = k0;
  out.push_back({1, delta, eps, k0});
  for (int n = 2; n <= n_max; ++n) {
    if ((boost::multiprecision::msb(boost::multiprecision::abs(delta)) + 2) * 2 >
        max_bits)
      throw guard_error("delta_eps_int: bit-length guard exceeded");
    BigInt prod = delta * eps;
    BigInt d2 = delta * delta + eps * eps;
    BigInt q = prod / k0;
    if (q * k0 != prod)
      throw std::logic_error("delta_eps_int: eps division was not exact");
    delta = std::move(d2);
    eps = std::move(q);
    out.push_back({n, delta, eps, k0});
  }
  return out;
}

// The same recursion over Z[k]. Term counts grow like 2^n/3 and coefficient
// bit lengths like 2^n; the cap keeps runs tractable.
inline std::vector<std::pair<IntPoly, IntPoly>> delta_eps_poly(int n_max,
                                                               int cap = 15) {
  if (n_max < 1) throw std::invalid_argument("delta_eps_poly: n_max >= 1");
  if (n_max > cap) throw guard_error("delta_eps_poly: n_max exceeds cap");
  std::vector<std::pair<IntPoly, IntPoly>> out;
  IntPoly delta = IntPoly::monomial(BigInt(2), 2);
  IntPoly eps = IntPoly::monomial(BigInt(1), 1);
  out.emplace_back(delta, eps);
  for (int n = 2; n <= n_max; ++n) {
    IntPoly d2 = delta * delta + eps * eps;
    auto e2 = (delta * eps).divide_by_power(1);
    if (!e2) throw std::logic_error("delta_eps_poly: eps division was not exact");
    delta = std::move(d2);
    eps = std::move(*e2);
    out.emplace_back(delta, eps);
  }
  return out;
}

struct DegreeProfile {
  int n = 0;
  long deg_delta = 0, low_delta = 0, deg_eps = 0, low_eps = 0;
  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

// Support endpoints measured from the computed polynomials.
inline DegreeProfile degree_profile(int n) {
  auto polys = delta_eps_poly(n);
  const auto& [d, e] = polys.back();
  return {n, d.degree(), d.low_degree(), e.degree(), e.low_degree()};
}

// The closed forms: deg delta = 2^n, low delta = (2^n - (-1)^n)/3 + 1,
// deg eps = 2^n - n, low eps = (2 * 2^n + (-1)^n + 3)/6.
inline DegreeProfile closed_form_degree_profile(int n) {
  const long p = 1L << n;
  const long sgn = (n % 2 == 0) ? 1 : -1;
  return {n, p, (p - sgn) / 3 + 1, p - n, (2 * p + sgn + 3) / 6};
}

// Leading coefficient of delta_n is a perfect square (n >= 2) and every
// exponent in delta_n is even (all n).
inline bool check_structure_lemma(int n) {
  auto polys = delta_eps_poly(n);
  const IntPoly& d = polys.back().first;
  for (const auto& [e, c] : d.terms())
    if (e % 2 != 0) return false;
  if (n >= 2 && !is_perfect_square(d.leading())) return false;
  return true;
}

// delta_n = delta_{n-1}^2 + (delta_{n-1} delta_{n-2}^2 - delta_{n-2}^4)/k^2,
// with the k^2 division exact. A non-exact division falsifies.
inline bool delta_only_recursion_check(int n) {
  if (n < 3) throw std::invalid_argument("delta_only_recursion_check: n >= 3");
  auto polys = delta_eps_poly(n);
  const IntPoly& dn = polys[n - 1].first;
  const IntPoly& d1 = polys[n - 2].first;
  const IntPoly& d2 = polys[n - 3].first;
  IntPoly d2sq = d2 * d2;
  auto correction = (d1 * d2sq - d2sq * d2sq).divide_by_power(2);
  if (!correction) return false;
  return dn == d1 * d1 + *correction;
}

// delta_n with the k^low(delta_n) factor removed; nonzero constant term.
inline IntPoly normalized_delta(int n) {
  auto polys = delta_eps_poly(n);
  const IntPoly& d = polys.back().first;
  auto g = d.divide_by_power(d.low_degree());
  if (!g) throw std::logic_error("normalized_delta: unreachable");
  return *g;
}

// Exact polynomial square root by top-down coefficient descent: the root is
// rebuilt one coefficient at a time from the leading term; any non-integral
// or inconsistent step certifies that no square root exists.
inline std::optional<IntPoly> poly_sqrt(const IntPoly& f) {
  if (f.is_zero()) return IntPoly{};
  if (f.degree() % 2 != 0 || f.low_degree() % 2 != 0) return std::nullopt;
  if (f.leading() < 0 || !is_perfect_square(f.leading())) return std::nullopt;
  const long dg = f.degree() / 2;
  std::vector<BigInt> g(dg + 1, BigInt(0));  // g[j] = coefficient of k^j
  g[dg] = isqrt(f.leading());
  const BigInt twice_lead = 2 * g[dg];
  for (long j = dg - 1; j >= 0; --j) {
    BigInt acc = f.coeff(dg + j);
    for (long a = j + 1; a <= dg - 1; ++a) {
      const long b = dg + j - a;
      if (b <= j || b > dg - 1) continue;
      if (g[a] != 0 && g[b] != 0) acc -= g[a] * g[b];
    }
    BigInt q = acc / twice_lead;
    if (q * twice_lead != acc) return std::nullopt;
    g[j] = std::move(q);
  }
  std::map<long, BigInt> terms;
  for (long j = 0; j <= dg; ++j)
    if (g[j] != 0) terms.emplace(j, g[j]);
  IntPoly root(std::move(terms));
  if (!(root * root == f)) return std::nullopt;
  return root;
}

struct SquareScanHit {
  int n = 0;
  BigInt k0;
};

// Scans delta_n(k0) for perfect squares over n in [n_lo, n_hi] and positive
// k0 in [k_lo, k_hi] (negative k0 mirror positives since delta_n is even).
// The optional row callback receives (n, k0, bit length, is_square) for
// every scanned pair.
inline std::vector<SquareScanHit> scan_squares(
    int n_lo, int n_hi, const BigInt& k_lo, const BigInt& k_hi,
    std::uint64_t max_bits = (1u << 26),
    const std::function<void(int, const BigInt&, std::uint64_t, bool)>& row_fn = {}) {
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("scan_squares: bad n range");
  if (k_lo < 1 || k_hi < k_lo)
    throw std::invalid_argument("scan_squares: k range must be positive");
  std::vector<SquareScanHit> hits;
  for (BigInt k0 = k_lo; k0 <= k_hi; ++k0) {
    auto pairs = delta_eps_int(k0, n_hi, max_bits);
    for (int n = n_lo; n <= n_hi; ++n) {
      const BigInt& d = pairs[n - 1].delta;
      bool sq = is_perfect_square(d);
      if (row_fn) row_fn(n, k0, boost::multiprecision::msb(d) + 1, sq);
      if (sq) hits.push_back({n, k0});
    }
  }
  return hits;
}

}  // namespace arbordyn
