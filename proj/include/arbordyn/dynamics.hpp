#pragma once

// The explicit polynomial identities behind the conjugation, factorization,
// power/Chebyshev and rotation-commutation arguments, plus cyclotomic order
// closed forms. Everything is exact; symbolic parameters are eliminated by
// deterministic integer sampling past the total degree.

#include <string>
#include <vector>

#include "arbordyn/numeric.hpp"
#include "arbordyn/poly.hpp"
#include "arbordyn/rational_map.hpp"
#include "arbordyn/subgroup.hpp"

namespace arbordyn {

using ZPoly = Polynomial<BigInt>;

struct IdentityCheck {
  std::string name;
  bool pass = false;
};

inline bool all_pass(const std::vector<IdentityCheck>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

// The Moebius-conjugation identities, evaluated symbolically at one exact k:
//   x^2 + kx        -> x^2 - kx + k      (shift by -k)
//   x^2 -(k+1)x + k -> x^2 + (1-k)x - 1  (shift by +1)
//   x^2 + x         -> x^2 - x + 1       (Sylvester)
//   x^2 - 2x + 1     = conjugate of x^2 - 1 by x - 1
inline std::vector<IdentityCheck> conjugation_identity_checks(const BigRat& k) {
  std::vector<IdentityCheck> out;
  auto quad = [](BigRat c1, BigRat c0) {
    return RationalMap::from_polynomial(QPoly({std::move(c0), std::move(c1), BigRat(1)}));
  };

  {
    RationalMap phi = quad(k, BigRat(0));  // x^2 + kx
    RationalMap want = quad(-k, k);        // x^2 - kx + k
    bool ok = mobius_conjugate(phi, MobiusTransform::shift(-k)) == want;
    out.push_back({"x^2+kx conjugates to x^2-kx+k under x-k", ok});
  }
  {
    RationalMap phi = quad(-(k + 1), k);       // x^2 - (k+1)x + k
    RationalMap want = quad(BigRat(1) - k, BigRat(-1));  // x^2 + (1-k)x - 1
    bool ok = mobius_conjugate(phi, MobiusTransform::shift(BigRat(1))) == want;
    out.push_back({"x^2-(k+1)x+k conjugates to x^2+(1-k)x-1 under x+1", ok});
  }
  {
    RationalMap phi = quad(BigRat(1), BigRat(0));   // x^2 + x
    RationalMap want = quad(BigRat(-1), BigRat(1)); // x^2 - x + 1
    bool ok = mobius_conjugate(phi, MobiusTransform::shift(BigRat(-1))) == want;
    out.push_back({"x^2+x conjugates to the Sylvester map x^2-x+1", ok});
  }
  {
    RationalMap minus = quad(BigRat(0), BigRat(-1));  // x^2 - 1
    RationalMap plus = quad(BigRat(-2), BigRat(1));   // (x-1)^2
    bool ok = mobius_conjugate(minus, MobiusTransform::shift(BigRat(-1))) == plus;
    out.push_back({"(x-1)^2 equals the conjugate of x^2-1 by x-1", ok});
  }
  return out;
}

inline bool conjugation_identity_suite(const BigRat& k) {
  return all_pass(conjugation_identity_checks(k));
}

// phi^n(x) = x (x + k) prod_{i=1}^{n-1} (phi^i(x) + k) for phi = x^2 + kx.
inline bool factorization_identity(const BigInt& k, int n) {
  if (n < 1) throw std::invalid_argument("factorization_identity: n >= 1");
  ZPoly phi({BigInt(0), k, BigInt(1)});
  ZPoly x = ZPoly::variable();
  ZPoly rhs = x * ZPoly({k, BigInt(1)});
  ZPoly iter = x;
  for (int i = 1; i < n; ++i) {
    iter = phi.compose(iter);  // phi^i
    rhs = rhs * (iter + ZPoly::constant(k));
  }
  iter = phi.compose(iter);  // phi^n
  return iter == rhs;
}

// (x^2 + 2x)^n-th iterate equals (x + 1)^(2^n) - 1.
inline bool verify_power_identity(int n) {
  if (n < 1) throw std::invalid_argument("verify_power_identity: n >= 1");
  ZPoly phi({BigInt(0), BigInt(2), BigInt(1)});
  ZPoly iter = ZPoly::variable();
  for (int i = 0; i < n; ++i) iter = phi.compose(iter);
  ZPoly want = ZPoly({BigInt(1), BigInt(1)}).pow(std::uint64_t(1) << n) -
               ZPoly::constant(BigInt(1));
  return iter == want;
}

namespace detail {
// Laurent polynomial with integer coefficients on exponents [low, low + size).
struct LaurentPoly {
  long low = 0;
  std::vector<BigInt> c;  // c[i] is the coefficient of z^(low + i)

  static LaurentPoly z_plus_zinv() { return {-1, {BigInt(1), BigInt(0), BigInt(1)}}; }

  LaurentPoly squared() const {
    LaurentPoly r;
    r.low = 2 * low;
    r.c.assign(2 * c.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < c.size(); ++j) r.c[i + j] += c[i] * c[j];
    }
    return r;
  }

  void add_constant(const BigInt& v) {
    if (0 < low || 0 >= low + static_cast<long>(c.size()))
      throw std::invalid_argument("constant term outside Laurent support");
    c[-low] += v;
  }
};
}  // namespace detail

// With psi = x^2 - 2: psi^n(z + 1/z) = z^(2^n) + z^(-2^n) as an exact Laurent
// identity.
inline bool verify_chebyshev_identity(int n) {
  if (n < 1) throw std::invalid_argument("verify_chebyshev_identity: n >= 1");
  detail::LaurentPoly f = detail::LaurentPoly::z_plus_zinv();
  for (int i = 0; i < n; ++i) {
    f = f.squared();
    f.add_constant(BigInt(-2));
  }
  const long e = 1L << n;
  if (f.low != -e || f.c.size() != static_cast<std::size_t>(2 * e + 1)) return false;
  for (long j = 0; j < static_cast<long>(f.c.size()); ++j) {
    BigInt want = (j == 0 || j == 2 * e) ? 1 : 0;
    if (f.c[j] != want) return false;
  }
  return true;
}

// |G_n(phi)| for phi = x^2 + kx with k in {-2, 2, 4}, computed from Euler's
// totient of the relevant cyclotomic conductor:
//   k = -2: phi(3 * 2^n) / 2,  k = 2: phi(2^n),  k = 4: phi(3 * 2^(n-1)) / 2.
inline BigInt cyclotomic_orders(int k, int n) {
  if (k != -2 && k != 2 && k != 4)
    throw std::invalid_argument("cyclotomic_orders: k must be in {-2, 2, 4}");
  if (n < 2 || (k == 4 && n < 3))
    throw std::invalid_argument("cyclotomic_orders: n out of range for this k");
  switch (k) {
    case -2: return euler_totient(3 * big_pow(2, n)) / 2;
    case 2: return euler_totient(big_pow(2, n));
    default: return euler_totient(3 * big_pow(2, n - 1)) / 2;
  }
}

namespace detail {
// Element of Z[t]/(t^n - 1).
struct CyclicPoly {
  int n = 1;
  std::vector<BigInt> c;  // size n, c[i] is the coefficient of t^i

  static CyclicPoly constant(int n, BigInt v) {
    CyclicPoly r{n, std::vector<BigInt>(n, BigInt(0))};
    r.c[0] = std::move(v);
    return r;
  }
  static CyclicPoly t_power(int n, long e, BigInt scale = BigInt(1)) {
    CyclicPoly r{n, std::vector<BigInt>(n, BigInt(0))};
    r.c[((e % n) + n) % n] = std::move(scale);
    return r;
  }

  friend CyclicPoly operator*(const CyclicPoly& a, const CyclicPoly& b) {
    CyclicPoly r{a.n, std::vector<BigInt>(a.n, BigInt(0))};
    for (int i = 0; i < a.n; ++i) {
      if (a.c[i] == 0) continue;
      for (int j = 0; j < a.n; ++j) r.c[(i + j) % a.n] += a.c[i] * b.c[j];
    }
    return r;
  }
  friend bool operator==(const CyclicPoly&, const CyclicPoly&) = default;
};
}  // namespace detail

namespace detail {
// Polynomial in x with coefficients in Z[t]/(t^n - 1), dense in x.
using RotXPoly = std::vector<CyclicPoly>;

inline RotXPoly rot_mul(const RotXPoly& a, const RotXPoly& b, int n) {
  RotXPoly r(a.size() + b.size() - 1, CyclicPoly::constant(n, BigInt(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      CyclicPoly prod = a[i] * b[j];
      for (int m = 0; m < n; ++m) r[i + j].c[m] += prod.c[m];
    }
  return r;
}

// Substitute x -> t x: scales the x^j coefficient by t^j.
inline RotXPoly rot_substitute_tx(const RotXPoly& p, int n) {
  RotXPoly r = p;
  for (std::size_t j = 0; j < r.size(); ++j)
    r[j] = r[j] * CyclicPoly::t_power(n, static_cast<long>(j));
  return r;
}
}  // namespace detail

// For phi(x) = s k (x^n - s a) / x^(n-1), s in {+1, -1}: checks the identity
// phi(t x) = t phi(x) in (Z[t]/(t^n - 1))[x]. The parameters k and a enter
// with degree 1 each, so sampling both over {1, 2, 3} is a proof.
inline bool commutes_with_rotation(int n, bool plus_case) {
  if (n < 2) throw std::invalid_argument("commutes_with_rotation: n >= 2");
  using detail::CyclicPoly;
  using detail::RotXPoly;
  const int s = plus_case ? 1 : -1;
  for (int k = 1; k <= 3; ++k) {
    for (int a = 1; a <= 3; ++a) {
      // num = s k x^n - k a, den = x^(n-1), both as R[x] polynomials
      RotXPoly num(n + 1, CyclicPoly::constant(n, BigInt(0)));
      num[n] = CyclicPoly::constant(n, BigInt(s) * k);
      num[0] = CyclicPoly::constant(n, BigInt(-k) * a);
      RotXPoly den(n, CyclicPoly::constant(n, BigInt(0)));
      den[n - 1] = CyclicPoly::constant(n, BigInt(1));
      RotXPoly t_scalar{CyclicPoly::t_power(n, 1)};

      RotXPoly lhs_num = detail::rot_substitute_tx(num, n);
      RotXPoly lhs_den = detail::rot_substitute_tx(den, n);
      RotXPoly rhs_num = detail::rot_mul(t_scalar, num, n);
      const RotXPoly& rhs_den = den;
      if (!(detail::rot_mul(lhs_num, rhs_den, n) ==
            detail::rot_mul(rhs_num, lhs_den, n)))
        return false;
    }
  }
  return true;
}

// The finite-level witness behind the centralizer smallness theorem: the
// rotation subgroup generated by a d-cycle at the root acts freely and
// transitively on level 1, so the centralizer bound m(1)/d equals 1/d.
inline BigRat hd_contradiction_witness(int rotation_order) {
  if (rotation_order < 2)
    throw std::invalid_argument("hd_contradiction_witness: order >= 2");
  TreeShape shape(rotation_order, 1);
  std::vector<std::uint8_t> flat(rotation_order);
  for (int i = 0; i < rotation_order; ++i)
    flat[i] = static_cast<std::uint8_t>((i + 1) % rotation_order);
  auto rot = TreeAutomorphism::from_flat_portrait(shape, std::move(flat));
  auto h = close_under_group_ops(shape, {rot});
  return centralizer_hd_bound(h, 1);
}

}  // namespace arbordyn
