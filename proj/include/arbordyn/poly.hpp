#pragma once

// Dense univariate polynomials over an exact coefficient ring. Coefficients
// are stored low degree first; the zero polynomial is an empty vector.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace arbordyn {

template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
  static Polynomial variable() { return Polynomial(std::vector<T>{T(0), T(1)}); }
  // c * x^k
  static Polynomial monomial(T c, std::size_t k) {
    std::vector<T> v(k + 1, T(0));
    v[k] = std::move(c);
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1 by convention.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const T& leading() const {
    if (c_.empty()) throw std::invalid_argument("leading: zero polynomial");
    return c_.back();
  }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const std::vector<T>& coeffs() const { return c_; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return Polynomial(std::move(r));
  }
  Polynomial operator-() const {
    std::vector<T> r = c_;
    for (auto& x : r) x = -x;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const T& s) {
    std::vector<T> r = a.c_;
    for (auto& x : r) x *= s;
    return Polynomial(std::move(r));
  }

  T evaluate(const T& x) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(r));
  }

  // Substitution p(q(x)) by Horner on polynomials.
  Polynomial compose(const Polynomial& q) const {
    Polynomial acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + constant(c_[i]);
    return acc;
  }

  Polynomial pow(std::uint64_t e) const {
    Polynomial r = constant(T(1)), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

// Quotient/remainder over a field coefficient type.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> poly_divmod(const Polynomial<T>& a,
                                                    const Polynomial<T>& b) {
  if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by zero");
  std::vector<T> rem(a.coeffs());
  long db = b.degree();
  if (a.degree() < db) return {{}, a};
  std::vector<T> quot(a.degree() - db + 1, T(0));
  const T& lead = b.leading();
  for (long k = a.degree(); k >= db; --k) {
    T c = rem[k] / lead;
    if (c == 0) continue;
    quot[k - db] = c;
    for (long j = 0; j <= db; ++j) rem[k - db + j] -= c * b.coeff(j);
  }
  return {Polynomial<T>(std::move(quot)), Polynomial<T>(std::move(rem))};
}

// Monic gcd over a field coefficient type (Euclid with monic remainders).
template <class T>
Polynomial<T> poly_gcd(Polynomial<T> a, Polynomial<T> b) {
  auto make_monic = [](Polynomial<T> p) {
    if (p.is_zero()) return p;
    std::vector<T> c = p.coeffs();
    const T lead = c.back();
    for (auto& x : c) x = x / lead;
    return Polynomial<T>(std::move(c));
  };
  while (!b.is_zero()) {
    auto [q, r] = poly_divmod(a, b);
    a = std::move(b);
    b = make_monic(std::move(r));
  }
  return make_monic(std::move(a));
}

}  // namespace arbordyn
