#pragma once

// Exact rational maps over Q: composition, iteration, Moebius conjugation,
// separability of preimage equations, forward orbits, and a plain-text
// format "p(x)/q(x)" used by the CLI.

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arbordyn/numeric.hpp"
#include "arbordyn/poly.hpp"

namespace arbordyn {

using QPoly = Polynomial<BigRat>;

// Canonical form: numerator and denominator coprime, denominator monic
// (a constant denominator is normalized to 1).
class RationalMap {
 public:
  RationalMap(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
    if (degree() < 1)
      throw std::invalid_argument("RationalMap: degree must be >= 1");
  }

  static RationalMap from_polynomial(QPoly p) {
    return RationalMap(std::move(p), QPoly::constant(BigRat(1)));
  }
  static RationalMap identity_map() {
    return from_polynomial(QPoly::variable());
  }

  const QPoly& numerator() const { return num_; }
  const QPoly& denominator() const { return den_; }
  bool is_polynomial() const { return den_.degree() == 0; }

  long degree() const { return std::max(num_.degree(), den_.degree()); }

  friend bool operator==(const RationalMap& a, const RationalMap& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::optional<BigRat> evaluate(const BigRat& x) const {
    BigRat d = den_.evaluate(x);
    if (d == 0) return std::nullopt;
    return num_.evaluate(x) / d;
  }

 private:
  void normalize() {
    if (den_.is_zero())
      throw std::invalid_argument("RationalMap: zero denominator");
    if (num_.is_zero()) {
      den_ = QPoly::constant(BigRat(1));
      return;
    }
    QPoly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = poly_divmod(num_, g).first;
      den_ = poly_divmod(den_, g).first;
    }
    const BigRat lead = den_.leading();
    if (lead != 1) {
      std::vector<BigRat> nc = num_.coeffs(), dc = den_.coeffs();
      for (auto& c : nc) c /= lead;
      for (auto& c : dc) c /= lead;
      num_ = QPoly(std::move(nc));
      den_ = QPoly(std::move(dc));
    }
  }

  QPoly num_, den_;
};

// f(g(x)), exact, normalized.
inline RationalMap compose(const RationalMap& f, const RationalMap& g) {
  const QPoly& u = g.numerator();
  const QPoly& v = g.denominator();
  const long D = f.degree();
  std::vector<QPoly> upow(D + 1), vpow(D + 1);
  upow[0] = vpow[0] = QPoly::constant(BigRat(1));
  for (long i = 1; i <= D; ++i) {
    upow[i] = upow[i - 1] * u;
    vpow[i] = vpow[i - 1] * v;
  }
  QPoly num, den;
  for (long i = 0; i <= D; ++i) {
    BigRat pc = f.numerator().coeff(i), qc = f.denominator().coeff(i);
    if (pc != 0) num = num + upow[i] * vpow[D - i] * pc;
    if (qc != 0) den = den + upow[i] * vpow[D - i] * qc;
  }
  return RationalMap(std::move(num), std::move(den));
}

inline RationalMap iterate(const RationalMap& phi, int n) {
  if (n < 0) throw std::invalid_argument("iterate: n must be >= 0");
  RationalMap acc = RationalMap::identity_map();
  for (int i = 0; i < n; ++i) acc = compose(phi, acc);
  return acc;
}

// Moebius transformation (a x + b) / (c x + d), ad - bc != 0.
class MobiusTransform {
 public:
  MobiusTransform(BigRat a, BigRat b, BigRat c, BigRat d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ == 0)
      throw std::invalid_argument("MobiusTransform: degenerate coefficients");
  }
  // x + t
  static MobiusTransform shift(BigRat t) {
    return MobiusTransform(BigRat(1), std::move(t), BigRat(0), BigRat(1));
  }

  RationalMap map() const {
    return RationalMap(QPoly({b_, a_}), QPoly({d_, c_}));
  }
  MobiusTransform inverse() const { return MobiusTransform(d_, -b_, -c_, a_); }

 private:
  BigRat a_, b_, c_, d_;
};

// mu^{-1} . phi . mu
inline RationalMap mobius_conjugate(const RationalMap& phi, const MobiusTransform& mu) {
  return compose(mu.inverse().map(), compose(phi, mu.map()));
}

// True iff the numerator of phi^n(x) - alpha is squarefree of full degree d^n.
inline bool check_separable_preimages(const RationalMap& phi, const BigRat& alpha,
                                      int n) {
  if (n < 1) throw std::invalid_argument("check_separable_preimages: n >= 1");
  RationalMap it = iterate(phi, n);
  QPoly g = it.numerator() - it.denominator() * alpha;
  BigInt dn = big_pow(phi.degree(), n);
  if (BigInt(g.degree()) != dn) return false;
  return poly_gcd(g, g.derivative()).degree() == 0;
}

struct OrbitSequence {
  std::vector<BigRat> terms;  // terms[0] = a0
  // (preperiod t, period m) when terms[t + m] == terms[t] was detected.
  std::optional<std::pair<int, int>> cycle;
};

// Exact forward orbit; throws std::domain_error when a pole is hit.
inline OrbitSequence forward_orbit(const RationalMap& phi, const BigRat& a0,
                                   int max_steps) {
  OrbitSequence orbit;
  std::map<BigRat, int> seen;
  BigRat x = a0;
  for (int i = 0; i <= max_steps; ++i) {
    auto [it, inserted] = seen.emplace(x, i);
    if (!inserted) {
      orbit.cycle = {{it->second, i - it->second}};
      return orbit;
    }
    orbit.terms.push_back(x);
    if (i == max_steps) break;
    auto next = phi.evaluate(x);
    if (!next) throw std::domain_error("forward_orbit: pole encountered");
    x = *next;
  }
  return orbit;
}

// ---------------------------------------------------------------------------
// Text form. Grammar: expr := term (('+'|'-') term)*, term := factor
// (('*'|'/') factor)*, factor := ('-'|'+')* primary ('^' uint)?, primary :=
// integer | variable | '(' expr ')'. Any single letter may serve as the
// variable but must be used consistently.

namespace detail {

struct ParsedFraction {
  QPoly num, den;
};

class MapParser {
 public:
  explicit MapParser(const std::string& s) : s_(s) {}

  ParsedFraction parse() {
    auto f = expr();
    skip_ws();
    if (pos_ != s_.size()) throw std::invalid_argument("trailing characters in map text");
    return f;
  }

 private:
  ParsedFraction expr() {
    auto acc = term();
    for (;;) {
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        char op = get();
        auto rhs = term();
        if (op == '+') {
          acc = {acc.num * rhs.den + rhs.num * acc.den, acc.den * rhs.den};
        } else {
          acc = {acc.num * rhs.den - rhs.num * acc.den, acc.den * rhs.den};
        }
      } else {
        return acc;
      }
    }
  }

  ParsedFraction term() {
    auto acc = factor();
    for (;;) {
      skip_ws();
      if (peek() == '*' || peek() == '/') {
        char op = get();
        auto rhs = factor();
        if (op == '*') {
          acc = {acc.num * rhs.num, acc.den * rhs.den};
        } else {
          if (rhs.num.is_zero()) throw std::invalid_argument("division by zero in map text");
          acc = {acc.num * rhs.den, acc.den * rhs.num};
        }
      } else {
        return acc;
      }
    }
  }

  ParsedFraction factor() {
    skip_ws();
    bool neg = false;
    while (peek() == '-' || peek() == '+') {
      if (get() == '-') neg = !neg;
      skip_ws();
    }
    auto base = primary();
    skip_ws();
    if (peek() == '^') {
      get();
      skip_ws();
      std::uint64_t e = parse_uint();
      base = {base.num.pow(e), base.den.pow(e)};
    }
    if (neg) base.num = -base.num;
    return base;
  }

  ParsedFraction primary() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      get();
      auto inner = expr();
      skip_ws();
      if (get() != ')') throw std::invalid_argument("missing ')' in map text");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt v(parse_digits());
      return {QPoly::constant(BigRat(v)), QPoly::constant(BigRat(1))};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      get();
      if (var_ == '\0') var_ = c;
      if (var_ != c)
        throw std::invalid_argument("map text uses more than one variable");
      return {QPoly::variable(), QPoly::constant(BigRat(1))};
    }
    throw std::invalid_argument("unexpected character in map text");
  }

  std::uint64_t parse_uint() {
    std::string digits = parse_digits();
    if (digits.size() > 18) throw std::invalid_argument("exponent too large");
    return std::stoull(digits);
  }

  std::string parse_digits() {
    skip_ws();
    std::string out;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      out += s_[pos_++];
    if (out.empty()) throw std::invalid_argument("expected a number in map text");
    return out;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }

  const std::string& s_;
  std::size_t pos_ = 0;
  char var_ = '\0';
};

}  // namespace detail

inline RationalMap parse_rational_map(const std::string& text) {
  auto frac = detail::MapParser(text).parse();
  return RationalMap(std::move(frac.num), std::move(frac.den));
}

// Parses text that must denote a polynomial (constant denominator).
inline QPoly parse_poly(const std::string& text) {
  auto frac = detail::MapParser(text).parse();
  if (frac.den.degree() != 0)
    throw std::invalid_argument("expected a polynomial, got a rational function");
  const BigRat d = frac.den.leading();
  std::vector<BigRat> c = frac.num.coeffs();
  for (auto& x : c) x /= d;
  return QPoly(std::move(c));
}

inline std::string poly_to_string(const QPoly& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long k = p.degree(); k >= 0; --k) {
    BigRat c = p.coeff(static_cast<std::size_t>(k));
    if (c == 0) continue;
    if (!first) os << (c > 0 ? "+" : "-");
    else if (c < 0) os << "-";
    first = false;
    BigRat a = c > 0 ? c : BigRat(-c);
    if (k == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

inline std::string map_to_string(const RationalMap& f, const std::string& var = "x") {
  if (f.is_polynomial()) {
    QPoly p = f.numerator();
    const BigRat d = f.denominator().leading();
    if (d != 1) {
      std::vector<BigRat> c = p.coeffs();
      for (auto& x : c) x /= d;
      p = QPoly(std::move(c));
    }
    return poly_to_string(p, var);
  }
  return "(" + poly_to_string(f.numerator(), var) + ")/(" +
         poly_to_string(f.denominator(), var) + ")";
}

}  // namespace arbordyn
