#pragma once

// Subgroups of Aut(T_n): closure from generators, orbits and free-action
// tests, brute-force centralizers, branch stabilizers and the
// periodic-alignment subgroups, with closed-form orders and Hausdorff
// dimension data.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "arbordyn/numeric.hpp"
#include "arbordyn/tree_aut.hpp"

namespace arbordyn {

struct FiniteSubgroup {
  TreeShape shape;
  std::vector<TreeAutomorphism> generators;
  std::optional<std::vector<TreeAutomorphism>> elements;  // sorted when present

  const std::vector<TreeAutomorphism>& enumerated() const {
    if (!elements) throw std::invalid_argument("subgroup is not enumerated");
    return *elements;
  }
  BigInt order() const { return BigInt(enumerated().size()); }

  // Generators when given, otherwise the full element list.
  const std::vector<TreeAutomorphism>& acting_set() const {
    if (!generators.empty()) return generators;
    return enumerated();
  }
};

inline FiniteSubgroup close_under_group_ops(const TreeShape& shape,
                                            std::vector<TreeAutomorphism> generators,
                                            std::uint64_t limit = 1000000) {
  for (const auto& g : generators)
    if (!(g.shape() == shape))
      throw std::invalid_argument("generator shape mismatch");
  std::set<TreeAutomorphism> seen;
  std::vector<TreeAutomorphism> frontier;
  auto id = TreeAutomorphism::identity(shape);
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    std::vector<TreeAutomorphism> next;
    for (const auto& g : frontier) {
      for (const auto& h : generators) {
        auto c = compose(g, h);
        if (seen.insert(c).second) {
          if (seen.size() > limit)
            throw guard_error("close_under_group_ops: size exceeds limit");
          next.push_back(std::move(c));
        }
      }
    }
    frontier = std::move(next);
  }
  FiniteSubgroup out;
  out.shape = shape;
  out.generators = std::move(generators);
  out.elements.emplace(seen.begin(), seen.end());
  return out;
}

struct OrbitPartition {
  int level = 0;
  std::vector<std::vector<NodeAddress>> orbits;  // sorted by least element
  int orbit_count = 0;                           // m(i)
};

inline NodeAddress address_from_value(const TreeShape& shape, std::size_t value,
                                      int level) {
  NodeAddress a;
  a.digits.resize(level);
  for (int i = level; i-- > 0;) {
    a.digits[i] = static_cast<std::uint8_t>(value % shape.arity);
    value /= shape.arity;
  }
  return a;
}

inline OrbitPartition orbits_on_level(const FiniteSubgroup& h, int level) {
  if (level < 0 || level > h.shape.height)
    throw std::invalid_argument("orbits_on_level: level out of range");
  const std::size_t n = h.shape.level_size(level);
  const auto& acting = h.generators.empty() && h.elements ? *h.elements : h.generators;
  std::vector<int> orbit_of(n, -1);
  OrbitPartition part;
  part.level = level;
  for (std::size_t start = 0; start < n; ++start) {
    if (orbit_of[start] != -1) continue;
    int id = static_cast<int>(part.orbits.size());
    std::vector<std::size_t> frontier{start};
    orbit_of[start] = id;
    std::vector<std::size_t> members{start};
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (auto v : frontier) {
        for (const auto& g : acting) {
          std::size_t w = g.apply_value(v, level);
          if (orbit_of[w] == -1) {
            orbit_of[w] = id;
            members.push_back(w);
            next.push_back(w);
          }
        }
      }
      frontier = std::move(next);
    }
    std::sort(members.begin(), members.end());
    std::vector<NodeAddress> addrs;
    addrs.reserve(members.size());
    for (auto v : members) addrs.push_back(address_from_value(h.shape, v, level));
    part.orbits.push_back(std::move(addrs));
  }
  part.orbit_count = static_cast<int>(part.orbits.size());
  return part;
}

// True iff no non-identity element fixes any level-i vertex.
inline bool is_free_on_level(const FiniteSubgroup& h, int level) {
  const std::size_t n = h.shape.level_size(level);
  for (const auto& g : h.enumerated()) {
    if (g.is_identity()) continue;
    for (std::size_t v = 0; v < n; ++v)
      if (g.apply_value(v, level) == v) return false;
  }
  return true;
}

// Centralizer of H in Aut(shape) by brute force; commuting with the
// generators suffices.
inline FiniteSubgroup centralizer(const TreeShape& shape, const FiniteSubgroup& h,
                                  std::uint64_t limit = 1000000) {
  if (!(h.shape == shape)) throw std::invalid_argument("centralizer: shape mismatch");
  const auto& acting = h.acting_set();
  FiniteSubgroup out;
  out.shape = shape;
  std::vector<TreeAutomorphism> elems;
  for_each_aut(shape, limit, [&](TreeAutomorphism g) {
    for (const auto& s : acting)
      if (!(compose(g, s) == compose(s, g))) return;
    elems.push_back(std::move(g));
  });
  std::sort(elems.begin(), elems.end());
  out.elements = std::move(elems);
  return out;
}

// {g in C : restrict(g, i) = identity}.
inline FiniteSubgroup kernel_of_restriction(const FiniteSubgroup& c, int level) {
  const auto& elems = c.enumerated();
  FiniteSubgroup out;
  out.shape = c.shape;
  std::vector<TreeAutomorphism> ker;
  for (const auto& g : elems)
    if (restrict_to(g, level).is_identity()) ker.push_back(g);
  out.elements = std::move(ker);
  return out;
}

// |Stab_n| = (d!)^((d^n - 1)/(d - 1)) / d^n.
inline BigInt stab_branch_order(int d, int n) {
  TreeShape shape(d, n);
  return aut_order(shape) / big_pow(d, n);
}

// |S_n| = (d!)^((d^n - d^(n-m))/(d - 1)) / d^m for 1 <= m <= n.
inline BigInt s_group_order(int d, int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("s_group_order: need 1 <= m <= n");
  BigInt expnt = (big_pow(d, n) - big_pow(d, n - m)) / (d - 1);
  BigInt result = 1, base = factorial(static_cast<unsigned>(d));
  for (long b = expnt == 0 ? -1 : static_cast<long>(boost::multiprecision::msb(expnt));
       b >= 0; --b) {
    result *= result;
    if (boost::multiprecision::bit_test(expnt, static_cast<unsigned>(b))) result *= base;
  }
  return result / big_pow(d, m);
}

// [Stab_n : S_n] = (d!)^((d^(n-m) - 1)/(d - 1)) / d^(n-m).
inline BigInt stab_s_index(int d, int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("stab_s_index: need 1 <= m <= n");
  return stab_branch_order(d, n - m);
}

// The distinguished branch is the all-zeros path; any branch is equivalent
// under conjugation. `period` is the orbit period m of the root.
struct BranchSpec {
  TreeShape shape;
  int period = 1;

  BranchSpec(TreeShape s, int m) : shape(s), period(m) {
    if (m < 1 || m > s.height)
      throw std::invalid_argument("BranchSpec: need 1 <= period <= height");
  }
  NodeAddress branch_node(int level) const {
    return NodeAddress(std::vector<std::uint8_t>(level, 0));
  }
};

namespace detail {

// Constructs either the branch stabilizer (period = height) or the
// periodic-alignment subgroup. Portrait entries are free at nodes with fewer
// than `period` leading zeros; every other node copies the node obtained by
// stripping `period` leading zeros. All-zero addresses must fix child 0.
inline FiniteSubgroup build_aligned_subgroup(const BranchSpec& spec,
                                             std::uint64_t limit) {
  const TreeShape& shape = spec.shape;
  const int d = shape.arity;
  const int m = spec.period;
  BigInt expected = s_group_order(d, shape.height, m);
  if (expected > limit)
    throw guard_error("aligned subgroup: order exceeds limit");

  auto addrs = internal_addresses(shape);
  std::vector<std::size_t> rep(addrs.size());
  std::vector<int> kind(addrs.size());  // 0 = free any, 1 = free fixing 0, 2 = copied
  for (std::size_t i = 0; i < addrs.size(); ++i) {
    const auto& a = addrs[i];
    std::size_t zeros = 0;
    while (zeros < a.length() && a.digits[zeros] == 0) ++zeros;
    bool all_zero = zeros == a.length();
    if (zeros < static_cast<std::size_t>(m)) {
      rep[i] = i;
      kind[i] = all_zero ? 1 : 0;
    } else {
      NodeAddress r(std::vector<std::uint8_t>(a.digits.begin() + m, a.digits.end()));
      rep[i] = address_index(shape, r);
      kind[i] = 2;
    }
  }

  std::vector<std::vector<std::uint8_t>> all_perms, stab_perms;
  {
    std::vector<std::uint8_t> p(d);
    for (int i = 0; i < d; ++i) p[i] = static_cast<std::uint8_t>(i);
    do {
      all_perms.push_back(p);
      if (p[0] == 0) stab_perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }

  std::vector<std::size_t> free_nodes;
  for (std::size_t i = 0; i < addrs.size(); ++i)
    if (kind[i] != 2) free_nodes.push_back(i);

  std::vector<TreeAutomorphism> elems;
  std::vector<std::size_t> ranks(free_nodes.size(), 0);
  std::vector<std::uint8_t> flat(addrs.size() * d);
  auto perms_for = [&](std::size_t node) -> const std::vector<std::vector<std::uint8_t>>& {
    return kind[node] == 1 ? stab_perms : all_perms;
  };
  while (true) {
    for (std::size_t fi = 0; fi < free_nodes.size(); ++fi) {
      std::size_t node = free_nodes[fi];
      const auto& p = perms_for(node)[ranks[fi]];
      for (int c = 0; c < d; ++c) flat[node * d + c] = p[c];
    }
    // copied nodes resolve through (possibly chained) representatives
    for (std::size_t i = 0; i < addrs.size(); ++i) {
      if (kind[i] != 2) continue;
      std::size_t r = rep[i];
      while (kind[r] == 2) r = rep[r];
      for (int c = 0; c < d; ++c) flat[i * d + c] = flat[r * d + c];
    }
    elems.push_back(TreeAutomorphism::from_flat_portrait(shape, flat));
    std::size_t fi = free_nodes.size();
    bool advanced = false;
    while (fi-- > 0) {
      if (++ranks[fi] < perms_for(free_nodes[fi]).size()) {
        advanced = true;
        break;
      }
      ranks[fi] = 0;
    }
    if (!advanced) break;
  }
  std::sort(elems.begin(), elems.end());

  FiniteSubgroup out;
  out.shape = shape;
  out.elements = std::move(elems);
  return out;
}

}  // namespace detail

inline FiniteSubgroup build_branch_stabilizer(const BranchSpec& spec,
                                              std::uint64_t limit = 1000000) {
  // The stabilizer is the period = height case: no alignment constraint.
  return detail::build_aligned_subgroup(BranchSpec(spec.shape, spec.shape.height),
                                        limit);
}

inline FiniteSubgroup build_s_subgroup(const BranchSpec& spec,
                                       std::uint64_t limit = 1000000) {
  return detail::build_aligned_subgroup(spec, limit);
}

// hd(S, Stab) closed form 1 - d^(-m).
inline BigRat hausdorff_closed_form(int d, int m) {
  if (d < 2 || m < 1) throw std::invalid_argument("hausdorff_closed_form: bad arguments");
  BigInt dm = big_pow(d, m);
  return BigRat(BigInt(dm - 1), dm);
}

// log2 |Stab_n| and log2 |S_n| for d = 2; exact exponent arithmetic that
// never materializes the group orders.
inline BigInt stab_order_exponent2(int n) {
  return big_pow(2, n) - 1 - n;
}
inline BigInt s_order_exponent2(int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("s_order_exponent2: need 1 <= m <= n");
  return big_pow(2, n) - big_pow(2, n - m) - m;
}
inline BigRat s_vs_stab_ratio2(int n, int m) {
  return BigRat(s_order_exponent2(n, m), stab_order_exponent2(n));
}

struct HausdorffEstimate {
  std::vector<BigRat> ratios;
  std::optional<BigRat> limit;
};

namespace detail {
// log(h)/log(g) for orders >= 2: exact when both are powers of a common
// base, otherwise a high-precision rational approximation.
inline BigRat log_ratio(const BigInt& h, const BigInt& g) {
  if (h < 1 || g < 2) throw std::invalid_argument("log_ratio: bad orders");
  if (h == 1) return BigRat(0);
  auto [hb, he] = perfect_power_decomposition(h);
  auto [gb, ge] = perfect_power_decomposition(g);
  if (hb == gb) return BigRat(he, ge);
  using HP = boost::multiprecision::cpp_bin_float_100;
  HP lh = log(HP(h)), lg = log(HP(g));
  HP scaled = (lh / lg) * pow(HP(2), 160);
  BigInt num = scaled.convert_to<BigInt>();
  return BigRat(num, big_pow(2, 160));
}
}  // namespace detail

inline HausdorffEstimate hausdorff_estimate(const std::vector<BigInt>& h_orders,
                                            const std::vector<BigInt>& g_orders,
                                            std::optional<BigRat> limit = {}) {
  if (h_orders.size() != g_orders.size())
    throw std::invalid_argument("hausdorff_estimate: length mismatch");
  HausdorffEstimate est;
  est.limit = std::move(limit);
  for (std::size_t i = 0; i < h_orders.size(); ++i)
    est.ratios.push_back(detail::log_ratio(h_orders[i], g_orders[i]));
  return est;
}

// Upper bound m(i)/d^i on hd(C, Aut(T)) from the orbit count of H at level i.
inline BigRat centralizer_hd_bound(const FiniteSubgroup& h, int level) {
  auto part = orbits_on_level(h, level);
  return BigRat(part.orbit_count, big_pow(h.shape.arity, level));
}

}  // namespace arbordyn
