#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "arbordyn/subgroup.hpp"

using namespace arbordyn;

namespace {

TreeAutomorphism from_flat(int d, int n, std::vector<std::uint8_t> flat) {
  return TreeAutomorphism::from_flat_portrait(TreeShape(d, n), std::move(flat));
}

// Root swap with identity sections at the given height.
TreeAutomorphism swap_top(int height) {
  auto id = TreeAutomorphism::identity(TreeShape(2, height));
  auto flat = id.flat_portrait();
  flat[0] = 1;
  flat[1] = 0;
  return TreeAutomorphism::from_flat_portrait(TreeShape(2, height), flat);
}

// The dihedral generators of Aut(T_2): a of order 4 and the level-1 swap x.
TreeAutomorphism dihedral_a() { return from_flat(2, 2, {1, 0, 0, 1, 1, 0}); }
TreeAutomorphism dihedral_x() { return from_flat(2, 2, {1, 0, 0, 1, 0, 1}); }

// a~ acts by a on T_2 and additionally swaps the children of every level-2
// node; together with x it generates a dihedral group of order 8 inside
// Aut(T_3) that is simply transitive on level 3.
TreeAutomorphism a_tilde() {
  return from_flat(2, 3, {1, 0, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0});
}

}  // namespace

TEST_CASE("closure from generators") {
  CHECK(close_under_group_ops(TreeShape(2, 2), {swap_top(2)}).order() == 2);

  auto dihedral = close_under_group_ops(TreeShape(2, 2), {dihedral_a(), dihedral_x()});
  CHECK(dihedral.order() == 8);  // all of Aut(T_2)

  auto h = close_under_group_ops(TreeShape(2, 3), {a_tilde(), swap_top(3)});
  CHECK(h.order() == 8);
  auto part = orbits_on_level(h, 3);
  CHECK(part.orbit_count == 1);
  CHECK(is_free_on_level(h, 3));

  // its restriction to T_2 is all of Aut(T_2), hence not free on level 2
  std::set<TreeAutomorphism> restricted;
  for (const auto& g : h.enumerated()) restricted.insert(restrict_to(g, 2));
  CHECK(restricted.size() == 8);
  FiniteSubgroup r{TreeShape(2, 2), {}, std::vector<TreeAutomorphism>(
                                            restricted.begin(), restricted.end())};
  CHECK_FALSE(is_free_on_level(r, 2));

  CHECK_THROWS_AS(close_under_group_ops(TreeShape(2, 3), {a_tilde(), swap_top(3)}, 4),
                  guard_error);
}

TEST_CASE("orbits on a level") {
  TreeShape shape(2, 3);
  FiniteSubgroup trivial{shape, {}, std::vector<TreeAutomorphism>{
                                        TreeAutomorphism::identity(shape)}};
  for (int i : {0, 1, 2, 3})
    CHECK(orbits_on_level(trivial, i).orbit_count == 1 << i);

  FiniteSubgroup swap{shape, {swap_top(3)}, std::nullopt};
  CHECK(orbits_on_level(swap, 1).orbit_count == 1);
  CHECK(orbits_on_level(swap, 2).orbit_count == 2);

  auto part = orbits_on_level(swap, 1);
  CHECK(part.orbits.size() == 1);
  CHECK(part.orbits[0].size() == 2);
  CHECK_THROWS_AS(orbits_on_level(swap, 4), std::invalid_argument);
}

TEST_CASE("free actions") {
  TreeShape shape(2, 2);
  FiniteSubgroup trivial{shape, {}, std::vector<TreeAutomorphism>{
                                        TreeAutomorphism::identity(shape)}};
  CHECK(is_free_on_level(trivial, 1));
  auto swap = close_under_group_ops(shape, {swap_top(2)});
  CHECK(is_free_on_level(swap, 1));
  CHECK(is_free_on_level(swap, 2));
}

TEST_CASE("centralizers by brute force") {
  // root swap inside Aut(T_2): centralizer has order 4
  {
    TreeShape shape(2, 2);
    FiniteSubgroup h{shape, {swap_top(2)}, std::nullopt};
    CHECK(centralizer(shape, h).order() == 4);
  }
  // root swap inside Aut(T_3): order 16, kernel of restriction to level 1 has
  // order |Aut(T_2)|^{m(1)} = 8 (free action makes the injection onto
  // Aut(T_{n-i})^{m(i)} surjective)
  {
    TreeShape shape(2, 3);
    FiniteSubgroup h{shape, {swap_top(3)}, std::nullopt};
    auto c = centralizer(shape, h);
    CHECK(c.order() == 16);
    CHECK(kernel_of_restriction(c, 1).order() == 8);
    CHECK(kernel_of_restriction(c, 3).order() == c.order());
  }
  // root 3-cycle inside Aut(T_2) at d=3: order 18, kernel order 6
  {
    TreeShape shape(3, 2);
    auto cyc = from_flat(3, 2, {1, 2, 0, 0, 1, 2, 0, 1, 2, 0, 1, 2});
    FiniteSubgroup h{shape, {cyc}, std::nullopt};
    auto c = centralizer(shape, h);
    CHECK(c.order() == 18);
    CHECK(kernel_of_restriction(c, 1).order() == 6);
  }
  // trivial subgroup: centralizer is everything; kernel at level 1 has order
  // |Aut(T_{n-1})|^d
  {
    TreeShape shape(2, 3);
    FiniteSubgroup h{shape, {}, std::vector<TreeAutomorphism>{
                                    TreeAutomorphism::identity(shape)}};
    auto c = centralizer(shape, h);
    CHECK(c.order() == aut_order(shape));
    CHECK(BigInt(kernel_of_restriction(c, 1).order()) ==
          aut_order(TreeShape(2, 2)) * aut_order(TreeShape(2, 2)));
  }
}

TEST_CASE("kernel bound from the orbit count, with equality under freeness") {
  struct Case {
    int d, n;
    std::vector<TreeAutomorphism> gens;
  };
  std::vector<Case> cases;
  cases.push_back({2, 3, {swap_top(3)}});
  cases.push_back({2, 3, {a_tilde(), swap_top(3)}});
  cases.push_back({2, 2, {swap_top(2)}});
  cases.push_back({3, 2, {from_flat(3, 2, {1, 2, 0, 0, 1, 2, 0, 1, 2, 0, 1, 2})}});
  for (const auto& tc : cases) {
    TreeShape shape(tc.d, tc.n);
    auto h = close_under_group_ops(shape, tc.gens);
    auto c = centralizer(shape, h);
    for (int i = 1; i <= tc.n; ++i) {
      auto part = orbits_on_level(h, i);
      BigInt bound = 1;
      for (int j = 0; j < part.orbit_count; ++j)
        bound *= aut_order(TreeShape(tc.d, tc.n - i));
      BigInt kernel = kernel_of_restriction(c, i).order();
      CHECK(kernel <= bound);
      if (is_free_on_level(h, i)) CHECK(kernel == bound);
      // finite-level form of the Hausdorff bound:
      // |C_n| <= |C_i| * |Aut(T_{n-i})|^{m(i)}
      std::set<TreeAutomorphism> image;
      for (const auto& g : c.enumerated()) image.insert(restrict_to(g, i));
      CHECK(c.order() <= BigInt(image.size()) * bound);
    }
  }
}

TEST_CASE("orbit counts double under freeness on consecutive levels") {
  TreeShape shape(2, 3);
  auto h = close_under_group_ops(shape, {swap_top(3)});
  REQUIRE(is_free_on_level(h, 1));
  REQUIRE(is_free_on_level(h, 2));
  CHECK(orbits_on_level(h, 2).orbit_count == 2 * orbits_on_level(h, 1).orbit_count);
}

TEST_CASE("branch stabilizer and alignment subgroup closed forms") {
  CHECK(stab_branch_order(2, 3) == 16);
  CHECK(stab_branch_order(2, 1) == 1);
  CHECK(stab_branch_order(3, 2) == 144);

  CHECK(s_group_order(2, 3, 1) == 8);
  CHECK(s_group_order(2, 3, 2) == 16);
  for (int n = 1; n <= 6; ++n) CHECK(s_group_order(2, n, n) == stab_branch_order(2, n));
  CHECK_THROWS_AS(s_group_order(2, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(s_group_order(2, 3, 0), std::invalid_argument);

  // Thm 9 / Thm 11 proof exponents at d = 2
  CHECK(s_group_order(2, 3, 1) == big_pow(2, (1 << 2) - 1));      // 2^(2^{n-1}-1)
  CHECK(s_group_order(2, 3, 2) == big_pow(2, (1 << 3) - (1 << 1) - 2));

  CHECK(stab_s_index(2, 3, 1) == 2);
  CHECK(stab_s_index(2, 4, 1) == 16);
  CHECK(stab_s_index(3, 2, 2) == 1);
  for (int n = 2; n <= 6; ++n)
    for (int m = 1; m <= n; ++m)
      CHECK(stab_s_index(2, n, m) == stab_branch_order(2, n) / s_group_order(2, n, m));
}

TEST_CASE("explicit branch stabilizer and alignment subgroups") {
  {
    BranchSpec spec(TreeShape(2, 3), 1);
    auto stab = build_branch_stabilizer(spec);
    auto s = build_s_subgroup(spec);
    CHECK(stab.order() == 16);
    CHECK(s.order() == 8);
    // branch fixed by every element; S is contained in Stab
    std::set<TreeAutomorphism> stab_set(stab.enumerated().begin(), stab.enumerated().end());
    for (const auto& g : s.enumerated()) {
      CHECK(stab_set.count(g) == 1);
      for (int len = 1; len <= 3; ++len) {
        NodeAddress branch(std::vector<std::uint8_t>(len, 0));
        CHECK(g.apply(branch) == branch);
      }
    }
    // closure under composition and inversion
    std::set<TreeAutomorphism> s_set(s.enumerated().begin(), s.enumerated().end());
    for (const auto& g : s.enumerated()) {
      CHECK(s_set.count(invert(g)) == 1);
      for (const auto& h : s.enumerated()) CHECK(s_set.count(compose(g, h)) == 1);
    }
    // brute-force cross-check: stabilizer = elements fixing the branch
    std::size_t fixing = 0;
    for_each_aut(TreeShape(2, 3), 1000, [&](const TreeAutomorphism& g) {
      bool fixes = true;
      for (int len = 1; len <= 3; ++len) {
        NodeAddress branch(std::vector<std::uint8_t>(len, 0));
        fixes = fixes && g.apply(branch) == branch;
      }
      if (fixes) ++fixing;
    });
    CHECK(BigInt(fixing) == stab.order());
  }
  {
    BranchSpec spec(TreeShape(2, 2), 2);
    auto stab = build_branch_stabilizer(spec);
    auto s = build_s_subgroup(spec);
    CHECK(stab.order() == 2);
    CHECK(s.order() == 2);
    CHECK(stab.enumerated() == s.enumerated());
  }
  {
    BranchSpec spec(TreeShape(3, 2), 1);
    CHECK(build_branch_stabilizer(spec).order() == 144);
    CHECK(build_s_subgroup(spec).order() == 72);
    CHECK(s_group_order(3, 2, 1) == 72);
  }
  CHECK_THROWS_AS(build_s_subgroup(BranchSpec(TreeShape(2, 5), 1), 100), guard_error);
}

TEST_CASE("alignment constraint holds section-wise") {
  BranchSpec spec(TreeShape(2, 3), 1);
  auto s = build_s_subgroup(spec);
  for (const auto& g : s.enumerated()) {
    // section at 0^(l+1) is the truncation of the section at 0^l
    for (int l = 0; l + 1 <= 2; ++l) {
      auto top = subtree_section(g, NodeAddress(std::vector<std::uint8_t>(l, 0)));
      auto below = subtree_section(g, NodeAddress(std::vector<std::uint8_t>(l + 1, 0)));
      CHECK(below == restrict_to(top, top.shape().height - 1));
    }
  }
}

TEST_CASE("index grows without bound for fixed period") {
  BigInt prev = 0;
  for (int n = 2; n <= 10; ++n) {
    BigInt idx = stab_s_index(2, n, 1);
    CHECK(idx > prev);
    prev = idx;
  }
}

TEST_CASE("hausdorff closed forms and exact exponent ratios") {
  CHECK(hausdorff_closed_form(2, 1) == BigRat(1, 2));
  CHECK(hausdorff_closed_form(2, 2) == BigRat(3, 4));
  CHECK(hausdorff_closed_form(3, 1) == BigRat(2, 3));

  // d = 2 exponents: |Stab_n| = 2^(2^n - 1 - n), |S_n| = 2^(2^n - 2^(n-m) - m)
  CHECK(stab_order_exponent2(3) == 4);
  CHECK(s_order_exponent2(3, 1) == 3);
  CHECK(s_vs_stab_ratio2(3, 1) == BigRat(3, 4));

  // exact deviation from the limit at n = 40, m = 1: 39 / (2^41 - 82)
  BigRat deviation = hausdorff_closed_form(2, 1) - s_vs_stab_ratio2(40, 1);
  BigRat expected(BigInt(39), big_pow(2, 41) - 82);
  CHECK(boost::multiprecision::abs(deviation) == expected);
  // truthful convergence rate: (n-1) / (2^(n+1) - 2n - 2) at m = 1
  for (int n = 2; n <= 40; ++n) {
    BigRat dev = boost::multiprecision::abs(hausdorff_closed_form(2, 1) -
                                            s_vs_stab_ratio2(n, 1));
    CHECK(dev == BigRat(BigInt(n - 1), big_pow(2, n + 1) - 2 * n - 2));
  }
}

TEST_CASE("hausdorff estimates from order sequences") {
  // powers of a common base give exact exponent ratios
  auto est = hausdorff_estimate({BigInt(8), BigInt(32)}, {BigInt(64), BigInt(1024)});
  REQUIRE(est.ratios.size() == 2);
  CHECK(est.ratios[0] == BigRat(1, 2));
  CHECK(est.ratios[1] == BigRat(1, 2));

  // trivial subgroup
  CHECK(hausdorff_estimate({BigInt(1)}, {BigInt(64)}).ratios[0] == 0);

  // incommensurable orders fall back to a high-precision value
  auto mixed = hausdorff_estimate({BigInt(8)}, {BigInt(9)});
  double approx = mixed.ratios[0].convert_to<double>();
  CHECK(approx == Catch::Approx(std::log(8.0) / std::log(9.0)).epsilon(1e-12));

  // ratios computed from the closed-form branch orders, enumerable range
  std::vector<BigInt> s_orders, stab_orders;
  for (int n = 1; n <= 12; ++n) {
    s_orders.push_back(s_group_order(2, n, 1));
    stab_orders.push_back(stab_branch_order(2, n));
  }
  // |Stab_1| = 1: compare from n = 2 onward
  s_orders.erase(s_orders.begin());
  stab_orders.erase(stab_orders.begin());
  auto seq = hausdorff_estimate(s_orders, stab_orders, hausdorff_closed_form(2, 1));
  for (std::size_t i = 0; i < seq.ratios.size(); ++i) {
    CHECK(seq.ratios[i] == s_vs_stab_ratio2(static_cast<int>(i) + 2, 1));
    CHECK(seq.ratios[i] >= 0);
    CHECK(seq.ratios[i] <= 1);
  }
}

TEST_CASE("centralizer hausdorff bound m(i)/d^i") {
  {
    TreeShape shape(2, 3);
    FiniteSubgroup h{shape, {swap_top(3)}, std::nullopt};
    CHECK(centralizer_hd_bound(h, 1) == BigRat(1, 2));
  }
  {
    TreeShape shape(3, 2);
    auto cyc = from_flat(3, 2, {1, 2, 0, 0, 1, 2, 0, 1, 2, 0, 1, 2});
    FiniteSubgroup h{shape, {cyc}, std::nullopt};
    CHECK(centralizer_hd_bound(h, 1) == BigRat(1, 3));
  }
  {
    TreeShape shape(2, 3);
    FiniteSubgroup trivial{shape, {}, std::vector<TreeAutomorphism>{
                                          TreeAutomorphism::identity(shape)}};
    for (int i : {1, 2, 3}) CHECK(centralizer_hd_bound(trivial, i) == 1);
  }
}
