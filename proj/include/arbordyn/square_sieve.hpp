#pragma once

// Modular certification that delta_n(k0) is a non-square for entire
// congruence classes.
//
// The sequence (delta_n, eps_n) mod m depends only on k0 mod m and is
// eventually periodic with preperiod t and period l. A residue class is
// certified when delta_n mod m avoids the squares mod m for every even n in
// the periodic part (two full periods are inspected so that every
// position/parity combination is seen even when l is odd). Even preperiod
// indices whose delta IS a square mod m are recorded per class as residual
// indices: the congruence says nothing about those finitely many n, and they
// are discharged separately -- n = 2 and n = 4 globally (delta_2 and delta_4
// lie strictly between consecutive squares for every k0 != 0), larger n by
// an exact per-value check. This mirrors how the published table treats
// preperiod terms.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "arbordyn/delta_epsilon.hpp"
#include "arbordyn/numeric.hpp"

namespace arbordyn {

// {x^2 mod m : x in Z/m}, 0 included.
inline std::set<std::uint32_t> squares_mod(std::uint32_t m) {
  if (m < 2) throw std::invalid_argument("squares_mod: m >= 2");
  std::set<std::uint32_t> out;
  for (std::uint64_t x = 0; x < m; ++x) out.insert(static_cast<std::uint32_t>(x * x % m));
  return out;
}

struct ModOrbitProfile {
  std::uint32_t modulus = 0;
  std::uint32_t residue = 0;
  // states[i] = (delta_{i+1} mod m, eps_{i+1} mod m); length preperiod + period
  std::vector<std::pair<std::uint32_t, std::uint32_t>> states;
  std::uint32_t preperiod = 0;  // t
  std::uint32_t period = 1;     // l

  // Even preperiod indices n whose delta_n mod m is a square mod m.
  std::vector<int> residual_even_indices;
  // True iff no even n in the periodic window has delta_n mod m a square.
  bool periodic_clean = false;

  std::uint32_t delta_at(int n) const {  // n >= 1
    std::size_t pos = static_cast<std::size_t>(n - 1);
    if (pos < preperiod) return states[pos].first;
    pos = preperiod + (pos - preperiod) % period;
    return states[pos].first;
  }
};

inline ModOrbitProfile mod_orbit(std::uint32_t r, std::uint32_t m) {
  if (m < 2) throw std::invalid_argument("mod_orbit: m >= 2");
  r %= m;
  if (std::gcd(r, m) != 1)
    throw std::invalid_argument("mod_orbit: residue not invertible mod m");
  const std::uint64_t rinv = inv_mod(r, m);
  ModOrbitProfile prof;
  prof.modulus = m;
  prof.residue = r;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> seen;
  std::uint64_t d = 2 * std::uint64_t(r) % m * r % m, e = r;
  std::uint32_t i = 0;
  for (;;) {
    auto state = std::make_pair(static_cast<std::uint32_t>(d),
                                static_cast<std::uint32_t>(e));
    auto [it, fresh] = seen.emplace(state, i);
    if (!fresh) {
      prof.preperiod = it->second;
      prof.period = i - it->second;
      break;
    }
    prof.states.push_back(state);
    std::uint64_t nd = (d * d + e * e) % m;
    e = d * e % m * rinv % m;
    d = nd;
    ++i;
  }

  const auto sq = squares_mod(m);
  for (std::uint32_t pos = 0; pos < prof.preperiod; ++pos) {
    int n = static_cast<int>(pos) + 1;
    if (n % 2 == 0 && sq.count(prof.states[pos].first))
      prof.residual_even_indices.push_back(n);
  }
  prof.periodic_clean = true;
  for (std::uint32_t j = 0; j < 2 * prof.period; ++j) {
    std::uint32_t pos = prof.preperiod + j % prof.period;
    int n = static_cast<int>(prof.preperiod + j) + 1;
    if (n % 2 == 0 && sq.count(prof.states[pos].first)) {
      prof.periodic_clean = false;
      break;
    }
  }
  return prof;
}

// delta_2(k) = k^2 (4k^2 + 1) and delta_4(k) both lie strictly between
// consecutive squares for every k0 != 0, so a residual index of 2 or 4 never
// hides an integer square regardless of the class member.
inline bool residual_index_globally_excluded(int n) { return n == 2 || n == 4; }

inline bool certify_class(std::uint32_t r, std::uint32_t m) {
  return mod_orbit(r, m).periodic_clean;
}

struct SieveCertificate {
  std::uint32_t modulus = 0;
  std::set<std::uint32_t> residues;
  std::map<std::uint32_t, ModOrbitProfile> profiles;
};

// All invertible classes mod m whose periodic windows are clean.
inline SieveCertificate certified_set(std::uint32_t m) {
  if (m < 3) throw std::invalid_argument("certified_set: m >= 3");
  SieveCertificate cert;
  cert.modulus = m;
  for (std::uint32_t r = 1; r < m; ++r) {
    if (std::gcd(r, m) != 1) continue;
    auto prof = mod_orbit(r, m);
    if (prof.periodic_clean) {
      cert.residues.insert(r);
      cert.profiles.emplace(r, std::move(prof));
    }
  }
  return cert;
}

// The published congruence table: the k0 = 1 (mod 2) row is realized at
// modulus 8, where the squares are {0, 1, 4} and delta_n = 5 for n >= 2.
inline const std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>>&
paper_table() {
  static const std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> t = {
      {3, {1, 2}},
      {5, {2, 3}},
      {7, {1, 2, 5, 6}},
      {8, {1, 3, 5, 7}},
      {11, {1, 2, 5, 6, 9, 10}},
      {13, {3, 6, 7, 10}},
      {17, {1, 3, 14, 16}},
      {19, {6, 7, 9, 10, 12, 13}},
      {23, {1, 6, 8, 9, 14, 15, 17, 22}},
      {29, {2, 11, 12, 14, 15, 17, 18, 27}},
      {31, {6, 10, 11, 14, 17, 20, 21, 25}},
      {37, {6, 8, 10, 11, 14, 17, 18, 19, 20, 23, 26, 27, 29, 31}},
      {41, {2, 11, 13, 14, 15, 26, 27, 28, 30, 39}},
      {43, {4, 5, 12, 14, 17, 21, 22, 26, 29, 31, 38, 39}},
      {47, {4, 7, 11, 12, 15, 19, 21, 26, 28, 32, 35, 36, 40, 43}},
      {53, {2, 19, 22, 25, 26, 27, 28, 31, 34, 51}},
      {59, {1, 3, 7, 8, 25, 29, 30, 34, 51, 52, 56, 58}},
      {61, {1, 2, 3, 12, 17, 24, 29, 30, 31, 32, 37, 44, 49, 58, 59, 60}},
      {67, {5, 6, 9, 15, 18, 22, 27, 30, 32, 33, 34, 35, 37, 40, 45, 49, 52, 58, 61, 62}},
      {71, {6, 7, 11, 12, 16, 20, 27, 28, 30, 33, 38, 41, 43, 44, 51, 55, 59, 60, 64, 65}},
      {73, {6, 7, 12, 13, 14, 20, 24, 29, 32, 33, 40, 41, 44, 49, 53, 59, 60, 61, 66, 67}},
      {79, {20, 68}},
      {83, {12, 16, 21, 62, 71}},
      {103, {9, 50}},
      {107, {106}},
      {109, {92}},
      {131, {26, 105}},
      {149, {89}},
      {157, {24}},
      {173, {19}},
      {197, {52, 145}},
  };
  return t;
}

// Certificates carrying exactly the published residues (profiles attached).
inline std::vector<SieveCertificate> paper_row_certificates() {
  std::vector<SieveCertificate> out;
  for (const auto& [m, row] : paper_table()) {
    SieveCertificate cert;
    cert.modulus = m;
    for (auto r : row) {
      cert.residues.insert(r);
      cert.profiles.emplace(r, mod_orbit(r, m));
    }
    out.push_back(std::move(cert));
  }
  return out;
}

// Certificates carrying the full computed certified set per built-in modulus.
inline std::vector<SieveCertificate> computed_certificates() {
  std::vector<SieveCertificate> out;
  for (const auto& [m, row] : paper_table()) out.push_back(certified_set(m));
  return out;
}

struct CoverageReport {
  std::uint64_t bound = 0;
  std::vector<std::uint64_t> uncovered;  // values in [1, bound] with no certificate
  std::optional<std::uint64_t> first_uncovered_overall;
};

namespace detail {
inline std::vector<std::pair<std::uint32_t, std::vector<char>>> residue_bitmaps(
    const std::vector<SieveCertificate>& certs) {
  std::vector<std::pair<std::uint32_t, std::vector<char>>> maps;
  for (const auto& c : certs) {
    std::vector<char> bits(c.modulus, 0);
    for (auto r : c.residues) bits[r % c.modulus] = 1;
    maps.emplace_back(c.modulus, std::move(bits));
  }
  return maps;
}
}  // namespace detail

// A value is covered iff some certificate contains its residue class. The
// first uncovered integer overall is searched from 1 up to `scan_cap`.
inline CoverageReport coverage_check(const std::vector<SieveCertificate>& certs,
                                     std::uint64_t bound,
                                     std::uint64_t scan_cap = (1u << 24)) {
  if (bound < 1) throw std::invalid_argument("coverage_check: bound >= 1");
  auto maps = detail::residue_bitmaps(certs);
  auto covered = [&](std::uint64_t k) {
    for (const auto& [m, bits] : maps)
      if (bits[k % m]) return true;
    return false;
  };
  CoverageReport rep;
  rep.bound = bound;
  for (std::uint64_t k = 1; k <= bound; ++k)
    if (!covered(k)) rep.uncovered.push_back(k);
  if (!rep.uncovered.empty() && rep.uncovered.front() <= scan_cap) {
    rep.first_uncovered_overall = rep.uncovered.front();
  } else {
    for (std::uint64_t k = bound + 1; k <= scan_cap; ++k) {
      if (!covered(k)) {
        rep.first_uncovered_overall = k;
        break;
      }
    }
  }
  return rep;
}

// Some certificate whose class contains |k0|, in ascending modulus order.
inline std::optional<std::pair<std::uint32_t, std::uint32_t>> certificate_for_k0(
    const BigInt& k0, const std::vector<SieveCertificate>& certs) {
  if (k0 == 0) throw std::invalid_argument("certificate_for_k0: k0 must be nonzero");
  BigInt a = boost::multiprecision::abs(k0);
  std::vector<const SieveCertificate*> sorted;
  for (const auto& c : certs) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* x, auto* y) { return x->modulus < y->modulus; });
  for (const auto* c : sorted) {
    auto r = static_cast<std::uint32_t>(a % c->modulus);
    if (c->residues.count(r)) return std::make_pair(c->modulus, r);
  }
  return std::nullopt;
}

// Discharges a class's residual indices for one concrete k0: every residual
// even n must yield a delta_n(|k0|) that is not an integer square. Indices 2
// and 4 are globally excluded and never need the computation.
inline bool residuals_nonsquare_for(const BigInt& k0, const ModOrbitProfile& prof,
                                    std::uint64_t max_bits = (1u << 26)) {
  BigInt a = boost::multiprecision::abs(k0);
  int n_max = 0;
  for (int n : prof.residual_even_indices)
    if (!residual_index_globally_excluded(n)) n_max = std::max(n_max, n);
  if (n_max == 0) return true;
  auto pairs = delta_eps_int(a, n_max, max_bits);
  for (int n : prof.residual_even_indices) {
    if (residual_index_globally_excluded(n)) continue;
    if (is_perfect_square(pairs[n - 1].delta)) return false;
  }
  return true;
}

// --- JSON serialization -----------------------------------------------------

inline nlohmann::json to_json(const ModOrbitProfile& p) {
  nlohmann::json states = nlohmann::json::array();
  for (auto [d, e] : p.states) states.push_back({d, e});
  return {{"residue", p.residue},
          {"preperiod", p.preperiod},
          {"period", p.period},
          {"states", states},
          {"residual_even_indices", p.residual_even_indices},
          {"periodic_clean", p.periodic_clean}};
}

inline nlohmann::json to_json(const SieveCertificate& c) {
  nlohmann::json residues = nlohmann::json::array();
  for (auto r : c.residues) residues.push_back(r);
  nlohmann::json profiles = nlohmann::json::array();
  for (const auto& [r, p] : c.profiles) profiles.push_back(to_json(p));
  return {{"modulus", c.modulus}, {"residues", residues}, {"profiles", profiles}};
}

inline nlohmann::json certificates_to_json(const std::vector<SieveCertificate>& cs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : cs) arr.push_back(to_json(c));
  return arr;
}

inline SieveCertificate certificate_from_json(const nlohmann::json& j) {
  SieveCertificate c;
  c.modulus = j.at("modulus").get<std::uint32_t>();
  for (const auto& r : j.at("residues")) c.residues.insert(r.get<std::uint32_t>());
  for (const auto& pj : j.at("profiles")) {
    ModOrbitProfile p;
    p.modulus = c.modulus;
    p.residue = pj.at("residue").get<std::uint32_t>();
    p.preperiod = pj.at("preperiod").get<std::uint32_t>();
    p.period = pj.at("period").get<std::uint32_t>();
    for (const auto& s : pj.at("states"))
      p.states.emplace_back(s.at(0).get<std::uint32_t>(), s.at(1).get<std::uint32_t>());
    for (const auto& n : pj.at("residual_even_indices"))
      p.residual_even_indices.push_back(n.get<int>());
    p.periodic_clean = pj.at("periodic_clean").get<bool>();
    c.profiles.emplace(p.residue, std::move(p));
  }
  return c;
}

inline std::vector<SieveCertificate> certificates_from_json(const nlohmann::json& j) {
  std::vector<SieveCertificate> out;
  for (const auto& cj : j) out.push_back(certificate_from_json(cj));
  return out;
}

}  // namespace arbordyn
