#pragma once

// Finite complete d-ary rooted trees and their automorphism groups.
//
// An automorphism of the height-n tree is stored as a portrait: one
// permutation of the child slots {0,...,d-1} at every internal node. Internal
// nodes are indexed in canonical order (by depth, then lexicographically by
// address), and the portrait is a flat byte vector with d entries per node,
// which makes equality, ordering and hashing cheap.
//
// Composition convention: the right factor acts first, so
// apply(compose(a,b), v) == apply(a, apply(b, v)).

#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "arbordyn/numeric.hpp"

namespace arbordyn {

struct TreeShape {
  int arity = 2;   // d >= 2
  int height = 0;  // n >= 0

  TreeShape() = default;
  TreeShape(int d, int n) : arity(d), height(n) {
    if (d < 2) throw std::invalid_argument("TreeShape: arity must be >= 2");
    if (n < 0) throw std::invalid_argument("TreeShape: height must be >= 0");
  }

  friend bool operator==(const TreeShape&, const TreeShape&) = default;

  // Number of internal nodes, (d^n - 1)/(d - 1). Guarded so portrait sizes
  // stay addressable.
  std::size_t internal_count() const {
    std::size_t total = 0, level = 1;
    for (int i = 0; i < height; ++i) {
      total += level;
      if (level > (std::size_t(1) << 40) / arity)
        throw guard_error("TreeShape: tree too large to materialize");
      level *= arity;
    }
    return total;
  }

  std::size_t level_size(int i) const {
    if (i < 0 || i > height) throw std::invalid_argument("level out of range");
    std::size_t s = 1;
    for (int j = 0; j < i; ++j) s *= arity;
    return s;
  }
};

// |Aut(T_n)| = (d!)^((d^n - 1)/(d - 1)), exactly.
inline BigInt aut_order(const TreeShape& shape) {
  BigInt internal = (big_pow(shape.arity, shape.height) - 1) / (shape.arity - 1);
  BigInt result = 1, base = factorial(static_cast<unsigned>(shape.arity));
  // big_pow with BigInt exponent via square-and-multiply on the bits
  for (long b = internal == 0 ? -1 : static_cast<long>(boost::multiprecision::msb(internal));
       b >= 0; --b) {
    result *= result;
    if (boost::multiprecision::bit_test(internal, static_cast<unsigned>(b)))
      result *= base;
  }
  return result;
}

struct NodeAddress {
  std::vector<std::uint8_t> digits;  // empty = root

  NodeAddress() = default;
  explicit NodeAddress(std::vector<std::uint8_t> d) : digits(std::move(d)) {}
  NodeAddress(std::initializer_list<int> d) {
    for (int x : d) digits.push_back(static_cast<std::uint8_t>(x));
  }

  std::size_t length() const { return digits.size(); }
  bool is_root() const { return digits.empty(); }
  NodeAddress parent() const {
    if (is_root()) throw std::invalid_argument("root has no parent");
    return NodeAddress(std::vector<std::uint8_t>(digits.begin(), digits.end() - 1));
  }
  NodeAddress child(int c) const {
    auto d = digits;
    d.push_back(static_cast<std::uint8_t>(c));
    return NodeAddress(std::move(d));
  }

  bool valid_for(const TreeShape& shape) const {
    if (digits.size() > static_cast<std::size_t>(shape.height)) return false;
    for (auto c : digits)
      if (c >= shape.arity) return false;
    return true;
  }

  friend bool operator==(const NodeAddress&, const NodeAddress&) = default;
  friend auto operator<=>(const NodeAddress& a, const NodeAddress& b) {
    if (a.digits.size() != b.digits.size())
      return a.digits.size() <=> b.digits.size();
    return a.digits <=> b.digits;
  }

  // Root prints as the Greek epsilon used in portrait files.
  std::string to_string() const {
    if (digits.empty()) return "ε";
    std::string s;
    for (auto c : digits) s += static_cast<char>('0' + c);
    return s;
  }
};

namespace detail {
// Offset of the first node of depth `level` in canonical node order.
inline std::size_t level_offset(int d, int level) {
  std::size_t total = 0, size = 1;
  for (int i = 0; i < level; ++i) {
    total += size;
    size *= d;
  }
  return total;
}

inline std::size_t address_value(const NodeAddress& a, int d) {
  std::size_t v = 0;
  for (auto c : a.digits) v = v * d + c;
  return v;
}
}  // namespace detail

// Canonical index of an internal node address (depth-then-lex order).
inline std::size_t address_index(const TreeShape& shape, const NodeAddress& a) {
  if (!a.valid_for(shape) || a.length() >= static_cast<std::size_t>(shape.height))
    throw std::invalid_argument("address_index: not an internal address");
  return detail::level_offset(shape.arity, static_cast<int>(a.length())) +
         detail::address_value(a, shape.arity);
}

// All internal addresses in canonical order.
inline std::vector<NodeAddress> internal_addresses(const TreeShape& shape) {
  std::vector<NodeAddress> out;
  out.reserve(shape.internal_count());
  out.emplace_back();
  for (std::size_t i = 0; out.size() < shape.internal_count(); ++i) {
    if (out[i].length() + 1 >= static_cast<std::size_t>(shape.height)) continue;
    for (int c = 0; c < shape.arity; ++c) out.push_back(out[i].child(c));
  }
  // Generated by BFS over a queue that is already in canonical order when
  // children are appended level by level; the root-only tree yields {}.
  if (shape.height == 0) out.clear();
  return out;
}

class TreeAutomorphism {
 public:
  TreeAutomorphism() = default;

  static TreeAutomorphism identity(const TreeShape& shape) {
    TreeAutomorphism a;
    a.shape_ = shape;
    a.portrait_.resize(shape.internal_count() * shape.arity);
    for (std::size_t node = 0; node < shape.internal_count(); ++node)
      for (int c = 0; c < shape.arity; ++c)
        a.portrait_[node * shape.arity + c] = static_cast<std::uint8_t>(c);
    return a;
  }

  // Raw constructor from a flat portrait (d images per internal node in
  // canonical node order).
  static TreeAutomorphism from_flat_portrait(const TreeShape& shape,
                                             std::vector<std::uint8_t> flat) {
    if (flat.size() != shape.internal_count() * shape.arity)
      throw std::invalid_argument("portrait size does not match shape");
    TreeAutomorphism a;
    a.shape_ = shape;
    a.portrait_ = std::move(flat);
    for (std::size_t node = 0; node < shape.internal_count(); ++node) {
      std::uint32_t seen = 0;
      for (int c = 0; c < shape.arity; ++c) {
        std::uint8_t img = a.portrait_[node * shape.arity + c];
        if (img >= shape.arity || (seen & (1u << img)))
          throw std::invalid_argument("portrait entry is not a permutation");
        seen |= 1u << img;
      }
    }
    return a;
  }

  const TreeShape& shape() const { return shape_; }
  const std::vector<std::uint8_t>& flat_portrait() const { return portrait_; }

  // Permutation at one internal node, as the image sequence (c -> perm[c]).
  std::vector<std::uint8_t> permutation_at(const NodeAddress& v) const {
    std::size_t idx = address_index(shape_, v);
    return {portrait_.begin() + idx * shape_.arity,
            portrait_.begin() + (idx + 1) * shape_.arity};
  }

  bool is_identity() const {
    for (std::size_t node = 0; node * shape_.arity < portrait_.size(); ++node)
      for (int c = 0; c < shape_.arity; ++c)
        if (portrait_[node * shape_.arity + c] != c) return false;
    return true;
  }

  NodeAddress apply(const NodeAddress& v) const {
    if (!v.valid_for(shape_))
      throw std::invalid_argument("apply: address invalid for shape");
    NodeAddress out;
    out.digits.reserve(v.length());
    std::size_t node = 0;  // index of the source prefix, starting at the root
    int level = 0;
    std::size_t value = 0;
    for (auto c : v.digits) {
      out.digits.push_back(portrait_[node * shape_.arity + c]);
      value = value * shape_.arity + c;
      ++level;
      if (level < shape_.height)
        node = detail::level_offset(shape_.arity, level) + value;
    }
    return out;
  }

  // Image of a level-i vertex encoded as its lexicographic value.
  std::size_t apply_value(std::size_t value, int level) const {
    std::vector<int> digits(level);
    for (int i = level; i-- > 0;) {
      digits[i] = static_cast<int>(value % shape_.arity);
      value /= shape_.arity;
    }
    std::size_t node = 0, src = 0, img = 0;
    for (int i = 0; i < level; ++i) {
      int c = digits[i];
      img = img * shape_.arity + portrait_[node * shape_.arity + c];
      src = src * shape_.arity + c;
      if (i + 1 < shape_.height)
        node = detail::level_offset(shape_.arity, i + 1) + src;
    }
    return img;
  }

  friend bool operator==(const TreeAutomorphism& a, const TreeAutomorphism& b) {
    return a.shape_ == b.shape_ && a.portrait_ == b.portrait_;
  }
  friend bool operator<(const TreeAutomorphism& a, const TreeAutomorphism& b) {
    return a.portrait_ < b.portrait_;
  }

  // Canonical text form: one "address:permutation" line per internal node.
  std::string to_text() const {
    if (shape_.arity > 10)
      throw std::invalid_argument("portrait text form supports arity <= 10");
    std::ostringstream os;
    auto addrs = internal_addresses(shape_);
    for (std::size_t i = 0; i < addrs.size(); ++i) {
      os << addrs[i].to_string() << ':';
      for (int c = 0; c < shape_.arity; ++c)
        os << static_cast<char>('0' + portrait_[i * shape_.arity + c]);
      os << '\n';
    }
    return os.str();
  }

  static TreeAutomorphism from_text(const std::string& text);

 private:
  TreeShape shape_{2, 0};
  std::vector<std::uint8_t> portrait_;

  friend TreeAutomorphism compose(const TreeAutomorphism&, const TreeAutomorphism&);
  friend TreeAutomorphism invert(const TreeAutomorphism&);
  friend TreeAutomorphism restrict_to(const TreeAutomorphism&, int);
  friend TreeAutomorphism subtree_section(const TreeAutomorphism&, const NodeAddress&);
};

// apply(compose(a,b), v) == apply(a, apply(b, v)).
inline TreeAutomorphism compose(const TreeAutomorphism& a, const TreeAutomorphism& b) {
  if (!(a.shape_ == b.shape_))
    throw std::invalid_argument("compose: shape mismatch");
  const TreeShape& sh = a.shape_;
  const int d = sh.arity;
  TreeAutomorphism r;
  r.shape_ = sh;
  r.portrait_.resize(a.portrait_.size());
  // Walk nodes level by level, carrying each node's image value under b so
  // the lookup of a's permutation at b(v) is O(1) per node.
  std::vector<std::size_t> bimg{0};  // b(v) for each current-level node v
  std::size_t offset = 0;
  for (int level = 0; level < sh.height; ++level) {
    std::size_t size = sh.level_size(level);
    std::vector<std::size_t> next;
    if (level + 1 < sh.height) next.resize(size * d);
    for (std::size_t v = 0; v < size; ++v) {
      std::size_t node = offset + v;
      std::size_t bnode = offset + bimg[v];
      for (int c = 0; c < d; ++c) {
        std::uint8_t bc = b.portrait_[node * d + c];
        r.portrait_[node * d + c] = a.portrait_[bnode * d + bc];
        if (level + 1 < sh.height) next[v * d + c] = bimg[v] * d + bc;
      }
    }
    bimg = std::move(next);
    offset += size;
  }
  return r;
}

inline TreeAutomorphism invert(const TreeAutomorphism& a) {
  const TreeShape& sh = a.shape_;
  const int d = sh.arity;
  TreeAutomorphism r;
  r.shape_ = sh;
  r.portrait_.resize(a.portrait_.size());
  std::vector<std::size_t> img{0};
  std::size_t offset = 0;
  for (int level = 0; level < sh.height; ++level) {
    std::size_t size = sh.level_size(level);
    std::vector<std::size_t> next;
    if (level + 1 < sh.height) next.resize(size * d);
    for (std::size_t v = 0; v < size; ++v) {
      std::size_t node = offset + v;
      std::size_t inode = offset + img[v];  // a(v)
      for (int c = 0; c < d; ++c) {
        std::uint8_t ic = a.portrait_[node * d + c];
        r.portrait_[inode * d + ic] = static_cast<std::uint8_t>(c);
        if (level + 1 < sh.height) next[v * d + c] = img[v] * d + ic;
      }
    }
    img = std::move(next);
    offset += size;
  }
  return r;
}

// Truncation to the height-i subtree rooted at the root; a group homomorphism.
inline TreeAutomorphism restrict_to(const TreeAutomorphism& a, int i) {
  if (i < 0 || i > a.shape_.height)
    throw std::invalid_argument("restrict_to: level out of range");
  TreeShape sub(a.shape_.arity, i);
  TreeAutomorphism r;
  r.shape_ = sub;
  r.portrait_.assign(a.portrait_.begin(),
                     a.portrait_.begin() + sub.internal_count() * sub.arity);
  return r;
}

// The action of a on the subtree rooted at v, re-rooted as an automorphism of
// T_{n-|v|}. Requires apply(a, v) == v.
inline TreeAutomorphism subtree_section(const TreeAutomorphism& a,
                                        const NodeAddress& v) {
  if (!(a.apply(v) == v))
    throw std::invalid_argument("subtree_section: node is not fixed");
  TreeShape sub(a.shape_.arity, a.shape_.height - static_cast<int>(v.length()));
  TreeAutomorphism r;
  r.shape_ = sub;
  r.portrait_.reserve(sub.internal_count() * sub.arity);
  for (const auto& w : internal_addresses(sub)) {
    NodeAddress full = v;
    full.digits.insert(full.digits.end(), w.digits.begin(), w.digits.end());
    auto perm = a.permutation_at(full);
    r.portrait_.insert(r.portrait_.end(), perm.begin(), perm.end());
  }
  return r;
}

inline TreeAutomorphism TreeAutomorphism::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::pair<NodeAddress, std::vector<std::uint8_t>>> entries;
  int arity = -1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("portrait line missing ':'");
    std::string addr_s = line.substr(0, colon);
    std::string perm_s = line.substr(colon + 1);
    NodeAddress addr;
    if (addr_s != "ε" && addr_s != "e" && !addr_s.empty()) {
      for (char ch : addr_s) {
        if (ch < '0' || ch > '9')
          throw std::invalid_argument("bad address digit in portrait");
        addr.digits.push_back(static_cast<std::uint8_t>(ch - '0'));
      }
    }
    std::vector<std::uint8_t> perm;
    for (char ch : perm_s) {
      if (ch == '\r') continue;
      if (ch < '0' || ch > '9')
        throw std::invalid_argument("bad permutation digit in portrait");
      perm.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    if (arity == -1)
      arity = static_cast<int>(perm.size());
    else if (arity != static_cast<int>(perm.size()))
      throw std::invalid_argument("inconsistent permutation sizes");
    entries.emplace_back(std::move(addr), std::move(perm));
  }
  if (entries.empty()) throw std::invalid_argument("empty portrait text");
  std::size_t max_len = 0;
  for (auto& [addr, perm] : entries) max_len = std::max(max_len, addr.length());
  TreeShape shape(arity, static_cast<int>(max_len) + 1);
  if (entries.size() != shape.internal_count())
    throw std::invalid_argument("portrait text does not cover all internal nodes");
  std::vector<std::uint8_t> flat(shape.internal_count() * arity, 255);
  for (auto& [addr, perm] : entries) {
    std::size_t idx = address_index(shape, addr);
    for (int c = 0; c < arity; ++c) flat[idx * arity + c] = perm[c];
  }
  for (auto b : flat)
    if (b == 255) throw std::invalid_argument("portrait text has missing nodes");
  return from_flat_portrait(shape, std::move(flat));
}

// Streams every element of Aut(T_n) in lexicographic portrait order. Throws
// guard_error when the group order exceeds `limit`.
template <class Fn>
void for_each_aut(const TreeShape& shape, std::uint64_t limit, Fn&& fn) {
  if (aut_order(shape) > limit)
    throw guard_error("enumerate_aut: group order exceeds limit of " +
                      std::to_string(limit));
  const int d = shape.arity;
  // All permutations of {0..d-1} in lexicographic order of image sequences.
  std::vector<std::vector<std::uint8_t>> perms;
  {
    std::vector<std::uint8_t> p(d);
    for (int i = 0; i < d; ++i) p[i] = static_cast<std::uint8_t>(i);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  const std::size_t nodes = shape.internal_count();
  std::vector<std::size_t> ranks(nodes, 0);
  std::vector<std::uint8_t> flat(nodes * d);
  for (std::size_t node = 0; node < nodes; ++node)
    for (int c = 0; c < d; ++c) flat[node * d + c] = perms[0][c];
  while (true) {
    fn(TreeAutomorphism::from_flat_portrait(shape, flat));
    // odometer: last node varies fastest
    std::size_t node = nodes;
    while (node-- > 0) {
      if (++ranks[node] < perms.size()) {
        for (int c = 0; c < d; ++c) flat[node * d + c] = perms[ranks[node]][c];
        break;
      }
      ranks[node] = 0;
      for (int c = 0; c < d; ++c) flat[node * d + c] = perms[0][c];
      if (node == 0) return;
    }
    if (nodes == 0) return;  // Aut(T_0) is trivial
  }
}

inline std::vector<TreeAutomorphism> enumerate_aut(const TreeShape& shape,
                                                   std::uint64_t limit = 1000000) {
  std::vector<TreeAutomorphism> out;
  for_each_aut(shape, limit, [&](TreeAutomorphism a) { out.push_back(std::move(a)); });
  return out;
}

}  // namespace arbordyn
