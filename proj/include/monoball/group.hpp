#pragma once

#include "monoball/error.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace monoball {

using Element = std::uint32_t;

// Largest group we are willing to tabulate (the multiplication table is order^2 entries).
inline constexpr std::size_t kMaxGroupOrder = 4096;
// Associativity is checked on every triple up to this order and sampled above it.
inline constexpr std::size_t kExhaustiveAssociativity = 512;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group given by its complete multiplication table over dense
/// element indices 0..order-1. Immutable once built; always validated.
class FiniteGroup {
 public:
  /// Validate and wrap a raw table. Throws ValidationError naming the first
  /// failing row, column or triple.
  static GroupPtr from_table(std::vector<std::vector<Element>> table,
                             std::vector<std::string> labels = {});

  std::size_t order() const { return order_; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  Element identity() const { return identity_; }
  Element conj(Element g, Element x) const { return mul(mul(g, x), inv_[g]); }  // g x g^-1
  Element commutator(Element x, Element y) const { return mul(mul(x, y), mul(inv_[x], inv_[y])); }

  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Element x) const {
    return labels_.empty() ? std::to_string(x) : labels_[x];
  }

  bool is_abelian() const {
    for (Element x = 0; x < order_; ++x)
      for (Element y = x + 1; y < order_; ++y)
        if (mul(x, y) != mul(y, x)) return false;
    return true;
  }

  std::vector<std::vector<Element>> table_rows() const {
    std::vector<std::vector<Element>> rows(order_, std::vector<Element>(order_));
    for (Element x = 0; x < order_; ++x)
      for (Element y = 0; y < order_; ++y) rows[x][y] = mul(x, y);
    return rows;
  }

 private:
  FiniteGroup() = default;

  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inv_;
  Element identity_ = 0;
  std::vector<std::string> labels_;
};

inline GroupPtr FiniteGroup::from_table(std::vector<std::vector<Element>> table,
                                        std::vector<std::string> labels) {
  const std::size_t n = table.size();
  if (n == 0) throw ValidationError("group table is empty");
  if (n > kMaxGroupOrder)
    throw CapExceeded("group order " + std::to_string(n) + " exceeds the table cap " +
                      std::to_string(kMaxGroupOrder));
  if (!labels.empty() && labels.size() != n)
    throw ValidationError("label count " + std::to_string(labels.size()) +
                          " does not match order " + std::to_string(n));

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = n;
  g->table_.resize(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (table[x].size() != n)
      throw ValidationError("row " + std::to_string(x) + " has " + std::to_string(table[x].size()) +
                            " entries, expected " + std::to_string(n));
    std::vector<char> seen(n, 0);
    for (std::size_t y = 0; y < n; ++y) {
      const Element v = table[x][y];
      if (v >= n)
        throw ValidationError("entry (" + std::to_string(x) + "," + std::to_string(y) +
                              ") = " + std::to_string(v) + " is out of range");
      if (seen[v])
        throw ValidationError("not a Latin square: row " + std::to_string(x) + " repeats " +
                              std::to_string(v) + " at column " + std::to_string(y));
      seen[v] = 1;
      g->table_[x * n + y] = v;
    }
  }
  for (std::size_t y = 0; y < n; ++y) {
    std::vector<char> seen(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      const Element v = g->table_[x * n + y];
      if (seen[v])
        throw ValidationError("not a Latin square: column " + std::to_string(y) + " repeats " +
                              std::to_string(v) + " at row " + std::to_string(x));
      seen[v] = 1;
    }
  }

  // Two-sided identity.
  std::optional<Element> id;
  for (Element e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x)
      ok = g->table_[e * n + x] == x && g->table_[x * n + e] == x;
    if (ok) id = e;
  }
  if (!id) throw ValidationError("table has no two-sided identity");
  g->identity_ = *id;

  g->inv_.assign(n, 0);
  for (Element x = 0; x < n; ++x) {
    Element y = 0;
    while (g->table_[x * n + y] != *id) ++y;  // Latin square guarantees a unique solution
    if (g->table_[y * n + x] != *id)
      throw ValidationError("element " + std::to_string(x) + " has no two-sided inverse");
    g->inv_[x] = y;
  }

  auto check_triple = [&](Element x, Element y, Element z) {
    if (g->mul(g->mul(x, y), z) != g->mul(x, g->mul(y, z)))
      throw ValidationError("not associative at triple (" + std::to_string(x) + "," +
                            std::to_string(y) + "," + std::to_string(z) + ")");
  };
  if (n <= kExhaustiveAssociativity) {
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        for (Element z = 0; z < n; ++z) check_triple(x, y, z);
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    for (int i = 0; i < (1 << 20); ++i)
      check_triple(static_cast<Element>(rng() % n), static_cast<Element>(rng() % n),
                   static_cast<Element>(rng() % n));
  }

  g->labels_ = std::move(labels);
  return g;
}

/// A subset of a group's elements held as a bitset over element indices.
class GroupSubset {
 public:
  GroupSubset() = default;
  explicit GroupSubset(GroupPtr group) : group_(std::move(group)), bits_(group_->order()) {}
  GroupSubset(GroupPtr group, std::span<const Element> members) : GroupSubset(std::move(group)) {
    for (Element x : members) insert(x);
  }

  static GroupSubset full(const GroupPtr& group) {
    GroupSubset s(group);
    s.bits_.set();
    return s;
  }
  static GroupSubset identity_only(const GroupPtr& group) {
    GroupSubset s(group);
    s.insert(group->identity());
    return s;
  }

  const GroupPtr& group() const { return group_; }
  const FiniteGroup& parent() const { return *group_; }

  bool contains(Element x) const { return bits_.test(x); }
  void insert(Element x) {
    if (x >= bits_.size())
      throw InputError("element " + std::to_string(x) + " is outside a group of order " +
                       std::to_string(bits_.size()));
    bits_.set(x);
  }
  void erase(Element x) { bits_.reset(x); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  std::vector<Element> members() const {
    std::vector<Element> out;
    out.reserve(size());
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
      out.push_back(static_cast<Element>(i));
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
      f(static_cast<Element>(i));
  }

  std::optional<Element> first() const {
    auto i = bits_.find_first();
    if (i == boost::dynamic_bitset<>::npos) return std::nullopt;
    return static_cast<Element>(i);
  }

  bool is_subset_of(const GroupSubset& other) const {
    require_same(other);
    return bits_.is_subset_of(other.bits_);
  }
  // First element of *this missing from other, if any.
  std::optional<Element> first_outside(const GroupSubset& other) const {
    require_same(other);
    auto diff = bits_ - other.bits_;
    auto i = diff.find_first();
    if (i == boost::dynamic_bitset<>::npos) return std::nullopt;
    return static_cast<Element>(i);
  }
  bool intersects(const GroupSubset& other) const {
    require_same(other);
    return bits_.intersects(other.bits_);
  }

  GroupSubset& operator|=(const GroupSubset& o) { require_same(o); bits_ |= o.bits_; return *this; }
  GroupSubset& operator&=(const GroupSubset& o) { require_same(o); bits_ &= o.bits_; return *this; }
  friend GroupSubset operator|(GroupSubset a, const GroupSubset& b) { return a |= b; }
  friend GroupSubset operator&(GroupSubset a, const GroupSubset& b) { return a &= b; }
  GroupSubset complement() const {
    GroupSubset c = *this;
    c.bits_.flip();
    return c;
  }

  friend bool operator==(const GroupSubset& a, const GroupSubset& b) {
    return a.group_ == b.group_ && a.bits_ == b.bits_;
  }

  // Canonical order: lexicographic on the ascending member lists.
  friend bool canonical_less(const GroupSubset& a, const GroupSubset& b) {
    const auto ma = a.members(), mb = b.members();
    return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
  }

  const boost::dynamic_bitset<>& bits() const { return bits_; }

  void require_same(const GroupSubset& other) const {
    if (group_ != other.group_) throw InputError("subsets belong to different groups");
  }

 private:
  GroupPtr group_;
  boost::dynamic_bitset<> bits_;
};

// ---------------------------------------------------------------------------
// Declarative group specifications

struct CyclicSpec { std::size_t n = 1; };
struct DihedralSpec { std::size_t order = 2; };  // order of the group, not the polygon
struct Quaternion8Spec {};
struct HeisenbergSpec { std::size_t p = 2; };
struct PermutationSpec {
  std::size_t degree = 0;
  std::vector<std::vector<std::size_t>> generators;  // 0-indexed images
};
struct TableSpec { std::vector<std::vector<Element>> mul; };
struct ProductSpec;

using GroupSpec = std::variant<CyclicSpec, DihedralSpec, Quaternion8Spec, HeisenbergSpec,
                               PermutationSpec, TableSpec, std::shared_ptr<ProductSpec>>;

struct ProductSpec { std::vector<GroupSpec> factors; };

inline GroupSpec product_spec(std::vector<GroupSpec> factors) {
  return std::make_shared<ProductSpec>(ProductSpec{std::move(factors)});
}

namespace detail {

inline GroupPtr build_cyclic(std::size_t n) {
  if (n == 0) throw ValidationError("cyclic group needs n >= 1");
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = "g^" + std::to_string(i);
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<Element>((i + j) % n);
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

// r^i s^f stored at index f*n + i; s r s^-1 = r^-1.
inline GroupPtr build_dihedral(std::size_t order) {
  if (order < 2 || order % 2 != 0)
    throw ValidationError("dihedral order must be even and >= 2, got " + std::to_string(order));
  const std::size_t n = order / 2;
  std::vector<std::vector<Element>> t(order, std::vector<Element>(order));
  std::vector<std::string> labels(order);
  for (std::size_t a = 0; a < order; ++a) {
    const std::size_t fa = a / n, ia = a % n;
    labels[a] = "r^" + std::to_string(ia) + (fa ? "s" : "");
    for (std::size_t b = 0; b < order; ++b) {
      const std::size_t fb = b / n, ib = b % n;
      const std::size_t rot = fa ? (ia + n - ib) % n : (ia + ib) % n;
      t[a][b] = static_cast<Element>(((fa ^ fb) * n) + rot);
    }
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

// Index 2u + s encodes sign (-1)^s times unit u in {1, i, j, k}.
inline GroupPtr build_quaternion8() {
  // unit products: result unit and whether a sign flip occurs
  static constexpr int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int flip[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static const char* names[4] = {"1", "i", "j", "k"};
  std::vector<std::vector<Element>> t(8, std::vector<Element>(8));
  std::vector<std::string> labels(8);
  for (int a = 0; a < 8; ++a) {
    labels[a] = std::string(a % 2 ? "-" : "") + names[a / 2];
    for (int b = 0; b < 8; ++b) {
      const int u = unit[a / 2][b / 2];
      const int s = (a % 2) ^ (b % 2) ^ flip[a / 2][b / 2];
      t[a][b] = static_cast<Element>(2 * u + s);
    }
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

// (a,b,c) <-> [[1,a,c],[0,1,b],[0,0,1]] mod p, index a*p^2 + b*p + c.
inline GroupPtr build_heisenberg(std::size_t p) {
  if (p < 2) throw ValidationError("heisenberg(p) needs p >= 2");
  const std::size_t n = p * p * p;
  if (n > kMaxGroupOrder) throw CapExceeded("heisenberg(" + std::to_string(p) + ") is too large");
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t a = x / (p * p), b = (x / p) % p, c = x % p;
    labels[x] = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      const std::size_t ra = (a + a2) % p, rb = (b + b2) % p, rc = (c + c2 + a * b2) % p;
      t[x][y] = static_cast<Element>(ra * p * p + rb * p + rc);
    }
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

// Product x*y of permutations is x after y: (xy)(i) = x(y(i)).
inline GroupPtr build_permutation(const PermutationSpec& spec) {
  using Perm = std::vector<std::size_t>;
  const std::size_t deg = spec.degree;
  if (deg == 0) throw ValidationError("permutation degree must be positive");
  for (std::size_t g = 0; g < spec.generators.size(); ++g) {
    const Perm& p = spec.generators[g];
    if (p.size() != deg)
      throw ValidationError("generator " + std::to_string(g) + " has " + std::to_string(p.size()) +
                            " images, expected degree " + std::to_string(deg));
    std::vector<char> seen(deg, 0);
    for (std::size_t i = 0; i < deg; ++i) {
      if (p[i] >= deg || seen[p[i]])
        throw ValidationError("generator " + std::to_string(g) + " is not a permutation at point " +
                              std::to_string(i));
      seen[p[i]] = 1;
    }
  }
  auto compose = [deg](const Perm& x, const Perm& y) {
    Perm r(deg);
    for (std::size_t i = 0; i < deg; ++i) r[i] = x[y[i]];
    return r;
  };
  Perm id(deg);
  for (std::size_t i = 0; i < deg; ++i) id[i] = i;

  std::map<Perm, Element> index;
  std::vector<Perm> elems{id};
  index.emplace(id, 0);
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const Perm& g : spec.generators) {
      Perm next = compose(elems[head], g);
      if (index.count(next)) continue;
      if (elems.size() >= kMaxGroupOrder)
        throw CapExceeded("permutation group exceeds order cap " + std::to_string(kMaxGroupOrder));
      index.emplace(next, static_cast<Element>(elems.size()));
      elems.push_back(std::move(next));
    }
  }
  // Re-index in lexicographic order of the image lists (identity first).
  std::sort(elems.begin(), elems.end());
  index.clear();
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<Element>(i);

  const std::size_t n = elems.size();
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::string lab = "[";
    for (std::size_t i = 0; i < deg; ++i) lab += (i ? "," : "") + std::to_string(elems[a][i]);
    labels[a] = lab + "]";
    for (std::size_t b = 0; b < n; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

}  // namespace detail

GroupPtr build_group(const GroupSpec& spec);

namespace detail {

// Direct product; the first factor is the most significant digit of the index.
inline GroupPtr build_product(const ProductSpec& spec) {
  if (spec.factors.empty()) throw ValidationError("product needs at least one factor");
  std::vector<GroupPtr> parts;
  std::size_t n = 1;
  for (const auto& f : spec.factors) {
    parts.push_back(build_group(f));
    n *= parts.back()->order();
    if (n > kMaxGroupOrder) throw CapExceeded("product group exceeds order cap");
  }
  auto digits = [&](std::size_t x) {
    std::vector<Element> d(parts.size());
    for (std::size_t i = parts.size(); i-- > 0;) {
      d[i] = static_cast<Element>(x % parts[i]->order());
      x /= parts[i]->order();
    }
    return d;
  };
  auto encode = [&](const std::vector<Element>& d) {
    std::size_t x = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) x = x * parts[i]->order() + d[i];
    return static_cast<Element>(x);
  };
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto da = digits(a);
    std::string lab = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) lab += (i ? "," : "") + parts[i]->label(da[i]);
    labels[a] = lab + ")";
    for (std::size_t b = 0; b < n; ++b) {
      const auto db = digits(b);
      std::vector<Element> dc(parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i) dc[i] = parts[i]->mul(da[i], db[i]);
      t[a][b] = encode(dc);
    }
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

}  // namespace detail

inline GroupPtr build_group(const GroupSpec& spec) {
  struct Visitor {
    GroupPtr operator()(const CyclicSpec& s) const { return detail::build_cyclic(s.n); }
    GroupPtr operator()(const DihedralSpec& s) const { return detail::build_dihedral(s.order); }
    GroupPtr operator()(const Quaternion8Spec&) const { return detail::build_quaternion8(); }
    GroupPtr operator()(const HeisenbergSpec& s) const { return detail::build_heisenberg(s.p); }
    GroupPtr operator()(const PermutationSpec& s) const { return detail::build_permutation(s); }
    GroupPtr operator()(const TableSpec& s) const { return FiniteGroup::from_table(s.mul); }
    GroupPtr operator()(const std::shared_ptr<ProductSpec>& s) const {
      if (!s) throw ValidationError("null product spec");
      return detail::build_product(*s);
    }
  };
  return std::visit(Visitor{}, spec);
}

// Convenience constructors used throughout the tests and tools.
inline GroupPtr cyclic(std::size_t n) { return build_group(CyclicSpec{n}); }
inline GroupPtr dihedral(std::size_t order) { return build_group(DihedralSpec{order}); }
inline GroupPtr quaternion8() { return build_group(Quaternion8Spec{}); }
inline GroupPtr heisenberg(std::size_t p) { return build_group(HeisenbergSpec{p}); }
inline GroupPtr symmetric_group(std::size_t degree) {
  PermutationSpec spec{degree, {}};
  if (degree >= 2) {
    std::vector<std::size_t> swap(degree), cycle(degree);
    for (std::size_t i = 0; i < degree; ++i) {
      swap[i] = i;
      cycle[i] = (i + 1) % degree;
    }
    std::swap(swap[0], swap[1]);
    spec.generators = {swap, cycle};
  }
  return build_group(spec);
}

// SL(2,3) acting on the eight non-zero vectors of F_3^2.
inline GroupPtr sl23() {
  std::vector<std::pair<int, int>> vecs;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a || b) vecs.emplace_back(a, b);
  auto perm_of = [&](int m00, int m01, int m10, int m11) {
    std::vector<std::size_t> p(vecs.size());
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      const auto [a, b] = vecs[i];
      const std::pair<int, int> img{(m00 * a + m01 * b) % 3, (m10 * a + m11 * b) % 3};
      p[i] = static_cast<std::size_t>(std::find(vecs.begin(), vecs.end(), img) - vecs.begin());
    }
    return p;
  };
  return build_group(PermutationSpec{8, {perm_of(1, 1, 0, 1), perm_of(1, 0, 1, 1)}});
}

}  // namespace monoball
