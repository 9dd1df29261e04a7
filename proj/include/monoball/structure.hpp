#pragma once

#include "monoball/group.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace monoball {

struct ConjugacyPartition {
  std::vector<std::size_t> class_of;   // element -> class index
  std::vector<GroupSubset> classes;    // identity's class first, then by smallest member
  std::vector<Element> representatives;

  std::size_t count() const { return classes.size(); }
  std::size_t class_size(std::size_t c) const { return classes[c].size(); }
};

inline ConjugacyPartition conjugacy_classes(const GroupPtr& g) {
  const std::size_t n = g->order();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> raw(n, unset);
  std::vector<Element> seeds;

  auto visit = [&](Element seed) {
    const std::size_t id = seeds.size();
    seeds.push_back(seed);
    for (Element h = 0; h < n; ++h) raw[g->conj(h, seed)] = id;
  };
  visit(g->identity());
  for (Element x = 0; x < n; ++x)
    if (raw[x] == unset) visit(x);

  // Renumber: identity's class stays 0, the rest by smallest member (which is the seed).
  std::vector<std::size_t> order(seeds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin() + 1, order.end(),
            [&](std::size_t a, std::size_t b) { return seeds[a] < seeds[b]; });
  std::vector<std::size_t> rank(seeds.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  ConjugacyPartition out;
  out.class_of.resize(n);
  out.classes.assign(seeds.size(), GroupSubset(g));
  out.representatives.resize(seeds.size());
  for (Element x = 0; x < n; ++x) {
    const std::size_t c = rank[raw[x]];
    out.class_of[x] = c;
    out.classes[c].insert(x);
  }
  for (std::size_t c = 0; c < out.classes.size(); ++c)
    out.representatives[c] = *out.classes[c].first();
  return out;
}

struct Subgroup {
  GroupSubset elements;
  std::size_t index_in_parent = 1;

  std::size_t order() const { return elements.size(); }
};

/// Subgroup generated by a set of elements: closure of {1} under right
/// multiplication by the generators (finite, so inverses come for free).
inline Subgroup generate_subgroup(const GroupPtr& g, std::span<const Element> gens) {
  GroupSubset h(g);
  std::vector<Element> frontier{g->identity()};
  h.insert(g->identity());
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (Element x : frontier)
      for (Element s : gens) {
        const Element y = g->mul(x, s);
        if (!h.contains(y)) {
          h.insert(y);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  const std::size_t idx = g->order() / h.size();
  return {std::move(h), idx};
}

inline Subgroup generate_subgroup(const GroupSubset& gens) {
  const auto m = gens.members();
  return generate_subgroup(gens.group(), m);
}

inline bool is_subgroup(const GroupSubset& s) {
  const auto& g = s.parent();
  if (!s.contains(g.identity())) return false;
  const auto m = s.members();
  for (Element x : m) {
    if (!s.contains(g.inv(x))) return false;
    for (Element y : m)
      if (!s.contains(g.mul(x, y))) return false;
  }
  return true;
}

inline bool is_normal_subset(const GroupSubset& s) {
  const auto& g = s.parent();
  bool ok = true;
  s.for_each([&](Element x) {
    for (Element h = 0; h < g.order() && ok; ++h) ok = s.contains(g.conj(h, x));
  });
  return ok;
}

/// A subgroup rebuilt as a standalone group. Local indices follow ascending
/// parent indices.
struct EmbeddedGroup {
  GroupPtr group;
  std::vector<Element> to_parent;
  std::vector<std::int64_t> from_parent;  // -1 outside the subgroup
};

inline EmbeddedGroup as_group(const Subgroup& h) {
  const auto& g = h.elements.parent();
  EmbeddedGroup out;
  out.to_parent = h.elements.members();
  out.from_parent.assign(g.order(), -1);
  for (std::size_t i = 0; i < out.to_parent.size(); ++i) out.from_parent[out.to_parent[i]] = static_cast<std::int64_t>(i);
  const std::size_t m = out.to_parent.size();
  std::vector<std::vector<Element>> t(m, std::vector<Element>(m));
  std::vector<std::string> labels(m);
  for (std::size_t a = 0; a < m; ++a) {
    labels[a] = g.label(out.to_parent[a]);
    for (std::size_t b = 0; b < m; ++b) {
      const auto c = out.from_parent[g.mul(out.to_parent[a], out.to_parent[b])];
      if (c < 0) throw ValidationError("subset is not closed under multiplication");
      t[a][b] = static_cast<Element>(c);
    }
  }
  out.group = FiniteGroup::from_table(std::move(t), std::move(labels));
  return out;
}

struct Abelianization {
  Subgroup commutator;
  GroupPtr quotient;
  std::vector<Element> projection;  // element of G -> coset index in the quotient
};

inline Abelianization abelianization(const GroupPtr& g) {
  const std::size_t n = g->order();
  GroupSubset comms(g);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) comms.insert(g->commutator(x, y));
  Subgroup c = generate_subgroup(comms);

  // Cosets xN, numbered by their smallest element (identity's coset is 0 when 1 = 0).
  constexpr Element unset = static_cast<Element>(-1);
  std::vector<Element> coset(n, unset);
  std::vector<Element> reps;
  const auto nmem = c.elements.members();
  auto mark = [&](Element x) {
    const Element id = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element k : nmem) coset[g->mul(x, k)] = id;
  };
  mark(g->identity());
  for (Element x = 0; x < n; ++x)
    if (coset[x] == unset) mark(x);

  const std::size_t q = reps.size();
  std::vector<std::vector<Element>> t(q, std::vector<Element>(q));
  std::vector<std::string> labels(q);
  for (std::size_t a = 0; a < q; ++a) {
    labels[a] = g->label(reps[a]) + "N";
    for (std::size_t b = 0; b < q; ++b) t[a][b] = coset[g->mul(reps[a], reps[b])];
  }
  return {std::move(c), FiniteGroup::from_table(std::move(t), std::move(labels)), std::move(coset)};
}

inline constexpr std::size_t kDefaultSubgroupCap = 128;

/// All subgroups: seed with the cyclic subgroups, close under pairwise joins
/// until nothing new appears. Sorted by order, then canonically.
inline std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g,
                                                 std::size_t max_order_cap = kDefaultSubgroupCap) {
  if (g->order() > max_order_cap)
    throw CapExceeded("group order " + std::to_string(g->order()) + " exceeds subgroup cap " +
                      std::to_string(max_order_cap) + "; pass a larger cap");
  std::set<boost::dynamic_bitset<>> seen;
  std::vector<GroupSubset> found;
  auto add = [&](GroupSubset s) {
    if (seen.insert(s.bits()).second) found.push_back(std::move(s));
  };
  for (Element x = 0; x < g->order(); ++x) {
    const Element gens[] = {x};
    add(generate_subgroup(g, gens).elements);
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (found[j].is_subset_of(found[i]) || found[i].is_subset_of(found[j])) continue;
      add(generate_subgroup(found[i] | found[j]).elements);
    }
  }
  std::sort(found.begin(), found.end(), [](const GroupSubset& a, const GroupSubset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return canonical_less(a, b);
  });
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& s : found) {
    const std::size_t idx = g->order() / s.size();
    out.push_back({std::move(s), idx});
  }
  return out;
}

}  // namespace monoball
