#pragma once

#include "monoball/group.hpp"
#include "monoball/parallel.hpp"
#include "monoball/rational.hpp"
#include "monoball/structure.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace monoball {

/// A.B = {ab : a in A, b in B}. Large inputs are split over A across workers;
/// the per-chunk bitsets are OR-merged so the result is schedule-independent.
inline GroupSubset product_set(const GroupSubset& a, const GroupSubset& b) {
  a.require_same(b);
  const auto& g = a.parent();
  const auto am = a.members();
  const auto bm = b.members();
  if (am.size() * bm.size() < (1u << 16)) {
    GroupSubset out(a.group());
    for (Element x : am)
      for (Element y : bm) out.insert(g.mul(x, y));
    return out;
  }
  std::vector<GroupSubset> partial(worker_count(), GroupSubset(a.group()));
  parallel_chunks(am.size(), 64, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    auto& out = partial[w];
    for (std::size_t i = lo; i < hi; ++i)
      for (Element y : bm) out.insert(g.mul(am[i], y));
  });
  GroupSubset out(a.group());
  for (const auto& p : partial) out |= p;
  return out;
}

inline GroupSubset inverse_set(const GroupSubset& a) {
  GroupSubset out(a.group());
  a.for_each([&](Element x) { out.insert(a.parent().inv(x)); });
  return out;
}

inline GroupSubset power(const GroupSubset& a, std::size_t n) {
  if (n == 0) return GroupSubset::identity_only(a.group());
  GroupSubset out = a;
  for (std::size_t i = 1; i < n; ++i) out = product_set(out, a);
  return out;
}

// A A^-1
inline GroupSubset difference_set(const GroupSubset& a) { return product_set(a, inverse_set(a)); }

/// Iterates A^1, A^2, ... When A contains the identity the powers are nested
/// and A^{n+1} = A^n u (A^n \ A^{n-1}).A, so only the frontier is multiplied.
class PowerIterator {
 public:
  explicit PowerIterator(GroupSubset a)
      : base_(std::move(a)), current_(base_), previous_(GroupSubset::identity_only(base_.group())) {
    nested_ = base_.contains(base_.parent().identity());
  }

  const GroupSubset& current() const { return current_; }
  std::size_t exponent() const { return n_; }

  const GroupSubset& advance() {
    GroupSubset next(base_.group());
    if (nested_) {
      GroupSubset frontier = current_;
      frontier.require_same(previous_);
      for (Element x : previous_.members()) frontier.erase(x);
      next = current_ | product_set(frontier, base_);
    } else {
      next = product_set(current_, base_);
    }
    previous_ = std::move(current_);
    current_ = std::move(next);
    ++n_;
    return current_;
  }

 private:
  GroupSubset base_;
  GroupSubset current_;
  GroupSubset previous_;
  bool nested_ = false;
  std::size_t n_ = 1;
};

struct GrowthProfile {
  std::size_t base_size = 0;
  std::vector<std::size_t> sizes;          // sizes[n-1] = |A^n|, n = 1..n_max
  std::optional<std::size_t> saturated_at; // first n with A^n = A^{n+1}, if seen within the window
  double fitted_d = 0.0;                   // max over 2<=n<=n_max of log(|A^n|/|A|)/log n
  std::size_t witness_n = 0;

  std::size_t size_at(std::size_t n) const { return sizes.at(n - 1); }
};

inline GrowthProfile growth_profile(const GroupSubset& a, std::size_t n_max) {
  if (a.empty()) throw InputError("growth profile needs a non-empty set");
  if (n_max < 1) throw InputError("n_max must be at least 1");
  GrowthProfile p;
  p.base_size = a.size();
  PowerIterator it(a);
  p.sizes.push_back(a.size());
  GroupSubset prev = it.current();
  for (std::size_t n = 2; n <= n_max + 1; ++n) {
    if (p.saturated_at) {
      if (n <= n_max) p.sizes.push_back(p.sizes.back());
      continue;
    }
    const GroupSubset& cur = it.advance();
    if (cur == prev) p.saturated_at = n - 1;
    if (n <= n_max) p.sizes.push_back(cur.size());
    prev = cur;
  }
  for (std::size_t n = 2; n <= n_max; ++n) {
    const double d = std::log(static_cast<double>(p.sizes[n - 1]) / p.base_size) / std::log(static_cast<double>(n));
    if (p.witness_n == 0 || d > p.fitted_d) {
      p.fitted_d = d;
      p.witness_n = n;
    }
  }
  return p;
}

/// Iterate powers until A^n = A^{n+1}; returns all powers A^1..A^sat.
/// Needs the identity in A (otherwise the powers may cycle without repeating).
inline std::vector<GroupSubset> powers_until_saturation(const GroupSubset& a) {
  if (!a.contains(a.parent().identity())) throw InputError("powers_until_saturation needs the identity in the set");
  std::vector<GroupSubset> out{a};
  PowerIterator it(a);
  while (true) {
    const GroupSubset& next = it.advance();
    if (next == out.back()) break;
    out.push_back(next);
  }
  return out;
}

struct SetPredicates {
  bool symmetric = false;
  std::optional<Element> symmetric_witness;  // x in A with x^-1 not in A
  bool contains_identity = false;
  bool normal = false;
  std::optional<Element> normal_witness;     // x with xA != Ax
  bool union_of_classes = false;
  std::optional<Element> class_witness;      // a in A with a conjugate outside A
  Rational doubling{0};
  Rational tripling{0};
};

inline SetPredicates set_predicates(const GroupSubset& a) {
  const auto& g = a.parent();
  SetPredicates r;
  r.contains_identity = a.contains(g.identity());
  r.symmetric = true;
  a.for_each([&](Element x) {
    if (r.symmetric && !a.contains(g.inv(x))) {
      r.symmetric = false;
      r.symmetric_witness = x;
    }
  });

  r.normal = true;
  const auto members = a.members();
  for (Element x = 0; x < g.order() && r.normal; ++x) {
    GroupSubset left(a.group()), right(a.group());
    for (Element y : members) {
      left.insert(g.mul(x, y));
      right.insert(g.mul(y, x));
    }
    if (!(left == right)) {
      r.normal = false;
      r.normal_witness = x;
    }
  }
  r.union_of_classes = true;
  for (Element y : members) {
    for (Element h = 0; h < g.order(); ++h)
      if (!a.contains(g.conj(h, y))) {
        r.union_of_classes = false;
        r.class_witness = y;
        break;
      }
    if (!r.union_of_classes) break;
  }
  if (r.normal != r.union_of_classes)
    throw FalsifiedError("normality checks disagree (translate vs conjugation-closure)");

  if (!a.empty()) {
    const auto a2 = product_set(a, a);
    const auto a3 = product_set(a2, a);
    r.doubling = Rational(static_cast<std::int64_t>(a2.size()), static_cast<std::int64_t>(a.size()));
    r.tripling = Rational(static_cast<std::int64_t>(a3.size()), static_cast<std::int64_t>(a.size()));
  }
  return r;
}

struct NormalizeOptions {
  bool symmetrize = false;
  bool add_identity = false;
  bool conjugation_close = false;
};

/// Smallest superset of S with the requested closures. Conjugation closure of
/// a symmetric set stays symmetric, so one pass in this order suffices.
inline GroupSubset normalize_set(const GroupSubset& s, NormalizeOptions opt) {
  const auto& g = s.parent();
  GroupSubset out = s;
  if (opt.add_identity) out.insert(g.identity());
  if (opt.symmetrize) out |= inverse_set(out);
  if (opt.conjugation_close) {
    GroupSubset closed(s.group());
    out.for_each([&](Element x) {
      for (Element h = 0; h < g.order(); ++h) closed.insert(g.conj(h, x));
    });
    out = closed;
  }
  return out;
}

struct CoveringCertificate {
  GroupSubset cover;                 // X
  GroupSubset quadruple;             // A A^-1 A A^-1
  GroupSubset difference;            // A A^-1
  bool subset_ok = false;            // X inside A A^-1 A A^-1
  bool separation_ok = false;        // translates xA pairwise disjoint
  bool inclusion_ok = false;         // A A^-1 A A^-1 inside X A A^-1
  bool size_bound_ok = false;        // |X||A| <= |A A^-1 A A^-1|
  std::size_t verified_range = 0;    // n_max of the follow-up power check, if run

  bool valid() const { return subset_ok && separation_ok && inclusion_ok && size_bound_ok; }
};

/// Greedy maximal A-separated subset of AA^-1AA^-1, scanning ascending indices.
inline CoveringCertificate ruzsa_cover(const GroupSubset& a) {
  if (a.empty()) throw InputError("ruzsa_cover needs a non-empty set");
  const auto& g = a.parent();
  CoveringCertificate c;
  c.difference = difference_set(a);
  c.quadruple = product_set(c.difference, c.difference);
  c.cover = GroupSubset(a.group());
  GroupSubset covered(a.group());  // X.A so far
  const auto am = a.members();
  c.quadruple.for_each([&](Element x) {
    for (Element y : am)
      if (covered.contains(g.mul(x, y))) return;
    c.cover.insert(x);
    for (Element y : am) covered.insert(g.mul(x, y));
  });

  c.subset_ok = c.cover.is_subset_of(c.quadruple);
  // Pairwise disjointness checked directly rather than through the running union.
  c.separation_ok = true;
  const auto xm = c.cover.members();
  for (std::size_t i = 0; i < xm.size() && c.separation_ok; ++i) {
    GroupSubset ti(a.group());
    for (Element y : am) ti.insert(g.mul(xm[i], y));
    for (std::size_t j = i + 1; j < xm.size() && c.separation_ok; ++j)
      for (Element y : am)
        if (ti.contains(g.mul(xm[j], y))) {
          c.separation_ok = false;
          break;
        }
  }
  c.inclusion_ok = c.quadruple.is_subset_of(product_set(c.cover, c.difference));
  c.size_bound_ok = c.cover.size() * a.size() <= c.quadruple.size();
  return c;
}

struct AppendixReport {
  Rational tripling{0};
  Rational quadruple_ratio{0};         // |AA^-1AA^-1| / |A|, the measured K^{O(1)}
  double quadruple_exponent = 0.0;     // log(quadruple_ratio) / log K when K > 1
  CoveringCertificate certificate;
  std::vector<std::size_t> cover_power_sizes;   // |X^m|, m = 1..n_max-1
  std::vector<std::size_t> measured;            // |A^n|, n = 1..n_max
  std::vector<std::size_t> difference_powers;   // |(AA^-1)^n|
  std::vector<std::size_t> implied_bound;       // |X^{n-1}| |AA^-1| (n >= 2)
  std::vector<bool> inclusion;                  // (AA^-1)^n inside X^{n-1} A A^-1, n = 2..n_max
  bool all_inclusions = false;
  bool bound_respected = false;                 // |A^n| <= |X^{n-1}||AA^-1| for n >= 2
};

inline AppendixReport appendix_growth_check(const GroupSubset& a, std::size_t n_max) {
  if (a.empty()) throw InputError("appendix check needs a non-empty set");
  if (n_max < 2) throw InputError("appendix check needs n_max >= 2");
  AppendixReport r;
  const auto a3 = power(a, 3);
  r.tripling = Rational(static_cast<std::int64_t>(a3.size()), static_cast<std::int64_t>(a.size()));
  r.certificate = ruzsa_cover(a);
  r.certificate.verified_range = n_max;
  const auto& d = r.certificate.difference;
  r.quadruple_ratio = Rational(static_cast<std::int64_t>(r.certificate.quadruple.size()),
                               static_cast<std::int64_t>(a.size()));
  if (r.tripling > Rational(1))
    r.quadruple_exponent = std::log(to_double(r.quadruple_ratio)) / std::log(to_double(r.tripling));

  GroupSubset an = a, dn = d, xm = r.certificate.cover;
  r.measured.push_back(a.size());
  r.difference_powers.push_back(d.size());
  r.implied_bound.push_back(d.size());  // n = 1: A inside AA^-1 only when 1 in A; informational
  r.all_inclusions = true;
  r.bound_respected = true;
  for (std::size_t n = 2; n <= n_max; ++n) {
    an = product_set(an, a);
    dn = product_set(dn, d);
    if (n > 2) xm = product_set(xm, r.certificate.cover);
    r.cover_power_sizes.push_back(xm.size());
    const bool inc = dn.is_subset_of(product_set(xm, d));
    r.inclusion.push_back(inc);
    r.all_inclusions = r.all_inclusions && inc;
    r.measured.push_back(an.size());
    r.difference_powers.push_back(dn.size());
    r.implied_bound.push_back(xm.size() * d.size());
    r.bound_respected = r.bound_respected && an.size() <= xm.size() * d.size();
  }
  return r;
}

}  // namespace monoball
