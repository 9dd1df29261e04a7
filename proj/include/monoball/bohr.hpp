#pragma once

#include "monoball/group.hpp"
#include "monoball/linear_character.hpp"
#include "monoball/metric.hpp"
#include "monoball/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace monoball {

/// A finite subset of Lin(G): sorted canonically, no duplicates.
class CharSet {
 public:
  CharSet() = default;
  explicit CharSet(GroupPtr g) : group_(std::move(g)) {}
  CharSet(GroupPtr g, std::vector<LinearCharacter> chars) : group_(std::move(g)), chars_(std::move(chars)) {
    for (const auto& c : chars_)
      if (c.size() != group_->order()) throw InputError("character has the wrong length for this group");
    normalize();
  }

  static CharSet identity(const GroupPtr& g) { return CharSet(g, {LinearCharacter::trivial(g->order())}); }

  const GroupPtr& group() const { return group_; }
  const std::vector<LinearCharacter>& chars() const { return chars_; }
  std::size_t size() const { return chars_.size(); }
  bool empty() const { return chars_.empty(); }
  auto begin() const { return chars_.begin(); }
  auto end() const { return chars_.end(); }
  const LinearCharacter& operator[](std::size_t i) const { return chars_[i]; }

  bool contains(const LinearCharacter& c) const { return std::binary_search(chars_.begin(), chars_.end(), c); }
  bool contains_identity() const { return !chars_.empty() && chars_.front().is_trivial(); }
  bool symmetric() const {
    return std::all_of(chars_.begin(), chars_.end(), [&](const auto& c) { return contains(-c); });
  }

  void insert(const LinearCharacter& c) {
    auto it = std::lower_bound(chars_.begin(), chars_.end(), c);
    if (it == chars_.end() || !(*it == c)) chars_.insert(it, c);
  }

  bool is_subset_of(const CharSet& o) const {
    return std::all_of(chars_.begin(), chars_.end(), [&](const auto& c) { return o.contains(c); });
  }
  std::optional<LinearCharacter> first_outside(const CharSet& o) const {
    for (const auto& c : chars_)
      if (!o.contains(c)) return c;
    return std::nullopt;
  }

  friend CharSet operator|(const CharSet& a, const CharSet& b) {
    std::vector<LinearCharacter> v = a.chars_;
    v.insert(v.end(), b.chars_.begin(), b.chars_.end());
    return CharSet(a.group_ ? a.group_ : b.group_, std::move(v));
  }
  // Sumset a + b in Lin(G).
  friend CharSet operator+(const CharSet& a, const CharSet& b) {
    std::vector<LinearCharacter> v;
    v.reserve(a.size() * b.size());
    for (const auto& x : a.chars_)
      for (const auto& y : b.chars_) v.push_back(x + y);
    return CharSet(a.group_ ? a.group_ : b.group_, std::move(v));
  }
  CharSet operator-() const {
    std::vector<LinearCharacter> v;
    for (const auto& c : chars_) v.push_back(-c);
    return CharSet(group_, std::move(v));
  }
  friend CharSet operator-(const CharSet& a, const CharSet& b) { return a + (-b); }
  friend bool operator==(const CharSet& a, const CharSet& b) { return a.chars_ == b.chars_; }

 private:
  void normalize() {
    std::sort(chars_.begin(), chars_.end());
    chars_.erase(std::unique(chars_.begin(), chars_.end()), chars_.end());
  }

  GroupPtr group_;
  std::vector<LinearCharacter> chars_;
};

/// rho(x) = max over Gamma of ||gamma(x)||, exact; empty Gamma gives rho = 0.
inline RationalNorm bohr_norm(const CharSet& gamma) {
  const auto& g = gamma.group();
  RationalNorm n = zero_norm(g);
  for (const auto& c : gamma)
    for (Element x = 0; x < g->order(); ++x) n.values[x] = std::max(n.values[x], c.circle_norm(x));
  return n;
}

inline GroupSubset linbohr(const CharSet& gamma, const Rational& delta) {
  if (delta < Rational(0)) throw InputError("Bohr radius must be non-negative");
  return ball(bohr_norm(gamma), delta);
}

// Membership ||gamma(x)|| <= delta for a real radius (e.g. 1/(2 pi)).
inline GroupSubset linbohr_real(const CharSet& gamma, long double delta) {
  const auto n = bohr_norm(gamma);
  GroupSubset out(gamma.group());
  for (Element x = 0; x < n.size(); ++x)
    if (to_long_double(n(x)) <= delta) out.insert(x);
  return out;
}

inline constexpr std::size_t kSpanGuard = 20;

/// {sum eps_gamma gamma : eps in {-1,0,1}^X}, built one generator at a time.
inline CharSet char_span(const CharSet& x) {
  if (x.size() > kSpanGuard)
    throw CapExceeded("Span(X) limited to |X| <= " + std::to_string(kSpanGuard) + " (got " + std::to_string(x.size()) + ")");
  CharSet span = CharSet::identity(x.group());
  for (const auto& c : x) {
    CharSet step(x.group(), {-c, LinearCharacter::trivial(x.group()->order()), c});
    span = span + step;
  }
  return span;
}

inline CharSet kfold_charset(const CharSet& lambda, std::size_t k) {
  if (k < 1) throw InputError("k-fold sumset needs k >= 1");
  CharSet out = lambda;
  for (std::size_t i = 1; i < k; ++i) out = out + lambda;
  return out;
}

struct ContractionReport {
  bool identity_in_lambda = false;
  bool radius_ok = false;       // k delta < 1/3
  std::size_t lhs_size = 0;     // |LinBohr(k Lambda, k delta)|
  std::size_t rhs_size = 0;     // |LinBohr(Lambda, delta)|
  bool rhs_in_lhs = false;      // triangle-inequality direction
  bool lhs_in_rhs = false;
  bool equal = false;

  bool hypotheses_hold() const { return identity_in_lambda && radius_ok; }
};

inline ContractionReport bohr_contraction_check(const CharSet& lambda, std::size_t k, const Rational& delta) {
  if (delta < Rational(0)) throw InputError("radius must be non-negative");
  ContractionReport r;
  r.identity_in_lambda = lambda.contains_identity();
  r.radius_ok = Rational(static_cast<std::int64_t>(k)) * delta < Rational(1, 3);
  const auto lhs = linbohr(kfold_charset(lambda, k), Rational(static_cast<std::int64_t>(k)) * delta);
  const auto rhs = linbohr(lambda, delta);
  r.lhs_size = lhs.size();
  r.rhs_size = rhs.size();
  r.rhs_in_lhs = rhs.is_subset_of(lhs);
  r.lhs_in_rhs = lhs.is_subset_of(rhs);
  r.equal = r.lhs_in_rhs && r.rhs_in_lhs;
  return r;
}

struct BohrGrowthReport {
  // hypotheses
  bool gamma_symmetric = false;
  bool gamma_has_identity = false;
  bool delta_in_range = false;             // 0 < delta <= 1/16
  bool sum_hypothesis = false;             // Gamma + Gamma subset Span(X) + Gamma
  std::optional<std::pair<LinearCharacter, LinearCharacter>> sum_witness;
  bool contraction_radius_ok = false;      // 8 delta < 1/3, needed for the last step

  std::size_t span_size = 0;
  std::size_t big = 0;                     // |LinBohr(Gamma u X, 2 delta)|
  std::size_t small = 0;                   // |LinBohr(Gamma u X, delta)|
  Rational ratio{0};
  boost::multiprecision::cpp_int bound{1}; // (2^5 |X| + 1)^|X|
  std::size_t t_size = 0;                  // |T|

  // proof chain, each an exact set inclusion
  bool covering_ok = false;     // big ball in T.(LinBohr(Gamma,4 delta) n LinBohr(X, delta/2|X|))
  bool triangle_ok = false;     // ... subset LinBohr(Gamma + 8 Span(X), 8 delta)
  bool sumset_ok = false;       // ... subset LinBohr(8 Gamma, 8 delta) n LinBohr(8 Span(X), 8 delta)
  bool contraction_ok = false;  // ... subset LinBohr(Gamma, delta) n LinBohr(X, delta)
  bool final_cover_ok = false;  // big ball in T.LinBohr(Gamma u X, delta)
  bool ratio_within_bound = false;

  bool hypotheses_hold() const { return gamma_symmetric && gamma_has_identity && delta_in_range && sum_hypothesis; }
  bool chain_holds() const { return covering_ok && triangle_ok && sumset_ok && contraction_ok && final_cover_ok; }
};

inline constexpr std::size_t kCoveringReplayGuard = 10;

namespace detail {

// Phase in (-1/2, 1/2].
inline Rational signed_phase(const LinearCharacter& c, Element x) {
  const Rational q = c.phase(x);
  return q > Rational(1, 2) ? q - Rational(1) : q;
}

}  // namespace detail

/// Measures |LinBohr(Gamma u X, 2 delta)| / |LinBohr(Gamma u X, delta)| and
/// replays the covering argument on the actual sets: T is {x_theta} for theta
/// in I^X, I = {k delta / 4|X| : |k| <= 16|X|}, x_theta the lowest-index
/// element of B_theta n LinBohr(Gamma, 2 delta).
inline BohrGrowthReport bohr_growth_check(const CharSet& gamma, const CharSet& x, const Rational& delta) {
  if (x.size() > kCoveringReplayGuard)
    throw CapExceeded("covering replay limited to |X| <= " + std::to_string(kCoveringReplayGuard));
  const auto& g = gamma.group() ? gamma.group() : x.group();
  if (!g) throw InputError("empty character sets carry no group");
  const GroupPtr grp = g;
  BohrGrowthReport r;
  r.gamma_symmetric = gamma.symmetric();
  r.gamma_has_identity = gamma.contains_identity();
  r.delta_in_range = delta > Rational(0) && delta <= Rational(1, 16);
  r.contraction_radius_ok = Rational(8) * delta < Rational(1, 3);
  if (!(delta > Rational(0))) throw InputError("delta must be positive");

  const CharSet span = char_span(x);
  r.span_size = span.size();
  const CharSet rhs_set = span + gamma;
  r.sum_hypothesis = true;
  for (const auto& a : gamma)
    for (const auto& b : gamma)
      if (r.sum_hypothesis && !rhs_set.contains(a + b)) {
        r.sum_hypothesis = false;
        r.sum_witness = std::pair{a, b};
      }

  const CharSet both = gamma | x;
  const auto big_ball = linbohr(both, Rational(2) * delta);
  const auto small_ball = linbohr(both, delta);
  r.big = big_ball.size();
  r.small = small_ball.size();
  r.ratio = Rational(static_cast<std::int64_t>(r.big), static_cast<std::int64_t>(r.small));
  const std::int64_t nx = static_cast<std::int64_t>(x.size());
  r.bound = boost::multiprecision::pow(boost::multiprecision::cpp_int(32 * nx + 1), static_cast<unsigned>(nx));
  r.ratio_within_bound = boost::multiprecision::cpp_int(r.big) <= r.bound * r.small;

  // X-ball radius delta / 2|X|; with X empty that ball is all of G.
  const auto x_ball = [&](const Rational& rad) { return x.empty() ? GroupSubset::full(grp) : linbohr(x, rad); };
  const Rational cell = x.empty() ? Rational(0) : delta / Rational(4 * nx);
  const auto gamma2 = linbohr(gamma, Rational(2) * delta);
  const auto inner = linbohr(gamma, Rational(4) * delta) & x_ball(x.empty() ? Rational(0) : delta / Rational(2 * nx));

  // theta -> x_theta over every x in LinBohr(Gamma, 2 delta), ascending index.
  std::map<std::vector<std::int64_t>, Element> x_theta;
  const std::int64_t kmax = 16 * nx;
  auto thetas_of = [&](Element e) {
    std::vector<std::vector<std::int64_t>> out{{}};
    for (const auto& c : x) {
      const Rational s = detail::signed_phase(c, e);
      std::vector<std::int64_t> ks;
      const Rational pos = s / cell;
      const std::int64_t k0 = pos.numerator() / pos.denominator();
      for (std::int64_t k = k0 - 2; k <= k0 + 2; ++k)
        if (k >= -kmax && k <= kmax && circle_norm(s - Rational(k) * cell) <= cell) ks.push_back(k);
      std::vector<std::vector<std::int64_t>> next;
      for (const auto& prefix : out)
        for (auto k : ks) {
          auto v = prefix;
          v.push_back(k);
          next.push_back(std::move(v));
        }
      out = std::move(next);
    }
    return out;
  };
  for (Element e : gamma2.members())
    for (const auto& th : thetas_of(e)) x_theta.emplace(th, e);
  GroupSubset t(grp);
  for (const auto& [th, e] : x_theta) t.insert(e);
  r.t_size = t.size();

  r.covering_ok = true;
  r.final_cover_ok = true;
  for (Element e : big_ball.members()) {
    const auto ths = thetas_of(e);
    if (ths.empty()) {
      r.covering_ok = r.final_cover_ok = false;
      break;
    }
    for (const auto& th : ths) {
      const Element rep = x_theta.at(th);
      const Element shifted = grp->mul(grp->inv(rep), e);
      r.covering_ok = r.covering_ok && inner.contains(shifted);
      r.final_cover_ok = r.final_cover_ok && small_ball.contains(shifted);
    }
  }

  const CharSet span8 = kfold_charset(span, 8);
  const CharSet gamma8 = kfold_charset(gamma, 8);
  const CharSet mixed = gamma + span8;
  const auto tri_ball = linbohr(mixed, Rational(8) * delta);
  r.triangle_ok = inner.is_subset_of(tri_ball);
  const auto split_ball = linbohr(gamma8, Rational(8) * delta) & linbohr(span8, Rational(8) * delta);
  r.sumset_ok = gamma8.is_subset_of(mixed) && span8.is_subset_of(mixed) && tri_ball.is_subset_of(split_ball);
  const auto target = linbohr(gamma, delta) & x_ball(delta);
  r.contraction_ok = split_ball.is_subset_of(target);
  return r;
}

}  // namespace monoball
