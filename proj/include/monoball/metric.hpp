#pragma once

#include "monoball/group.hpp"
#include "monoball/rational.hpp"
#include "monoball/setops.hpp"
#include "monoball/structure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

namespace monoball {

/// Comparison policy for norm values: exact for Rational, 1e-12 slack for double.
template <class T>
struct NormTraits;

template <>
struct NormTraits<Rational> {
  static bool leq(const Rational& a, const Rational& b) { return a <= b; }
  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static double to_double(const Rational& a) { return monoball::to_double(a); }
  static Rational zero() { return Rational(0); }
};

template <>
struct NormTraits<double> {
  static constexpr double tolerance = 1e-12;
  static bool leq(double a, double b) { return a <= b + tolerance; }
  static bool eq(double a, double b) { return std::abs(a - b) <= tolerance; }
  static double to_double(double a) { return a; }
  static double zero() { return 0.0; }
};

/// rho(x) := rho(x, 1_G) for a bi-invariant pseudo-metric.
template <class T>
struct PseudoMetricNorm {
  GroupPtr group;
  std::vector<T> values;

  const T& operator()(Element x) const { return values[x]; }
  std::size_t size() const { return values.size(); }
};

using RationalNorm = PseudoMetricNorm<Rational>;
using RealNorm = PseudoMetricNorm<double>;

inline RationalNorm zero_norm(const GroupPtr& g) { return {g, std::vector<Rational>(g->order(), Rational(0))}; }

// 0 on H, 1 off H.
inline RationalNorm subgroup_norm(const GroupSubset& h) {
  RationalNorm n{h.group(), std::vector<Rational>(h.parent().order(), Rational(1))};
  h.for_each([&](Element x) { n.values[x] = Rational(0); });
  return n;
}

/// Graph distance to the identity in the Cayley graph with right
/// multiplication by S.
inline RationalNorm word_norm(const GroupSubset& s) {
  const auto& g = s.parent();
  std::vector<std::int64_t> dist(g.order(), -1);
  std::queue<Element> q;
  dist[g.identity()] = 0;
  q.push(g.identity());
  const auto gens = s.members();
  while (!q.empty()) {
    const Element x = q.front();
    q.pop();
    for (Element t : gens) {
      const Element y = g.mul(x, t);
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }
  RationalNorm n{s.group(), std::vector<Rational>(g.order())};
  for (Element x = 0; x < g.order(); ++x) {
    if (dist[x] < 0) throw InputError("word norm: the set does not generate the group (element " + g.label(x) + ")");
    n.values[x] = Rational(dist[x]);
  }
  return n;
}

template <class T>
struct NormValidation {
  bool nonnegative = true;
  bool identity_zero = true;
  bool symmetric = true;
  bool conjugation_invariant = true;
  bool subadditive = true;
  std::optional<Element> negative_witness;
  std::optional<Element> symmetry_witness;
  std::optional<std::pair<Element, Element>> conjugation_witness;  // (g, x): rho(g x g^-1) != rho(x)
  std::optional<std::pair<Element, Element>> subadditivity_witness; // rho(xy) > rho(x) + rho(y)

  bool valid() const { return nonnegative && identity_zero && symmetric && conjugation_invariant && subadditive; }
};

template <class T>
NormValidation<T> validate_norm(const PseudoMetricNorm<T>& rho) {
  using Tr = NormTraits<T>;
  const auto& g = *rho.group;
  if (rho.size() != g.order()) throw InputError("norm has " + std::to_string(rho.size()) + " values for a group of order " + std::to_string(g.order()));
  NormValidation<T> r;
  r.identity_zero = Tr::eq(rho(g.identity()), Tr::zero());
  for (Element x = 0; x < g.order(); ++x) {
    if (r.nonnegative && !Tr::leq(Tr::zero(), rho(x))) {
      r.nonnegative = false;
      r.negative_witness = x;
    }
    if (r.symmetric && !Tr::eq(rho(x), rho(g.inv(x)))) {
      r.symmetric = false;
      r.symmetry_witness = x;
    }
  }
  for (Element h = 0; h < g.order() && r.conjugation_invariant; ++h)
    for (Element x = 0; x < g.order(); ++x)
      if (!Tr::eq(rho(g.conj(h, x)), rho(x))) {
        r.conjugation_invariant = false;
        r.conjugation_witness = std::pair{h, x};
        break;
      }
  for (Element x = 0; x < g.order() && r.subadditive; ++x)
    for (Element y = 0; y < g.order(); ++y)
      if (!Tr::leq(rho(g.mul(x, y)), rho(x) + rho(y))) {
        r.subadditive = false;
        r.subadditivity_witness = std::pair{x, y};
        break;
      }
  return r;
}

template <class T>
GroupSubset ball(const PseudoMetricNorm<T>& rho, const T& delta) {
  GroupSubset out(rho.group);
  for (Element x = 0; x < rho.size(); ++x)
    if (NormTraits<T>::leq(rho(x), delta)) out.insert(x);
  return out;
}

/// Distinct norm values with |B(rho, b)| at each; |B| is the right-continuous
/// step function these determine.
template <class T>
struct BallFamily {
  std::vector<T> breakpoints;
  std::vector<std::size_t> sizes;

  explicit BallFamily(const PseudoMetricNorm<T>& rho) {
    std::vector<T> v = rho.values;
    std::sort(v.begin(), v.end());
    for (const auto& x : v) {
      if (breakpoints.empty() || !NormTraits<T>::eq(breakpoints.back(), x)) {
        breakpoints.push_back(x);
        sizes.push_back(0);
      }
      ++sizes.back();
    }
    for (std::size_t i = 1; i < sizes.size(); ++i) sizes[i] += sizes[i - 1];
  }

  std::size_t size_at(const T& delta) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < breakpoints.size() && NormTraits<T>::leq(breakpoints[i], delta); ++i) n = sizes[i];
    return n;
  }
  std::size_t size_at_real(double delta) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < breakpoints.size(); ++i)
      if (NormTraits<T>::to_double(breakpoints[i]) <= delta + 1e-12) n = sizes[i];
    return n;
  }
};

template <class T>
struct BallAxiomsReport {
  std::size_t radii = 0;
  std::size_t pairs_checked = 0;
  bool symmetric_neighbourhood = true;
  bool nesting = true;
  bool subadditivity = true;
  bool normality = true;
  std::optional<T> symmetric_witness;
  std::optional<std::pair<T, T>> nesting_witness;
  std::optional<std::pair<T, T>> subadditivity_witness;
  std::optional<T> normality_witness;

  bool holds() const { return symmetric_neighbourhood && nesting && subadditivity && normality; }
};

/// The four ball properties over every breakpoint radius and every ordered
/// pair of breakpoint radii, as set computations.
template <class T>
BallAxiomsReport<T> ball_axioms_check(const PseudoMetricNorm<T>& rho) {
  const auto& g = rho.group;
  const BallFamily<T> fam(rho);
  const auto classes = conjugacy_classes(g);
  BallAxiomsReport<T> r;
  r.radii = fam.breakpoints.size();
  std::vector<GroupSubset> balls;
  for (const auto& b : fam.breakpoints) balls.push_back(ball(rho, b));

  for (std::size_t i = 0; i < balls.size(); ++i) {
    const auto& bi = balls[i];
    if (r.symmetric_neighbourhood && (!bi.contains(g->identity()) || !(inverse_set(bi) == bi))) {
      r.symmetric_neighbourhood = false;
      r.symmetric_witness = fam.breakpoints[i];
    }
    if (r.normality) {
      for (std::size_t c = 0; c < classes.count(); ++c) {
        const bool any = classes.classes[c].intersects(bi);
        if (any && !classes.classes[c].is_subset_of(bi)) {
          r.normality = false;
          r.normality_witness = fam.breakpoints[i];
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = 0; j < balls.size(); ++j) {
      ++r.pairs_checked;
      const auto& bi = fam.breakpoints[i];
      const auto& bj = fam.breakpoints[j];
      if (r.nesting && i <= j && !balls[i].is_subset_of(balls[j])) {
        r.nesting = false;
        r.nesting_witness = std::pair{bi, bj};
      }
      if (r.subadditivity && !product_set(balls[i], balls[j]).is_subset_of(ball(rho, T(bi + bj)))) {
        r.subadditivity = false;
        r.subadditivity_witness = std::pair{bi, bj};
      }
    }
  return r;
}

template <class T>
struct BallDimension {
  double d = 0.0;
  Rational max_ratio{1};   // |B(2 delta')| / |B(delta')| at the witness
  T witness{};             // delta'
  std::size_t candidates = 0;
};

/// d = sup over delta' in (0, delta] of log2(|B(2 delta')| / |B(delta')|).
/// The ratio is a step function of delta' whose jumps sit at b and b/2 for
/// breakpoints b, and it is right-continuous, so those points realise the sup.
template <class T>
BallDimension<T> ball_dimension(const PseudoMetricNorm<T>& rho, const T& delta) {
  using Tr = NormTraits<T>;
  if (Tr::leq(delta, Tr::zero())) throw InputError("ball dimension needs delta > 0");
  const BallFamily<T> fam(rho);
  std::vector<T> cand;
  for (const auto& b : fam.breakpoints) {
    if (Tr::leq(b, Tr::zero())) continue;
    const T half = b / T(2);
    if (Tr::leq(b, delta)) cand.push_back(b);
    if (Tr::leq(half, delta)) cand.push_back(half);
  }
  std::sort(cand.begin(), cand.end());
  BallDimension<T> out;
  out.witness = delta;
  out.candidates = cand.size();
  bool first = true;
  for (const auto& c : cand) {
    const auto small = static_cast<std::int64_t>(fam.size_at(c));
    const auto big = static_cast<std::int64_t>(fam.size_at(T(c * T(2))));
    const Rational ratio(big, small);
    if (first || ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.witness = c;
      first = false;
    }
  }
  out.d = std::log2(to_double(out.max_ratio));
  return out;
}

struct BourgainRadius {
  double lambda = 2.0;
  double margin = 0.0;                  // min over the grid of the distance to the nearer bound
  std::vector<double> eta_grid;
  std::vector<double> ratios;           // |B(lambda delta (1+eta))| / |B(lambda delta)| per grid point
  std::size_t candidates_tried = 0;
};

namespace detail {

template <class T>
double bourgain_margin(const BallFamily<T>& fam, double delta, double d, double lambda,
                       const std::vector<double>& grid, std::vector<double>* ratios) {
  const double base = static_cast<double>(fam.size_at_real(lambda * delta));
  double margin = std::numeric_limits<double>::infinity();
  for (double eta : grid) {
    const double ratio = static_cast<double>(fam.size_at_real(lambda * delta * (1.0 + eta))) / base;
    if (ratios) ratios->push_back(ratio);
    const double slack = 6.0 * d * std::abs(eta);
    margin = std::min({margin, ratio - (1.0 - slack), (1.0 + slack) - ratio});
  }
  return margin;
}

}  // namespace detail

/// Search lambda in (1,2] with 1 - 6d|eta| <= |B(lambda delta(1+eta))|/|B(lambda delta)|
/// <= 1 + 6d|eta| for eta = +-k/(60d), k = 1..10. Candidates are the radii
/// where a ratio can jump, their midpoints, and 2; tried from lambda = 2 down.
template <class T>
BourgainRadius bourgain_radius(const PseudoMetricNorm<T>& rho, const T& delta, double d) {
  using Tr = NormTraits<T>;
  if (Tr::leq(delta, Tr::zero())) throw InputError("bourgain radius needs delta > 0");
  if (d < 0) throw InputError("dimension must be non-negative");
  const auto dim = ball_dimension(rho, delta);
  if (dim.d > d + 1e-12)
    throw InputError("ball is " + std::to_string(dim.d) + "-dimensional, above the supplied d = " + std::to_string(d));

  const double dd = Tr::to_double(delta);
  const double step = 1.0 / (60.0 * std::max(d, 1.0));
  std::vector<double> grid;
  for (int k = 10; k >= 1; --k) grid.push_back(-k * step);
  for (int k = 1; k <= 10; ++k) grid.push_back(k * step);

  const BallFamily<T> fam(rho);
  std::vector<double> cand{2.0};
  std::vector<double> scales{1.0};
  for (double eta : grid) scales.push_back(1.0 + eta);
  for (const auto& b : fam.breakpoints)
    for (double s : scales) {
      const double lam = Tr::to_double(b) / (dd * s);
      if (lam > 1.0 && lam <= 2.0) cand.push_back(lam);
    }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }),
             cand.end());
  std::vector<double> all = cand;
  double lo = 1.0;
  for (double c : cand) {
    all.push_back(0.5 * (lo + c));
    lo = c;
  }
  std::sort(all.begin(), all.end(), std::greater<>());

  BourgainRadius best;
  best.eta_grid = grid;
  best.margin = -std::numeric_limits<double>::infinity();
  for (double lam : all) {
    ++best.candidates_tried;
    const double m = detail::bourgain_margin(fam, dd, d, lam, grid, nullptr);
    if (m >= -1e-12) {
      best.lambda = lam;
      best.margin = m;
      detail::bourgain_margin(fam, dd, d, lam, grid, &best.ratios);
      return best;
    }
    if (m > best.margin) {
      best.margin = m;
      best.lambda = lam;
    }
  }
  throw FalsifiedError("no lambda in (1,2] satisfies the growth bounds; best margin " + std::to_string(best.margin) +
                       " at lambda " + std::to_string(best.lambda));
}

}  // namespace monoball
