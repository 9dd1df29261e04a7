#pragma once

#include "monoball/bohr.hpp"
#include "monoball/harmonic.hpp"
#include "monoball/metric.hpp"
#include "monoball/report.hpp"
#include "monoball/setops.hpp"
#include "monoball/spectra.hpp"
#include "monoball/structure.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace monoball {

struct PipelineConfig {
  double constant_c = 1.0;
  std::size_t n_max = 16;
  std::optional<Rational> epsilon_override;
  std::optional<double> dimension_estimate_d;
  std::uint64_t seed = 1;
  std::size_t subgroup_cap = kDefaultSubgroupCap;
};

struct FindL {
  std::size_t l = 1;
  Rational k_l{1};                 // |A^l| / |A^{l-1}|
  std::vector<std::size_t> sizes;  // |A^0| .. |A^{l+1}|
  bool next_step_small = false;    // |A.A^l| < sqrt2 |A^l|
  bool this_step_small = false;    // |A^l| < sqrt2 |A^{l-1}|
};

/// Least l >= 1 with |A^{l+1}| < sqrt2 |A^{l-1}|, A^0 = {1}.
inline FindL find_l(const GroupSubset& a) {
  if (a.empty()) throw InputError("find_l needs a non-empty set");
  FindL f;
  f.sizes = {1, a.size()};
  PowerIterator it(a);
  const std::size_t limit = 4 * a.parent().order() + 4;
  for (std::size_t l = 1; l <= limit; ++l) {
    f.sizes.push_back(it.advance().size());  // |A^{l+1}|
    const std::size_t up = f.sizes[l + 1], down = f.sizes[l - 1], mid = f.sizes[l];
    if (up * up < 2 * down * down) {
      f.l = l;
      f.k_l = Rational(static_cast<std::int64_t>(mid), static_cast<std::int64_t>(down));
      f.next_step_small = up * up < 2 * mid * mid;
      f.this_step_small = mid * mid < 2 * down * down;
      return f;
    }
  }
  throw InputError("no admissible l: the powers of the set never settle (the set lacks the identity?)");
}

struct AnnihilatorReport {
  Rational k{1};
  Rational eps{0};
  std::size_t lspec_size = 0;
  std::size_t difference_size = 0;  // |AA^-1|
  std::size_t ball_size = 0;        // |LinBohr(LSpec(A^l,eps), 2 eps sqrt(2K))|
  bool contained = false;
  std::optional<Element> witness;   // element of AA^-1 outside the ball
};

/// AA^-1 inside LinBohr(LSpec(A^l, eps), 2 eps sqrt(2K)) with K = |A^l|/|A^{l-1}|;
/// membership ||gamma(x)|| <= 2 eps sqrt(2K) is tested as ||gamma(x)||^2 <= 8 eps^2 K.
inline AnnihilatorReport annihilator_inclusion_check(const GroupSubset& a, std::size_t l, const Rational& eps,
                                                     const FourierProfile* al_profile = nullptr) {
  if (l < 1) throw InputError("l must be at least 1");
  if (!(eps > Rational(0)) || eps > Rational(1)) throw InputError("eps must lie in (0,1]");
  const auto al = power(a, l);
  const auto alm1 = power(a, l - 1);
  AnnihilatorReport r;
  r.eps = eps;
  r.k = Rational(static_cast<std::int64_t>(al.size()), static_cast<std::int64_t>(alm1.size()));
  std::optional<FourierProfile> own;
  if (!al_profile) al_profile = &own.emplace(al);
  const CharSet ls = al_profile->lspec(eps);
  r.lspec_size = ls.size();
  const auto norm = bohr_norm(ls);
  const BigRational limit = 8 * to_big(eps) * to_big(eps) * to_big(r.k);
  GroupSubset b(a.group());
  for (Element x = 0; x < norm.size(); ++x) {
    const BigRational v = to_big(norm(x));
    if (v * v <= limit) b.insert(x);
  }
  r.ball_size = b.size();
  const auto diff = difference_set(a);
  r.difference_size = diff.size();
  r.witness = diff.first_outside(b);
  r.contained = !r.witness;
  return r;
}

struct PipelineReport {
  HypothesisLedger hypotheses;
  PipelineConfig config;
  std::size_t parent_order = 0;
  std::size_t generated_order = 0;     // |<A>|
  std::size_t a_size = 0;
  // growth
  std::vector<std::size_t> growth;     // |A^n|, n = 1..n_max
  double d_fitted = 0;
  double d = 0;                        // as used (>= 1)
  std::size_t l = 0;
  Rational k_l{1};
  std::size_t al_size = 0;
  double d_prime_fitted = 0;
  double d_prime = 0;
  Rational eps{0};
  double eps_formula = 0;              // 1 / (2^9 (1+C) d' log^2 2d')
  // spectra
  std::size_t lspec_eps = 0, lspec_2eps = 0;
  DoublingReport doubling;
  CharSet x;
  // ball
  std::vector<Element> ball;           // B, in parent indices
  std::size_t ball_size = 0;
  std::size_t difference_size = 0;
  bool frequencies_in_lspec2 = false;  // LSpec(A^l,eps) u X inside LSpec(A^l,2eps)
  bool diff_in_8eps = false;           // AA^-1 in LinBohr(LSpec(A^l,2eps), 8eps)
  bool eps8_in_16th = false;           // LinBohr(..., 8eps) in LinBohr(..., 1/16)
  bool sixteenth_in_ball = false;      // LinBohr(LSpec(A^l,2eps), 1/16) in B
  bool diff_in_ball = false;
  AnnihilatorReport annihilator;       // at radius 2 eps
  BallDimension<Rational> ball_dim;
  Rational size_ratio{0};              // P(B)/P(A)
  SpectrumSizeReport size_check;
  // measured quantities next to the functional forms they are compared with
  double d_log3 = 0;                   // d log^3 2d
  double log_size_ratio = 0;           // log(P(B)/P(A))
  double d_log = 0;                    // d log 2d
  Verdict verdict = Verdict::hypothesis_failed;
};

namespace detail {

// max over 2 <= n <= n_max (stopping at saturation) of log(|A^n|/|A|)/log n
inline double fitted_dimension(const GroupSubset& a, std::size_t n_max) {
  const auto p = growth_profile(a, std::max<std::size_t>(n_max, 2));
  return p.fitted_d;
}

}  // namespace detail

/// The constructive chain: restrict to <A>, choose l and eps, cover the large
/// spectrum of A^l, build B = LinBohr(LSpec(A^l,eps) u X, 1/16) and verify
/// every inclusion exactly.
inline PipelineReport freiman_ball(const GroupSubset& a_in, const PipelineConfig& cfg) {
  if (a_in.empty()) throw InputError("the set is empty");
  if (!(cfg.constant_c > 0)) throw InputError("constant C must be positive");
  if (cfg.n_max < 4) throw InputError("n_max must be at least 4");
  PipelineReport r;
  r.config = cfg;
  r.parent_order = a_in.parent().order();
  const char* st = "setup";

  const auto h = generate_subgroup(a_in);
  const auto emb = as_group(h);
  const GroupPtr& g = emb.group;
  GroupSubset a(g);
  a_in.for_each([&](Element x) { a.insert(static_cast<Element>(emb.from_parent[x])); });
  r.generated_order = g->order();
  r.a_size = a.size();

  const auto pred = set_predicates(a);
  r.hypotheses.add(st, "A contains the identity", pred.contains_identity);
  r.hypotheses.add(st, "A is symmetric", pred.symmetric);
  r.hypotheses.add(st, "A is normal in <A>", pred.normal);
  std::optional<CharacterTable> table;
  if (g->order() <= cfg.subgroup_cap) {
    const auto her = is_hereditarily_monomial(g, cfg.subgroup_cap);
    r.hypotheses.add(st, "<A> is hereditarily monomial", her.hereditarily_monomial,
                     her.first_failure ? "subgroup of order " + std::to_string(her.first_failure->order()) : std::string{});
    table = character_table(g, cfg.seed);
  } else {
    r.hypotheses.add(st, "<A> is hereditarily monomial", HypothesisStatus::unchecked,
                     "order " + std::to_string(g->order()) + " above the subgroup search cap");
    if (g->order() <= kCharacterTableMaxOrder) table = character_table(g, cfg.seed);
  }

  // growth and l
  const auto prof = growth_profile(a, cfg.n_max);
  r.growth = prof.sizes;
  r.d_fitted = prof.fitted_d;
  r.d = cfg.dimension_estimate_d.value_or(r.d_fitted);
  if (r.d < 1.0) {
    r.hypotheses.add("growth", "d >= 1", HypothesisStatus::clipped, "fitted d = " + detail::fmt(r.d) + ", using 1");
    r.d = 1.0;
  }
  const auto fl = find_l(a);
  r.l = fl.l;
  r.k_l = fl.k_l;
  r.hypotheses.add("find-l", "P(A.A^l) < sqrt2 P(A^l)", fl.next_step_small);
  r.hypotheses.add("find-l", "P(A^l) < sqrt2 P(A^{l-1})", fl.this_step_small);
  const auto al = power(a, r.l);
  r.al_size = al.size();

  r.d_prime_fitted = detail::fitted_dimension(al, cfg.n_max);
  r.d_prime = std::max(1.0, r.d_prime_fitted);
  if (r.d_prime_fitted < 1.0)
    r.hypotheses.add("growth", "d' >= 1", HypothesisStatus::clipped, "fitted d' = " + detail::fmt(r.d_prime_fitted) + ", using 1");
  const double l2 = std::log(2.0 * r.d_prime);
  const double inv = 512.0 * (1.0 + cfg.constant_c) * r.d_prime * l2 * l2;
  r.eps_formula = 1.0 / inv;
  if (cfg.epsilon_override) {
    r.eps = *cfg.epsilon_override;
  } else {
    r.eps = Rational(1, static_cast<std::int64_t>(std::ceil(inv)));
  }
  r.hypotheses.add("epsilon", "eps in (0,1]", r.eps > Rational(0) && r.eps <= Rational(1));
  r.hypotheses.add("epsilon", "8 eps <= 1/16", Rational(8) * r.eps <= Rational(1, 16), to_string(r.eps));
  if (!(r.eps > Rational(0)) || r.eps > Rational(1, 2)) throw InputError("eps must lie in (0, 1/2]");

  // spectra of A^l
  const FourierProfile profile(al);
  const CharSet ls = profile.lspec(r.eps);
  const CharSet ls2 = profile.lspec(Rational(2) * r.eps);
  r.lspec_eps = ls.size();
  r.lspec_2eps = ls2.size();
  r.doubling = lspec_doubling_cover(a, al, r.eps, r.d_prime, table ? &*table : nullptr, &profile);
  r.x = r.doubling.x;
  r.hypotheses.append(r.doubling.hypotheses);

  // the ball and the inclusion chain
  const CharSet freq = ls | r.x;
  const auto bnorm = bohr_norm(freq);
  const auto b = ball(bnorm, Rational(1, 16));
  r.ball_size = b.size();
  for (Element x : b.members()) r.ball.push_back(emb.to_parent[x]);
  const auto diff = difference_set(a);
  r.difference_size = diff.size();
  r.frequencies_in_lspec2 = freq.is_subset_of(ls2);
  const auto b8 = linbohr(ls2, Rational(8) * r.eps);
  const auto b16 = linbohr(ls2, Rational(1, 16));
  r.diff_in_8eps = diff.is_subset_of(b8);
  r.eps8_in_16th = b8.is_subset_of(b16);
  r.sixteenth_in_ball = b16.is_subset_of(b);
  r.diff_in_ball = diff.is_subset_of(b);
  r.annihilator = annihilator_inclusion_check(a, r.l, Rational(2) * r.eps, nullptr);

  r.ball_dim = ball_dimension(bnorm, Rational(1, 16));
  r.size_ratio = Rational(static_cast<std::int64_t>(b.size()), static_cast<std::int64_t>(a.size()));
  r.size_check = lspec_size_check(a, al, r.eps, 0, r.d_prime, table ? &*table : nullptr, &profile);
  r.hypotheses.append(r.size_check.hypotheses);

  r.d_log3 = r.d * std::pow(std::log(2.0 * r.d), 3.0);
  r.log_size_ratio = std::log(to_double(r.size_ratio));
  r.d_log = r.d * std::log(2.0 * r.d);

  const bool chain = r.frequencies_in_lspec2 && r.diff_in_8eps && r.eps8_in_16th && r.sixteenth_in_ball &&
                     r.diff_in_ball && r.annihilator.contained && r.doubling.verdict != Verdict::falsified &&
                     r.size_check.verdict != Verdict::falsified;
  r.verdict = verdict_of(r.hypotheses, chain);
  return r;
}

}  // namespace monoball
