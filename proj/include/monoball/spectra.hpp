#pragma once

#include "monoball/bohr.hpp"
#include "monoball/harmonic.hpp"
#include "monoball/linear_character.hpp"
#include "monoball/report.hpp"
#include "monoball/setops.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

namespace monoball {

/// w = P_G(A)^-1 1_A * 1_{A^-1}; counts[x] = #{(a,b) in A^2 : a b^-1 = x}, so
/// w(x) = counts[x] / |A|, E_x w = P_G(A) and w(1) = 1.
struct SpectrumWeight {
  GroupSubset a;
  std::vector<std::size_t> counts;
  ClassFunction w;
};

inline SpectrumWeight spectrum_weight(const GroupSubset& a) {
  if (a.empty()) throw InputError("spectrum weight needs a non-empty set");
  const auto& g = a.parent();
  SpectrumWeight s{a, std::vector<std::size_t>(g.order(), 0), ClassFunction::zero(a.group())};
  const auto m = a.members();
  for (Element x : m)
    for (Element y : m) ++s.counts[g.mul(x, g.inv(y))];
  for (Element x = 0; x < g.order(); ++x)
    s.w.values[x] = static_cast<double>(s.counts[x]) / static_cast<double>(m.size());
  return s;
}

/// |sum_{x in A} gamma(x)|^2 for every gamma in Lin(G), computed once so that
/// large spectra at different radii are filters of the same data.
class FourierProfile {
 public:
  explicit FourierProfile(const GroupSubset& a) : FourierProfile(a, linear_characters(a.group())) {}

  FourierProfile(const GroupSubset& a, std::vector<LinearCharacter> lin) : a_(a), lin_(std::move(lin)) {
    if (a.empty()) throw InputError("large spectrum needs a non-empty set");
    const auto m = a.members();
    sum_sq_.resize(lin_.size());
    for (std::size_t i = 0; i < lin_.size(); ++i) {
      const auto den = lin_[i].denominator();
      std::vector<std::size_t> bucket(den, 0);  // residues of the phase numerator
      for (Element x : m) ++bucket[static_cast<std::size_t>((lin_[i].phase(x) * Rational(static_cast<std::int64_t>(den))).numerator())];
      long double re = 0, im = 0;
      for (std::size_t r = 0; r < den; ++r) {
        if (!bucket[r]) continue;
        const long double t = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) / static_cast<long double>(den);
        re += bucket[r] * std::cos(t);
        im += bucket[r] * std::sin(t);
      }
      sum_sq_[i] = den == 1 ? static_cast<long double>(m.size()) * m.size() : re * re + im * im;
    }
  }

  const GroupSubset& set() const { return a_; }
  const std::vector<LinearCharacter>& lin() const { return lin_; }
  std::size_t size() const { return lin_.size(); }
  long double sum_sq(std::size_t i) const { return sum_sq_[i]; }
  // |1_A^(gamma)| = |sum| / |G|
  double abs_hat(std::size_t i) const {
    return static_cast<double>(std::sqrt(sum_sq_[i]) / static_cast<long double>(a_.parent().order()));
  }

  // |sum|^2 >= (1 - eps^2/2) |A|^2, with 1e-12 relative slack.
  bool in_lspec(std::size_t i, const Rational& eps) const {
    const long double n = static_cast<long double>(a_.size());
    const long double thr = to_long_double(Rational(1) - eps * eps / Rational(2)) * n * n;
    return sum_sq_[i] >= thr - 1e-12L * n * n;
  }

  CharSet lspec(const Rational& eps) const {
    check_eps(eps);
    std::vector<LinearCharacter> v;
    for (std::size_t i = 0; i < lin_.size(); ++i)
      if (in_lspec(i, eps)) v.push_back(lin_[i]);
    return CharSet(a_.group(), std::move(v));
  }

  static void check_eps(const Rational& eps) {
    if (!(eps > Rational(0)) || eps * eps > Rational(2)) throw InputError("large spectrum radius must lie in (0, sqrt 2]");
  }

 private:
  GroupSubset a_;
  std::vector<LinearCharacter> lin_;
  std::vector<long double> sum_sq_;
};

struct LargeSpectrum {
  GroupSubset a;
  Rational eps{0};
  double threshold = 0;        // sqrt(1 - eps^2/2) P_G(A)
  CharSet members;
  std::vector<double> values;  // |1_A^(gamma)| per member
};

inline LargeSpectrum large_spectrum(const FourierProfile& p, const Rational& eps) {
  FourierProfile::check_eps(eps);
  LargeSpectrum s{p.set(), eps, 0.0, CharSet(p.set().group()), {}};
  const double pa = static_cast<double>(p.set().size()) / static_cast<double>(p.set().parent().order());
  s.threshold = std::sqrt(to_double(Rational(1) - eps * eps / Rational(2))) * pa;
  std::vector<LinearCharacter> v;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.in_lspec(i, eps)) {
      v.push_back(p.lin()[i]);
      s.values.push_back(p.abs_hat(i));
    }
  s.members = CharSet(p.set().group(), std::move(v));
  return s;
}

inline LargeSpectrum large_spectrum(const GroupSubset& a, const Rational& eps) {
  return large_spectrum(FourierProfile(a), eps);
}

struct SpectrumDistance {
  double squared = 0;          // weighted L2 norm squared, probability-normalised weight
  double distance = 0;
  double formula_squared = 0;  // 2(1 - P_G(A)^-2 |1_A^(gamma - gamma')|^2)
  double residual = 0;
};

/// rho(gamma, gamma')^2 = |A|^-2 sum_{a,b in A} |chi(a b^-1) - 1|^2 with
/// chi = gamma - gamma', i.e. the L2 norm against P_G(A)^-2 1_A * 1_{A^-1}.
inline SpectrumDistance spectrum_distance(const GroupSubset& a, const LinearCharacter& gamma,
                                          const LinearCharacter& gamma2) {
  if (a.empty()) throw InputError("spectrum distance needs a non-empty set");
  const auto chi = gamma - gamma2;
  const auto w = spectrum_weight(a);
  const long double na = static_cast<long double>(a.size());
  long double sq = 0;
  for (Element x = 0; x < w.counts.size(); ++x) {
    if (!w.counts[x]) continue;
    const auto v = chi.value(x);
    const long double dr = v.real() - 1.0L, di = v.imag();
    sq += w.counts[x] * (dr * dr + di * di);
  }
  SpectrumDistance d;
  d.squared = static_cast<double>(sq / (na * na));
  d.distance = std::sqrt(std::max(0.0, d.squared));
  long double re = 0, im = 0;
  a.for_each([&](Element x) {
    const auto v = chi.value(x);
    re += v.real();
    im += v.imag();
  });
  d.formula_squared = static_cast<double>(2.0L * (1.0L - (re * re + im * im) / (na * na)));
  d.residual = std::abs(d.squared - d.formula_squared);
  return d;
}

namespace detail {

/// |A^k| for k = 1..; once the sizes plateau for a normal set or a set with
/// the identity they are constant forever, and `stable` says so.
struct PowerSizes {
  std::vector<std::size_t> sizes;
  bool stable = false;

  std::optional<std::size_t> at(std::size_t k) const {
    if (k == 0) return 1;
    if (k <= sizes.size()) return sizes[k - 1];
    if (stable) return sizes.back();
    return std::nullopt;
  }
  std::size_t saturation() const { return sizes.size(); }
};

inline PowerSizes power_sizes(const GroupSubset& a, std::size_t k_max) {
  PowerSizes p;
  const bool plateau_final = a.contains(a.parent().identity()) || is_normal_subset(a);
  PowerIterator it(a);
  p.sizes.push_back(a.size());
  while (p.sizes.size() < k_max) {
    const auto n = it.advance().size();
    if (plateau_final && n == p.sizes.back()) {
      p.stable = true;
      return p;
    }
    p.sizes.push_back(n);
  }
  return p;
}

inline std::string fmt(long double v) {
  std::ostringstream os;
  os.precision(12);
  os << static_cast<double>(v);
  return os.str();
}

}  // namespace detail

/// The standing hypotheses: G monomial, S generates G and contains 1, A
/// symmetric and normal, P_G(S.A) < sqrt 2 P_G(A).
inline HypothesisLedger standing_hypotheses(const std::string& stage, const GroupSubset& s, const GroupSubset& a,
                                            const CharacterTable* table) {
  s.require_same(a);
  const auto& g = a.group();
  HypothesisLedger h;
  if (table && g->order() <= kDefaultSubgroupCap) {
    const auto m = is_monomial(g, kDefaultSubgroupCap, table);
    std::string w;
    for (const auto& c : m.certificates)
      if (!c.found) {
        w = "character " + std::to_string(c.character) + " of degree " + std::to_string(c.dim) + " is not induced";
        break;
      }
    h.add(stage, "G is monomial", m.monomial, w);
  } else {
    h.add(stage, "G is monomial", HypothesisStatus::unchecked, "order " + std::to_string(g->order()));
  }
  h.add(stage, "S contains the identity", s.contains(g->identity()));
  h.add(stage, "S generates G", generate_subgroup(s).order() == g->order());
  const auto pred = set_predicates(a);
  h.add(stage, "A is symmetric", pred.symmetric,
        pred.symmetric_witness ? g->label(*pred.symmetric_witness) : std::string{});
  h.add(stage, "A is normal", pred.normal);
  const auto sa = product_set(s, a).size();
  h.add(stage, "P(S.A) < sqrt2 P(A)", sa * sa < 2 * a.size() * a.size(),
        "|S.A| = " + std::to_string(sa) + ", |A| = " + std::to_string(a.size()));
  return h;
}

struct EnergyReport {
  HypothesisLedger hypotheses;
  Rational eta{0};
  std::size_t k = 0;
  std::size_t a_size = 0, ak_size = 0, group_order = 0;
  // all three sides divided by P_G(A)^{2k}
  long double lspec_sum = 0;   // sum over LSpec(A, eta) of d^2 (|mu|/P(A))^{2k}
  long double half_total = 0;  // half the same sum over all irreducibles
  long double rhs = 0;         // 1 / (2 P_G(A^k))
  std::size_t lspec_size = 0;
  bool large_values_linear = true;  // every gamma in the large-value set has d = 1
  double parseval_residual = 0;     // |sum d^2 |mu|^2 - P_G(A)|
  bool first_holds = false;
  bool second_holds = false;
  Verdict verdict = Verdict::hypothesis_failed;
};

/// Energy inequalities for the k-fold convolution of 1_A, evaluated through
/// the mu-scalars of 1_A.
inline EnergyReport spectral_energy_check(const GroupSubset& s, const GroupSubset& a, const Rational& eta,
                                           std::size_t k, const CharacterTable& table) {
  if (k < 1) throw InputError("k must be at least 1");
  if (a.group() != table.group) throw InputError("set and character table on different groups");
  const auto& g = a.group();
  EnergyReport r;
  r.eta = eta;
  r.k = k;
  r.hypotheses = standing_hypotheses("energy", s, a, &table);
  r.hypotheses.add("energy", "eta in (0,1]", eta > Rational(0) && eta <= Rational(1));

  const auto ps = detail::power_sizes(a, k);
  r.a_size = a.size();
  r.ak_size = *ps.at(k);
  r.group_order = g->order();
  {
    const BigRational base = BigRational(1) - to_big(eta) * to_big(eta) / 2;
    BigRational lhs = 1;
    for (std::size_t i = 1; i < k; ++i) lhs *= base;
    const BigRational rhs = BigRational(static_cast<long long>(r.a_size)) / (2 * BigRational(static_cast<long long>(r.ak_size)));
    r.hypotheses.add("energy", "(1-eta^2/2)^(k-1) <= P(A)/2P(A^k)", lhs <= rhs);
  }

  const long double pa = static_cast<long double>(r.a_size) / static_cast<long double>(r.group_order);
  const long double thr = std::sqrt(to_long_double(Rational(1) - eta * eta / Rational(2)));
  const auto ind = ClassFunction::indicator(a);
  long double total = 0, parseval = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const long double mu = std::abs(fourier_scalar(ind, table, i).mu);
    const long double d = static_cast<long double>(table.dims[i]);
    const long double t = mu / pa;
    const long double term = d * d * std::pow(t, 2.0L * static_cast<long double>(k));
    total += term;
    parseval += d * d * mu * mu;
    const bool large = t >= thr - 1e-12L;
    if (large) {
      if (table.dims[i] == 1) {
        r.lspec_sum += term;
        ++r.lspec_size;
      } else {
        r.large_values_linear = false;
      }
    }
  }
  r.half_total = total / 2;
  r.rhs = static_cast<long double>(r.group_order) / (2.0L * static_cast<long double>(r.ak_size));
  r.parseval_residual = static_cast<double>(std::abs(parseval - pa));
  const long double tol = 1e-9L;
  r.first_holds = r.lspec_sum >= r.half_total * (1 - tol) - tol;
  r.second_holds = r.half_total >= r.rhs * (1 - tol);
  r.verdict = verdict_of(r.hypotheses, r.first_holds && r.second_holds && r.large_values_linear);
  return r;
}

struct ChangCover {
  CharSet x;
  std::size_t bound = 0;  // r
  bool covered = false;   // S subset Span(X) + T - T
  bool within_bound = false;
};

/// Greedy: scan S in canonical order, adding s whenever s is not yet in
/// Span(X) + T - T.
inline ChangCover chang_cover(const CharSet& s, const CharSet& t, std::size_t r) {
  if (s.empty() || t.empty()) throw InputError("covering needs non-empty S and T");
  ChangCover c{CharSet(s.group()), r, false, false};
  const CharSet diff = t - t;
  CharSet covered = diff;
  for (const auto& e : s) {
    if (covered.contains(e)) continue;
    c.x.insert(e);
    covered = char_span(c.x) + diff;
  }
  c.covered = s.is_subset_of(covered);
  c.within_bound = c.x.size() <= r;
  return c;
}

enum class DoublingBranch { cover, small };

struct DoublingReport {
  HypothesisLedger hypotheses;
  Rational eps{0};
  double d = 0;
  std::size_t window_lo = 0, window_hi = 0, window_checked_to = 0;
  DoublingBranch branch = DoublingBranch::small;
  std::size_t r = 0;
  std::size_t lspec_big = 0;    // |LSpec(A, (2r+1/2) eps)|
  std::size_t lspec_quarter = 0;// |LSpec(A, eps/2)|
  bool premise_inclusion = false;  // LSpec((2r+1/2)eps) contains r LSpec(2eps) + LSpec(eps/2)
  CharSet x;
  std::size_t lspec_size = 0;   // |LSpec(A, eps)|
  bool x_in_lspec2 = false;
  bool covering = false;        // LSpec + LSpec subset Span(X) + LSpec, as sets
  bool covering_brute = false;  // same, one sum at a time
  bool x_within_r = false;
  Verdict verdict = Verdict::hypothesis_failed;
};

namespace detail {

/// P(A^k) <= k^d P(A) over [lo, hi], clipped where the powers have saturated.
inline HypothesisEntry growth_window(const std::string& stage, const GroupSubset& a, std::size_t lo, std::size_t hi,
                                     double d, std::size_t* checked_to) {
  HypothesisEntry e{stage, "P(A^k) <= k^d P(A) for k in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]",
                    HypothesisStatus::holds, {}};
  *checked_to = 0;
  if (lo > hi) {
    e.witness = "empty window";
    return e;
  }
  const std::size_t cap = std::max<std::size_t>(lo, 4 * a.parent().order() + 4);
  const auto ps = power_sizes(a, std::min(hi, cap));
  const std::size_t end = ps.stable ? std::min(hi, std::max(lo, ps.saturation() + 1)) : std::min(hi, ps.sizes.size());
  for (std::size_t k = lo; k <= end; ++k) {
    const auto n = ps.at(k);
    if (!n) break;
    *checked_to = k;
    const long double bound = std::pow(static_cast<long double>(k), static_cast<long double>(d)) * a.size();
    if (static_cast<long double>(*n) > bound * (1 + 1e-12L)) {
      e.status = HypothesisStatus::fails;
      e.witness = "k = " + std::to_string(k) + ": |A^k| = " + std::to_string(*n) + " > " + fmt(bound);
      return e;
    }
  }
  if (*checked_to < hi) {
    e.status = ps.stable ? HypothesisStatus::clipped : HypothesisStatus::unchecked;
    e.witness = "checked to k = " + std::to_string(*checked_to) + (ps.stable ? " (powers saturated)" : "");
  }
  return e;
}

inline std::size_t clamp_size(long double v) {
  if (!(v > 0)) return 0;
  if (v > 1e18L) return static_cast<std::size_t>(1e18);
  return static_cast<std::size_t>(v);
}

}  // namespace detail

/// Doubling of large spectra: find r with |LSpec((2r+1/2)eps)| < 2^r |LSpec(eps/2)|,
/// cover LSpec(2eps) greedily, and verify LSpec(eps) + LSpec(eps) inside
/// Span(X) + LSpec(eps). No such r within (2r+1/2)eps <= 1 is the small branch.
inline DoublingReport lspec_doubling_cover(const GroupSubset& s, const GroupSubset& a, const Rational& eps, double d,
                                         const CharacterTable* table, const FourierProfile* profile = nullptr) {
  std::optional<FourierProfile> own;
  if (!profile) profile = &own.emplace(a);
  DoublingReport r;
  r.eps = eps;
  r.d = d;
  r.hypotheses = standing_hypotheses("lspec-doubling", s, a, table);
  r.hypotheses.add("lspec-doubling", "eps in (0,1]", eps > Rational(0) && eps <= Rational(1));
  r.hypotheses.add("lspec-doubling", "d >= 1", d >= 1.0);
  if (!(eps > Rational(0)) || eps > Rational(1)) throw InputError("eps must lie in (0,1]");

  const long double dl = d, e = to_long_double(eps);
  r.window_lo = detail::clamp_size(std::ceil(64.0L * dl * std::log(32.0L * dl)));
  r.window_hi = detail::clamp_size(std::floor(128.0L / (e * e) * dl * std::log(32.0L / (e * e) * dl)));
  auto entry = detail::growth_window("lspec-doubling", a, r.window_lo, r.window_hi, d, &r.window_checked_to);
  r.hypotheses.add(entry.stage, entry.hypothesis, entry.status, entry.witness);

  const CharSet ls = profile->lspec(eps);
  r.lspec_size = ls.size();
  const CharSet quarter = profile->lspec(eps / Rational(2));
  r.lspec_quarter = quarter.size();
  for (std::int64_t rr = 2; Rational(2 * rr) * eps + eps / Rational(2) <= Rational(1); ++rr) {
    const CharSet big = profile->lspec(Rational(2 * rr) * eps + eps / Rational(2));
    const bool below = rr >= 62 || big.size() < (std::size_t{1} << rr) * quarter.size();
    if (below) {
      r.branch = DoublingBranch::cover;
      r.r = static_cast<std::size_t>(rr);
      r.lspec_big = big.size();
      const CharSet s2 = profile->lspec(Rational(2) * eps);
      r.premise_inclusion = (kfold_charset(s2, r.r) + quarter).is_subset_of(big);
      auto cover = chang_cover(s2, quarter, r.r);
      r.x = cover.x;
      r.x_in_lspec2 = r.x.is_subset_of(s2);
      r.x_within_r = cover.within_bound;
      break;
    }
  }
  if (r.branch == DoublingBranch::small) r.x = CharSet(a.group());
  r.hypotheses.add("lspec-doubling", "LSpec((2r+1/2)eps) contains r LSpec(2eps) + LSpec(eps/2)",
                   r.branch == DoublingBranch::small ? HypothesisStatus::unchecked
                                                     : (r.premise_inclusion ? HypothesisStatus::holds : HypothesisStatus::fails));

  const CharSet span = char_span(r.x);
  r.covering = (ls + ls).is_subset_of(span + ls);
  r.covering_brute = true;
  for (const auto& u : ls)
    for (const auto& v : ls) {
      bool hit = false;
      for (const auto& sig : span)
        if (ls.contains(u + v - sig)) {
          hit = true;
          break;
        }
      r.covering_brute = r.covering_brute && hit;
    }
  const bool ok = r.branch == DoublingBranch::small ? true : (r.covering && r.covering_brute && r.x_within_r && r.x_in_lspec2);
  r.verdict = verdict_of(r.hypotheses, ok);
  return r;
}

struct SpectrumSizeReport {
  HypothesisLedger hypotheses;
  Rational eps{0};
  double d = 0;
  std::size_t k = 0;
  std::size_t k_min = 0;               // ceil(16 eps^-2 d log(8 eps^-2 d))
  std::size_t lspec_size = 0;
  std::size_t bohr_size = 0;           // |LinBohr(LSpec(A,eps), 1/2pi)|
  long double lhs = 0;                 // P_G of that ball
  long double rhs = 0;                 // 8 k^d P_G(A)
  bool holds = false;
  Verdict verdict = Verdict::hypothesis_failed;
};

inline std::size_t spectrum_size_min_k(const Rational& eps, double d) {
  const long double e = to_long_double(eps);
  return detail::clamp_size(std::ceil(16.0L / (e * e) * d * std::log(8.0L / (e * e) * d)));
}

/// P_G(LinBohr(LSpec(A,eps), 1/2pi)) <= 8 k^d P_G(A); k = 0 picks the least
/// admissible k.
inline SpectrumSizeReport lspec_size_check(const GroupSubset& s, const GroupSubset& a, const Rational& eps, std::size_t k,
                                     double d, const CharacterTable* table, const FourierProfile* profile = nullptr) {
  std::optional<FourierProfile> own;
  if (!profile) profile = &own.emplace(a);
  SpectrumSizeReport r;
  r.eps = eps;
  r.d = d;
  r.hypotheses = standing_hypotheses("lspec-size", s, a, table);
  r.hypotheses.add("lspec-size", "eps in (0,1]", eps > Rational(0) && eps <= Rational(1));
  r.hypotheses.add("lspec-size", "d >= 1", d >= 1.0);
  if (!(eps > Rational(0)) || eps > Rational(1)) throw InputError("eps must lie in (0,1]");
  r.k_min = spectrum_size_min_k(eps, d);
  r.k = k ? k : std::max<std::size_t>(r.k_min, 1);
  r.hypotheses.add("lspec-size", "k >= 16 eps^-2 d log 8 eps^-2 d", r.k >= r.k_min,
                   "k = " + std::to_string(r.k) + ", least admissible " + std::to_string(r.k_min));
  const auto ps = detail::power_sizes(a, std::min<std::size_t>(r.k, 4 * a.parent().order() + 4));
  const long double kd = std::pow(static_cast<long double>(r.k), static_cast<long double>(d));
  if (const auto n = ps.at(r.k)) {
    r.hypotheses.add("lspec-size", "P(A^k) <= k^d P(A)", static_cast<long double>(*n) <= kd * a.size() * (1 + 1e-12L),
                     "|A^k| = " + std::to_string(*n));
  } else {
    r.hypotheses.add("lspec-size", "P(A^k) <= k^d P(A)", HypothesisStatus::unchecked, "powers not saturated");
  }
  const CharSet ls = profile->lspec(eps);
  r.lspec_size = ls.size();
  const auto b = linbohr_real(ls, 1.0L / (2.0L * std::numbers::pi_v<long double>));
  r.bohr_size = b.size();
  const long double n = static_cast<long double>(a.parent().order());
  r.lhs = static_cast<long double>(r.bohr_size) / n;
  r.rhs = 8.0L * kd * static_cast<long double>(a.size()) / n;
  r.holds = r.lhs <= r.rhs;
  r.verdict = verdict_of(r.hypotheses, r.holds);
  return r;
}

}  // namespace monoball
