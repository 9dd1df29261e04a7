#include "monoball/spectra.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace monoball;

namespace {

LinearCharacter gamma_k(std::size_t n, std::int64_t k) {
  std::vector<Rational> ph(n);
  for (std::size_t x = 0; x < n; ++x) ph[x] = Rational(k * static_cast<std::int64_t>(x), static_cast<std::int64_t>(n));
  return LinearCharacter::from_phases(ph);
}

CharSet cyclic_chars(const GroupPtr& g, std::vector<std::int64_t> ks) {
  std::vector<LinearCharacter> v;
  for (auto k : ks) v.push_back(gamma_k(g->order(), k));
  return CharSet(g, v);
}

GroupSubset cyclic_set(const GroupPtr& g, std::vector<std::int64_t> xs) {
  GroupSubset s(g);
  const auto n = static_cast<std::int64_t>(g->order());
  for (auto x : xs) s.insert(static_cast<Element>(((x % n) + n) % n));
  return s;
}

// |sum_{a in A} gamma(a)| via double-precision cos/sin of the phases.
double direct_abs_sum(const GroupSubset& a, const LinearCharacter& c) {
  double re = 0, im = 0;
  a.for_each([&](Element x) {
    const double t = 2 * std::numbers::pi * to_double(c.phase(x));
    re += std::cos(t);
    im += std::sin(t);
  });
  return std::hypot(re, im);
}

// N_k(x) = #{(a_1..a_k) in A^k : a_1...a_k = x}, in long double.
std::vector<long double> product_counts(const GroupSubset& a, std::size_t k) {
  const auto& g = a.parent();
  std::vector<long double> n(g.order(), 0);
  a.for_each([&](Element x) { n[x] = 1; });
  const auto m = a.members();
  for (std::size_t i = 1; i < k; ++i) {
    std::vector<long double> next(g.order(), 0);
    for (Element x = 0; x < g.order(); ++x)
      if (n[x] != 0)
        for (Element y : m) next[g.mul(x, y)] += n[x];
    n = std::move(next);
  }
  return n;
}

GroupSubset normalized_generators(const GroupPtr& g, const std::vector<Element>& gens) {
  return normalize_set(GroupSubset(g, gens), {.symmetrize = true, .add_identity = true, .conjugation_close = true});
}

// Greedy generating set, least elements first.
std::vector<Element> generators(const GroupPtr& g) {
  std::vector<Element> gens;
  GroupSubset h = GroupSubset::identity_only(g);
  for (Element x = 0; x < g->order(); ++x)
    if (!h.contains(x)) {
      gens.push_back(x);
      h = generate_subgroup(g, gens).elements;
    }
  return gens;
}

// A generating S with the identity and |S.A|^2 < 2|A|^2, from {1} plus two elements.
std::optional<GroupSubset> small_generating_set(const GroupSubset& a) {
  const auto& g = a.group();
  for (Element x = 0; x < g->order(); ++x)
    for (Element y = x; y < g->order(); ++y) {
      GroupSubset s(g, std::vector<Element>{g->identity(), x, y});
      if (generate_subgroup(s).order() != g->order()) continue;
      const auto sa = product_set(s, a).size();
      if (sa * sa < 2 * a.size() * a.size()) return s;
    }
  return std::nullopt;
}

}  // namespace

TEST(SpectrumWeight, Invariants) {
  for (auto g : {cyclic(12), heisenberg(3), dihedral(16)}) {
    const auto a = normalized_generators(g, generators(g));
    const auto w = spectrum_weight(a);
    std::size_t total = 0;
    for (auto c : w.counts) total += c;
    EXPECT_EQ(total, a.size() * a.size());
    EXPECT_EQ(w.counts[g->identity()], a.size());
    EXPECT_NEAR(w.w.values[g->identity()].real(), 1.0, 1e-15);
    double mean = 0;
    for (const auto& v : w.w.values) {
      EXPECT_GE(v.real(), 0.0);
      mean += v.real();
    }
    mean /= static_cast<double>(g->order());
    EXPECT_NEAR(mean, double(a.size()) / double(g->order()), 1e-12);
  }
}

TEST(LargeSpectrum, TrivialAlwaysPresent) {
  std::mt19937_64 rng(5);
  for (auto g : {cyclic(30), dihedral(12), heisenberg(3)}) {
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(g->order() - 1));
    GroupSubset a(g);
    for (int i = 0; i < 5; ++i) a.insert(pick(rng));
    for (const Rational& eps : {Rational(1, 100), Rational(1, 2), Rational(7, 5)})
      EXPECT_TRUE(large_spectrum(a, eps).members.contains_identity());
  }
}

TEST(LargeSpectrum, SubgroupOfCyclic12) {
  auto g = cyclic(12);
  const auto a = cyclic_set(g, {0, 4, 8});
  for (const Rational& eps : {Rational(1, 50), Rational(1, 3), Rational(1), Rational(7, 5)}) {
    const auto ls = large_spectrum(a, eps);
    std::vector<std::int64_t> expect;
    for (std::int64_t k = 0; k < 12; ++k)
      if ((4 * k) % 12 == 0) expect.push_back(k);
    EXPECT_EQ(ls.members, cyclic_chars(g, expect)) << to_string(eps);
    EXPECT_EQ(ls.members.size(), 4u);
  }
}

TEST(LargeSpectrum, HeisenbergCenterAnnihilator) {
  auto g = heisenberg(3);
  const auto cls = conjugacy_classes(g);
  GroupSubset center(g);
  for (const auto& c : cls.classes)
    if (c.size() == 1) center |= c;
  ASSERT_EQ(center.size(), 3u);
  const auto lin = linear_characters(g);
  std::vector<LinearCharacter> ann;
  for (const auto& c : lin) {
    bool trivial = true;
    center.for_each([&](Element z) { trivial = trivial && c.phase(z) == Rational(0); });
    if (trivial) ann.push_back(c);
  }
  EXPECT_EQ(large_spectrum(center, Rational(1, 4)).members, CharSet(g, ann));
}

TEST(LargeSpectrum, MatchesDirectSums) {
  std::mt19937_64 rng(9);
  for (std::size_t n : {31u, 64u, 90u}) {
    auto g = cyclic(n);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
    for (int trial = 0; trial < 5; ++trial) {
      GroupSubset a(g);
      for (int i = 0; i < 7; ++i) a.insert(pick(rng));
      const Rational eps(1 + trial, 6);
      const auto ls = large_spectrum(a, eps);
      const double thr = std::sqrt(1 - to_double(eps * eps) / 2) * double(a.size());
      for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
        const double s = direct_abs_sum(a, gamma_k(n, k));
        if (std::abs(s - thr) < 1e-9) continue;
        EXPECT_EQ(ls.members.contains(gamma_k(n, k)), s >= thr) << n << " " << k;
      }
    }
  }
}

TEST(LargeSpectrum, SymmetricAndMonotone) {
  for (auto g : {cyclic(40), dihedral(16), heisenberg(3)}) {
    const auto a = normalized_generators(g, generators(g));
    const FourierProfile p(a);
    CharSet prev(g);
    for (std::int64_t k = 1; k <= 14; ++k) {
      const auto ls = p.lspec(Rational(k, 10));
      EXPECT_TRUE(ls.symmetric());
      EXPECT_TRUE(ls.contains_identity());
      EXPECT_TRUE(prev.is_subset_of(ls));
      prev = ls;
    }
  }
}

TEST(LargeSpectrum, RejectsBadRadius) {
  auto g = cyclic(5);
  EXPECT_THROW(large_spectrum(cyclic_set(g, {0}), Rational(0)), InputError);
  EXPECT_THROW(large_spectrum(cyclic_set(g, {0}), Rational(3, 2)), InputError);
  EXPECT_THROW(large_spectrum(GroupSubset(g), Rational(1, 2)), InputError);
}

TEST(SpectrumDistance, Basics) {
  auto g = cyclic(12);
  const auto a = cyclic_set(g, {0, 4, 8});
  const auto g1 = gamma_k(12, 1);
  EXPECT_NEAR(spectrum_distance(a, g1, g1).distance, 0.0, 1e-15);
  EXPECT_NEAR(spectrum_distance(a, gamma_k(12, 0), gamma_k(12, 3)).distance, 0.0, 1e-12);
  const auto d = spectrum_distance(a, gamma_k(12, 0), g1);
  EXPECT_NEAR(d.squared, 2.0, 1e-12);
  EXPECT_NEAR(d.formula_squared, 2.0, 1e-12);
}

TEST(SpectrumDistance, IdentityAndTranslationInvariance) {
  for (auto g : {cyclic(36), dihedral(16), heisenberg(3), quaternion8()}) {
    const auto a = normalized_generators(g, {generators(g).front()});
    const auto lin = linear_characters(g);
    const auto zero = LinearCharacter::trivial(g->order());
    for (const auto& c : lin) {
      const auto d = spectrum_distance(a, zero, c);
      const double oracle = 2 * (1 - std::pow(direct_abs_sum(a, c) / double(a.size()), 2));
      EXPECT_NEAR(d.squared, oracle, 1e-9);
      EXPECT_LT(d.residual, 1e-9);
      for (const auto& t : lin) EXPECT_NEAR(spectrum_distance(a, zero + t, c + t).squared, d.squared, 1e-12);
    }
  }
}

namespace {

void expect_energy_matches_oracle(const GroupSubset& a, const EnergyReport& r) {
  const auto n = product_counts(a, r.k);
  long double sq = 0;
  for (auto v : n) sq += v * v;
  const long double total = static_cast<long double>(a.parent().order()) * sq /
                            std::pow(static_cast<long double>(a.size()), 2.0L * static_cast<long double>(r.k));
  EXPECT_NEAR(static_cast<double>(r.half_total / (total / 2)), 1.0, 1e-9);
  EXPECT_LT(r.parseval_residual, 1e-9);
}

}  // namespace

TEST(SpectralEnergy, WholeGroup) {
  for (auto g : {cyclic(8), symmetric_group(3), heisenberg(3)}) {
    const auto a = GroupSubset::full(g);
    const auto t = character_table(g);
    const auto r = spectral_energy_check(a, a, Rational(1), 2, t);
    EXPECT_EQ(r.verdict, Verdict::pass) << g->order();
    EXPECT_NEAR(static_cast<double>(r.lspec_sum), 1.0, 1e-9);
    EXPECT_NEAR(static_cast<double>(r.half_total), 0.5, 1e-9);
    EXPECT_NEAR(static_cast<double>(r.rhs), 0.5, 1e-12);
    EXPECT_EQ(r.lspec_size, 1u);
    expect_energy_matches_oracle(a, r);
  }
}

TEST(SpectralEnergy, Cyclic16) {
  auto g = cyclic(16);
  const auto a = cyclic_set(g, {0, 1, -1});
  const auto s = cyclic_set(g, {0, 1});
  const auto t = character_table(g);
  for (std::size_t k : {4u, 8u, 12u}) {
    const auto r = spectral_energy_check(s, a, Rational(1), k, t);
    EXPECT_TRUE(r.hypotheses.all_hold()) << k;
    EXPECT_EQ(r.verdict, Verdict::pass) << k;
    expect_energy_matches_oracle(a, r);
  }
}

TEST(SpectralEnergy, HeisenbergNormalizedGenerators) {
  auto g = heisenberg(3);
  const auto t = character_table(g);
  // the generators alone are too small for P(S.A) < sqrt2 P(A) with a small S
  const auto a = normalized_generators(g, generators(g));
  EXPECT_FALSE(small_generating_set(a).has_value());
  const auto failed = spectral_energy_check(GroupSubset(g, generators(g)) | GroupSubset::identity_only(g), a,
                                            Rational(1), 3, t);
  EXPECT_EQ(failed.verdict, Verdict::hypothesis_failed);
  expect_energy_matches_oracle(a, failed);

  // first union of conjugacy classes (ascending mask) that admits such an S
  const auto cls = conjugacy_classes(g);
  std::optional<std::pair<GroupSubset, GroupSubset>> fixture;
  for (std::size_t mask = 0; mask < (std::size_t{1} << cls.classes.size()) && !fixture; ++mask) {
    GroupSubset b = GroupSubset::identity_only(g);
    for (std::size_t i = 0; i < cls.classes.size(); ++i)
      if (mask >> i & 1) b |= cls.classes[i];
    if (!(inverse_set(b) == b)) continue;
    if (auto s = small_generating_set(b)) fixture.emplace(b, *s);
  }
  ASSERT_TRUE(fixture.has_value());
  const auto& [b, s] = *fixture;
  bool any = false;
  for (std::size_t k = 1; k <= 40; ++k) {
    const auto r = spectral_energy_check(s, b, Rational(1), k, t);
    expect_energy_matches_oracle(b, r);
    EXPECT_NE(r.verdict, Verdict::falsified);
    if (r.hypotheses.all_hold()) {
      any = true;
      EXPECT_EQ(r.verdict, Verdict::pass) << k;
    }
  }
  EXPECT_TRUE(any);
}

TEST(SpectralEnergy, FailedHypothesisIsNotFalsification) {
  auto g = cyclic(16);
  const auto a = cyclic_set(g, {0, 1, -1});
  const auto t = character_table(g);
  const auto r = spectral_energy_check(cyclic_set(g, {0, 3, 5}), a, Rational(1, 10), 2, t);
  EXPECT_EQ(r.verdict, Verdict::hypothesis_failed);
}

TEST(ChangCover, Trivial) {
  auto g = cyclic(20);
  const auto t = cyclic_chars(g, {0, 1, 2});
  EXPECT_TRUE(chang_cover(cyclic_chars(g, {0, 1, -2}), t, 0).x.empty());
  const auto c = chang_cover(cyclic_chars(g, {7}), CharSet::identity(g), 1);
  EXPECT_EQ(c.x, cyclic_chars(g, {7}));
  EXPECT_TRUE(c.covered);
}

TEST(ChangCover, RandomCyclic64) {
  std::mt19937_64 rng(21);
  auto g = cyclic(64);
  std::uniform_int_distribution<std::int64_t> pick(0, 63);
  int premised = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int64_t> sk{0}, tk;
    for (int i = 0; i < 4; ++i) sk.push_back(pick(rng));
    for (int i = 0; i < 6; ++i) tk.push_back(pick(rng));
    const auto s = cyclic_chars(g, sk);
    const auto t = cyclic_chars(g, tk);
    for (std::size_t r = 1; r <= 5; ++r) {
      // premise |rS + T| < 2^r |T|, by direct residue enumeration
      std::vector<bool> hit(64, false);
      std::vector<std::int64_t> sums{0};
      for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::int64_t> next;
        for (auto a : sums)
          for (auto b : sk) next.push_back((a + b) % 64);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        sums = next;
      }
      for (auto a : sums)
        for (auto b : tk) hit[static_cast<std::size_t>((a + b) % 64)] = true;
      const auto count = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
      const auto c = chang_cover(s, t, r);
      EXPECT_TRUE(c.covered);
      EXPECT_TRUE(c.x.is_subset_of(s));
      if (count < (std::size_t{1} << r) * t.size()) {
        ++premised;
        EXPECT_TRUE(c.within_bound) << trial << " " << r;
      }
    }
  }
  EXPECT_GT(premised, 0);
}

TEST(DoublingCover, WholeGroup) {
  auto g = cyclic(16);
  const auto a = GroupSubset::full(g);
  const auto r = lspec_doubling_cover(a, a, Rational(1, 8), 1.0, nullptr);
  EXPECT_TRUE(r.covering);
  EXPECT_TRUE(r.x.empty() || r.x == CharSet::identity(g));
  EXPECT_NE(r.verdict, Verdict::falsified);
}

TEST(DoublingCover, SubgroupSpectrumIsClosed) {
  auto g = cyclic(12);
  const auto a = cyclic_set(g, {0, 4, 8});
  const auto r = lspec_doubling_cover(a, a, Rational(1, 10), 1.0, nullptr);
  EXPECT_TRUE(r.covering);
  EXPECT_TRUE(r.covering_brute);
  EXPECT_EQ(r.lspec_size, 4u);
  EXPECT_NE(r.verdict, Verdict::falsified);
}

TEST(DoublingCover, Cyclic128) {
  auto g = cyclic(128);
  const auto a = cyclic_set(g, {0, 1, -1, 2, -2});
  const auto s = cyclic_set(g, {0, 1});
  const double inv = 512.0 * 2.0 * 1.0 * std::pow(std::log(2.0), 2);
  for (const Rational& eps : {Rational(1, static_cast<std::int64_t>(std::ceil(inv))), Rational(1, 20), Rational(1, 8)}) {
    const auto r = lspec_doubling_cover(s, a, eps, 1.0, nullptr);
    EXPECT_NE(r.verdict, Verdict::falsified) << to_string(eps);
    EXPECT_EQ(r.covering, r.covering_brute) << to_string(eps);
    if (r.branch == DoublingBranch::cover) {
      EXPECT_TRUE(r.covering) << to_string(eps);
      EXPECT_TRUE(r.x_within_r) << to_string(eps);
      EXPECT_TRUE(r.x.is_subset_of(large_spectrum(a, Rational(2) * eps).members));
      // exact covering oracle over residues: every u + v lands in Span(X) + LSpec
      const auto ls = large_spectrum(a, eps).members;
      const auto rhs = char_span(r.x) + ls;
      for (const auto& u : ls)
        for (const auto& v : ls) EXPECT_TRUE(rhs.contains(u + v));
    }
  }
}

TEST(SpectrumSize, WholeGroup) {
  auto g = cyclic(10);
  const auto a = GroupSubset::full(g);
  const auto r = lspec_size_check(a, a, Rational(1, 2), 0, 1.0, nullptr);
  EXPECT_TRUE(r.holds);
  EXPECT_LE(r.lhs, 1.0L);
  EXPECT_GE(r.rhs, 8.0L);
}

TEST(SpectrumSize, SubgroupOfCyclic12) {
  auto g = cyclic(12);
  const auto a = cyclic_set(g, {0, 4, 8});
  const auto r = lspec_size_check(a, a, Rational(1, 2), 0, 1.0, nullptr);
  // LinBohr of {gamma_0, gamma_3, gamma_6, gamma_9} at 1/2pi: x with ||3x/12|| <= 1/2pi
  std::size_t n = 0;
  for (std::int64_t x = 0; x < 12; ++x) {
    bool in = true;
    for (std::int64_t k : {0, 3, 6, 9}) in = in && to_double(circle_norm(Rational(k * x, 12))) <= 1 / (2 * std::numbers::pi);
    n += in;
  }
  EXPECT_EQ(r.bohr_size, n);
  EXPECT_TRUE(r.holds);
  EXPECT_GE(r.k, r.k_min);
}

TEST(SpectrumSize, DihedralNormalizedGenerators) {
  auto g = dihedral(16);
  const auto a = normalized_generators(g, generators(g));
  const auto s = small_generating_set(a);
  const auto t = character_table(g);
  const auto r = lspec_size_check(s.value_or(a), a, Rational(1, 2), 0, 1.0, &t);
  EXPECT_TRUE(r.holds);
  EXPECT_NE(r.verdict, Verdict::falsified);
  EXPECT_LE(r.lhs, r.rhs);
}

TEST(SpectrumSize, MinimalK) {
  const Rational eps(1, 3);
  const double d = 2.0;
  const double e2 = 1.0 / 9.0;
  EXPECT_EQ(spectrum_size_min_k(eps, d), static_cast<std::size_t>(std::ceil(16 / e2 * d * std::log(8 / e2 * d))));
}
