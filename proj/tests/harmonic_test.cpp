#include "monoball/harmonic.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace monoball;

namespace {

ClassFunction random_class_function(const CharacterTable& t, std::mt19937_64& rng, bool hermitian) {
  std::normal_distribution<double> nd;
  std::vector<Complex> per_class(t.classes.count());
  for (auto& v : per_class) v = {nd(rng), nd(rng)};
  ClassFunction f = ClassFunction::zero(t.group);
  for (Element x = 0; x < f.size(); ++x) f.values[x] = per_class[t.classes.class_of[x]];
  if (hermitian) {
    ClassFunction h = f;
    for (Element x = 0; x < f.size(); ++x)
      h.values[x] = 0.5 * (f.values[x] + std::conj(f.values[t.group->inv(x)]));
    return h;
  }
  return f;
}

// Definitional induction: P_G(H)^-1 E_y f(y x y^-1), f zero off H.
ClassFunction induce_by_definition(const GroupPtr& g, const EmbeddedGroup& h, const ClassFunction& f) {
  ClassFunction out = ClassFunction::zero(g);
  const double n = static_cast<double>(g->order());
  for (Element x = 0; x < g->order(); ++x) {
    Complex s = 0;
    for (Element y = 0; y < g->order(); ++y) {
      const auto local = h.from_parent[g->conj(y, x)];
      if (local >= 0) s += f.values[static_cast<std::size_t>(local)];
    }
    out.values[x] = (n / static_cast<double>(h.to_parent.size())) * s / n;
  }
  return out;
}

// Fixed points of a permutation group element, read back from its label "[a,b,c]".
int fixed_points(const std::string& label) {
  std::stringstream ss(label.substr(1, label.size() - 2));
  std::string tok;
  int i = 0, fixed = 0;
  while (std::getline(ss, tok, ',')) fixed += std::stoi(tok) == i++;
  return fixed;
}

std::vector<GroupPtr> test_groups() {
  return {cyclic(2),  cyclic(12),         symmetric_group(3), quaternion8(), dihedral(8),
          dihedral(12), heisenberg(3),    symmetric_group(4), sl23(),
          build_group(product_spec({CyclicSpec{3}, DihedralSpec{6}}))};
}

}  // namespace

TEST(LinearCharacters, CyclicDuality) {
  const std::size_t n = 12;
  auto g = cyclic(n);
  auto lin = linear_characters(g);
  ASSERT_EQ(lin.size(), n);
  for (std::size_t k = 0; k < n; ++k)
    for (Element j = 0; j < n; ++j)
      EXPECT_EQ(lin[k].phase(j), wrap_phase(Rational(static_cast<std::int64_t>(k * j), static_cast<std::int64_t>(n))));
}

TEST(LinearCharacters, CountsAndHomomorphism) {
  EXPECT_EQ(linear_characters(symmetric_group(3)).size(), 2u);
  EXPECT_EQ(linear_characters(heisenberg(3)).size(), 9u);
  EXPECT_EQ(linear_characters(sl23()).size(), 3u);
  for (const auto& g : test_groups()) {
    auto lin = linear_characters(g);
    EXPECT_EQ(lin.size(), abelianization(g).quotient->order());
    EXPECT_TRUE(lin.front().is_trivial());
    for (std::size_t i = 0; i < lin.size(); ++i) {
      EXPECT_TRUE(is_homomorphism(*g, lin[i]));
      if (i) EXPECT_TRUE(lin[i - 1] < lin[i]);
    }
  }
}

TEST(LinearCharacters, GroupLawOnLin) {
  auto g = dihedral(12);
  auto lin = linear_characters(g);
  for (const auto& a : lin)
    for (const auto& b : lin) {
      const auto c = a + b;
      EXPECT_TRUE(std::find(lin.begin(), lin.end(), c) != lin.end());
      EXPECT_EQ(c - b, a);
    }
  EXPECT_EQ(lin[1].multiple(3), lin[1] + lin[1] + lin[1]);
}

TEST(CharacterTable, CyclicTwo) {
  auto t = character_table(cyclic(2));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_NEAR(std::abs(t.characters[0](0) - Complex(1)), 0, 1e-12);
  EXPECT_NEAR(std::abs(t.characters[0](1) - Complex(1)), 0, 1e-12);
  EXPECT_NEAR(std::abs(t.characters[1](0) - Complex(1)), 0, 1e-12);
  EXPECT_NEAR(std::abs(t.characters[1](1) - Complex(-1)), 0, 1e-12);
}

TEST(CharacterTable, S3TwoDimensionalIsPermutationMinusTrivial) {
  auto g = symmetric_group(3);
  auto t = character_table(g);
  EXPECT_EQ(t.dims, (std::vector<std::size_t>{1, 1, 2}));
  for (Element x = 0; x < g->order(); ++x)
    EXPECT_NEAR(std::abs(t.characters[2](x) - Complex(fixed_points(g->label(x)) - 1)), 0, 1e-9);
}

TEST(CharacterTable, Quaternion8Dims) {
  auto t = character_table(quaternion8());
  EXPECT_EQ(t.dims, (std::vector<std::size_t>{1, 1, 1, 1, 2}));
}

TEST(CharacterTable, OrthogonalityAcrossGroups) {
  for (const auto& g : test_groups()) {
    auto t = character_table(g, 5);
    std::size_t sum = 0;
    for (auto d : t.dims) sum += d * d;
    EXPECT_EQ(sum, g->order());
    EXPECT_EQ(t.size(), t.classes.count());
    EXPECT_LT(row_orthonormality_residual(t), 1e-8);
    EXPECT_LT(column_orthogonality_residual(t), 1e-8);
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_TRUE(t.characters[i].is_class_function(t.classes));
      EXPECT_NEAR(t.characters[i](g->identity()).real(), double(t.dims[i]), 1e-9);
      if (i) EXPECT_LE(t.dims[i - 1], t.dims[i]);
    }
  }
}

TEST(CharacterTable, DeterministicForSeed) {
  auto g = symmetric_group(4);
  auto a = character_table(g, 11), b = character_table(g, 11);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.characters[i].values, b.characters[i].values);
}

TEST(Convolution, ExamplesAndClassFunctionOutput) {
  auto g = cyclic(4);
  auto one = ClassFunction::constant(g, 1.0);
  EXPECT_LT(convolve(one, one).sup_distance(one), 1e-12);

  auto a = GroupSubset(g, std::vector<Element>{0, 1});
  auto ia = ClassFunction::indicator(a);
  auto conv = convolve(ia, ia);
  // pair counts {0+0}, {0+1,1+0}, {1+1}
  const double expect[4] = {0.25, 0.5, 0.25, 0.0};
  for (Element x = 0; x < 4; ++x) EXPECT_NEAR(std::abs(conv(x) - Complex(expect[x])), 0, 1e-12);

  auto s4 = symmetric_group(4);
  auto cls = conjugacy_classes(s4);
  auto b = cls.classes[1] | GroupSubset::identity_only(s4);
  auto ib = ClassFunction::indicator(b);
  auto ibinv = ClassFunction::indicator(inverse_set(b));
  auto c = convolve(ib, ibinv);
  EXPECT_NEAR(c(s4->identity()).real(), double(b.size()) / s4->order(), 1e-12);
  EXPECT_TRUE(c.is_class_function(cls));
}

TEST(FourierScalar, TrivialAndOrthogonality) {
  auto g = dihedral(12);
  auto t = character_table(g);
  auto one = ClassFunction::constant(g, 1.0);
  EXPECT_NEAR(std::abs(fourier_scalar(one, t, 0).mu - Complex(1)), 0, 1e-12);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_LT(std::abs(fourier_scalar(one, t, i).mu), 1e-12);
}

TEST(FourierScalar, S3TranspositionsAgainstDirectSum) {
  auto g = symmetric_group(3);
  auto t = character_table(g);
  GroupSubset tr(g);
  for (Element x = 0; x < g->order(); ++x)
    if (fixed_points(g->label(x)) == 1) tr.insert(x);
  auto f = ClassFunction::indicator(tr);
  const auto mu = fourier_scalar(f, t, 2, true).mu;
  double direct = 0;
  for (Element x : tr.members()) direct += fixed_points(g->label(x)) - 1;
  direct /= 6.0 * 2.0;
  EXPECT_NEAR(std::abs(mu - Complex(direct)), 0, 1e-12);
  EXPECT_NEAR(direct, 0.0, 1e-12);  // the 2-dim character vanishes on transpositions
  EXPECT_THROW(fourier_scalar(ClassFunction::constant(g, Complex(0, 1)), t, 0, true), InputError);
}

TEST(FourierScalar, ConvolutionTheoremAndHermitianReality) {
  std::mt19937_64 rng(42);
  for (const auto& g : test_groups()) {
    auto t = character_table(g);
    for (int trial = 0; trial < 10; ++trial) {
      auto f = random_class_function(t, rng, true), h = random_class_function(t, rng, true);
      auto fh = convolve(f, h);
      for (std::size_t i = 0; i < t.size(); ++i) {
        const auto mf = fourier_scalar(f, t, i).mu, mh = fourier_scalar(h, t, i).mu;
        EXPECT_LT(std::abs(fourier_scalar(fh, t, i).mu - mf * mh), 1e-9);
        EXPECT_LT(std::abs(mf.imag()), 1e-9);
      }
    }
  }
}

TEST(FourierScalar, KFoldConvolutionIsPower) {
  auto g = heisenberg(3);
  auto t = character_table(g);
  auto a = normalize_set(GroupSubset(g, std::vector<Element>{9, 3}), {true, true, true});
  auto ia = ClassFunction::indicator(a);
  auto f = ia;
  for (int k = 2; k <= 4; ++k) {
    f = convolve(f, ia);
    for (std::size_t i = 0; i < t.size(); ++i)
      EXPECT_LT(std::abs(fourier_scalar(f, t, i).mu - std::pow(fourier_scalar(ia, t, i).mu, k)), 1e-8);
  }
}

TEST(Plancherel, Examples) {
  auto g = dihedral(8);
  auto t = character_table(g);
  auto one = ClassFunction::constant(g, 1.0);
  EXPECT_LT(plancherel_check(one, one, t), 1e-12);
  EXPECT_NEAR(inner(one, one).real(), 1.0, 1e-12);
  for (const auto& chi : t.characters) {
    EXPECT_LT(plancherel_check(chi, chi, t), 1e-10);
    EXPECT_NEAR(inner(chi, chi).real(), 1.0, 1e-10);
  }
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto f = random_class_function(t, rng, false), h = random_class_function(t, rng, false);
    EXPECT_LT(plancherel_check(f, h, t), 1e-8);
  }
}

TEST(Induction, WholeGroupIsIdentityMap) {
  auto g = symmetric_group(4);
  auto t = character_table(g);
  auto emb = as_group({GroupSubset::full(g), 1});
  for (const auto& chi : t.characters) {
    ClassFunction local = ClassFunction::zero(emb.group);
    for (std::size_t i = 0; i < emb.to_parent.size(); ++i) local.values[i] = chi.values[emb.to_parent[i]];
    EXPECT_LT(induce_class_function(g, emb, local, t.classes).sup_distance(chi), 1e-12);
  }
}

TEST(Induction, TrivialCharacterGivesIndexAtIdentity) {
  auto g = dihedral(12);
  auto cls = conjugacy_classes(g);
  for (const auto& h : enumerate_subgroups(g)) {
    auto emb = as_group(h);
    auto ind = induce_class_function(g, emb, ClassFunction::constant(emb.group, 1.0), cls);
    EXPECT_NEAR(ind(g->identity()).real(), double(h.index_in_parent), 1e-12);
    EXPECT_LT(ind.sup_distance(induce_by_definition(g, emb, ClassFunction::constant(emb.group, 1.0))), 1e-12);
  }
}

TEST(Induction, A3ToS3GivesTwoDimensionalCharacter) {
  auto g = symmetric_group(3);
  auto t = character_table(g);
  for (const auto& h : enumerate_subgroups(g)) {
    if (h.order() != 3) continue;
    auto emb = as_group(h);
    auto lin = linear_characters(emb.group);
    ASSERT_EQ(lin.size(), 3u);
    auto induced = induce_class_function(g, emb, ClassFunction::of(lin[1], emb.group), t.classes);
    EXPECT_LT(induced.sup_distance(t.characters[2]), 1e-12);
    EXPECT_LT(induced.sup_distance(induce_by_definition(g, emb, ClassFunction::of(lin[1], emb.group))), 1e-12);
  }
}

TEST(Induction, RejectsNonClassFunction) {
  auto g = symmetric_group(4);
  auto cls = conjugacy_classes(g);
  auto emb = as_group({GroupSubset::full(g), 1});
  auto f = ClassFunction::zero(emb.group);
  f.values[1] = 1.0;
  EXPECT_THROW(induce_class_function(g, emb, f, cls), InputError);
}

TEST(Induction, FrobeniusReciprocity) {
  std::mt19937_64 rng(9);
  for (const auto& g : {symmetric_group(4), heisenberg(3), quaternion8(), dihedral(12)}) {
    auto t = character_table(g);
    for (const auto& h : enumerate_subgroups(g)) {
      auto emb = as_group(h);
      auto th = character_table(emb.group);
      for (int i = 0; i < 3; ++i) {
        auto f = random_class_function(th, rng, false);
        auto gf = random_class_function(t, rng, false);
        EXPECT_LT(frobenius_residual(g, emb, f, gf, t.classes), 1e-8);
      }
    }
  }
}

TEST(Monomial, AbelianAndQuaternion) {
  auto ab = is_monomial(cyclic(12));
  EXPECT_TRUE(ab.monomial);
  for (const auto& c : ab.certificates) EXPECT_EQ(c.subgroup.order(), 12u);

  auto q8 = quaternion8();
  auto r = is_monomial(q8);
  EXPECT_TRUE(r.monomial);
  const auto& two = r.certificates.back();
  EXPECT_EQ(two.dim, 2u);
  EXPECT_TRUE(two.found);
  EXPECT_EQ(two.subgroup.order(), 4u);
  // the inducing subgroup is cyclic: some element generates it
  bool cyclic_sub = false;
  for (Element x : two.subgroup.elements.members()) {
    const Element gens[] = {x};
    cyclic_sub = cyclic_sub || generate_subgroup(q8, gens).order() == 4;
  }
  EXPECT_TRUE(cyclic_sub);
}

TEST(Monomial, SL23IsNotMonomial) {
  auto r = is_monomial(sl23());
  EXPECT_FALSE(r.monomial);
  bool two_dim_failure = false;
  for (const auto& c : r.certificates) two_dim_failure = two_dim_failure || (!c.found && c.dim == 2);
  EXPECT_TRUE(two_dim_failure);
}

TEST(Monomial, Hereditary) {
  EXPECT_TRUE(is_hereditarily_monomial(heisenberg(3)).hereditarily_monomial);
  EXPECT_TRUE(is_hereditarily_monomial(symmetric_group(3)).hereditarily_monomial);
  EXPECT_TRUE(is_hereditarily_monomial(cyclic(10)).hereditarily_monomial);
  auto sl = is_hereditarily_monomial(sl23());
  EXPECT_FALSE(sl.hereditarily_monomial);
  ASSERT_TRUE(sl.first_failure.has_value());
  EXPECT_EQ(sl.first_failure->order(), 24u);
}

TEST(HighValueLinearity, WholeGroup) {
  auto g = dihedral(8);
  auto t = character_table(g);
  auto full = GroupSubset::full(g);
  auto r = high_value_linearity_check(full, full, t);
  EXPECT_TRUE(r.violations.empty());
  for (const auto& e : r.entries) {
    if (e.gamma == 0) EXPECT_NEAR(e.spec_rad, 1.0, 1e-12);
    else EXPECT_LT(e.spec_rad, 1e-12);
  }
}

TEST(HighValueLinearity, HeisenbergAndDihedralScans) {
  auto h = heisenberg(3);
  auto th = character_table(h);
  auto a = normalize_set(GroupSubset(h, std::vector<Element>{9, 3}), {true, true, true});
  auto r = high_value_linearity_check(a, a, th);
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_EQ(r.entries.size(), 11u);
  EXPECT_TRUE(r.violations.empty());

  auto d = dihedral(8);
  auto td = character_table(d);
  // {e} u {central involution r^2}
  auto b = GroupSubset(d, std::vector<Element>{0, 2});
  auto s = normalize_set(GroupSubset(d, std::vector<Element>{1, 4}), {true, true, false});
  auto rd = high_value_linearity_check(s, b, td);
  EXPECT_TRUE(rd.a_normal && rd.a_symmetric && rd.s_generates);
  EXPECT_TRUE(rd.violations.empty());
}
