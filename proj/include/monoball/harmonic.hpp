#pragma once

#include "monoball/group.hpp"
#include "monoball/linear_character.hpp"
#include "monoball/setops.hpp"
#include "monoball/structure.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <random>
#include <vector>

namespace monoball {

using Complex = std::complex<double>;

/// Complex function on group elements. Construction helpers produce class
/// functions exactly; computed data is checked against a tolerance.
struct ClassFunction {
  GroupPtr group;
  std::vector<Complex> values;

  static ClassFunction zero(const GroupPtr& g) { return {g, std::vector<Complex>(g->order())}; }
  static ClassFunction constant(const GroupPtr& g, Complex c) {
    return {g, std::vector<Complex>(g->order(), c)};
  }
  static ClassFunction indicator(const GroupSubset& a) {
    ClassFunction f = zero(a.group());
    a.for_each([&](Element x) { f.values[x] = 1.0; });
    return f;
  }
  static ClassFunction of(const LinearCharacter& c, const GroupPtr& g) {
    ClassFunction f = zero(g);
    for (Element x = 0; x < g->order(); ++x) f.values[x] = c.value(x);
    return f;
  }

  Complex operator()(Element x) const { return values[x]; }
  std::size_t size() const { return values.size(); }

  bool is_class_function(const ConjugacyPartition& p, double tol = 1e-9) const {
    for (Element x = 0; x < size(); ++x)
      if (std::abs(values[x] - values[p.representatives[p.class_of[x]]]) > tol) return false;
    return true;
  }
  // f(x^-1) = conj f(x)
  bool is_hermitian(double tol = 1e-9) const {
    for (Element x = 0; x < size(); ++x)
      if (std::abs(values[group->inv(x)] - std::conj(values[x])) > tol) return false;
    return true;
  }
  double sup_distance(const ClassFunction& o) const {
    double m = 0;
    for (std::size_t i = 0; i < size(); ++i) m = std::max(m, std::abs(values[i] - o.values[i]));
    return m;
  }
};

// <f,g> = E_x conj(f(x)) g(x); conjugate-linear in the first slot.
inline Complex inner(const ClassFunction& f, const ClassFunction& g) {
  if (f.group != g.group) throw InputError("inner product of functions on different groups");
  Complex s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::conj(f.values[i]) * g.values[i];
  return s / static_cast<double>(f.size());
}

// f*g(x) = E_y f(y) g(y^-1 x)
inline ClassFunction convolve(const ClassFunction& f, const ClassFunction& g) {
  if (f.group != g.group) throw InputError("convolution of functions on different groups");
  const auto& gr = *f.group;
  const std::size_t n = gr.order();
  ClassFunction out = ClassFunction::zero(f.group);
  for (Element x = 0; x < n; ++x) {
    Complex s = 0;
    for (Element y = 0; y < n; ++y) s += f.values[y] * g.values[gr.mul(gr.inv(y), x)];
    out.values[x] = s / static_cast<double>(n);
  }
  return out;
}

struct CharacterTable {
  GroupPtr group;
  ConjugacyPartition classes;
  std::vector<ClassFunction> characters;  // linear first (Lin(G) order), then by dim, then values
  std::vector<std::size_t> dims;
  std::vector<LinearCharacter> linear;    // exact phases of characters[0 .. linear.size())
  std::uint64_t seed = 0;                 // seed that produced the table

  std::size_t size() const { return characters.size(); }
  std::size_t num_linear() const { return linear.size(); }
  Complex class_value(std::size_t chi, std::size_t cls) const {
    return characters[chi].values[classes.representatives[cls]];
  }
};

inline constexpr std::size_t kCharacterTableMaxOrder = 256;
inline constexpr int kCharacterTableRetries = 8;

namespace detail {

struct RawTable {
  std::vector<std::vector<Complex>> rows;  // class-indexed values
  std::vector<std::size_t> dims;
};

// Burnside: a random combination of class-sum multiplication matrices has
// the central characters omega_chi(C_k) = |C_k| chi(g_k) / chi(1) as the
// entries of its (simultaneous) eigenvectors.
inline std::optional<RawTable> burnside_attempt(const FiniteGroup& g, const ConjugacyPartition& p,
                                                std::uint64_t seed) {
  const std::size_t r = p.count();
  const std::size_t n = g.order();
  std::mt19937_64 rng(seed);
  std::vector<double> weight(r);
  for (auto& w : weight) w = static_cast<double>(rng() % 1000003 + 1) / 1000003.0;

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
  for (Element x = 0; x < n; ++x) {
    const double w = weight[p.class_of[x]];
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t j = p.class_of[g.mul(g.inv(x), p.representatives[k])];
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) += w;
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, true);
  if (es.info() != Eigen::Success) return std::nullopt;
  const auto evals = es.eigenvalues();
  double scale = 1.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) scale = std::max(scale, std::abs(evals(i)));
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    for (Eigen::Index j = i + 1; j < evals.size(); ++j)
      if (std::abs(evals(i) - evals(j)) < 1e-6 * scale) return std::nullopt;

  const auto vecs = es.eigenvectors();
  RawTable t;
  for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
    const Complex v0 = vecs(0, c);
    if (std::abs(v0) < 1e-12) return std::nullopt;
    std::vector<Complex> w(r);
    double norm = 0;
    for (std::size_t k = 0; k < r; ++k) {
      w[k] = vecs(static_cast<Eigen::Index>(k), c) / v0;
      norm += std::norm(w[k]) / static_cast<double>(p.class_size(k));
    }
    const double d = std::sqrt(static_cast<double>(n) / norm);
    const double dr = std::round(d);
    if (dr < 1 || std::abs(d - dr) > 1e-6) return std::nullopt;
    std::vector<Complex> row(r);
    for (std::size_t k = 0; k < r; ++k) row[k] = dr * w[k] / static_cast<double>(p.class_size(k));
    t.rows.push_back(std::move(row));
    t.dims.push_back(static_cast<std::size_t>(dr));
  }
  return t;
}

inline bool values_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].real() - b[i].real()) > 1e-9) return a[i].real() < b[i].real();
    if (std::abs(a[i].imag() - b[i].imag()) > 1e-9) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace detail

/// Orthonormality residual of the rows (max |<chi_i, chi_j> - delta_ij|).
inline double row_orthonormality_residual(const CharacterTable& t) {
  double worst = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) {
      const Complex ip = inner(t.characters[i], t.characters[j]);
      worst = std::max(worst, std::abs(ip - Complex(i == j ? 1.0 : 0.0)));
    }
  return worst;
}

/// Column orthogonality: sum_chi conj(chi(g_a)) chi(g_b) = delta_ab |G| / |C_a|.
inline double column_orthogonality_residual(const CharacterTable& t) {
  const std::size_t r = t.classes.count();
  const double n = static_cast<double>(t.group->order());
  double worst = 0;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      Complex s = 0;
      for (std::size_t c = 0; c < t.size(); ++c) s += std::conj(t.class_value(c, a)) * t.class_value(c, b);
      const double expect = a == b ? n / static_cast<double>(t.classes.class_size(a)) : 0.0;
      worst = std::max(worst, std::abs(s - expect));
    }
  return worst;
}

/// All irreducible characters of G (|G| <= 256). Retries with seed+1 when the
/// random combination is degenerate; fails after kCharacterTableRetries.
inline CharacterTable character_table(const GroupPtr& g, std::uint64_t seed = 1) {
  if (g->order() > kCharacterTableMaxOrder)
    throw CapExceeded("character tables are limited to order " + std::to_string(kCharacterTableMaxOrder));
  CharacterTable t;
  t.group = g;
  t.classes = conjugacy_classes(g);
  const auto lin = linear_characters(g);
  const std::size_t r = t.classes.count();

  for (int attempt = 0; attempt <= kCharacterTableRetries; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    auto raw = detail::burnside_attempt(*g, t.classes, s);
    if (!raw || raw->rows.size() != r) continue;

    std::size_t sum_sq = 0;
    for (auto d : raw->dims) sum_sq += d * d;
    if (sum_sq != g->order()) continue;

    // Linear rows are replaced by the exact characters, in Lin(G) order.
    std::vector<std::vector<Complex>> higher;
    std::vector<std::size_t> higher_dims;
    std::size_t linear_count = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (raw->dims[i] == 1) ++linear_count;
      else {
        higher.push_back(raw->rows[i]);
        higher_dims.push_back(raw->dims[i]);
      }
    }
    if (linear_count != lin.size()) continue;
    std::vector<std::size_t> order(higher.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (higher_dims[a] != higher_dims[b]) return higher_dims[a] < higher_dims[b];
      return detail::values_less(higher[a], higher[b]);
    });

    CharacterTable out = t;
    out.seed = s;
    out.linear = lin;
    for (const auto& c : lin) {
      out.characters.push_back(ClassFunction::of(c, g));
      out.dims.push_back(1);
    }
    for (std::size_t i : order) {
      ClassFunction f = ClassFunction::zero(g);
      for (Element x = 0; x < g->order(); ++x) f.values[x] = higher[i][t.classes.class_of[x]];
      out.characters.push_back(std::move(f));
      out.dims.push_back(higher_dims[i]);
    }
    if (row_orthonormality_residual(out) > 1e-8) continue;
    return out;
  }
  throw Error("character table: no non-degenerate class-matrix combination after " +
              std::to_string(kCharacterTableRetries) + " retries from seed " + std::to_string(seed));
}

/// Fourier coefficient of a class function at an irreducible gamma: f^(gamma) = mu I
/// with mu = E_x f(x) chi_gamma(x) / d_gamma.
struct FourierScalar {
  std::size_t gamma = 0;
  Complex mu;
};

inline FourierScalar fourier_scalar(const ClassFunction& f, const CharacterTable& t, std::size_t gamma,
                                    bool require_hermitian = false) {
  if (f.group != t.group) throw InputError("function and character table on different groups");
  if (require_hermitian && !f.is_hermitian()) throw InputError("function is not hermitian");
  Complex s = 0;
  const auto& chi = t.characters.at(gamma);
  for (std::size_t x = 0; x < f.size(); ++x) s += f.values[x] * chi.values[x];
  return {gamma, s / (static_cast<double>(f.size()) * static_cast<double>(t.dims[gamma]))};
}

inline std::vector<Complex> fourier_scalars(const ClassFunction& f, const CharacterTable& t) {
  std::vector<Complex> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = fourier_scalar(f, t, i).mu;
  return out;
}

// |<f,g> - sum_gamma d^2 conj(mu_f) mu_g|
inline double plancherel_check(const ClassFunction& f, const ClassFunction& g, const CharacterTable& t) {
  const Complex lhs = inner(f, g);
  Complex rhs = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double d = static_cast<double>(t.dims[i]);
    rhs += d * d * std::conj(fourier_scalar(f, t, i).mu) * fourier_scalar(g, t, i).mu;
  }
  return std::abs(lhs - rhs);
}

/// f^G(x) = P_G(H)^-1 E_y f(y x y^-1), f zero off H. Evaluated per G-class:
/// f^G(x) = |G| / (|H| |C(x)|) * sum_{h in H n C(x)} f(h).
inline ClassFunction induce_class_function(const GroupPtr& g, const EmbeddedGroup& h,
                                           const ClassFunction& f, const ConjugacyPartition& gclasses) {
  if (f.group != h.group) throw InputError("function is not defined on the subgroup");
  if (!f.is_class_function(conjugacy_classes(h.group), 1e-9))
    throw InputError("function is not constant on the subgroup's conjugacy classes");
  std::vector<Complex> per_class(gclasses.count(), 0);
  for (std::size_t i = 0; i < h.to_parent.size(); ++i) per_class[gclasses.class_of[h.to_parent[i]]] += f.values[i];
  ClassFunction out = ClassFunction::zero(g);
  const double ng = static_cast<double>(g->order()), nh = static_cast<double>(h.to_parent.size());
  for (Element x = 0; x < g->order(); ++x) {
    const std::size_t c = gclasses.class_of[x];
    out.values[x] = per_class[c] * ng / (nh * static_cast<double>(gclasses.class_size(c)));
  }
  return out;
}

inline ClassFunction restrict_to(const ClassFunction& f, const EmbeddedGroup& h) {
  ClassFunction out = ClassFunction::zero(h.group);
  for (std::size_t i = 0; i < h.to_parent.size(); ++i) out.values[i] = f.values[h.to_parent[i]];
  return out;
}

// |<f, g|_H>_H - <f^G, g>_G|
inline double frobenius_residual(const GroupPtr& g, const EmbeddedGroup& h, const ClassFunction& f,
                                 const ClassFunction& gfun, const ConjugacyPartition& gclasses) {
  const Complex lhs = inner(f, restrict_to(gfun, h));
  const Complex rhs = inner(induce_class_function(g, h, f, gclasses), gfun);
  return std::abs(lhs - rhs);
}

struct MonomialCertificate {
  std::size_t character = 0;
  std::size_t dim = 0;
  bool found = false;
  Subgroup subgroup;          // H with [G:H] = dim
  LinearCharacter lambda;     // on H's local indexing
  double residual = 0.0;      // sup |lambda^G - chi|
};

struct MonomialReport {
  bool monomial = true;
  std::vector<MonomialCertificate> certificates;
};

/// Exhaustive search: every irreducible chi of degree d must equal lambda^G for
/// some subgroup of index d and some linear lambda of it.
inline MonomialReport is_monomial(const GroupPtr& g, std::size_t cap = kDefaultSubgroupCap,
                                  const CharacterTable* table = nullptr) {
  if (g->order() > cap)
    throw CapExceeded("monomiality search limited to order " + std::to_string(cap) + "; pass a larger cap");
  CharacterTable own;
  if (!table) {
    own = character_table(g);
    table = &own;
  }
  const auto& t = *table;
  MonomialReport rep;

  std::vector<Subgroup> subgroups;
  bool need_subgroups = false;
  for (auto d : t.dims) need_subgroups = need_subgroups || d > 1;
  if (need_subgroups) subgroups = enumerate_subgroups(g, cap);

  struct Cached {
    EmbeddedGroup emb;
    std::vector<LinearCharacter> lin;
  };
  std::vector<std::optional<Cached>> cache(subgroups.size());

  for (std::size_t i = 0; i < t.size(); ++i) {
    MonomialCertificate c;
    c.character = i;
    c.dim = t.dims[i];
    if (c.dim == 1) {
      c.found = true;
      c.subgroup = {GroupSubset::full(g), 1};
      c.lambda = t.linear[i];
      rep.certificates.push_back(std::move(c));
      continue;
    }
    for (std::size_t s = 0; s < subgroups.size() && !c.found; ++s) {
      if (subgroups[s].index_in_parent != c.dim) continue;
      if (!cache[s]) {
        Cached entry;
        entry.emb = as_group(subgroups[s]);
        entry.lin = linear_characters(entry.emb.group);
        cache[s] = std::move(entry);
      }
      for (const auto& lam : cache[s]->lin) {
        const auto induced = induce_class_function(g, cache[s]->emb, ClassFunction::of(lam, cache[s]->emb.group), t.classes);
        const double res = induced.sup_distance(t.characters[i]);
        if (res < 1e-8) {
          c.found = true;
          c.subgroup = subgroups[s];
          c.lambda = lam;
          c.residual = res;
          break;
        }
      }
    }
    rep.monomial = rep.monomial && c.found;
    rep.certificates.push_back(std::move(c));
  }
  return rep;
}

struct HereditaryReport {
  bool hereditarily_monomial = true;
  std::size_t subgroups_checked = 0;
  std::optional<Subgroup> first_failure;
};

inline HereditaryReport is_hereditarily_monomial(const GroupPtr& g, std::size_t cap = kDefaultSubgroupCap) {
  HereditaryReport r;
  const auto subs = enumerate_subgroups(g, cap);
  for (const auto& h : subs) {
    ++r.subgroups_checked;
    const auto emb = as_group(h);
    if (!is_monomial(emb.group, cap).monomial) {
      r.hereditarily_monomial = false;
      r.first_failure = h;
      break;
    }
  }
  return r;
}

struct LinearityScanEntry {
  std::size_t gamma = 0;
  std::size_t dim = 0;
  double spec_rad = 0.0;    // |mu_{1_A}(gamma)|
  bool above_threshold = false;
};

struct LinearityScanReport {
  // hypotheses
  bool s_contains_identity = false;
  bool s_generates = false;
  bool a_symmetric = false;
  bool a_normal = false;
  std::optional<bool> monomial;   // unset when the group is past the monomiality cap
  Rational threshold{0};          // P_G(S.A)
  std::vector<LinearityScanEntry> entries;
  std::vector<std::size_t> violations;  // gammas above threshold with d > 1

  bool hypotheses_hold() const {
    return s_contains_identity && s_generates && a_symmetric && a_normal && monomial.value_or(false);
  }
};

/// For every irreducible gamma with 2 SpecRad(1_A^(gamma)) > P_G(S.A), record
/// whether gamma is one-dimensional.
inline LinearityScanReport high_value_linearity_check(const GroupSubset& s, const GroupSubset& a,
                                                      const CharacterTable& t) {
  s.require_same(a);
  const auto& g = a.group();
  LinearityScanReport r;
  r.s_contains_identity = s.contains(g->identity());
  r.s_generates = generate_subgroup(s).order() == g->order();
  const auto pred = set_predicates(a);
  r.a_symmetric = pred.symmetric;
  r.a_normal = pred.normal;
  if (g->order() <= kDefaultSubgroupCap) r.monomial = is_monomial(g, kDefaultSubgroupCap, &t).monomial;
  const auto sa = product_set(s, a);
  r.threshold = Rational(static_cast<std::int64_t>(sa.size()), static_cast<std::int64_t>(g->order()));
  const auto ind = ClassFunction::indicator(a);
  for (std::size_t i = 0; i < t.size(); ++i) {
    LinearityScanEntry e;
    e.gamma = i;
    e.dim = t.dims[i];
    e.spec_rad = std::abs(fourier_scalar(ind, t, i).mu);
    e.above_threshold = 2.0 * e.spec_rad > to_double(r.threshold) + 1e-12;
    if (e.above_threshold && e.dim > 1) r.violations.push_back(i);
    r.entries.push_back(e);
  }
  return r;
}

}  // namespace monoball
