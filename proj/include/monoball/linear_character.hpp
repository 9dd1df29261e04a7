#pragma once

#include "monoball/group.hpp"
#include "monoball/rational.hpp"
#include "monoball/structure.hpp"

#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

namespace monoball {

/// A homomorphism G -> S^1 stored as exact phases q(x) in [0,1), value
/// exp(2 pi i q(x)). Phases share one reduced denominator (the character's
/// order), so equality is structural.
class LinearCharacter {
 public:
  LinearCharacter() = default;

  static LinearCharacter trivial(std::size_t order) {
    LinearCharacter c;
    c.num_.assign(order, 0);
    return c;
  }

  static LinearCharacter from_phases(std::span<const Rational> phases) {
    std::uint64_t l = 1;
    for (const auto& q : phases) l = std::lcm(l, static_cast<std::uint64_t>(wrap_phase(q).denominator()));
    LinearCharacter c;
    c.den_ = l;
    c.num_.resize(phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i) {
      const Rational q = wrap_phase(phases[i]);
      c.num_[i] = static_cast<std::uint64_t>(q.numerator()) * (l / static_cast<std::uint64_t>(q.denominator()));
    }
    c.reduce();
    return c;
  }

  std::size_t size() const { return num_.size(); }
  std::uint64_t denominator() const { return den_; }

  Rational phase(Element x) const {
    return Rational(static_cast<std::int64_t>(num_[x]), static_cast<std::int64_t>(den_));
  }
  std::vector<Rational> phases() const {
    std::vector<Rational> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = phase(static_cast<Element>(i));
    return out;
  }

  std::complex<double> value(Element x) const {
    const long double t = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(num_[x]) /
                          static_cast<long double>(den_);
    return {static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t))};
  }

  // ||gamma(x)||: distance of the phase to the nearest integer.
  Rational circle_norm(Element x) const {
    const std::uint64_t n = num_[x];
    const std::uint64_t m = std::min(n, den_ - n);
    return Rational(static_cast<std::int64_t>(m), static_cast<std::int64_t>(den_));
  }

  bool is_trivial() const { return den_ == 1; }

  friend LinearCharacter operator+(const LinearCharacter& a, const LinearCharacter& b) {
    if (a.size() != b.size()) throw InputError("characters of different groups");
    const std::uint64_t l = std::lcm(a.den_, b.den_);
    const std::uint64_t fa = l / a.den_, fb = l / b.den_;
    LinearCharacter c;
    c.den_ = l;
    c.num_.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c.num_[i] = (a.num_[i] * fa + b.num_[i] * fb) % l;
    c.reduce();
    return c;
  }
  LinearCharacter operator-() const {
    LinearCharacter c = *this;
    for (auto& v : c.num_) v = v == 0 ? 0 : den_ - v;
    return c;
  }
  friend LinearCharacter operator-(const LinearCharacter& a, const LinearCharacter& b) { return a + (-b); }

  // r * gamma for an integer r (the r-th power of the character).
  LinearCharacter multiple(std::int64_t r) const {
    LinearCharacter c = *this;
    const auto d = static_cast<std::int64_t>(den_);
    const std::int64_t rr = ((r % d) + d) % d;
    for (auto& v : c.num_) v = (v * static_cast<std::uint64_t>(rr)) % den_;
    c.reduce();
    return c;
  }

  friend bool operator==(const LinearCharacter& a, const LinearCharacter& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }
  // Canonical order: lexicographic on the phase vectors.
  friend bool operator<(const LinearCharacter& a, const LinearCharacter& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto l = static_cast<unsigned __int128>(a.num_[i]) * b.den_;
      const auto r = static_cast<unsigned __int128>(b.num_[i]) * a.den_;
      if (l != r) return l < r;
    }
    return a.size() < b.size();
  }

 private:
  void reduce() {
    std::uint64_t gcd = den_;
    for (auto v : num_) gcd = std::gcd(gcd, v);
    if (gcd > 1) {
      den_ /= gcd;
      for (auto& v : num_) v /= gcd;
    }
  }

  std::uint64_t den_ = 1;
  std::vector<std::uint64_t> num_;
};

// q(xy) = q(x) + q(y) mod 1 for every pair, and q(1) = 0.
inline bool is_homomorphism(const FiniteGroup& g, const LinearCharacter& c) {
  if (c.size() != g.order()) return false;
  if (c.phase(g.identity()) != Rational(0)) return false;
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y)
      if (wrap_phase(c.phase(x) + c.phase(y)) != c.phase(g.mul(x, y))) return false;
  return true;
}

namespace detail {

// All characters of an abelian group, built by extending along a chain
// <g1> < <g1,g2> < ... : if m is least with g^m in the current subgroup H,
// chi extends to <H, g> in exactly m ways, phase(g) = (phase(g^m) + j) / m.
inline std::vector<std::vector<Rational>> abelian_characters(const FiniteGroup& q) {
  const std::size_t n = q.order();
  std::vector<char> in_h(n, 0);
  std::vector<Element> h_members{q.identity()};
  in_h[q.identity()] = 1;
  std::vector<std::vector<Rational>> chars{std::vector<Rational>(n, Rational(0))};

  for (Element g = 0; g < n; ++g) {
    if (in_h[g]) continue;
    std::size_t m = 1;
    Element gm = g;
    while (!in_h[gm]) {
      gm = q.mul(gm, g);
      ++m;
    }
    // New subgroup is the disjoint union of g^a H for a < m.
    std::vector<Element> new_members;
    std::vector<std::pair<std::size_t, Element>> decomposition(n, {0, 0});  // x -> (a, h)
    Element ga = q.identity();
    for (std::size_t a = 0; a < m; ++a) {
      for (Element h : h_members) {
        const Element x = q.mul(ga, h);
        new_members.push_back(x);
        decomposition[x] = {a, h};
      }
      ga = q.mul(ga, g);
    }
    std::vector<std::vector<Rational>> extended;
    for (const auto& chi : chars) {
      for (std::size_t j = 0; j < m; ++j) {
        const Rational pg = (chi[gm] + Rational(static_cast<std::int64_t>(j))) / Rational(static_cast<std::int64_t>(m));
        std::vector<Rational> ext(n, Rational(0));
        for (Element x : new_members) {
          const auto [a, h] = decomposition[x];
          ext[x] = wrap_phase(pg * Rational(static_cast<std::int64_t>(a)) + chi[h]);
        }
        extended.push_back(std::move(ext));
      }
    }
    chars = std::move(extended);
    h_members = std::move(new_members);
    for (Element x : h_members) in_h[x] = 1;
  }
  return chars;
}

}  // namespace detail

/// Lin(G), pulled back from the characters of G/[G,G]; sorted canonically, so
/// the trivial character comes first.
inline std::vector<LinearCharacter> linear_characters(const GroupPtr& g) {
  const Abelianization ab = abelianization(g);
  const auto quotient_chars = detail::abelian_characters(*ab.quotient);
  std::vector<LinearCharacter> out;
  out.reserve(quotient_chars.size());
  std::vector<Rational> phases(g->order());
  for (const auto& qc : quotient_chars) {
    for (Element x = 0; x < g->order(); ++x) phases[x] = qc[ab.projection[x]];
    out.push_back(LinearCharacter::from_phases(phases));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace monoball
