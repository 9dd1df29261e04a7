#pragma once

#include "monoball/pipeline.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace monoball {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Reading

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

namespace detail {

inline std::int64_t parse_int64(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data() + (!s.empty() && s.front() == '+'), end, v);
  if (res.ec != std::errc{} || res.ptr != end) throw InputError("not an integer in " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

inline std::size_t to_index(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw InputError(what + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline std::size_t field_index(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw InputError(what + " is missing \"" + key + "\"");
  return to_index(j.at(key), what + "." + key);
}

}  // namespace detail

/// "p/q", an integer or a finite decimal such as "0.0625", read exactly.
inline Rational parse_rational(std::string_view s) {
  const std::string_view what = "rational";
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = detail::parse_int64(s.substr(0, slash), what);
    const auto den = detail::parse_int64(s.substr(slash + 1), what);
    if (den == 0) throw InputError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const bool neg = !s.empty() && s.front() == '-';
    const std::string_view ip = s.substr(neg ? 1 : 0, dot - (neg ? 1 : 0));
    const std::string_view fp = s.substr(dot + 1);
    if (fp.size() > 17 || (ip.empty() && fp.empty())) throw InputError("cannot read '" + std::string(s) + "' exactly");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    const std::int64_t whole = ip.empty() ? 0 : detail::parse_int64(ip, what);
    const std::int64_t frac = fp.empty() ? 0 : detail::parse_int64(fp, what);
    if (frac < 0 || whole > (INT64_MAX - frac) / scale) throw InputError("cannot read '" + std::string(s) + "' exactly");
    const Rational q(whole * scale + frac, scale);
    return neg ? -q : q;
  }
  return Rational(detail::parse_int64(s, what));
}

/// Integer, "p/q" string or {"num": p, "den": q}. Floats are rejected.
inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    const auto den = j.at("den").get<std::int64_t>();
    if (den == 0) throw InputError("zero denominator");
    return Rational(j.at("num").get<std::int64_t>(), den);
  }
  throw InputError("expected an exact rational, got " + j.dump());
}

inline bool is_exact_number(const Json& j) {
  return j.is_number_integer() || j.is_string() || (j.is_object() && j.contains("num"));
}

inline GroupSpec group_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw InputError("group spec must be an object with a \"type\" string");
  const auto type = j.at("type").get<std::string>();
  if (type == "cyclic") return CyclicSpec{detail::field_index(j, "n", "cyclic")};
  if (type == "dihedral") return DihedralSpec{detail::field_index(j, "order", "dihedral")};
  if (type == "quaternion8") return Quaternion8Spec{};
  if (type == "heisenberg") return HeisenbergSpec{detail::field_index(j, "p", "heisenberg")};
  if (type == "product") {
    if (!j.contains("factors") || !j.at("factors").is_array()) throw InputError("product needs a \"factors\" array");
    std::vector<GroupSpec> parts;
    for (const auto& f : j.at("factors")) parts.push_back(group_spec_from_json(f));
    return product_spec(std::move(parts));
  }
  if (type == "permutation") {
    PermutationSpec p;
    p.degree = detail::field_index(j, "degree", "permutation");
    if (!j.contains("generators") || !j.at("generators").is_array())
      throw InputError("permutation needs a \"generators\" array");
    for (const auto& gen : j.at("generators")) {
      if (!gen.is_array()) throw InputError("each permutation generator must be an array of images");
      std::vector<std::size_t> images;
      for (const auto& v : gen) images.push_back(detail::to_index(v, "permutation image"));
      p.generators.push_back(std::move(images));
    }
    return p;
  }
  if (type == "table") {
    if (!j.contains("mul") || !j.at("mul").is_array()) throw InputError("table needs a \"mul\" array of rows");
    TableSpec t;
    for (const auto& row : j.at("mul")) {
      if (!row.is_array()) throw InputError("each table row must be an array");
      std::vector<Element> r;
      for (const auto& v : row) r.push_back(static_cast<Element>(detail::to_index(v, "table entry")));
      t.mul.push_back(std::move(r));
    }
    return t;
  }
  throw InputError("unknown group type \"" + type + "\"");
}

inline std::vector<Element> elements_from_json(const Json& j, const GroupPtr& g, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of element indices");
  std::vector<Element> out;
  for (const auto& v : j) {
    const auto x = detail::to_index(v, what + " entry");
    if (x >= g->order())
      throw InputError(what + " entry " + std::to_string(x) + " is outside a group of order " + std::to_string(g->order()));
    out.push_back(static_cast<Element>(x));
  }
  return out;
}

/// {"elements": [...]} or {"generators": [...], "symmetrize", "add_identity",
/// "conjugation_close"}; a bare array is read as "elements".
inline GroupSubset subset_from_json(const Json& j, const GroupPtr& g) {
  if (j.is_array()) return GroupSubset(g, elements_from_json(j, g, "set"));
  if (!j.is_object()) throw InputError("set spec must be an object or an array");
  if (j.contains("elements")) return GroupSubset(g, elements_from_json(j.at("elements"), g, "elements"));
  if (!j.contains("generators")) throw InputError("set spec needs \"elements\" or \"generators\"");
  const GroupSubset s(g, elements_from_json(j.at("generators"), g, "generators"));
  NormalizeOptions opt;
  opt.symmetrize = j.value("symmetrize", false);
  opt.add_identity = j.value("add_identity", false);
  opt.conjugation_close = j.value("conjugation_close", false);
  return normalize_set(s, opt);
}

/// Each entry is "lin[i]" (an index into linear_characters) or a phase vector.
inline CharSet charset_from_json(const Json& j, const GroupPtr& g, const std::vector<LinearCharacter>& lin) {
  const Json& list = j.is_object() && j.contains("characters") ? j.at("characters") : j;
  if (!list.is_array()) throw InputError("character set must be an array");
  std::vector<LinearCharacter> chars;
  for (const auto& e : list) {
    if (e.is_string()) {
      const auto s = e.get<std::string>();
      if (s.size() < 6 || s.rfind("lin[", 0) != 0 || s.back() != ']')
        throw InputError("character reference must look like lin[i], got '" + s + "'");
      const auto i = detail::parse_int64(std::string_view(s).substr(4, s.size() - 5), "lin index");
      if (i < 0 || static_cast<std::size_t>(i) >= lin.size())
        throw InputError(s + " is out of range: the group has " + std::to_string(lin.size()) + " linear characters");
      chars.push_back(lin[static_cast<std::size_t>(i)]);
    } else if (e.is_array()) {
      if (e.size() != g->order())
        throw InputError("phase vector has " + std::to_string(e.size()) + " entries for a group of order " +
                         std::to_string(g->order()));
      std::vector<Rational> ph;
      for (const auto& q : e) ph.push_back(rational_from_json(q));
      auto c = LinearCharacter::from_phases(ph);
      if (!is_homomorphism(*g, c)) throw InputError("phase vector is not a homomorphism to the circle");
      chars.push_back(std::move(c));
    } else {
      throw InputError("character entry must be \"lin[i]\" or a phase vector");
    }
  }
  return CharSet(g, std::move(chars));
}

using AnyNorm = std::variant<RationalNorm, RealNorm>;

/// Array of per-element values; all exact entries give a rational norm, any
/// float makes it a real one.
inline AnyNorm norm_from_json(const Json& j, const GroupPtr& g) {
  const Json& v = j.is_object() && j.contains("values") ? j.at("values") : j;
  if (!v.is_array()) throw InputError("norm must be an array of values");
  if (v.size() != g->order())
    throw InputError("norm has " + std::to_string(v.size()) + " values for a group of order " + std::to_string(g->order()));
  bool exact = true;
  for (const auto& e : v) exact = exact && is_exact_number(e);
  if (exact) {
    RationalNorm n{g, {}};
    for (const auto& e : v) n.values.push_back(rational_from_json(e));
    return n;
  }
  RealNorm n{g, {}};
  for (const auto& e : v) {
    if (e.is_number()) n.values.push_back(e.get<double>());
    else n.values.push_back(to_double(rational_from_json(e)));
  }
  return n;
}

// ---------------------------------------------------------------------------
// Writing

/// Rounded to 12 significant digits; non-finite values become null.
inline Json real(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}
inline Json real(long double v) { return real(static_cast<double>(v)); }

inline Json rational(const Rational& q) { return to_string(q); }

inline Json elements(const GroupSubset& s) { return s.members(); }

template <class T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

inline Json ledger_json(const HypothesisLedger& h) {
  Json a = Json::array();
  for (const auto& e : h.entries())
    a.push_back({{"stage", e.stage}, {"hypothesis", e.hypothesis}, {"status", to_string(e.status)}, {"witness", e.witness}});
  return a;
}

/// Writes character sets as "lin[i]" references into linear_characters(G).
class JsonContext {
 public:
  explicit JsonContext(GroupPtr g) : group_(std::move(g)) {}

  const GroupPtr& group() const { return group_; }
  const std::vector<LinearCharacter>& lin() const {
    if (!lin_) {
      lin_ = linear_characters(group_);
      for (std::size_t i = 0; i < lin_->size(); ++i) index_[(*lin_)[i]] = i;
    }
    return *lin_;
  }

  Json character(const LinearCharacter& c) const {
    lin();
    if (c.size() == group_->order())
      if (auto it = index_.find(c); it != index_.end()) return "lin[" + std::to_string(it->second) + "]";
    return phases(c);
  }
  Json chars(const CharSet& s) const {
    Json a = Json::array();
    for (const auto& c : s) a.push_back(character(c));
    return a;
  }
  static Json phases(const LinearCharacter& c) {
    Json a = Json::array();
    for (const auto& q : c.phases()) a.push_back(rational(q));
    return a;
  }

 private:
  GroupPtr group_;
  mutable std::optional<std::vector<LinearCharacter>> lin_;
  mutable std::map<LinearCharacter, std::size_t> index_;
};

inline Json predicates_json(const SetPredicates& p) {
  return {{"symmetric", p.symmetric},
          {"symmetric_witness", optional_json(p.symmetric_witness)},
          {"contains_identity", p.contains_identity},
          {"normal", p.normal},
          {"normal_witness", optional_json(p.normal_witness)},
          {"union_of_classes", p.union_of_classes},
          {"class_witness", optional_json(p.class_witness)},
          {"doubling", rational(p.doubling)},
          {"tripling", rational(p.tripling)}};
}

inline Json growth_json(const GrowthProfile& p) {
  return {{"set_size", p.base_size},
          {"n_max", p.sizes.size()},
          {"sizes", p.sizes},
          {"saturated_at", optional_json(p.saturated_at)},
          {"fitted_d", real(p.fitted_d)},
          {"witness_n", p.witness_n}};
}

inline Json character_table_json(const CharacterTable& t) {
  Json classes = Json::array();
  for (std::size_t c = 0; c < t.classes.count(); ++c)
    classes.push_back({{"representative", t.classes.representatives[c]},
                       {"label", t.group->label(t.classes.representatives[c])},
                       {"size", t.classes.class_size(c)}});
  Json chars = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    Json values = Json::array();
    for (std::size_t c = 0; c < t.classes.count(); ++c) {
      const auto v = t.class_value(i, c);
      values.push_back({{"re", real(v.real())}, {"im", real(v.imag())}});
    }
    chars.push_back({{"index", i}, {"dim", t.dims[i]}, {"linear", i < t.num_linear()}, {"values", values}});
  }
  return {{"seed", t.seed},
          {"class_count", t.classes.count()},
          {"classes", classes},
          {"characters", chars},
          {"row_residual", real(row_orthonormality_residual(t))},
          {"column_residual", real(column_orthogonality_residual(t))}};
}

inline Json subgroup_json(const Subgroup& h) {
  return {{"order", h.order()}, {"index", h.index_in_parent}, {"elements", elements(h.elements)}};
}

inline Json monomial_json(const MonomialReport& m) {
  Json certs = Json::array();
  for (const auto& c : m.certificates) {
    Json e = {{"character", c.character}, {"dim", c.dim}, {"found", c.found}};
    if (c.found) {
      e["subgroup"] = subgroup_json(c.subgroup);
      e["lambda"] = JsonContext::phases(c.lambda);
      e["residual"] = real(c.residual);
    }
    certs.push_back(std::move(e));
  }
  return {{"monomial", m.monomial}, {"certificates", certs}};
}

inline Json hereditary_json(const HereditaryReport& h) {
  return {{"hereditarily_monomial", h.hereditarily_monomial},
          {"subgroups_checked", h.subgroups_checked},
          {"first_failure", h.first_failure ? subgroup_json(*h.first_failure) : Json(nullptr)}};
}

inline Json linearity_scan_json(const LinearityScanReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"gamma", e.gamma}, {"dim", e.dim}, {"spec_rad", real(e.spec_rad)}, {"above_threshold", e.above_threshold}});
  return {{"s_contains_identity", r.s_contains_identity},
          {"s_generates", r.s_generates},
          {"a_symmetric", r.a_symmetric},
          {"a_normal", r.a_normal},
          {"monomial", optional_json(r.monomial)},
          {"threshold", rational(r.threshold)},
          {"entries", entries},
          {"violations", r.violations}};
}

inline Json contraction_json(const ContractionReport& r) {
  return {{"identity_in_lambda", r.identity_in_lambda},
          {"radius_ok", r.radius_ok},
          {"lhs_size", r.lhs_size},
          {"rhs_size", r.rhs_size},
          {"rhs_in_lhs", r.rhs_in_lhs},
          {"lhs_in_rhs", r.lhs_in_rhs},
          {"equal", r.equal}};
}

inline Json bohr_growth_json(const BohrGrowthReport& r, const JsonContext& ctx) {
  Json witness = nullptr;
  if (r.sum_witness) witness = Json::array({ctx.character(r.sum_witness->first), ctx.character(r.sum_witness->second)});
  return {{"gamma_symmetric", r.gamma_symmetric},
          {"gamma_has_identity", r.gamma_has_identity},
          {"delta_in_range", r.delta_in_range},
          {"sum_hypothesis", r.sum_hypothesis},
          {"sum_witness", witness},
          {"contraction_radius_ok", r.contraction_radius_ok},
          {"span_size", r.span_size},
          {"big", r.big},
          {"small", r.small},
          {"ratio", rational(r.ratio)},
          {"bound", r.bound.str()},
          {"t_size", r.t_size},
          {"covering_ok", r.covering_ok},
          {"triangle_ok", r.triangle_ok},
          {"sumset_ok", r.sumset_ok},
          {"contraction_ok", r.contraction_ok},
          {"final_cover_ok", r.final_cover_ok},
          {"ratio_within_bound", r.ratio_within_bound}};
}

inline Json norm_value(const Rational& v) { return rational(v); }
inline Json norm_value(double v) { return real(v); }

template <class T>
Json optional_norm_value(const std::optional<T>& v) {
  return v ? norm_value(*v) : Json(nullptr);
}

template <class T>
Json optional_pair(const std::optional<std::pair<T, T>>& p) {
  if (!p) return nullptr;
  return Json::array({norm_value(p->first), norm_value(p->second)});
}

inline Json optional_element_pair(const std::optional<std::pair<Element, Element>>& p) {
  if (!p) return nullptr;
  return Json::array({p->first, p->second});
}

template <class T>
Json norm_validation_json(const NormValidation<T>& v) {
  return {{"valid", v.valid()},
          {"nonnegative", v.nonnegative},
          {"identity_zero", v.identity_zero},
          {"symmetric", v.symmetric},
          {"conjugation_invariant", v.conjugation_invariant},
          {"subadditive", v.subadditive},
          {"negative_witness", optional_json(v.negative_witness)},
          {"symmetry_witness", optional_json(v.symmetry_witness)},
          {"conjugation_witness", optional_element_pair(v.conjugation_witness)},
          {"subadditivity_witness", optional_element_pair(v.subadditivity_witness)}};
}

template <class T>
Json ball_axioms_json(const BallAxiomsReport<T>& r) {
  return {{"holds", r.holds()},
          {"radii", r.radii},
          {"pairs_checked", r.pairs_checked},
          {"symmetric_neighbourhood", r.symmetric_neighbourhood},
          {"nesting", r.nesting},
          {"subadditivity", r.subadditivity},
          {"normality", r.normality},
          {"symmetric_witness", optional_norm_value(r.symmetric_witness)},
          {"nesting_witness", optional_pair(r.nesting_witness)},
          {"subadditivity_witness", optional_pair(r.subadditivity_witness)},
          {"normality_witness", optional_norm_value(r.normality_witness)}};
}

template <class T>
Json ball_dimension_json(const BallDimension<T>& d) {
  return {{"d", real(d.d)}, {"max_ratio", rational(d.max_ratio)}, {"witness", norm_value(d.witness)}, {"candidates", d.candidates}};
}

inline Json bourgain_json(const BourgainRadius& b) {
  Json grid = Json::array(), ratios = Json::array();
  for (double e : b.eta_grid) grid.push_back(real(e));
  for (double r : b.ratios) ratios.push_back(real(r));
  return {{"lambda", real(b.lambda)}, {"margin", real(b.margin)}, {"candidates_tried", b.candidates_tried},
          {"eta_grid", grid}, {"ratios", ratios}};
}

inline Json large_spectrum_json(const LargeSpectrum& s, const JsonContext& ctx) {
  Json members = Json::array();
  for (std::size_t i = 0; i < s.members.size(); ++i)
    members.push_back({{"character", ctx.character(s.members[i])}, {"abs_hat", real(s.values[i])}});
  return {{"eps", rational(s.eps)}, {"threshold", real(s.threshold)}, {"size", s.members.size()}, {"members", members}};
}

inline Json spectrum_size_json(const SpectrumSizeReport& r) {
  return {{"verdict", to_string(r.verdict)},
          {"hypotheses", ledger_json(r.hypotheses)},
          {"eps", rational(r.eps)},
          {"d", real(r.d)},
          {"k", r.k},
          {"k_min", r.k_min},
          {"lspec_size", r.lspec_size},
          {"bohr_size", r.bohr_size},
          {"lhs", real(r.lhs)},
          {"rhs", real(r.rhs)},
          {"holds", r.holds}};
}

inline Json energy_json(const EnergyReport& r) {
  return {{"verdict", to_string(r.verdict)},
          {"hypotheses", ledger_json(r.hypotheses)},
          {"eta", rational(r.eta)},
          {"k", r.k},
          {"a_size", r.a_size},
          {"ak_size", r.ak_size},
          {"group_order", r.group_order},
          {"lspec_size", r.lspec_size},
          {"lspec_sum", real(r.lspec_sum)},
          {"half_total", real(r.half_total)},
          {"rhs", real(r.rhs)},
          {"first_slack", real(r.lspec_sum - r.half_total)},
          {"second_slack", real(r.half_total - r.rhs)},
          {"large_values_linear", r.large_values_linear},
          {"parseval_residual", real(r.parseval_residual)},
          {"first_holds", r.first_holds},
          {"second_holds", r.second_holds}};
}

inline Json doubling_json(const DoublingReport& r, const JsonContext& ctx) {
  return {{"verdict", to_string(r.verdict)},
          {"hypotheses", ledger_json(r.hypotheses)},
          {"eps", rational(r.eps)},
          {"d", real(r.d)},
          {"window", {{"lo", r.window_lo}, {"hi", r.window_hi}, {"checked_to", r.window_checked_to}}},
          {"branch", r.branch == DoublingBranch::cover ? "cover" : "small"},
          {"r", r.r},
          {"lspec_big", r.lspec_big},
          {"lspec_quarter", r.lspec_quarter},
          {"premise_inclusion", r.premise_inclusion},
          {"x", ctx.chars(r.x)},
          {"lspec_size", r.lspec_size},
          {"x_in_lspec2", r.x_in_lspec2},
          {"covering", r.covering},
          {"covering_brute", r.covering_brute},
          {"x_within_r", r.x_within_r}};
}

inline Json covering_json(const CoveringCertificate& c) {
  return {{"valid", c.valid()},
          {"cover", elements(c.cover)},
          {"cover_size", c.cover.size()},
          {"quadruple_size", c.quadruple.size()},
          {"difference_size", c.difference.size()},
          {"subset_ok", c.subset_ok},
          {"separation_ok", c.separation_ok},
          {"inclusion_ok", c.inclusion_ok},
          {"size_bound_ok", c.size_bound_ok},
          {"verified_range", c.verified_range}};
}

inline Json appendix_json(const AppendixReport& r) {
  Json inclusion = Json::array();
  for (bool b : r.inclusion) inclusion.push_back(b);
  return {{"tripling", rational(r.tripling)},
          {"quadruple_ratio", rational(r.quadruple_ratio)},
          {"quadruple_exponent", real(r.quadruple_exponent)},
          {"certificate", covering_json(r.certificate)},
          {"cover_power_sizes", r.cover_power_sizes},
          {"measured", r.measured},
          {"difference_powers", r.difference_powers},
          {"implied_bound", r.implied_bound},
          {"inclusion", inclusion},
          {"all_inclusions", r.all_inclusions},
          {"bound_respected", r.bound_respected}};
}

inline Json annihilator_json(const AnnihilatorReport& r) {
  return {{"k", rational(r.k)},
          {"eps", rational(r.eps)},
          {"lspec_size", r.lspec_size},
          {"difference_size", r.difference_size},
          {"ball_size", r.ball_size},
          {"contained", r.contained},
          {"witness", optional_json(r.witness)}};
}

inline Json pipeline_json(const PipelineReport& r, const JsonContext& ctx) {
  const auto& c = r.config;
  return {{"verdict", to_string(r.verdict)},
          {"config",
           {{"constant_c", real(c.constant_c)},
            {"n_max", c.n_max},
            {"epsilon_override", c.epsilon_override ? rational(*c.epsilon_override) : Json(nullptr)},
            {"dimension_estimate_d", c.dimension_estimate_d ? real(*c.dimension_estimate_d) : Json(nullptr)},
            {"seed", c.seed},
            {"subgroup_cap", c.subgroup_cap}}},
          {"parent_order", r.parent_order},
          {"generated_order", r.generated_order},
          {"a_size", r.a_size},
          {"growth", r.growth},
          {"d_fitted", real(r.d_fitted)},
          {"d", real(r.d)},
          {"l", r.l},
          {"k_l", rational(r.k_l)},
          {"al_size", r.al_size},
          {"d_prime_fitted", real(r.d_prime_fitted)},
          {"d_prime", real(r.d_prime)},
          {"eps", rational(r.eps)},
          {"eps_formula", real(r.eps_formula)},
          {"lspec_eps", r.lspec_eps},
          {"lspec_2eps", r.lspec_2eps},
          {"branch", r.doubling.branch == DoublingBranch::cover ? "cover" : "small"},
          {"x", ctx.chars(r.x)},
          {"x_size", r.x.size()},
          {"ball", r.ball},
          {"ball_size", r.ball_size},
          {"difference_size", r.difference_size},
          {"containment",
           {{"frequencies_in_lspec2", r.frequencies_in_lspec2},
            {"diff_in_8eps", r.diff_in_8eps},
            {"eps8_in_16th", r.eps8_in_16th},
            {"sixteenth_in_ball", r.sixteenth_in_ball},
            {"diff_in_ball", r.diff_in_ball}}},
          {"annihilator", annihilator_json(r.annihilator)},
          {"ball_dimension", ball_dimension_json(r.ball_dim)},
          {"size_ratio", rational(r.size_ratio)},
          {"measured",
           {{"dim_b", real(r.ball_dim.d)},
            {"d_log3_2d", real(r.d_log3)},
            {"log_size_ratio", real(r.log_size_ratio)},
            {"d_log_2d", real(r.d_log)}}},
          {"doubling", doubling_json(r.doubling, ctx)},
          {"size_check", spectrum_size_json(r.size_check)},
          {"hypotheses", ledger_json(r.hypotheses)}};
}

}  // namespace monoball
