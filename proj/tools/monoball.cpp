#include "monoball/monoball.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace monoball;

namespace {

struct Options {
  std::string group, set, sset, gamma, xset, norm, out;
  std::string format = "json";
  std::optional<std::string> eps, delta;
  std::optional<std::size_t> k;
  std::optional<double> d;
  std::size_t nmax = 16;
  std::uint64_t seed = 1;
  double constant_c = 1.0;
  std::size_t cap = kDefaultSubgroupCap;
  bool hereditary = false;
};

struct Outcome {
  Verdict verdict = Verdict::pass;
  Json report;
  std::string summary;
};

struct Inputs {
  Json group_json;
  GroupPtr group;
};

// A path to an existing file, or the JSON text itself.
Json load_arg(const std::string& arg, const std::string& flag) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    if (!in) throw InputError(flag + ": cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), arg);
  }
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
    return parse_json_text(arg, flag);
  throw InputError(flag + ": no such file '" + arg + "'");
}

Rational need_rational(const std::optional<std::string>& v, const std::string& flag) {
  if (!v) throw InputError(flag + " is required for this command");
  return parse_rational(*v);
}

GroupSubset need_set(const Options& o, const GroupPtr& g) {
  if (o.set.empty()) throw InputError("--set is required for this command");
  return subset_from_json(load_arg(o.set, "--set"), g);
}

GroupSubset s_set(const Options& o, const GroupSubset& a) {
  if (o.sset.empty()) return a;
  return subset_from_json(load_arg(o.sset, "--sset"), a.group());
}

CharSet need_chars(const std::string& arg, const std::string& flag, const JsonContext& ctx) {
  if (arg.empty()) throw InputError(flag + " is required for this command");
  return charset_from_json(load_arg(arg, flag), ctx.group(), ctx.lin());
}

std::optional<CharacterTable> table_if_small(const GroupPtr& g, std::uint64_t seed) {
  if (g->order() > kCharacterTableMaxOrder) return std::nullopt;
  return character_table(g, seed);
}

double dimension_or_fitted(const Options& o, const GroupSubset& a) {
  if (o.d) return *o.d;
  return std::max(1.0, growth_profile(a, std::max<std::size_t>(o.nmax, 2)).fitted_d);
}

std::string fmt(double v) { return real(v).dump(); }

// ratio <= 4^n, i.e. log2 ratio <= 2n, exactly.
bool within_four_power(const Rational& ratio, std::size_t n) {
  using boost::multiprecision::cpp_int;
  return cpp_int(ratio.numerator()) <= boost::multiprecision::pow(cpp_int(4), static_cast<unsigned>(n)) * ratio.denominator();
}

// ---------------------------------------------------------------------------

Outcome cmd_group_info(const Options& o, const Inputs& in) {
  const auto& g = in.group;
  const auto cls = conjugacy_classes(g);
  const auto ab = abelianization(g);
  Json classes = Json::array();
  for (std::size_t c = 0; c < cls.count(); ++c)
    classes.push_back({{"representative", cls.representatives[c]},
                       {"label", g->label(cls.representatives[c])},
                       {"size", cls.class_size(c)}});
  Json labels = Json::array();
  for (Element x = 0; x < g->order(); ++x) labels.push_back(g->label(x));
  Json r = {{"order", g->order()},
            {"abelian", g->is_abelian()},
            {"identity", g->identity()},
            {"labels", labels},
            {"class_count", cls.count()},
            {"classes", classes},
            {"commutator_order", ab.commutator.order()},
            {"abelianization_order", ab.quotient->order()},
            {"linear_characters", ab.quotient->order()},
            {"subgroups", g->order() <= o.cap ? Json(enumerate_subgroups(g, o.cap).size()) : Json(nullptr)}};
  if (!o.set.empty()) {
    const auto a = need_set(o, g);
    r["set"] = {{"elements", elements(a)}, {"size", a.size()}, {"predicates", predicates_json(set_predicates(a))}};
  }
  return {Verdict::pass, r,
          "order " + std::to_string(g->order()) + ", " + std::to_string(cls.count()) + " classes, |Lin| = " +
              std::to_string(ab.quotient->order())};
}

Outcome cmd_growth(const Options& o, const Inputs& in) {
  const auto a = need_set(o, in.group);
  const auto p = growth_profile(a, o.nmax);
  Json r = growth_json(p);
  r["predicates"] = predicates_json(set_predicates(a));
  return {Verdict::pass, r,
          "|A| = " + std::to_string(a.size()) + ", |A^" + std::to_string(o.nmax) + "| = " + std::to_string(p.sizes.back()) +
              ", fitted d = " + fmt(p.fitted_d)};
}

Outcome cmd_chartable(const Options& o, const Inputs& in) {
  const auto t = character_table(in.group, o.seed);
  Json r = character_table_json(t);
  const bool ok = row_orthonormality_residual(t) < 1e-8 && column_orthogonality_residual(t) < 1e-8;
  return {ok ? Verdict::pass : Verdict::falsified, r,
          std::to_string(t.size()) + " irreducible characters, " + std::to_string(t.num_linear()) + " linear"};
}

Outcome cmd_monomial(const Options& o, const Inputs& in) {
  const auto& g = in.group;
  const auto t = character_table(g, o.seed);
  const auto m = is_monomial(g, o.cap, &t);
  Json r = monomial_json(m);
  std::string summary = m.monomial ? "monomial" : "not monomial";
  if (o.hereditary) {
    const auto h = is_hereditarily_monomial(g, o.cap);
    r["hereditary"] = hereditary_json(h);
    summary += h.hereditarily_monomial ? ", hereditarily" : ", not hereditarily";
  }
  Verdict v = Verdict::pass;
  if (!o.set.empty()) {
    const auto a = need_set(o, g);
    const auto scan = high_value_linearity_check(s_set(o, a), a, t);
    r["linearity_scan"] = linearity_scan_json(scan);
    HypothesisLedger h;
    h.add("linearity-scan", "S contains the identity", scan.s_contains_identity);
    h.add("linearity-scan", "S generates G", scan.s_generates);
    h.add("linearity-scan", "A is symmetric", scan.a_symmetric);
    h.add("linearity-scan", "A is normal", scan.a_normal);
    if (scan.monomial) h.add("linearity-scan", "G is monomial", *scan.monomial);
    else h.add("linearity-scan", "G is monomial", HypothesisStatus::unchecked);
    r["hypotheses"] = ledger_json(h);
    v = verdict_of(h, scan.violations.empty());
    summary += ", " + std::to_string(scan.violations.size()) + " high-value non-linear characters";
  }
  return {v, r, summary};
}

Outcome cmd_bohr(const Options& o, const Inputs& in) {
  const JsonContext ctx(in.group);
  const auto gamma = need_chars(o.gamma, "--gamma", ctx);
  const Rational delta = need_rational(o.delta, "--delta");
  const auto b = linbohr(gamma, delta);
  const auto dim = ball_dimension(bohr_norm(gamma), delta);
  HypothesisLedger h;
  bool ok = true;
  Json r = {{"gamma", ctx.chars(gamma)},
            {"delta", rational(delta)},
            {"ball", elements(b)},
            {"ball_size", b.size()},
            {"ball_dimension", ball_dimension_json(dim)},
            {"dimension_bound", 2 * gamma.size()},
            {"dimension_within_bound", within_four_power(dim.max_ratio, gamma.size())}};
  ok = ok && within_four_power(dim.max_ratio, gamma.size());
  std::string summary = "|LinBohr| = " + std::to_string(b.size()) + ", dim = " + fmt(dim.d);
  if (o.k) {
    const auto c = bohr_contraction_check(gamma, *o.k, delta);
    h.add("bohr-contraction", "trivial character in Lambda", c.identity_in_lambda);
    h.add("bohr-contraction", "k delta < 1/3", c.radius_ok);
    r["contraction"] = contraction_json(c);
    ok = ok && c.equal;
    summary += c.equal ? ", contraction equal" : ", contraction differs";
  }
  if (!o.xset.empty()) {
    const auto x = need_chars(o.xset, "--xset", ctx);
    const auto g = bohr_growth_check(gamma, x, delta);
    h.add("bohr-growth", "Gamma symmetric", g.gamma_symmetric);
    h.add("bohr-growth", "trivial character in Gamma", g.gamma_has_identity);
    h.add("bohr-growth", "0 < delta <= 1/16", g.delta_in_range);
    h.add("bohr-growth", "Gamma + Gamma in Span(X) + Gamma", g.sum_hypothesis);
    r["growth"] = bohr_growth_json(g, ctx);
    ok = ok && g.chain_holds() && g.ratio_within_bound;
    summary += ", growth ratio " + to_string(g.ratio) + (g.chain_holds() ? "" : ", proof chain fails");
  }
  r["hypotheses"] = ledger_json(h);
  return {verdict_of(h, ok), r, summary};
}

Outcome cmd_lspec(const Options& o, const Inputs& in) {
  const JsonContext ctx(in.group);
  const auto a = need_set(o, in.group);
  const Rational eps = need_rational(o.eps, "--eps");
  const auto s = s_set(o, a);
  const double d = dimension_or_fitted(o, a);
  const FourierProfile profile(a);
  const auto ls = large_spectrum(profile, eps);
  const auto t = table_if_small(in.group, o.seed);
  const auto size = lspec_size_check(s, a, eps, o.k.value_or(0), d, t ? &*t : nullptr, &profile);
  Json r = {{"spectrum", large_spectrum_json(ls, ctx)}, {"size_check", spectrum_size_json(size)}};
  return {size.verdict, r,
          "|LSpec| = " + std::to_string(ls.members.size()) + ", |LinBohr(LSpec, 1/2pi)| = " + std::to_string(size.bohr_size)};
}

template <class T>
Outcome metric_report(const PseudoMetricNorm<T>& rho, const T& delta, const Options& o, const std::string& source,
                      std::optional<std::size_t> bohr_frequencies) {
  const auto v = validate_norm(rho);
  HypothesisLedger h;
  h.add("metric", "rho is a bi-invariant pseudo-metric", v.valid());
  const auto axioms = ball_axioms_check(rho);
  const auto dim = ball_dimension(rho, delta);
  Json r = {{"source", source},
            {"delta", norm_value(delta)},
            {"validation", norm_validation_json(v)},
            {"ball_axioms", ball_axioms_json(axioms)},
            {"ball_dimension", ball_dimension_json(dim)}};
  bool ok = axioms.holds();
  if (bohr_frequencies) {
    const bool within = within_four_power(dim.max_ratio, *bohr_frequencies);
    r["dimension_bound"] = 2 * *bohr_frequencies;
    r["dimension_within_bound"] = within;
    ok = ok && within;
  }
  if (o.d) {
    try {
      r["bourgain"] = bourgain_json(bourgain_radius(rho, delta, *o.d));
    } catch (const FalsifiedError& e) {
      r["bourgain"] = {{"error", e.what()}};
      ok = false;
    }
  }
  r["hypotheses"] = ledger_json(h);
  return {verdict_of(h, ok), r, source + " norm, dim = " + fmt(dim.d) + (axioms.holds() ? ", axioms hold" : ", axioms fail")};
}

Outcome cmd_metric_dim(const Options& o, const Inputs& in) {
  const auto& g = in.group;
  const Rational delta = need_rational(o.delta, "--delta");
  if (!o.norm.empty()) {
    const auto n = norm_from_json(load_arg(o.norm, "--norm"), g);
    if (const auto* q = std::get_if<RationalNorm>(&n)) return metric_report(*q, delta, o, "imported", std::nullopt);
    return metric_report(std::get<RealNorm>(n), to_double(delta), o, "imported", std::nullopt);
  }
  if (!o.gamma.empty()) {
    const JsonContext ctx(g);
    const auto gamma = need_chars(o.gamma, "--gamma", ctx);
    return metric_report(bohr_norm(gamma), delta, o, "bohr", gamma.size());
  }
  if (!o.set.empty()) return metric_report(word_norm(need_set(o, g)), delta, o, "word", std::nullopt);
  return metric_report(zero_norm(g), delta, o, "zero", std::nullopt);
}

Outcome cmd_energy(const Options& o, const Inputs& in) {
  const auto a = need_set(o, in.group);
  const Rational eta = need_rational(o.eps, "--eps");
  if (!o.k) throw InputError("--k is required for this command");
  const auto t = character_table(in.group, o.seed);
  const auto r = spectral_energy_check(s_set(o, a), a, eta, *o.k, t);
  return {r.verdict, energy_json(r),
          std::string("first ") + (r.first_holds ? "holds" : "fails") + ", second " + (r.second_holds ? "holds" : "fails")};
}

Outcome cmd_cover(const Options& o, const Inputs& in) {
  const JsonContext ctx(in.group);
  const auto a = need_set(o, in.group);
  const Rational eps = need_rational(o.eps, "--eps");
  const double d = dimension_or_fitted(o, a);
  const FourierProfile profile(a);
  const auto t = table_if_small(in.group, o.seed);
  const auto r = lspec_doubling_cover(s_set(o, a), a, eps, d, t ? &*t : nullptr, &profile);
  Json j = doubling_json(r, ctx);
  j["spectrum"] = large_spectrum_json(large_spectrum(profile, eps), ctx);
  return {r.verdict, j,
          std::string(r.branch == DoublingBranch::cover ? "cover" : "small") + " branch, |X| = " + std::to_string(r.x.size()) +
              ", |LSpec| = " + std::to_string(r.lspec_size)};
}

Outcome cmd_freiman(const Options& o, const Inputs& in) {
  const JsonContext ctx(in.group);
  const auto a = need_set(o, in.group);
  PipelineConfig cfg;
  cfg.constant_c = o.constant_c;
  cfg.n_max = o.nmax;
  if (o.eps) cfg.epsilon_override = parse_rational(*o.eps);
  cfg.dimension_estimate_d = o.d;
  cfg.seed = o.seed;
  cfg.subgroup_cap = o.cap;
  const auto r = freiman_ball(a, cfg);
  return {r.verdict, pipeline_json(r, ctx),
          "l = " + std::to_string(r.l) + ", eps = " + to_string(r.eps) + ", |X| = " + std::to_string(r.x.size()) +
              ", |B| = " + std::to_string(r.ball_size) + ", dim(B) = " + fmt(r.ball_dim.d) +
              ", P(B)/P(A) = " + to_string(r.size_ratio)};
}

Outcome cmd_appendix(const Options& o, const Inputs& in) {
  const auto a = need_set(o, in.group);
  const auto r = appendix_growth_check(a, o.nmax);
  const bool ok = r.certificate.valid() && r.all_inclusions && r.bound_respected;
  Json j = appendix_json(r);
  j["hypotheses"] = Json::array();
  return {ok ? Verdict::pass : Verdict::falsified, j,
          "tripling " + to_string(r.tripling) + ", |X| = " + std::to_string(r.certificate.cover.size()) +
              (ok ? ", certificate valid" : ", certificate invalid")};
}

// ---------------------------------------------------------------------------

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void flatten(const Json& v, const std::string& path, std::ostream& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (v.is_array() && !v.empty()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << csv_cell(path) << "," << csv_cell(v) << "\n";
  }
}

std::string render(const std::string& command, const Json& envelope, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << envelope.dump(2) << "\n";
  } else if (command == "growth") {
    os << "n,size\n";
    const auto& sizes = envelope.at("report").at("sizes");
    for (std::size_t n = 0; n < sizes.size(); ++n) os << n + 1 << "," << sizes[n].get<std::size_t>() << "\n";
  } else {
    os << "field,value\n";
    flatten(envelope, "", os);
  }
  return os.str();
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return 0;
    case Verdict::hypothesis_failed: return 2;
    case Verdict::falsified: return 3;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact experiments on small finite groups: growth, characters, Bohr sets, large spectra and Freiman balls."};
  app.require_subcommand(1);
  Options o;

  using Runner = Outcome (*)(const Options&, const Inputs&);
  const std::vector<std::tuple<std::string, std::string, Runner>> commands = {
      {"group-info", "Order, conjugacy classes, abelianization and subgroup count", cmd_group_info},
      {"growth", "Sizes |A^n| for n = 1..nmax and the fitted growth exponent", cmd_growth},
      {"chartable", "Character table with orthogonality residuals", cmd_chartable},
      {"monomial", "Monomiality certificates; with --set, the high-value linearity scan", cmd_monomial},
      {"bohr", "Linear Bohr set, its ball dimension, contraction (--k) and growth (--xset)", cmd_bohr},
      {"lspec", "Large spectrum and the Bohr-set size bound", cmd_lspec},
      {"metric-dim", "Norm validation, ball axioms, ball dimension and Bourgain radius (--d)", cmd_metric_dim},
      {"energy", "Spectral energy inequalities for A^k", cmd_energy},
      {"cover", "Doubling of large spectra and the covering set X", cmd_cover},
      {"freiman", "Full pipeline: the ball B containing AA^-1", cmd_freiman},
      {"appendix", "Ruzsa covering certificate and power inclusions", cmd_appendix},
  };

  std::map<CLI::App*, Runner> runners;
  for (const auto& [name, help, run] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--group", o.group, "GroupSpec JSON file or inline JSON")->required();
    sub->add_option("--set", o.set, "SetSpec JSON file or inline JSON");
    sub->add_option("--sset", o.sset, "SetSpec for S (defaults to A)");
    sub->add_option("--gamma", o.gamma, "CharSet JSON for Gamma / Lambda");
    sub->add_option("--xset", o.xset, "CharSet JSON for X");
    sub->add_option("--norm", o.norm, "Norm JSON: one value per element");
    sub->add_option("--eps", o.eps, "Spectral radius epsilon (or eta), e.g. 1/16");
    sub->add_option("--delta", o.delta, "Ball or Bohr radius, e.g. 1/10");
    sub->add_option("--k", o.k, "Integer parameter k");
    sub->add_option("--d", o.d, "Dimension estimate d");
    sub->add_option("--nmax", o.nmax, "Largest power n")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Seed for randomized steps");
    sub->add_option("--constant-c", o.constant_c, "Constant C in the epsilon formula");
    sub->add_option("--out", o.out, "Report path (stdout if omitted)");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--cap", o.cap, "Largest group order for subgroup enumeration");
    sub->add_flag("--hereditary", o.hereditary, "Also check every subgroup (monomial)");
    runners[sub] = run;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    Inputs in;
    in.group_json = load_arg(o.group, "--group");
    in.group = build_group(group_spec_from_json(in.group_json));
    const Outcome res = runners.at(sub)(o, in);
    Json envelope = {{"tool", "monoball"},
                     {"version", MONOBALL_VERSION},
                     {"command", command},
                     {"seed", o.seed},
                     {"group", {{"spec", in.group_json}, {"order", in.group->order()}}},
                     {"verdict", to_string(res.verdict)},
                     {"report", res.report}};
    const std::string text = render(command, envelope, o.format);
    const std::string summary = command + ": " + to_string(res.verdict) + "; " + res.summary;
    if (o.out.empty()) {
      std::cout << text;
      std::cerr << summary << "\n";
    } else {
      std::ofstream f(o.out, std::ios::binary);
      f << text;
      if (!f.flush()) {
        std::cerr << "error: cannot write " << o.out << "\n";
        return 1;
      }
      std::cout << summary << "\n";
    }
    return exit_code(res.verdict);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise --cap or use a smaller group)\n";
    return 1;
  } catch (const FalsifiedError& e) {
    std::cerr << "falsified: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
