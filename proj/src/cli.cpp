#include "bsset/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "bsset/bounds.hpp"
#include "bsset/em_model.hpp"
#include "bsset/errors.hpp"
#include "bsset/homology.hpp"
#include "bsset/postnikov.hpp"
#include "bsset/report.hpp"
#include "bsset/sset_io.hpp"
#include "bsset/twist.hpp"

namespace bsset::cli {

namespace {

using Json = RunReport::Json;

struct Global {
  bool json = false;
  std::uint64_t budget = default_budget;
  std::string report_path;
  bool no_verify = false;
};

struct Options {
  std::string input;
  std::string profile;
  std::string out;
  std::vector<std::string> kinv;
  std::string group = "2";
  std::string space = "K";
  std::string tau = "canonical";
  std::int64_t prime = 0;
  int degree = -1;
  int n = -1;
  int up_to = 3;
  double constant = 1.0;
  bool stage2_only = false;
};

FiniteAbelianGroup parse_group(const std::string& text) {
  std::vector<std::int64_t> orders;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(part, &used);
      if (used != part.size() || v < 1) throw InputError("");
      orders.push_back(v);
    } catch (const std::exception&) {
      throw InputError("bad group '" + text + "'; expected cyclic orders such as 2 or 2,4");
    }
  }
  return FiniteAbelianGroup::from_cyclic_orders(orders);
}

EmSpace parse_space(const std::string& s) {
  if (s == "K") return EmSpace::K;
  if (s == "E") return EmSpace::E;
  throw InputError("space must be K or E");
}

Json counts_json(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json integers_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

FinSimplicialSet load_sset(RunReport& report, const std::string& path, bool verify) {
  if (path.empty()) throw InputError("--input is required");
  const std::string text = read_text_file(path);
  report.add_input(path, text);
  try {
    return parse_sset(text, verify);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

void describe_set(Json& j, const FinSimplicialSet& s) {
  j["top_degree"] = s.top_degree();
  j["generators"] = counts_json(s.generator_counts());
}

void homology_section(Json& j, const FinSimplicialSet& s, std::int64_t p) {
  const ChainComplexZ c = normalized_chain_complex(s);
  const auto groups = homology_all(c);
  for (std::size_t n = 0; n < groups.size(); ++n) {
    j["H_" + std::to_string(n)] = groups[n].str();
    if (p) j["H_" + std::to_string(n) + "(Z_(" + std::to_string(p) + "))"] = local_part(groups[n], p).str();
  }
}

void invariants_section(Json& j, const Invariants& inv) {
  Json primes = Json::array();
  for (const auto& p : inv.primes) primes.push_back(Json{{"p", p.p}, {"h_p", p.h_p}, {"m_p", p.m_p}});
  j["primes"] = primes;
  j["h"] = inv.h;
  j["m"] = inv.m;
  j["N"] = inv.N.str();
}

Json log_value_json(const Real& log_value) {
  return Json{{"log", format_real(log_value)}, {"value", format_log_value(log_value)}};
}

// ---------------------------------------------------------------------------

void cmd_homology(const Options& o, const Global& g, RunReport& r) {
  if (o.prime) require_prime(o.prime);
  const FinSimplicialSet s = load_sset(r, o.input, !g.no_verify);
  StepTimer t(r, "homology");
  describe_set(r.section("set"), s);
  homology_section(r.section("homology"), s, o.prime);
}

void cmd_invariants(const Options& o, const Global& g, RunReport& r) {
  HomologyProfile profile;
  if (!o.profile.empty()) {
    const std::string text = read_text_file(o.profile);
    r.add_input(o.profile, text);
    profile = parse_profile(text);
  } else {
    const FinSimplicialSet s = load_sset(r, o.input, !g.no_verify);
    profile = homology_profile(s);
  }
  StepTimer t(r, "invariants");
  auto& h = r.section("homology");
  for (std::size_t n = 0; n < profile.groups.size(); ++n) h["H_" + std::to_string(n)] = profile.groups[n].str();
  invariants_section(r.section("invariants"), invariants(profile));
}

void cmd_em_size(const Options& o, const Global&, RunReport& r) {
  const FiniteAbelianGroup grp = parse_group(o.group);
  if (o.degree < 0 || o.n < 0) throw InputError("--degree and --n are required");
  auto& j = r.section("em");
  j["group"] = grp.str();
  j["space"] = to_string(parse_space(o.space));
  j["k"] = o.degree;
  j["n"] = o.n;
  j["simplices"] = em_cardinality(grp, o.degree, o.n, parse_space(o.space)).str();
}

void cmd_em_build(const Options& o, const Global& g, RunReport& r) {
  const FiniteAbelianGroup grp = parse_group(o.group);
  if (o.degree < 0) throw InputError("--degree is required");
  if (o.out.empty()) throw InputError("--out is required");
  std::optional<EmSkeleton> em;
  {
    StepTimer t(r, "build");
    em.emplace(build_em_skeleton(grp, o.degree, parse_space(o.space), o.up_to, g.budget));
  }
  write_text_file(o.out, serialize_sset(em->set()));
  auto& j = r.section("em");
  j["group"] = grp.str();
  j["space"] = to_string(parse_space(o.space));
  j["k"] = o.degree;
  j["up_to"] = o.up_to;
  describe_set(j, em->set());
  j["output"] = o.out;
}

void cmd_em_verify(const Options& o, const Global& g, RunReport& r) {
  const FiniteAbelianGroup grp = parse_group(o.group);
  if (o.degree < 0) throw InputError("--degree is required");
  const EmSpace space = parse_space(o.space);
  StepTimer t(r, "verify");
  const EmSkeleton em = build_em_skeleton(grp, o.degree, space, o.up_to, g.budget);
  auto& j = r.section("em");
  j["group"] = grp.str();
  j["space"] = to_string(space);
  j["k"] = o.degree;
  describe_set(j, em.set());
  bool counts_ok = true;
  Json counts = Json::array();
  for (int n = 0; n <= o.up_to; ++n) {
    const auto listed = em.model().simplices(n).size();
    const Integer formula = em_cardinality(grp, o.degree, n, space);
    counts.push_back(Json{{"n", n}, {"enumerated", listed}, {"formula", formula.str()}});
    counts_ok = counts_ok && Integer(static_cast<unsigned long long>(listed)) == formula &&
                Integer(static_cast<unsigned long long>(simplex_count(em.set(), n))) == formula;
  }
  j["counts"] = counts;
  r.verdict("counts_match_formula", counts_ok ? "pass" : "fail");
  const auto v = check_simplicial_identities(em.set());
  r.verdict("simplicial_identities", v.empty() ? "pass" : "fail", std::to_string(v.size()) + " violations");
  if (space == EmSpace::E && o.degree >= 1) {
    const IsoReport iso = e_as_twisted_product_iso(grp, o.degree, o.up_to, g.budget);
    r.verdict("twisted_product_iso", iso.ok() ? "pass" : "fail", iso.splitting);
  } else {
    r.verdict("twisted_product_iso", "skipped", "applies to E spaces");
  }
}

void cmd_twist_verify(const Options& o, const Global& g, RunReport& r) {
  const FiniteAbelianGroup grp = parse_group(o.group);
  if (o.degree < 1) throw InputError("--degree (at least 1) is required");
  TwistingOperator tau = o.tau == "canonical" ? canonical_twist(grp, o.degree)
                         : o.tau == "trivial" ? trivial_twist(grp, o.degree)
                                              : throw InputError("--tau must be canonical or trivial");
  StepTimer t(r, "verify");
  const TwistAxiomReport axioms = check_twisting_axioms(tau, o.up_to, g.budget);
  auto& j = r.section("twist");
  j["group"] = grp.str();
  j["k"] = o.degree;
  j["tau"] = tau.name;
  j["up_to"] = o.up_to;
  j["simplices_checked"] = axioms.simplices_checked;
  Json per = Json::object();
  for (const auto& [axiom, count] : axioms.per_axiom) per[axiom] = count;
  j["violations"] = per;
  r.verdict("twisting_axioms", axioms.ok() ? "pass" : "fail", std::to_string(axioms.violation_count) + " violations");
  if (axioms.ok()) {
    const auto product = twisted_product(tau, o.up_to, g.budget);
    const auto v = check_simplicial_identities(product.set());
    j["product_generators"] = counts_json(product.set().generator_counts());
    r.verdict("twisted_product_identities", v.empty() ? "pass" : "fail");
  }
  if (o.tau == "canonical") {
    const IsoReport iso = e_as_twisted_product_iso(grp, o.degree, o.up_to, g.budget);
    Json degrees = Json::array();
    for (const auto& d : iso.degrees)
      degrees.push_back(Json{{"n", d.degree}, {"E", d.e_count}, {"pairs", d.pair_count}, {"ok", d.ok()}});
    j["iso"] = degrees;
    r.verdict("e_as_twisted_product", iso.ok() ? "pass" : "fail", iso.splitting);
  }
}

void cmd_verify(const Options& o, const Global&, RunReport& r) {
  const FinSimplicialSet s = load_sset(r, o.input, false);
  StepTimer t(r, "verify");
  describe_set(r.section("set"), s);
  const auto v = check_simplicial_identities(s);
  std::string reason = std::to_string(v.size()) + " violations";
  if (!v.empty())
    reason += "; first: d_" + std::to_string(v[0].i) + " d_" + std::to_string(v[0].j) + " on '" + s.name(v[0].generator) + "'";
  r.verdict("simplicial_identities", v.empty() ? "pass" : "fail", reason);
  for (const auto& path : o.kinv) {
    const std::string text = read_text_file(path);
    r.add_input(path, text);
    const auto problems = check_kinvariant(s, parse_kinv(text, s));
    r.verdict("kinvariant " + path, problems.empty() ? "pass" : "fail", problems.empty() ? "" : problems.front());
  }
}

void cmd_bound(const Options& o, const Global&, RunReport& r) {
  if (o.profile.empty()) throw InputError("--profile is required");
  if (o.constant < 0) throw InputError("--constant must be non-negative");
  const std::string text = read_text_file(o.profile);
  r.add_input(o.profile, text);
  const HomologyProfile profile = parse_profile(text);
  const Invariants inv = invariants(profile);
  const int d = o.degree >= 0 ? o.degree : std::max(2, profile.d);
  if (d < 2) throw InputError("--degree must be at least 2");
  StepTimer t(r, "bound");
  const BoundConfig cfg{Real(o.constant)};
  auto& j = r.section("bound");
  j["constant"] = o.constant;
  j["d"] = d;
  invariants_section(r.section("invariants"), inv);

  Json homotopy = Json::array();
  std::vector<Real> log_orders;
  for (int n = 2; n <= d + 1; ++n) {
    Json e = Json::object();
    e["n"] = n;
    Json per = Json::array();
    for (const auto& p : inv.primes) {
      const LogBound b = homotopy_order_bound_p(n, p.p, p.m_p, p.h_p, cfg);
      Json q{{"p", p.p}, {"bound", log_value_json(b.log_value)}, {"pre_absorption", log_value_json(b.log_pre_absorption)}};
      if (!b.note.empty()) q["note"] = b.note;
      per.push_back(q);
    }
    e["per_prime"] = per;
    const LogBound c = homotopy_order_bound(n, inv.m, inv.N, inv.h, cfg);
    e["combined"] = log_value_json(c.log_value);
    if (!c.note.empty()) e["note"] = c.note;
    log_orders.push_back(c.log_value);
    homotopy.push_back(e);
  }
  r.section("homotopy_order_bounds") = homotopy;

  auto& s = r.section("stage_bound");
  s["n"] = d + 2;
  s["k"] = d + 1;
  s["sum"] = log_value_json(stage_size_bound_log(d + 2, d + 1, log_orders));

  const LogBound f = final_bound(d, inv.m, inv.h, inv.N, cfg);
  auto& fj = r.section("final_bound");
  fj["bound"] = log_value_json(f.log_value);
  if (!f.note.empty()) fj["note"] = f.note;
}

void cmd_pipeline(const Options& o, const Global& g, RunReport& r) {
  const std::int64_t p = o.prime ? o.prime : 2;
  require_prime(p);
  const FinSimplicialSet x = load_sset(r, o.input, !g.no_verify);
  std::vector<std::string> kinv_texts;
  for (const auto& path : o.kinv) {
    kinv_texts.push_back(read_text_file(path));
    r.add_input(path, kinv_texts.back());
  }
  KInvariantProvider provider;
  if (!kinv_texts.empty())
    provider = [&](int k, const FinSimplicialSet& previous) {
      const auto i = static_cast<std::size_t>(k - 3);
      if (i >= kinv_texts.size()) throw PreconditionError("no k-invariant file for stage " + std::to_string(k));
      return parse_kinv(kinv_texts[i], previous);
    };
  PipelineOptions opts;
  opts.p = p;
  opts.stage2_only = o.stage2_only;
  opts.budget = g.budget;
  opts.bound_constant = o.constant;

  std::optional<PipelineResult> res;
  {
    StepTimer t(r, "pipeline");
    res.emplace(pipeline(x, opts, provider));
  }
  auto& in = r.section("input");
  in["dimension"] = res->dimension;
  in["generators"] = counts_json(x.generator_counts());
  for (std::size_t n = 0; n < res->profile.groups.size(); ++n) in["H_" + std::to_string(n)] = res->profile.groups[n].str();
  invariants_section(r.section("invariants"), res->invariants);
  auto& pj = r.section("pipeline");
  pj["prime"] = p;
  pj["d"] = res->d;
  pj["stage2_only"] = o.stage2_only;
  Json stages = Json::array();
  for (const auto& s : res->stages)
    stages.push_back(Json{{"k", s.k},
                          {"pi", s.group},
                          {"generators", counts_json(s.generators)},
                          {"simplices", integers_json(s.simplices)},
                          {"total", s.total_simplices.str()},
                          {"stage_size_bound", s.containment_bound.str()}});
  pj["stages"] = stages;
  pj["W_generators"] = counts_json(res->w_generators);
  pj["Y_generators"] = counts_json(res->y_generators);
  pj["Y_nondegenerate_total"] = res->y_total_generators;
  pj["selected_count"] = res->selected.size();
  auto& b = r.section("final_bound");
  b["constant"] = o.constant;
  b["log"] = res->final_bound_log;
  b["value"] = format_log_value(Real(res->final_bound_log));
  if (!res->final_bound_note.empty()) b["note"] = res->final_bound_note;
  for (const auto& v : res->verdicts) r.verdict(v.name, v.status, v.reason);
  if (!o.out.empty()) {
    write_text_file(o.out, serialize_sset(*res->y));
    pj["output"] = o.out;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite simplicial sets, Eilenberg-MacLane models and p-local Postnikov pruning", "bsset"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  Options o;
  app.add_flag("--json", g.json, "Emit the report as JSON");
  app.add_option("--budget", g.budget, "Maximum simplices per degree")->check(CLI::PositiveNumber);
  app.add_option("--report", g.report_path, "Write the report to this file instead of standard output");
  app.add_flag("--no-verify", g.no_verify, "Skip the simplicial identity check on parsed inputs");

  std::string command;
  auto* homology = app.add_subcommand("homology", "Integral homology of an SSET/1 file");
  homology->add_option("--input", o.input)->required();
  homology->add_option("--prime", o.prime, "Also print Z_(p) homology");

  auto* inv = app.add_subcommand("invariants", "Prime invariants h_p, m_p, h, m, N");
  auto* inv_src = inv->add_option("--input", o.input);
  inv->add_option("--profile", o.profile)->excludes(inv_src);
  inv->require_option(1);

  auto* em = app.add_subcommand("em", "Eilenberg-MacLane models");
  em->require_subcommand(1);
  auto add_em = [&](CLI::App* c) {
    c->add_option("--group", o.group, "Cyclic orders, e.g. 2 or 2,4")->capture_default_str();
    c->add_option("--degree", o.degree, "k")->required();
    c->add_option("--space", o.space, "K or E")->capture_default_str();
  };
  auto* em_size = em->add_subcommand("size", "Number of n-simplices");
  add_em(em_size);
  em_size->add_option("--n", o.n)->required();
  auto* em_build = em->add_subcommand("build", "Write a skeleton as SSET/1");
  add_em(em_build);
  em_build->add_option("--up-to", o.up_to)->capture_default_str();
  em_build->add_option("--out", o.out)->required();
  auto* em_verify = em->add_subcommand("verify", "Counts, identities and the twisted-product bijection");
  add_em(em_verify);
  em_verify->add_option("--up-to", o.up_to)->capture_default_str();

  auto* twist = app.add_subcommand("twist", "Twisting operators");
  twist->require_subcommand(1);
  auto* twist_verify = twist->add_subcommand("verify", "Check the twisting axioms");
  twist_verify->add_option("--group", o.group)->capture_default_str();
  twist_verify->add_option("--degree", o.degree, "fiber degree k")->required();
  twist_verify->add_option("--up-to", o.up_to)->capture_default_str();
  twist_verify->add_option("--tau", o.tau, "canonical or trivial")->capture_default_str();

  auto* pipe = app.add_subcommand("pipeline", "Postnikov construction and pruning");
  pipe->require_subcommand(1);
  auto* pipe_run = pipe->add_subcommand("run", "Run the pipeline on an input set");
  pipe_run->add_option("--input", o.input)->required();
  pipe_run->add_option("--prime", o.prime, "Localizing prime (default 2)");
  pipe_run->add_option("--kinv", o.kinv, "KINV/1 files for stages 3, 4, ...");
  pipe_run->add_flag("--stage2-only", o.stage2_only, "Stop the tower at stage 2 and prune with d = 2");
  pipe_run->add_option("--out", o.out, "Write Y as SSET/1");
  pipe_run->add_option("--constant", o.constant, "Constant of the log^3 term")->capture_default_str();

  auto* bound = app.add_subcommand("bound", "Homotopy, stage and final size bounds");
  bound->add_option("--profile", o.profile)->required();
  bound->add_option("--degree", o.degree, "d (default: max(2, profile dimension))");
  bound->add_option("--constant", o.constant)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check simplicial identities of a file");
  verify->add_option("--input", o.input)->required();
  verify->add_option("--kinv", o.kinv, "KINV/1 files to check against the input");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }

  std::vector<std::string> path;
  for (CLI::App* a = &app; !a->get_subcommands().empty();) {
    a = a->get_subcommands().front();
    path.push_back(a->get_name());
  }
  std::string name;
  for (const auto& p : path) name += (name.empty() ? "" : " ") + p;
  std::string echo = "bsset";
  for (const auto& a : args) echo += " " + a;

  RunReport report(echo);
  try {
    if (name == "homology") cmd_homology(o, g, report);
    else if (name == "invariants") cmd_invariants(o, g, report);
    else if (name == "em size") cmd_em_size(o, g, report);
    else if (name == "em build") cmd_em_build(o, g, report);
    else if (name == "em verify") cmd_em_verify(o, g, report);
    else if (name == "twist verify") cmd_twist_verify(o, g, report);
    else if (name == "pipeline run") cmd_pipeline(o, g, report);
    else if (name == "bound") cmd_bound(o, g, report);
    else if (name == "verify") cmd_verify(o, g, report);
    else throw InputError("unknown command '" + name + "'");
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }

  const std::string text = g.json ? report.json() + "\n" : report.text();
  if (g.report_path.empty()) {
    out << text;
  } else {
    try {
      write_text_file(g.report_path, text);
    } catch (const InputError& e) {
      err << "error: " << e.what() << "\n";
      return exit_input;
    }
  }
  return report.any_failed() ? exit_fail : exit_pass;
}

}  // namespace bsset::cli
