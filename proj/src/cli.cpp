#include "frobtoric/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "frobtoric/bott_oracles.hpp"
#include "frobtoric/cech.hpp"
#include "frobtoric/errors.hpp"
#include "frobtoric/fan_io.hpp"
#include "frobtoric/monomial.hpp"
#include "frobtoric/splitting.hpp"
#include "frobtoric/witt2.hpp"

namespace frobtoric {

void SessionConfig::validate() const {
  if (prime > kMaxWittPrime || !is_prime(prime))
    throw InputError("--prime must be a prime <= " + std::to_string(kMaxWittPrime) + ", got " + std::to_string(prime));
  if (box_margin < -1) throw InputError("--box-margin must be >= 0");
  if (format != "json" && format != "table") throw InputError("--format must be json or table");
  if (max_matrix == 0) throw InputError("--max-matrix must be positive");
}

Json SessionConfig::to_json() const {
  Json j;
  j["prime"] = prime;
  j["box_margin"] = box_margin < 0 ? Json("rank+1") : Json(box_margin);
  j["seed"] = seed;
  j["format"] = format;
  j["max_matrix"] = max_matrix;
  j["max_grades"] = max_grades;
  return j;
}

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {"witt-table",       "dual",         "hilbert",     "check-fan",
                                                 "check-ample",      "cohomology",   "bott-verify", "frobenius-verify",
                                                 "sigma-verify",     "degeneration", "quadric",     "incidence"};
  return names;
}

namespace {

Json point(const LatticePoint& v) { return Json(v.vec()); }

Json points(const std::vector<LatticePoint>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(point(v));
  return a;
}

Json dim(const DimValue& v) {
  if (v.exact()) return v.lo;
  return Json::array({v.lo, v.hi});
}

Json dims(const std::vector<DimValue>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(dim(v));
  return a;
}

Json box_json(const DegreeBox& b) { return {{"lo", point(b.lo)}, {"hi", point(b.hi)}, {"grades", b.size()}}; }

EngineOptions engine_options(const SessionConfig& c) {
  EngineOptions o;
  o.p = c.prime;
  o.dense_limit = c.max_matrix;
  o.max_grades = c.max_grades;
  return o;
}

FanFile load_fan(const CommandArgs& a) {
  if (a.fan.empty()) throw InputError("--fan is required");
  return parse_fan_file(a.fan);
}

ToricDivisor pick_divisor(const FanFile& f, const CommandArgs& a, bool required) {
  if (!a.divisor.empty()) return resolve_divisor(f, a.divisor);
  if (!f.divisors.empty()) return f.divisors.front();
  if (required) throw InputError("--divisor is required (the fan file defines none)");
  return ToricDivisor::zero(f.fan);
}

Json divisor_json(const ToricDivisor& d) { return {{"label", d.label()}, {"coefficients", d.coeffs}}; }

std::vector<LatticePoint> parse_cone(const std::string& text) {
  if (text.empty()) throw InputError("--cone is required, e.g. \"1,0;1,2\"");
  std::vector<LatticePoint> out;
  std::stringstream ss(text);
  std::string gen;
  while (std::getline(ss, gen, ';')) {
    std::vector<std::int64_t> c;
    std::stringstream gs(gen);
    std::string part;
    while (std::getline(gs, part, ',')) {
      try {
        std::size_t used = 0;
        c.push_back(std::stoll(part, &used));
        if (used != part.size() && part.find_first_not_of(' ', used) != std::string::npos) throw InputError("");
      } catch (const std::exception&) {
        throw InputError("bad cone generator '" + gen + "'");
      }
    }
    if (c.empty()) throw InputError("empty cone generator in '" + text + "'");
    if (!out.empty() && c.size() != out.front().rank()) throw InputError("cone generators of different lengths");
    out.emplace_back(std::move(c));
  }
  return out;
}

Json fan_json(const FanFile& f) {
  Json j;
  j["rank"] = f.fan.rank();
  j["rays"] = points(f.fan.rays());
  j["ray_ids"] = f.ray_ids;
  j["maximal_cones"] = f.fan.maximal_cones();
  return j;
}

struct Result {
  bool pass = true;
  Json body;
  std::vector<std::string> warnings;
};

Result cmd_witt_table(const SessionConfig& c) {
  const auto p = c.prime;
  Result r;
  const auto rep = verify_witt_axioms(p, c.seed);
  r.body["carry_coefficients"] = witt_carry_coefficients(p);
  Json elems = Json::array();
  for (std::uint32_t a1 = 0; a1 < p; ++a1)
    for (std::uint32_t a0 = 0; a0 < p; ++a0) {
      const WittPair w(p, a0, a1);
      elems.push_back({{"witt", {a0, a1}}, {"zp2", w2_to_zp2(w)}, {"frobenius", {w2_frobenius(w).a0(), w2_frobenius(w).a1()}}});
    }
  r.body["elements"] = elems;
  if (p <= 5) {
    Json add = Json::array(), mul = Json::array();
    for (const auto& x : elems)
      for (const auto& y : elems) {
        const WittPair a(p, x["witt"][0].get<int>(), x["witt"][1].get<int>());
        const WittPair b(p, y["witt"][0].get<int>(), y["witt"][1].get<int>());
        const auto s = a + b, m = a * b;
        add.push_back({{a.a0(), a.a1()}, {b.a0(), b.a1()}, {s.a0(), s.a1()}});
        mul.push_back({{a.a0(), a.a1()}, {b.a0(), b.a1()}, {m.a0(), m.a1()}});
      }
    r.body["addition"] = add;
    r.body["multiplication"] = mul;
  }
  r.body["axioms"] = {{"exhaustive", rep.exhaustive},
                      {"triples", rep.triples},
                      {"isomorphism_pairs", rep.pairs},
                      {"failures", rep.failures},
                      {"first_failure", rep.first_failure}};
  r.pass = rep.passed();
  return r;
}

Result cmd_dual(const CommandArgs& a) {
  const auto gens = parse_cone(a.cone);
  const auto n = gens.front().rank();
  const auto c = Cone::from_generators(LatticeKind::N, n, gens);
  const auto d = dual_cone(c);
  Result r;
  r.body["cone"] = points(c.generators());
  r.body["dual"] = points(d.generators());
  r.body["double_dual_equal"] = dual_cone(d) == c;
  r.pass = r.body["double_dual_equal"].get<bool>();
  return r;
}

Result cmd_hilbert(const CommandArgs& a) {
  const auto gens = parse_cone(a.cone);
  const auto c = Cone::from_generators(LatticeKind::M, gens.front().rank(), gens);
  Result r;
  r.body["cone"] = points(c.generators());
  r.body["hilbert_basis"] = points(hilbert_basis(c));
  return r;
}

Result cmd_check_fan(const CommandArgs& a, const SessionConfig& c) {
  const auto f = load_fan(a);
  Result r;
  r.body["fan"] = fan_json(f);
  r.body["cone_count"] = f.fan.cones().size();
  r.body["f_vector"] = f.fan.f_vector();
  const bool complete = is_complete(f.fan, c.seed);
  r.body["complete"] = complete;
  r.body["simplicial"] = f.fan.is_simplicial();
  r.body["smooth"] = f.fan.is_smooth();
  if (complete && f.fan.is_simplicial()) r.body["betti_even"] = betti_oracle(f.fan);
  Json divs = Json::array();
  for (const auto& d : f.divisors) divs.push_back(divisor_json(d));
  r.body["divisors"] = divs;
  r.warnings = f.fan.warnings();
  return r;
}

Result cmd_check_ample(const CommandArgs& a) {
  const auto f = load_fan(a);
  const auto d = pick_divisor(f, a, true);
  const auto cert = ample_check(f.fan, d);
  Result r;
  r.body["divisor"] = divisor_json(d);
  r.body["ample"] = cert.ample;
  r.body["m_sigma"] = points(cert.m_sigma);
  if (cert.failing_wall) {
    const auto& w = *cert.failing_wall;
    r.body["failing_wall"] = {{"maximal_cone", f.fan.maximal_cones()[w.cone]},
                              {"ray", w.ray},
                              {"value", w.value},
                              {"bound", w.bound}};
  } else {
    r.body["failing_wall"] = nullptr;
  }
  r.pass = cert.ample;
  r.warnings = f.fan.warnings();
  return r;
}

Json cohomology_json(const CohomologyResult& res) {
  Json j;
  j["p_form"] = res.p_form;
  j["h"] = dims(res.h);
  j["sound"] = res.sound;
  j["grades"] = res.grades;
  Json sup = Json::array();
  for (const auto& g : res.support) sup.push_back({{"grade", point(g.u)}, {"h", g.h}});
  j["support"] = sup;
  return j;
}

Result cmd_cohomology(const CommandArgs& a, const SessionConfig& c) {
  const auto f = load_fan(a);
  const auto d = pick_divisor(f, a, false);
  const auto box = default_box(f.fan, d, c.box_margin);
  Result r;
  r.body["divisor"] = divisor_json(d);
  r.body["box"] = box_json(box);
  Json tables = Json::array();
  const int lo = a.form < 0 ? 0 : a.form, hi = a.form < 0 ? static_cast<int>(f.fan.rank()) : a.form;
  if (hi > static_cast<int>(f.fan.rank())) throw InputError("--form exceeds the rank");
  bool sound = true;
  for (int pf = lo; pf <= hi; ++pf) {
    const auto res = cohomology_dims(f.fan, pf, d, box, engine_options(c));
    sound = sound && res.sound;
    for (const auto& w : res.warnings) r.warnings.push_back(w);
    tables.push_back(cohomology_json(res));
  }
  r.body["sound"] = sound;
  r.body["tables"] = tables;
  for (const auto& w : f.fan.warnings()) r.warnings.push_back(w);
  return r;
}

Result cmd_bott_verify(const CommandArgs& a, const SessionConfig& c) {
  const auto f = load_fan(a);
  const auto d = pick_divisor(f, a, true);
  const auto box = default_box(f.fan, d, c.box_margin);
  const auto rep = bott_verify(f.fan, d, box, engine_options(c));
  Result r;
  r.body["divisor"] = divisor_json(d);
  r.body["m_sigma"] = points(rep.certificate.m_sigma);
  r.body["box"] = box_json(box);
  r.body["sound"] = rep.sound;
  Json tables = Json::array();
  for (const auto& res : rep.results) {
    tables.push_back(cohomology_json(res));
    for (const auto& w : res.warnings) r.warnings.push_back(w);
  }
  r.body["tables"] = tables;
  r.body["violations"] = rep.violations;
  r.pass = rep.passed();
  return r;
}

Result cmd_frobenius_verify(const CommandArgs& a, const SessionConfig& c) {
  const auto f = load_fan(a);
  const auto rep = verify_glue_compat(f.fan, c.prime, c.seed);
  Result r;
  Json checks = Json::array();
  for (const auto& g : rep.checks)
    checks.push_back({{"sigma", g.sigma},
                      {"tau", g.tau},
                      {"generators_checked", g.generators_checked},
                      {"random_checked", g.random_checked},
                      {"localization_ok", g.localization_ok},
                      {"commutes", g.commutes},
                      {"reduces_to_frobenius", g.reduces_to_frobenius}});
  r.body["checks"] = checks;
  r.pass = rep.passed();
  return r;
}

Result cmd_sigma_verify(const CommandArgs& a, const SessionConfig& c) {
  const auto f = load_fan(a);
  const auto box = default_box(f.fan, ToricDivisor::zero(f.fan), c.box_margin);
  if (box.size() > c.max_grades) throw CapacityError("degree box too large for the Cartier sweep");
  const auto rep = verify_splitting(f.fan, c.prime, c.seed, a.samples, box);
  Result r;
  Json charts = Json::array();
  for (const auto& ch : rep.charts)
    charts.push_back({{"cone", ch.cone},
                      {"forms", ch.forms},
                      {"cartier_sigma_identity", ch.cartier_ok},
                      {"duality_sigma_identity", ch.duality_ok},
                      {"boundary_invariance", ch.boundary_ok},
                      {"sigma_preserves_chart", ch.membership_ok}});
  r.body["charts"] = charts;
  r.body["box"] = box_json(box);
  r.body["cartier_grades_checked"] = rep.cartier_grades_checked;
  r.body["cartier_failures"] = rep.cartier_failures;
  r.pass = rep.passed();
  return r;
}

Result cmd_degeneration(const CommandArgs& a, const SessionConfig& c) {
  const auto f = load_fan(a);
  const auto box = default_box(f.fan, ToricDivisor::zero(f.fan), c.box_margin);
  const auto rep = degeneration_check(f.fan, box, engine_options(c));
  Result r;
  r.body["box"] = box_json(box);
  r.body["e1"] = rep.e1;
  r.body["e1_sums"] = rep.e1_sums;
  r.body["hypercohomology"] = rep.hyper;
  r.body["betti"] = rep.betti ? Json(*rep.betti) : Json(nullptr);
  r.body["sums_match"] = rep.sums_match();
  r.body["betti_match"] = rep.betti ? Json(rep.betti_match()) : Json(nullptr);
  r.body["sound"] = rep.sound;
  r.body["violations"] = rep.violations;
  r.pass = rep.passed();
  return r;
}

Json chain_json(const std::vector<ChaseStep>& chain) {
  Json a = Json::array();
  for (const auto& s : chain)
    a.push_back({{"sequence", s.sequence.str()},
                 {"solved", s.result.solved.label},
                 {"h", dims(s.result.solved.h)},
                 {"trace", s.result.trace}});
  return a;
}

Result nonvanishing_json(const NonvanishingResult& res) {
  Result r;
  r.body["n"] = res.n;
  r.body["degree"] = res.degree;
  r.body["value"] = dim(res.value);
  r.body["dual_degree"] = res.dual_degree;
  r.body["dual_value"] = dim(res.dual_value);
  r.body["exact"] = res.exact();
  r.body["provenance"] = chain_json(res.chain);
  r.body["dual_provenance"] = chain_json(res.dual_chain);
  r.pass = res.exact() && res.value.lo == 1 && res.dual_value.lo == 1;
  return r;
}

Result dispatch(const std::string& name, const CommandArgs& a, const SessionConfig& c) {
  if (name == "witt-table") return cmd_witt_table(c);
  if (name == "dual") return cmd_dual(a);
  if (name == "hilbert") return cmd_hilbert(a);
  if (name == "check-fan") return cmd_check_fan(a, c);
  if (name == "check-ample") return cmd_check_ample(a);
  if (name == "cohomology") return cmd_cohomology(a, c);
  if (name == "bott-verify") return cmd_bott_verify(a, c);
  if (name == "frobenius-verify") return cmd_frobenius_verify(a, c);
  if (name == "sigma-verify") return cmd_sigma_verify(a, c);
  if (name == "degeneration") return cmd_degeneration(a, c);
  if (name == "quadric") return nonvanishing_json(quadric_nonvanishing(a.n));
  if (name == "incidence") return nonvanishing_json(incidence_nonvanishing(a.n));
  throw InputError("unknown subcommand '" + name + "'");
}

Json error_json(const std::string& kind, const std::string& message) { return {{"kind", kind}, {"message", message}}; }

}  // namespace

CommandOutcome run_subcommand(const std::string& name, const CommandArgs& args, const SessionConfig& config) {
  CommandOutcome out;
  out.report["schema"] = 1;
  out.report["command"] = name;
  out.report["config"] = config.to_json();
  try {
    config.validate();
    auto r = dispatch(name, args, config);
    out.status = r.pass ? kExitPass : kExitFail;
    out.report["status"] = r.pass ? "pass" : "fail";
    out.report["result"] = std::move(r.body);
    out.report["warnings"] = r.warnings;
  } catch (const CapacityError& e) {
    out.status = kExitCapacity;
    out.report["status"] = "error";
    out.report["error"] = error_json("capacity", e.what());
  } catch (const FanAxiomViolation& e) {
    out.status = kExitInput;
    out.report["status"] = "error";
    auto err = error_json("fan_axiom", e.what());
    err["cones"] = {e.first_cone(), e.second_cone()};
    out.report["error"] = err;
  } catch (const FanParseError& e) {
    out.status = kExitInput;
    out.report["status"] = "error";
    auto err = error_json("parse", e.what());
    err["line"] = e.line();
    err["column"] = e.column();
    out.report["error"] = err;
  } catch (const InputError& e) {
    out.status = kExitInput;
    out.report["status"] = "error";
    out.report["error"] = error_json("input", e.what());
  } catch (const InternalError& e) {
    out.status = kExitFail;
    out.report["status"] = "error";
    out.report["error"] = error_json("internal", e.what());
  }
  return out;
}

namespace {

void flatten(const Json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_object(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

bool is_flat(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  return std::all_of(j.begin(), j.end(),
                     [](const Json& x) { return (x.is_primitive() && !x.is_string()) || (x.is_array() && is_flat(x)); });
}

// Indented JSON that keeps arrays of numbers (and nested such arrays) on
// one line.
void pretty(const Json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' '), close(static_cast<std::size_t>(indent), ' ');
  if (is_flat(j)) {
    os << j.dump(-1, ' ', false, Json::error_handler_t::replace);
    return;
  }
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      os << pad << Json(it.key()).dump() << ": ";
      pretty(it.value(), indent + 2, os);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << close << '}';
    return;
  }
  os << "[\n";
  for (std::size_t i = 0; i < j.size(); ++i) {
    os << pad;
    pretty(j[i], indent + 2, os);
    os << (i + 1 < j.size() ? ",\n" : "\n");
  }
  os << close << ']';
}

}  // namespace

std::string render_report(const Json& report, const std::string& format) {
  if (format == "table") {
    std::ostringstream os;
    flatten(report, "", os);
    return os.str();
  }
  std::ostringstream os;
  pretty(report, 0, os);
  os << '\n';
  return os.str();
}

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frobenius splitting and Bott vanishing workbench for toric varieties"};
  app.require_subcommand(1);
  app.fallthrough();
  SessionConfig config;
  CommandArgs args;
  app.add_option("--prime", config.prime, "prime p (<= 97)");
  app.add_option("--box-margin", config.box_margin, "degree box margin (default rank + 1)");
  app.add_option("--seed", config.seed, "random seed");
  app.add_option("--format", config.format, "json or table");
  app.add_option("--max-matrix", config.max_matrix, "largest dense elimination (columns)");
  app.add_option("--max-grades", config.max_grades, "largest degree box (grades)");

  auto add = [&](const std::string& name, const std::string& help) { return app.add_subcommand(name, help); };
  add("witt-table", "W2(F_p) tables and ring-axiom check");
  add("dual", "dual cone")->add_option("--cone", args.cone, "generators, e.g. \"1,0;1,2\"")->required();
  add("hilbert", "Hilbert basis of a cone in M")->add_option("--cone", args.cone, "generators")->required();
  add("check-fan", "validate a fan file")->add_option("--fan", args.fan)->required();
  auto* ample = add("check-ample", "ampleness of a divisor");
  ample->add_option("--fan", args.fan)->required();
  ample->add_option("--divisor", args.divisor);
  auto* coh = add("cohomology", "graded Čech cohomology of twisted forms");
  coh->add_option("--fan", args.fan)->required();
  coh->add_option("--divisor", args.divisor);
  coh->add_option("--form", args.form, "form degree (default: all)");
  auto* bott = add("bott-verify", "Bott vanishing for an ample divisor");
  bott->add_option("--fan", args.fan)->required();
  bott->add_option("--divisor", args.divisor);
  add("frobenius-verify", "Frobenius lift gluing")->add_option("--fan", args.fan)->required();
  auto* sigma = add("sigma-verify", "splitting identities and graded Cartier");
  sigma->add_option("--fan", args.fan)->required();
  sigma->add_option("--samples", args.samples, "random forms per chart");
  add("degeneration", "E1 degeneration")->add_option("--fan", args.fan)->required();
  add("quadric", "quadric non-vanishing")->add_option("--n", args.n)->required();
  add("incidence", "incidence variety non-vanishing")->add_option("--n", args.n)->required();

  std::vector<std::string> rev(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  const auto name = app.get_subcommands().front()->get_name();
  const auto outcome = run_subcommand(name, args, config);
  out << render_report(outcome.report, config.format == "table" ? "table" : "json");
  if (outcome.report.contains("error")) err << "error: " << outcome.report["error"]["message"].get<std::string>() << "\n";
  return outcome.status;
}

}  // namespace frobtoric
