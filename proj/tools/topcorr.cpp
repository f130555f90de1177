// topcorr: load, generate, compose and verify finite topological correspondences.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "topcorr/catalog.hpp"
#include "topcorr/suite.hpp"

namespace {

using namespace topcorr;
using io::Json;

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_input = 2;

struct Common {
  std::string file;
  bool json = false;
  bool timings = false;
};

int emit(const Report& r, const Common& c) {
  if (c.json)
    std::cout << render_json(r, c.timings).dump(2) << "\n";
  else
    std::cout << render_text(r, c.timings);
  return r.ok() ? exit_pass : exit_fail;
}

/// "X" or "X*Y" (composite with the default cochain, or the given one).
struct Operand {
  Correspondence corr;
  std::optional<Composite> composite;
};

ZeroCochain load_cochain(const io::Instance& inst, const std::string& ref, const Composite& c) {
  for (const auto& e : inst.cochains)
    if (e.name == ref) return io::cochain_on(e, c);
  std::ifstream in(ref);
  if (!in) throw SchemaError("cochain '" + ref + "' is neither a cochain of the instance nor a readable file");
  std::stringstream ss;
  ss << in.rdbuf();
  Json j;
  try {
    j = Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(ref + ": " + e.what());
  }
  io::CochainEntry e{ref, c.first.name(), c.second.name(), {}};
  const Json& values = j.contains("values") ? j["values"] : j;
  if (!values.is_array()) throw SchemaError(ref + ": expected an array of [x, y, value]");
  for (const auto& v : values) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_string() || !v[1].is_string() || !v[2].is_string())
      throw SchemaError(ref + ": expected entries [x, y, \"value\"]");
    e.values.emplace_back(v[0].get<std::string>(), v[1].get<std::string>(), parse_rational(v[2].get<std::string>()));
  }
  return io::cochain_on(e, c);
}

Operand resolve(const io::Instance& inst, const std::string& expr, const std::string& cochain = {}) {
  auto star = expr.find('*');
  if (star == std::string::npos) {
    if (!cochain.empty()) throw SchemaError("--cochain applies to a composite operand X*Y");
    return {inst.correspondence(expr), std::nullopt};
  }
  Correspondence x = inst.correspondence(expr.substr(0, star));
  Correspondence y = inst.correspondence(expr.substr(star + 1));
  Composite c = compose(x, y);
  if (!cochain.empty()) c = compose(x, y, load_cochain(inst, cochain, c));
  return {c.result, c};
}

Json correspondence_json(const Correspondence& c) {
  const Bispace& x = c.space();
  Json j;
  j["name"] = c.name();
  j["left"] = c.left().g().name();
  j["right"] = c.right().g().name();
  j["points"] = Json::array();
  for (Index p = 0; p < x.size(); ++p)
    j["points"].push_back({{"name", x.name(p)},
                           {"rho", c.left().g().unit_name(x.rho(p))},
                           {"sigma", c.right().g().unit_name(x.sigma(p))},
                           {"weight", to_string(c.lambda(p))}});
  j["adjoining"] = Json::array();
  const Groupoid& g = c.left().g();
  for (Index a = 0; a < g.arrow_count(); ++a)
    for (Index p = 0; p < x.size(); ++p)
      if (g.src(a) == x.rho(p)) j["adjoining"].push_back({g.arrow_name(a), x.name(p), to_string(c.delta(a, p))});
  return j;
}

void print_correspondence(const Correspondence& c) {
  const Bispace& x = c.space();
  std::cout << c.name() << ": " << c.left().g().name() << " -> " << c.right().g().name() << ", " << x.size()
            << " points\n";
  for (Index p = 0; p < x.size(); ++p)
    std::cout << "  " << x.name(p) << "  rho=" << c.left().g().unit_name(x.rho(p))
              << "  sigma=" << c.right().g().unit_name(x.sigma(p)) << "  weight=" << to_string(c.lambda(p)) << "\n";
  std::cout << "  adjoining " << suite_detail::delta_table(c) << "\n";
}

int cmd_compose(const Common& com, const std::string& a, const std::string& b, const std::string& cochain,
                const std::string& out) {
  io::Instance inst = io::load_instance(com.file);
  Correspondence x = inst.correspondence(a);
  Correspondence y = inst.correspondence(b);
  Composite c = compose(x, y);
  if (!cochain.empty()) c = compose(x, y, load_cochain(inst, cochain, c));
  ValidationReport r = validate_correspondence(c.result);
  bool formula = composite_delta_formula(c) == c.result.delta();
  if (com.json) {
    Json j = correspondence_json(c.result);
    Json b_values = Json::array();
    for (Index k = 0; k < c.fibre.size(); ++k)
      b_values.push_back({x.space().name(c.fibre.pairs[k].first), y.space().name(c.fibre.pairs[k].second),
                          to_string(c.cochain[k])});
    j["cochain"] = b_values;
    j["valid"] = r.ok();
    j["adjoining_formula"] = formula;
    if (!r.ok()) j["violations"] = r.summary();
    std::cout << j.dump(2) << "\n";
  } else {
    print_correspondence(c.result);
    std::cout << "  cochain";
    for (Index k = 0; k < c.fibre.size(); ++k)
      std::cout << " (" << x.space().name(c.fibre.pairs[k].first) << "," << y.space().name(c.fibre.pairs[k].second)
                << ")=" << to_string(c.cochain[k]);
    std::cout << "\n  valid: " << r.summary() << "\n  adjoining formula: " << (formula ? "pass" : "fail") << "\n";
  }
  if (!out.empty()) {
    io::Instance o = io::instance_from(c.result.name(), {x, y, c.result}, {});
    o.cochains.push_back(io::cochain_entry("b", c, c.cochain));
    io::save_instance(o, out);
  }
  return r.ok() && formula ? exit_pass : exit_fail;
}

int cmd_iso(const Common& com, const std::string& a, const std::string& b, const std::string& cochain) {
  io::Instance inst = io::load_instance(com.file);
  Operand s = resolve(inst, a);
  Operand t = resolve(inst, b, cochain);
  auto iso = find_iso(s.corr, t.corr);
  std::optional<std::vector<Rational>> expected;
  if (iso && s.composite && t.composite && same_correspondence(s.composite->first, t.composite->first) &&
      same_correspondence(s.composite->second, t.composite->second))
    expected = cochain_quotient(s.composite->cochain, t.composite->cochain, s.composite->middle, s.composite->quotient);
  bool ok = iso.has_value();
  ValidationReport vr;
  if (iso) vr = validate_iso(*iso);
  ok = ok && vr.ok();
  bool matches = true;
  if (iso && expected) {
    bool identity = true;
    for (Index i = 0; i < iso->map.size(); ++i) identity = identity && iso->map[i] == i;
    matches = identity && iso->derivative == *expected;
    ok = ok && matches;
  }
  if (com.json) {
    Json j;
    j["source"] = s.corr.name();
    j["target"] = t.corr.name();
    j["found"] = iso.has_value();
    if (iso) {
      j["map"] = Json::object();
      j["derivative"] = Json::object();
      for (Index p = 0; p < iso->map.size(); ++p) {
        j["map"][s.corr.space().name(p)] = t.corr.space().name(iso->map[p]);
        j["derivative"][t.corr.space().name(iso->map[p])] = to_string(iso->derivative[iso->map[p]]);
      }
      j["valid"] = vr.ok();
      if (expected) j["derivative_is_cochain_ratio"] = matches;
    }
    std::cout << j.dump(2) << "\n";
  } else if (!iso) {
    std::cout << "no isomorphism " << s.corr.name() << " -> " << t.corr.name() << "\n";
  } else {
    std::cout << "isomorphism " << s.corr.name() << " -> " << t.corr.name() << "\n";
    for (Index p = 0; p < iso->map.size(); ++p)
      std::cout << "  " << s.corr.space().name(p) << " -> " << t.corr.space().name(iso->map[p])
                << "  M=" << to_string(iso->derivative[iso->map[p]]) << "\n";
    std::cout << "  valid: " << vr.summary() << "\n";
    if (expected) std::cout << "  derivative equals descended cochain ratio: " << (matches ? "yes" : "no") << "\n";
  }
  return ok ? exit_pass : exit_fail;
}

int cmd_gen(const std::string& name, const std::vector<std::string>& params, const std::string& out) {
  catalog::Params p;
  for (const auto& kv : params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw SchemaError("parameter '" + kv + "' is not of the form key=value");
    p[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  io::Instance inst = catalog::gen(name, p);
  if (out.empty())
    std::cout << io::dump_instance(inst);
  else
    io::save_instance(inst, out);
  return exit_pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite topological correspondences: construction and verification"};
  app.require_subcommand(1);
  Common com;
  std::string suite_name = "all", cochain, out, gen_name, first, second;
  double tolerance = 1e-9;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  bool serial = false;
  std::vector<std::string> params;

  auto* validate = app.add_subcommand("validate", "Run the definition checks on an instance file");
  validate->add_option("file", com.file, "Instance file")->required();
  validate->add_flag("--json", com.json, "Emit the report as JSON");
  validate->add_flag("--timings", com.timings, "Include per-check timings");

  auto* verify = app.add_subcommand("verify", "Run a check suite on an instance file");
  verify->add_option("file", com.file, "Instance file (not needed for --suite measures)");
  verify->add_option("--suite", suite_name, "definition, composition, bicategory, functor, measures or all")
      ->check(CLI::IsMember({"definition", "composition", "bicategory", "functor", "measures", "all"}));
  verify->add_option("--tolerance", tolerance, "Absolute tolerance for the C*-level identities")
      ->check(CLI::PositiveNumber);
  verify->add_option("--count", count, "Random instances for the measure suite");
  verify->add_option("--seed", seed, "First seed for the measure suite");
  verify->add_flag("--serial", serial, "Run checks on one thread");
  verify->add_flag("--json", com.json, "Emit the report as JSON");
  verify->add_flag("--timings", com.timings, "Include per-check timings");

  auto* comp = app.add_subcommand("compose", "Compose two correspondences of an instance");
  comp->add_option("file", com.file, "Instance file")->required();
  comp->add_option("first", first, "Correspondence X")->required();
  comp->add_option("second", second, "Correspondence Y")->required();
  comp->add_option("--cochain", cochain, "Cochain name in the instance, or a JSON file of [x, y, value]");
  comp->add_option("-o,--out", out, "Write the composite and its cochain as an instance");
  comp->add_flag("--json", com.json, "Emit JSON");

  auto* iso = app.add_subcommand("iso", "Search for an isomorphism between two correspondences");
  iso->add_option("file", com.file, "Instance file")->required();
  iso->add_option("source", first, "Correspondence name or composite X*Y")->required();
  iso->add_option("target", second, "Correspondence name or composite X*Y")->required();
  iso->add_option("--cochain", cochain, "Cochain for a composite target");
  iso->add_flag("--json", com.json, "Emit JSON");

  auto* gen = app.add_subcommand("gen", "Generate a bundled example instance");
  gen->add_option("name", gen_name, "Generator name")->required();
  gen->add_option("-p,--param", params, "Generator parameter key=value");
  gen->add_option("-o,--out", out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_pass : exit_input;
  }

  try {
    if (validate->parsed()) {
      io::Instance inst = io::load_instance(com.file);
      return emit(run_suite(inst, Suite::definition), com);
    }
    if (verify->parsed()) {
      SuiteOptions opt;
      opt.tolerance = tolerance;
      opt.random_instances = count;
      opt.seed = seed;
      opt.parallel = !serial;
      Suite s = *parse_suite(suite_name);
      if (s == Suite::measures) return emit(run_suite(io::Instance{}, s, opt), com);
      if (com.file.empty()) throw SchemaError("verify: an instance file is required for this suite");
      io::Instance inst = io::load_instance(com.file);
      return emit(run_suite(inst, s, opt), com);
    }
    if (comp->parsed()) return cmd_compose(com, first, second, cochain, out);
    if (iso->parsed()) return cmd_iso(com, first, second, cochain);
    if (gen->parsed()) return cmd_gen(gen_name, params, out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_input;
  } catch (const CapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return exit_input;
  } catch (const SchemaError& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return exit_input;
  } catch (const MismatchError& e) {
    std::cerr << "mismatch: " << e.what() << "\n";
    return exit_input;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_fail;
  }
  return exit_input;
}
