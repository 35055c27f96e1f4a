// kinalg: exact analysis of single-loop revolute mechanisms.
//
// exit codes: 0 success, 1 verification failure, 2 Groebner budget
// exhausted, 3 bad input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "kinalg/kinalg.hpp"

using namespace kinalg;

namespace {

enum Exit { ok = 0, failed = 1, budget = 2, bad_input = 3 };

struct Common {
  std::size_t budget = 0;
  std::string json_path;
  /// Human-readable text goes to stdout unless the JSON does.
  std::ostream& text() const {
    static std::ostringstream sink;
    return json_path == "-" ? sink : std::cout;
  }
  GroebnerOptions gb() const {
    GroebnerOptions o;
    if (budget) o.budget = budget;
    return o;
  }
};

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

BennettParameters parse_m(const std::string& text) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string tok;
  std::size_t col = 1;
  while (std::getline(ss, tok, ',')) {
    v.push_back(detail::parse_exact({tok, col}, 1));
    col += tok.size() + 1;
  }
  if (v.size() != 3) throw ParseError("--m needs three values m0,m1,m2", 1, 1);
  BennettParameters m{v[0], v[1], v[2]};
  m.validate();
  return m;
}

int report_checks(const std::vector<CheckResult>& checks) {
  bool all = true;
  for (auto& c : checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    all = all && c.pass;
  }
  return all ? ok : failed;
}

int emit_report(const AnalysisReport& rep, const Common& c, nlohmann::json extra = {}) {
  c.text() << report_text(rep);
  if (!c.json_path.empty()) {
    auto j = report_json(rep);
    if (!extra.is_null()) j.update(extra);
    write_out(c.json_path, j.dump(2) + "\n");
  }
  return rep.dimension >= 0 ? ok : failed;
}

int run_verify_core(std::size_t count, unsigned seed, const Common& c) {
  auto checks = verify_canonical_decomposition(c.gb());
  auto euler = verify_euler_suite(count, seed);
  checks.insert(checks.end(), euler.begin(), euler.end());
  return report_checks(checks);
}

int run_bricard(bool golden, const std::string& dir, const Common& c) {
  auto [spec, init] = bricard_preset();
  AnalysisOptions opts;
  opts.gb = c.gb();
  auto rep = analyze(spec, init, opts);
  int code = emit_report(rep, c);
  if (golden) {
    for (auto& g : bricard_golden_diff(rep, dir, opts.gb)) {
      std::cout << "golden " << g.file << (g.diff.empty() ? ": no differences\n" : ":\n");
      for (auto& m : g.diff.missing) std::cout << "- " << m << '\n';
      for (auto& m : g.diff.extra) std::cout << "+ " << m << '\n';
      if (!g.diff.empty()) code = failed;
    }
  }
  return code;
}

int run_bennett(const std::string& mtext, const Common& c) {
  auto m = parse_m(mtext);
  auto geo = bennett_geometry_json(m);
  auto g = bennett_geometry(m);
  auto cond = bennett_conditions_check(g.p, g.chi);
  auto [spec, init] = bennett_preset(m);
  auto ic = bennett_initial_check(m, init);
  c.text() << "r = " << g.r << '\n'
            << "cos phi0 = " << cond.cos_phi0 << ", cos phi1 = " << cond.cos_phi1 << '\n'
            << "equal sides " << cond.cond1 << ", equal twists " << cond.cond2
            << ", sine law " << cond.cond3_squared << ", axes orthogonal to sides "
            << cond.orthogonal_axes << '\n'
            << "initial configuration exact " << ic.ok() << '\n';
  AnalysisOptions opts;
  opts.gb = c.gb();
  auto rep = analyze(spec, init, opts);
  int code = emit_report(rep, c, {{"geometry", geo}, {"initial_exact", ic.ok()}});
  if (!(cond.cond1 && cond.cond2 && cond.cond3_squared && cond.orthogonal_axes && ic.ok()))
    code = failed;
  return code;
}

int run_analyze(const std::string& input, const Common& c) {
  auto f = read_mechanism_file(input);
  AnalysisOptions opts;
  opts.gb = c.gb();
  return emit_report(analyze(f.spec, f.init, opts), c);
}

int run_sample(const std::string& preset, const std::string& input, const std::string& mtext,
               std::size_t count, const std::string& format, double tol,
               const std::string& output, const Common& c) {
  MechanismFile f;
  if (!input.empty()) f = read_mechanism_file(input);
  else if (preset == "bricard") std::tie(f.spec, f.init) = bricard_preset();
  else if (preset == "bennett") std::tie(f.spec, f.init) = bennett_preset(parse_m(mtext));
  else throw InvalidArgument("sample needs --preset bricard|bennett or --input");
  AnalysisOptions opts;
  opts.gb = c.gb();
  auto rep = analyze(f.spec, f.init, opts);
  auto P = parametrization_of(rep);
  if (!P) throw InvalidArgument("mechanism '" + rep.mechanism + "' has no parametrization");
  auto curve = sample_curve(rep, *P, count);
  write_out(output, format == "json" ? curve_json(curve).dump(2) + "\n" : curve_csv(curve));
  double worst = curve.max_residual();
  std::cerr << curve.rows.size() << " rows, max residual " << format_double(worst) << '\n';
  return worst <= tol ? ok : failed;
}

int run_gb(const std::string& input, const std::string& order_text, const Common& c) {
  auto f = read_ideal_file(input);
  MonomialOrder order = order_text.empty()
                            ? f.order.value_or(MonomialOrder::degrevlex(f.ideal.universe->size()))
                            : MonomialOrder::parse(order_text, *f.ideal.universe);
  auto G = buchberger(f.ideal, order, c.gb());
  std::cout << format_basis(G);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact algebraic analysis of revolute mechanisms"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--budget", common.budget,
                 "S-pair reductions per Groebner computation (default: $KINALG_GB_BUDGET or 10^6)");

  std::size_t count = 500;
  unsigned seed = 1;
  auto* verify = app.add_subcommand("verify-core", "Euler identities and the joint decomposition");
  verify->add_option("--count", count, "random instances")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);

  bool golden = false;
  std::string golden_dir = KINALG_GOLDEN_DIR;
  auto* bricard = app.add_subcommand("bricard", "analyze the cube 6R loop");
  bricard->add_flag("--golden", golden, "compare with the stored bases");
  bricard->add_option("--golden-dir", golden_dir);
  bricard->add_option("--json", common.json_path, "write the JSON report ('-' for stdout)");

  std::string mtext;
  auto* bennett = app.add_subcommand("bennett", "analyze the 4R loop at m0,m1,m2");
  bennett->add_option("--m", mtext, "p/q,p/q,p/q")->required();
  bennett->add_option("--json", common.json_path, "write the JSON report ('-' for stdout)");

  std::string input;
  auto* an = app.add_subcommand("analyze", "analyze a mechanism file");
  an->add_option("--input", input)->required();
  an->add_option("--json", common.json_path, "write the JSON report ('-' for stdout)");

  std::string preset, format = "csv", output;
  std::size_t samples = 360;
  double tol = 1e-9;
  auto* sample = app.add_subcommand("sample", "write parametrization samples");
  sample->add_option("--preset", preset)->check(CLI::IsMember({"bricard", "bennett"}));
  sample->add_option("--input", input);
  sample->add_option("--m", mtext, "p/q,p/q,p/q for the bennett preset");
  sample->add_option("--count", samples)->check(CLI::PositiveNumber);
  sample->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  sample->add_option("--tolerance", tol)->check(CLI::PositiveNumber);
  sample->add_option("--output", output);

  std::string order_text;
  auto* gb = app.add_subcommand("gb", "reduced Groebner basis of an ideal file");
  gb->add_option("--input", input)->required();
  gb->add_option("--order", order_text, "lex | degrevlex | block:...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : bad_input;
  }

  try {
    if (*verify) return run_verify_core(count, seed, common);
    if (*bricard) return run_bricard(golden, golden_dir, common);
    if (*bennett) return run_bennett(mtext, common);
    if (*an) return run_analyze(input, common);
    if (*sample) return run_sample(preset, input, mtext, samples, format, tol, output, common);
    if (*gb) return run_gb(input, order_text, common);
  } catch (const BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return budget;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return failed;
  } catch (const ParseError& e) {
    std::cerr << (input.empty() ? "" : input + ":") << e.what() << '\n';
    return bad_input;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bad_input;
  }
  return bad_input;
}
