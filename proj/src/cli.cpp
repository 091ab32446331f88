#include "matpoly/cli.hpp"

#include <fstream>
#include <memory>

#include <CLI11.hpp>

#include "matpoly/error.hpp"
#include "matpoly/hermspace.hpp"
#include "matpoly/instances.hpp"
#include "matpoly/io.hpp"
#include "matpoly/nondegen.hpp"
#include "matpoly/solver.hpp"
#include "matpoly/topdegree.hpp"

namespace matpoly {

namespace {

struct Settings {
  int threads = 1;
  std::string out_path;
  std::vector<std::string> polys;
  std::string point;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int starts = 0;
  std::string method = "auto";
  bool all = false;
  int n = 2;
  int k = 1;
  int degree = 3;
  int equation = 1;
  std::string leading = "cube";
};

Json base_report(const std::string& command, std::uint64_t seed, Json options) {
  Json report;
  report["schema"] = kSchema;
  report["command"] = command;
  report["seed"] = seed;
  report["options"] = std::move(options);
  return report;
}

void emit(const std::string& text, const Settings& s, std::ostream& out) {
  if (s.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(s.out_path, std::ios::binary);
  if (!file) throw InvalidInput(s.out_path + ": cannot write output file");
  file << text;
}

std::vector<FreeMatrixPoly> load_polys(const std::vector<std::string>& paths) {
  std::vector<FreeMatrixPoly> out;
  for (const auto& path : paths) out.push_back(parse_poly_file(path));
  return out;
}

int cmd_eval(const Settings& s, std::ostream& out) {
  const std::vector<FreeMatrixPoly> polys = load_polys(s.polys);
  const MatrixTuple Xs = parse_point_file(s.point);
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].n() != Xs.front().rows()) {
      throw InvalidInput("poly " + s.polys[i] + " has n=" + std::to_string(polys[i].n()) +
                         " but the point has n=" + std::to_string(Xs.front().rows()));
    }
  }
  Json options;
  options["polys"] = s.polys;
  options["point"] = s.point;
  Json report = base_report("eval", 0, std::move(options));
  Json values = Json::array();
  for (const auto& p : polys) {
    const ComplexMatrix v = evaluate(p, Xs);
    Json item;
    item["value"] = matrix_to_json(v);
    item["norm_h"] = norm_h(v);
    item["hermitian"] = is_hermitian(v);
    item["degree"] = degree_to_json(p.degree());
    values.push_back(std::move(item));
  }
  report["values"] = std::move(values);
  report["exit_code"] = static_cast<int>(kExitOk);
  emit(serialize(report), s, out);
  return kExitOk;
}

int cmd_solve(const Settings& s, std::ostream& out) {
  const std::vector<FreeMatrixPoly> polys = load_polys(s.polys);
  SolveOptions options;
  options.tol = s.tol;
  options.seed = s.seed;
  if (s.starts > 0) options.max_starts = s.starts;
  options.method = parse_solve_method(s.method);
  options.all = s.all;
  options.threads = s.threads;
  const SolveReport result = solve_system(polys, options);

  Json opts;
  opts["polys"] = s.polys;
  opts["tol"] = options.tol;
  opts["max_starts"] = options.max_starts;
  opts["max_newton_iters"] = options.max_newton_iters;
  opts["homotopy_steps"] = options.homotopy_steps;
  opts["min_step"] = options.min_step;
  opts["method"] = to_string(options.method);
  opts["all"] = options.all;
  opts["screen_starts"] = options.screen_starts;
  Json report = base_report("solve", s.seed, std::move(opts));
  report["solve"] = to_json(result);
  const int code = result.status == SolveStatus::kSolved ? kExitOk : kExitBudgetExhausted;
  report["exit_code"] = code;
  emit(serialize(report), s, out);
  return code;
}

FreeMatrixPoly leading_of_file(const std::string& path) {
  const FreeMatrixPoly p = parse_poly_file(path);
  return leading_form(p);
}

int cmd_topdeg(const Settings& s, std::ostream& out) {
  if (s.polys.size() != 1) throw InvalidInput("topdeg takes exactly one --form");
  const SphereMap map(leading_of_file(s.polys.front()));
  DegreeOptions options;
  options.seed = s.seed;
  options.starts = s.starts;
  options.threads = s.threads;
  const DegreeReport result = brouwer_degree(map, options);
  mod2_degree(result);

  Json opts;
  opts["form"] = s.polys.front();
  opts["starts"] = result.starts_used;
  opts["resample_budget"] = options.resample_budget;
  opts["condition_limit"] = options.condition_limit;
  opts["screen_starts"] = options.screen_starts;
  Json report = base_report("topdeg", s.seed, std::move(opts));
  report["form_degree"] = map.degree();
  report["n"] = map.n();
  report["degree"] = to_json(result);
  const int code = result.agreement ? kExitOk : kExitBudgetExhausted;
  report["exit_code"] = code;
  emit(serialize(report), s, out);
  return code;
}

int cmd_nondeg(const Settings& s, std::ostream& out) {
  if (s.polys.empty()) throw InvalidInput("nondeg needs at least one --form");
  std::vector<FreeMatrixPoly> forms;
  for (const auto& path : s.polys) forms.push_back(leading_of_file(path));
  NondegOptions options;
  options.seed = s.seed;
  if (s.starts > 0) options.starts = s.starts;
  options.threads = s.threads;
  const NondegReport result = min_norm_on_sphere(forms, options);

  Json opts;
  opts["forms"] = s.polys;
  opts["starts"] = options.starts;
  opts["gradient_iters"] = options.gradient_iters;
  opts["polish_iters"] = options.polish_iters;
  Json report = base_report("nondeg", s.seed, std::move(opts));
  report["nondeg"] = to_json(result);
  if (result.verdict == Verdict::kDegenerateWitness) {
    report["witness_verified"] = verify_witness(forms, result.minimizer);
  }
  report["exit_code"] = static_cast<int>(kExitOk);
  emit(serialize(report), s, out);
  return kExitOk;
}

int cmd_gen(const Settings& s, std::ostream& out) {
  InstanceSpec spec;
  spec.n = s.n;
  spec.k = s.k;
  spec.degree = s.degree;
  spec.leading = parse_leading_kind(s.leading);
  spec.seed = s.seed;
  spec.equation = s.equation - 1;
  emit(serialize(poly_to_json(gen_instance(spec))), s, out);
  return kExitOk;
}

int cmd_selfcheck(std::ostream& out) {
  bool all = true;
  for (const auto& item : run_selfcheck()) {
    out << (item.passed ? "PASS " : "FAIL ") << item.name << " (" << item.detail << ")\n";
    all = all && item.passed;
  }
  return all ? kExitOk : kExitNumericalFailure;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Self-adjoint matrix polynomial equations: degrees, screens, solutions", "matpoly"};
  app.require_subcommand(1);
  app.add_option("--threads", s.threads, "Worker threads for multistart searches")
      ->check(CLI::PositiveNumber);
  app.fallthrough();

  auto* eval = app.add_subcommand("eval", "Evaluate polynomials at a point");
  eval->add_option("--poly", s.polys, "PolyFile (repeatable)")->required();
  eval->add_option("--point", s.point, "PointFile")->required();
  eval->add_option("--out", s.out_path, "Write the report here");

  auto* solve = app.add_subcommand("solve", "Find a self-adjoint solution");
  solve->add_option("--poly", s.polys, "PolyFile, one per equation")->required();
  solve->add_option("--seed", s.seed);
  solve->add_option("--tol", s.tol)->check(CLI::PositiveNumber);
  solve->add_option("--starts", s.starts)->check(CLI::PositiveNumber);
  solve->add_option("--method", s.method)->check(CLI::IsMember({"newton", "homotopy", "auto"}));
  solve->add_flag("--all", s.all, "Collect all solutions found within the budget");
  solve->add_option("--out", s.out_path);

  auto* topdeg = app.add_subcommand("topdeg", "Brouwer degree of the leading form's sphere map");
  topdeg->add_option("--form", s.polys, "PolyFile")->required();
  topdeg->add_option("--seed", s.seed);
  topdeg->add_option("--starts", s.starts)->check(CLI::PositiveNumber);
  topdeg->add_option("--out", s.out_path);

  auto* nondeg = app.add_subcommand("nondeg", "Non-degeneracy screen of leading forms");
  nondeg->add_option("--form", s.polys, "PolyFile (repeatable for tuples)")->required();
  nondeg->add_option("--seed", s.seed);
  nondeg->add_option("--starts", s.starts)->check(CLI::PositiveNumber);
  nondeg->add_option("--out", s.out_path);

  auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
  gen->add_option("--n", s.n)->required();
  gen->add_option("--k", s.k)->required();
  gen->add_option("--degree", s.degree)->required();
  gen->add_option("--leading", s.leading)->required();
  gen->add_option("--seed", s.seed)->required();
  gen->add_option("--equation", s.equation, "1-based equation index for k > 1");
  gen->add_option("--out", s.out_path);

  auto* selfcheck = app.add_subcommand("selfcheck", "Run the built-in identity suite");

  std::vector<const char*> argv;
  argv.push_back("matpoly");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    if (*eval) return cmd_eval(s, out);
    if (*solve) return cmd_solve(s, out);
    if (*topdeg) return cmd_topdeg(s, out);
    if (*nondeg) return cmd_nondeg(s, out);
    if (*gen) return cmd_gen(s, out);
    if (*selfcheck) return cmd_selfcheck(out);
  } catch (const DegeneracyDetected& e) {
    err << "error: " << e.what() << "\n";
    Json report = base_report(app.get_subcommands().front()->get_name(), s.seed, Json::object());
    report["error"] = e.what();
    Json witness = Json::array();
    for (const auto& X : e.witness()) witness.push_back(matrix_to_json(X));
    report["witness"] = std::move(witness);
    report["exit_code"] = static_cast<int>(kExitNumericalFailure);
    try {
      emit(serialize(report), s, out);
    } catch (const Error& write_error) {
      err << "error: " << write_error.what() << "\n";
    }
    return kExitNumericalFailure;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::kInvalidInput:
        return kExitInvalidInput;
      case ErrorKind::kResource:
      case ErrorKind::kNoRegularValue:
        return kExitBudgetExhausted;
      default:
        return kExitNumericalFailure;
    }
  }
  return kExitInvalidInput;
}

}  // namespace matpoly
