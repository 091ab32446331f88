#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "matpoly/cli.hpp"
#include "matpoly/error.hpp"
#include "matpoly/hermspace.hpp"
#include "matpoly/instances.hpp"
#include "matpoly/io.hpp"

using namespace matpoly;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "matpoly_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path path = scratch(name);
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string write_poly(const std::string& name, const FreeMatrixPoly& p) {
  return write(name, serialize(poly_to_json(p)));
}

std::string write_point(const std::string& name, const MatrixTuple& Xs) {
  return write(name, serialize(point_to_json(Xs)));
}

}  // namespace

TEST_CASE("float formatting is lossless and always fractional") {
  CHECK(serialize(Json(1.0)) == "1.0\n");
  CHECK(serialize(Json(-0.5)) == "-0.5\n");
  CHECK(serialize(Json(0.1)) == "0.10000000000000001\n");
  CHECK(serialize(Json(1e300)) == "1.0000000000000001e+300\n");
  for (double v : {1.0 / 3.0, -2.718281828459045, 6.02214076e23, 5e-324}) {
    CHECK(Json::parse(serialize(Json(v))).get<double>() == v);
  }
}

TEST_CASE("gen, parse and serialize round trip byte for byte") {
  for (const char* leading : {"cube", "random", "posdef-AXAXA", "paper-quadratic"}) {
    const std::string degree = std::string(leading) == "paper-quadratic" ? "2" : "3";
    const std::string path = scratch(std::string("gen_") + leading + ".json").string();
    const Run g = run({"gen", "--n", "2", "--k", "1", "--degree", degree, "--leading", leading,
                       "--seed", "7", "--out", path});
    REQUIRE(g.code == 0);
    const std::string first = read(path);
    const std::string second = serialize(poly_to_json(parse_poly_file(path)));
    CHECK(first == second);

    const Run again = run({"gen", "--n", "2", "--k", "1", "--degree", degree, "--leading", leading,
                           "--seed", "7"});
    CHECK(again.out == first);
  }
}

TEST_CASE("generated instances have the stated structure") {
  InstanceSpec cube;
  cube.seed = 7;
  const FreeMatrixPoly p = gen_instance(cube);
  CHECK(is_self_adjoint(p));
  CHECK(algebra_equal(graded_component(p, 3), power_form(2, 1, 0, 3)));

  InstanceSpec quad;
  quad.leading = LeadingKind::kPaperQuadratic;
  quad.degree = 2;
  const FreeMatrixPoly q = gen_instance(quad);
  const auto a = scalar_expand(graded_component(q, 2));
  const auto b = scalar_expand(paper_quadratic_form());
  for (int i = 0; i < 4; ++i) CHECK(a[i].approx_equal(b[i], 1e-12));

  InstanceSpec posdef;
  posdef.leading = LeadingKind::kPosdefAXAXA;
  posdef.seed = 2;
  CHECK(assess({leading_form(gen_instance(posdef))}) == Verdict::kNondegenerateLikely);

  CHECK(run({"gen", "--n", "3", "--k", "1", "--degree", "2", "--leading", "paper-quadratic",
             "--seed", "1"}).code == 2);
  CHECK(run({"gen", "--n", "2", "--k", "1", "--degree", "3", "--leading", "quartic",
             "--seed", "1"}).code == 2);
  CHECK(run({"gen", "--n", "2", "--k", "2", "--degree", "3", "--leading", "cube",
             "--seed", "1", "--equation", "3"}).code == 2);
}

TEST_CASE("poly file parsing") {
  const FreeMatrixPoly q = parse_poly_text(serialize(poly_to_json(trivial_map_element())));
  CHECK(q.degree() == Degree::finite(2));
  CHECK(algebra_equal(q, trivial_map_element()));

  const FreeMatrixPoly zero = parse_poly_text(R"({"n": 2, "k": 1, "monomials": []})");
  CHECK(zero.degree().is_minus_infinity());
  CHECK(serialize(degree_to_json(zero.degree())) == "\"-inf\"\n");

  const std::string I = "[[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]";
  CHECK_THROWS_AS(parse_poly_text(R"({"n": 2, "k": 1, "monomials": [{"word": [1], "chain": [)" + I + "]}]}"),
                  InvalidInput);
  CHECK_THROWS_AS(parse_poly_text(R"({"n": 2, "k": 1, "monomials": [{"word": [0], "chain": [)" + I + ", " + I + "]}]}"),
                  InvalidInput);
  CHECK_THROWS_AS(parse_poly_text(R"({"n": 2, "k": 1, "monomials": [{"word": [], "chain": [[[1.0]]]}]})"),
                  InvalidInput);
  CHECK_THROWS_AS(parse_poly_text("{not json"), InvalidInput);
  CHECK_THROWS_AS(parse_poly_text(R"({"k": 1, "monomials": []})"), InvalidInput);
}

TEST_CASE("eval command") {
  const std::string zero = write("zero.json", R"({"n": 2, "k": 1, "monomials": []})");
  const std::string trivial = write_poly("trivial.json", trivial_map_element());
  const std::string point = write_point("point2.json", {random_hermitian(2, 3)});
  const Run r = run({"eval", "--poly", zero, "--poly", trivial, "--point", point});
  REQUIRE(r.code == 0);
  const Json report = Json::parse(r.out);
  CHECK(report["schema"] == kSchema);
  CHECK(report["command"] == "eval");
  CHECK(report["values"][0]["degree"] == "-inf");
  CHECK(report["values"][1]["degree"] == 2);
  CHECK(report["values"][1]["norm_h"].get<double>() <= 1e-12);

  const std::string point3 = write_point("point3.json", {random_hermitian(3, 3)});
  CHECK(run({"eval", "--poly", trivial, "--point", point3}).code == 2);

  const std::string mismatch = write("mismatch.json",
      R"({"n": 2, "k": 1, "monomials": [{"word": [1, 1], "chain": [[[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]]}]})");
  const Run bad = run({"eval", "--poly", mismatch, "--point", point});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("monomials[0]") != std::string::npos);

  const std::string broken = write("broken.json", "{\"n\": 2,");
  CHECK(run({"eval", "--poly", broken, "--point", point}).code == 2);
  CHECK(run({"eval", "--poly", scratch("missing.json").string(), "--point", point}).code == 2);

  ComplexMatrix N = ComplexMatrix::Zero(2, 2);
  N(0, 1) = 1.0;
  const std::string skew = write("skew.json", serialize(point_to_json({N})));
  CHECK(run({"eval", "--poly", trivial, "--point", skew}).code == 2);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"topdeg"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const std::string cube = write_poly("cube_usage.json", power_form(2, 1, 0, 3));
  CHECK(run({"solve", "--poly", cube, "--method", "bisection"}).code == 2);
  CHECK(run({"solve", "--poly", cube, "--tol", "-1"}).code == 2);
  CHECK(run({"--threads", "0", "selfcheck"}).code == 2);
}

TEST_CASE("topdeg command") {
  const std::string path = scratch("cube_gen.json").string();
  REQUIRE(run({"gen", "--n", "2", "--k", "1", "--degree", "3", "--leading", "cube", "--seed", "1",
               "--out", path}).code == 0);
  const std::string out = scratch("cube_deg.json").string();
  const Run r = run({"topdeg", "--form", path, "--seed", "3", "--out", out});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const Json report = Json::parse(read(out));
  CHECK(report["degree"]["degree_estimate"] == 1);
  CHECK(report["degree"]["agreement"] == true);
  CHECK(report["seed"] == 3);
  CHECK(report["exit_code"] == 0);

  const ComplexMatrix I = ComplexMatrix::Identity(2, 2);
  ComplexMatrix A = ComplexMatrix::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = -1.0;
  const std::string degenerate = write_poly("indef.json", FreeMatrixPoly::monomial({I, A, A, I}, {0, 0, 0}));
  const Run d = run({"topdeg", "--form", degenerate});
  CHECK(d.code == 4);
  const Json witness = Json::parse(d.out);
  CHECK(witness["witness"].size() == 1);
}

TEST_CASE("nondeg command") {
  const ComplexMatrix I = ComplexMatrix::Identity(2, 2);
  ComplexMatrix A = ComplexMatrix::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = -1.0;
  const std::string indef = write_poly("indef_nd.json", FreeMatrixPoly::monomial({I, A, A, I}, {0, 0, 0}));
  const Run r = run({"nondeg", "--form", indef, "--seed", "2"});
  REQUIRE(r.code == 0);
  const Json report = Json::parse(r.out);
  CHECK(report["nondeg"]["verdict"] == "degenerate-witness");
  CHECK(report["witness_verified"] == true);

  const std::string x = write_poly("x3.json", power_form(2, 2, 0, 3));
  const std::string y = write_poly("y3.json", power_form(2, 2, 1, 3));
  const Json tuple = Json::parse(run({"nondeg", "--form", x, "--form", y}).out);
  CHECK(tuple["nondeg"]["verdict"] == "nondegenerate-likely");
}

TEST_CASE("solve command") {
  const std::string path = scratch("posdef.json").string();
  REQUIRE(run({"gen", "--n", "2", "--k", "1", "--degree", "3", "--leading", "posdef-AXAXA",
               "--seed", "1", "--out", path}).code == 0);
  const Run r = run({"solve", "--poly", path, "--seed", "1"});
  REQUIRE(r.code == 0);
  const Json report = Json::parse(r.out);
  CHECK(report["solve"]["status"] == "solved");
  const MatrixTuple X = point_from_json(Json{{"n", 2}, {"Xs", report["solve"]["solutions"][0]["Xs"]}});
  CHECK(norm_h(evaluate(parse_poly_file(path), X)) <= 1e-10);
  CHECK(report["options"]["tol"].get<double>() == 1e-10);

  // Same inputs, same bytes.
  CHECK(run({"solve", "--poly", path, "--seed", "1"}).out == r.out);

  const std::string p1 = scratch("sys1.json").string();
  const std::string p2 = scratch("sys2.json").string();
  for (const auto& [eq, out] : {std::pair{"1", p1}, std::pair{"2", p2}}) {
    REQUIRE(run({"gen", "--n", "2", "--k", "2", "--degree", "3", "--leading", "cube", "--seed", "5",
                 "--equation", eq, "--out", out}).code == 0);
  }
  const Run sys = run({"solve", "--poly", p1, "--poly", p2, "--method", "homotopy"});
  CHECK(sys.code == 0);
  CHECK(Json::parse(sys.out)["solve"]["solutions"][0]["Xs"].size() == 2);
}

TEST_CASE("selfcheck passes and catches a broken involution") {
  const Run r = run({"selfcheck"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);

  const auto count_failures = [](const SelfcheckHooks& hooks) {
    int failed = 0;
    for (const auto& item : run_selfcheck(hooks)) failed += item.passed ? 0 : 1;
    return failed;
  };
  CHECK(count_failures({}) == 0);

  SelfcheckHooks negated;
  negated.adjoint = [](const FreeMatrixPoly& p) { return adjoint(p).scaled(-1.0); };
  CHECK(count_failures(negated) > 0);

  // Reverses chains but transposes without conjugating.
  SelfcheckHooks transposed;
  transposed.adjoint = [](const FreeMatrixPoly& p) {
    std::vector<Monomial> monos;
    for (Monomial m : p.monomials()) {
      std::reverse(m.chain.begin(), m.chain.end());
      std::reverse(m.word.begin(), m.word.end());
      for (auto& A : m.chain) A = A.transpose().eval();
      monos.push_back(std::move(m));
    }
    return FreeMatrixPoly(p.n(), p.k(), std::move(monos));
  };
  CHECK(count_failures(transposed) > 0);

  SelfcheckHooks unreversed;
  unreversed.adjoint = [](const FreeMatrixPoly& p) {
    std::vector<Monomial> monos;
    for (Monomial m : p.monomials()) {
      for (auto& A : m.chain) A = A.adjoint().eval();
      monos.push_back(std::move(m));
    }
    return FreeMatrixPoly(p.n(), p.k(), std::move(monos));
  };
  CHECK(count_failures(unreversed) > 0);
}
