// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include "matpoly/cli.hpp"
#include "matpoly/coordinate_map.hpp"
#include "matpoly/hermspace.hpp"
#include "matpoly/instances.hpp"
#include "matpoly/io.hpp"
#include "matpoly/nondegen.hpp"
#include "matpoly/solver.hpp"
#include "matpoly/topdegree.hpp"

using namespace matpoly;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string write_poly(const std::string& name, const FreeMatrixPoly& p) {
  const fs::path dir = fs::temp_directory_path() / "matpoly_acceptance";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream(path, std::ios::binary) << serialize(poly_to_json(p));
  return path.string();
}

struct Topdeg {
  int code = -1;
  Json report;
  double seconds = 0.0;
};

Topdeg run_topdeg(const FreeMatrixPoly& form, const std::string& name, std::uint64_t seed) {
  const std::string path = write_poly(name, form);
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  Topdeg r;
  r.code = run_command({"--threads", std::to_string(threads()), "topdeg", "--form", path, "--seed",
                        std::to_string(seed)},
                       out, err);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.code == 0) r.report = Json::parse(out.str());
  return r;
}

bool degree_is(const Topdeg& t, int expected, double limit_seconds, std::string& detail) {
  if (t.code != 0) {
    detail += "exit " + std::to_string(t.code) + "; ";
    return false;
  }
  const int estimate = t.report["degree"]["degree_estimate"].get<int>();
  const bool agree = t.report["degree"]["agreement"].get<bool>();
  detail += "degree " + std::to_string(estimate) + (agree ? " (runs agree)" : " (runs disagree)") +
            " in " + fmt("%.1f", t.seconds) + " s; ";
  return estimate == expected && agree && t.seconds <= limit_seconds;
}

/// Residual through the symbolic scalar expansion, a code path separate from
/// the matrix-product evaluation used by the solver.
double expanded_residual(const std::vector<std::vector<RealPolynomial>>& expansions, const MatrixTuple& Xs) {
  const int n = static_cast<int>(Xs.front().rows());
  RealVector t(static_cast<int>(Xs.size()) * n * n);
  for (std::size_t i = 0; i < Xs.size(); ++i) t.segment(static_cast<int>(i) * n * n, n * n) = to_coords(Xs[i]).coords;
  double worst = 0.0;
  for (const auto& e : expansions) {
    double sum = 0.0;
    for (const auto& c : e) sum += std::pow(c.evaluate(t), 2);
    worst = std::max(worst, std::sqrt(sum / n));
  }
  return worst;
}

Outcome cube_degree() {
  Outcome o;
  const bool cube = degree_is(run_topdeg(power_form(2, 1, 0, 3), "x3.json", 1), 1, 60.0, o.detail);
  const bool quintic = degree_is(run_topdeg(power_form(2, 1, 0, 5), "x5.json", 1), 1, 60.0, o.detail);
  o.pass = cube && quintic;
  return o;
}

Outcome quadratic_degree() {
  Outcome o;
  InstanceSpec spec;
  spec.leading = LeadingKind::kPaperQuadratic;
  spec.degree = 2;
  spec.seed = 1;
  o.pass = degree_is(run_topdeg(gen_instance(spec), "quadratic.json", 1), 2, 300.0, o.detail);
  return o;
}

Outcome odd_dimension_square() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const bool degree = degree_is(run_topdeg(power_form(3, 1, 0, 2), "x2n3.json", 1), 0, 600.0, o.detail);

  const SphereMap map(power_form(3, 1, 0, 2));
  ComplexMatrix y = ComplexMatrix::Zero(3, 3);
  y(0, 0) = 1.0;
  y(1, 1) = 2.0;
  y(2, 2) = 3.0;
  PreimageOptions po;
  po.starts = default_starts(2, 3);
  po.seed = 2;
  po.threads = threads();
  const std::vector<Preimage> pre = find_preimages(map, project_sphere(y), po);
  const int sum = signed_count(pre);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.detail += "positive definite target: " + std::to_string(pre.size()) + " preimages, signed sum " +
              std::to_string(sum) + "; total " + fmt("%.1f", seconds) + " s";
  o.pass = degree && pre.size() == 8 && sum == 0 && seconds <= 600.0;
  return o;
}

Outcome odd_parity() {
  Outcome o;
  const SphereMap map(power_form(2, 1, 0, 3));
  DegreeOptions d;
  d.starts = default_starts(3, 2);
  d.threads = threads();
  o.pass = true;
  o.detail = "counts";
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RegularValue rv = regular_value_sample(map, seed, d);
    o.detail += " " + std::to_string(rv.preimages.size());
    o.pass = o.pass && rv.preimages.size() % 2 == 1;
  }
  return o;
}

Outcome opening_equation() {
  int solved = 0;
  double worst = 0.0;
  const int instances = 50;
  for (int s = 1; s <= instances; ++s) {
    InstanceSpec spec;
    spec.leading = LeadingKind::kPosdefAXAXA;
    spec.seed = static_cast<std::uint64_t>(s);
    const FreeMatrixPoly p = gen_instance(spec);
    SolveOptions opts;
    opts.seed = spec.seed;
    opts.threads = threads();
    const SolveReport r = solve_system({p}, opts);
    if (r.status != SolveStatus::kSolved) continue;
    bool ok = !r.solutions.empty();
    for (const MatrixTuple& X : r.solutions) {
      const double direct = norm_h(evaluate(p, X));
      const double expanded = expanded_residual({scalar_expand(p)}, X);
      worst = std::max({worst, direct, expanded});
      ok = ok && direct <= 1e-8 && expanded <= 1e-8;
    }
    solved += ok ? 1 : 0;
  }
  Outcome o;
  o.pass = solved >= 48;
  o.detail = std::to_string(solved) + "/" + std::to_string(instances) + " solved, worst re-verified residual " +
             fmt("%.2e", worst);
  return o;
}

Outcome two_variable() {
  int solved = 0;
  double worst = 0.0;
  const int instances = 20;
  for (int s = 1; s <= instances; ++s) {
    std::vector<FreeMatrixPoly> ps;
    for (int eq = 0; eq < 2; ++eq) {
      InstanceSpec spec;
      spec.k = 2;
      spec.degree = 3;
      spec.seed = static_cast<std::uint64_t>(s);
      spec.equation = eq;
      ps.push_back(gen_instance(spec));
    }
    SolveOptions opts;
    opts.seed = static_cast<std::uint64_t>(s);
    opts.threads = threads();
    const SolveReport r = solve_system(ps, opts);
    if (r.status != SolveStatus::kSolved) continue;
    const MatrixTuple& X = r.solutions.front();
    const double r1 = norm_h(evaluate(ps[0], X));
    const double r2 = norm_h(evaluate(ps[1], X));
    worst = std::max({worst, r1, r2});
    solved += r1 <= 1e-8 && r2 <= 1e-8 ? 1 : 0;
  }
  Outcome o;
  o.pass = solved >= 18;
  o.detail = std::to_string(solved) + "/" + std::to_string(instances) + " solved, worst residual " + fmt("%.2e", worst);
  return o;
}

Outcome witnesses() {
  const ComplexMatrix I = ComplexMatrix::Identity(2, 2);
  ComplexMatrix A = ComplexMatrix::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = -1.0;
  const FreeMatrixPoly indefinite = FreeMatrixPoly::monomial({I, A, A, I}, {0, 0, 0});
  const FreeMatrixPoly definite = FreeMatrixPoly::monomial({I, I, I, I}, {0, 0, 0});
  NondegOptions opts;
  opts.threads = threads();
  const NondegReport bad = min_norm_on_sphere({indefinite}, opts);
  const NondegReport good = min_norm_on_sphere({definite}, opts);

  // Eigenvalue parametrization (l1^2 + l2^2)/2 = 1 of the sphere, by unitary
  // invariance of the cube.
  double oracle = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200000; ++i) {
    const double theta = 0.5 * std::numbers::pi * i / 200000;
    const double l1 = std::sqrt(2.0) * std::cos(theta), l2 = std::sqrt(2.0) * std::sin(theta);
    oracle = std::min(oracle, std::sqrt((std::pow(l1, 6) + std::pow(l2, 6)) / 2.0));
  }

  Outcome o;
  o.pass = bad.verdict == Verdict::kDegenerateWitness && bad.min_value <= 1e-10 &&
           verify_witness({indefinite}, bad.minimizer) && good.verdict == Verdict::kNondegenerateLikely &&
           std::abs(good.min_value - oracle) <= 1e-6 && std::abs(good.min_value - 1.0) <= 1e-6;
  o.detail = "indefinite: " + to_string(bad.verdict) + " residual " + fmt("%.2e", bad.min_value) +
             "; definite: " + to_string(good.verdict) + " min " + fmt("%.9f", good.min_value) +
             " (oracle " + fmt("%.9f", oracle) + ")";
  return o;
}

ComplexMatrix random_complex(int n, Rng& rng) {
  ComplexMatrix M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = Complex(rng.gaussian(), rng.gaussian());
  }
  return M;
}

FreeMatrixPoly random_poly(int n, int max_degree, Rng& rng) {
  std::vector<Monomial> monos;
  for (int d = 0; d <= max_degree; ++d) {
    Monomial m;
    for (int l = 0; l <= d; ++l) m.chain.push_back(random_complex(n, rng));
    m.word.assign(d, 0);
    monos.push_back(std::move(m));
  }
  return FreeMatrixPoly(n, 1, std::move(monos));
}

Outcome algebra_identities() {
  double hom = 0.0, inv = 0.0, triv = 0.0;
  for (int s = 0; s < 100; ++s) {
    Rng rng = Rng::stream(8, static_cast<std::uint64_t>(s));
    const int n = 1 + s % 3;
    const FreeMatrixPoly p = random_poly(n, 2, rng);
    const FreeMatrixPoly q = random_poly(n, 2, rng);
    const ComplexMatrix X = random_complex(n, rng);
    const ComplexMatrix lhs = evaluate(mul(p, q), X);
    hom = std::max(hom, (lhs - evaluate(p, X) * evaluate(q, X)).norm() / lhs.norm());
    const ComplexMatrix a = evaluate(p, X).adjoint();
    inv = std::max(inv, (a - evaluate(adjoint(p), ComplexMatrix(X.adjoint()))).norm() / a.norm());
    triv = std::max(triv, evaluate(trivial_map_element(), random_complex(2, rng)).cwiseAbs().maxCoeff());
  }
  const double canon = canonicalize(trivial_map_element()).norm();
  Outcome o;
  o.pass = hom <= 1e-10 && inv <= 1e-12 && triv <= 1e-12 && canon > 0.5;
  o.detail = "homomorphism " + fmt("%.1e", hom) + ", involution " + fmt("%.1e", inv) + ", trivial map max " +
             fmt("%.1e", triv) + " with canonical norm " + fmt("%.3f", canon);
  return o;
}

Outcome derivative() {
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    Rng rng = Rng::stream(9, static_cast<std::uint64_t>(s));
    const int n = 1 + s % 3;
    const int degree = 1 + (s / 3) % 4;
    const FreeMatrixPoly p = random_poly(n, degree, rng);
    const ComplexMatrix X = random_complex(n, rng);
    const ComplexMatrix H = random_complex(n, rng);
    const double h = 1e-5;
    const ComplexMatrix fd = (evaluate(p, ComplexMatrix(X + h * H)) - evaluate(p, ComplexMatrix(X - h * H))) / (2 * h);
    const ComplexMatrix exact = directional_derivative(p, {X}, 0, H);
    worst = std::max(worst, (fd - exact).norm() / exact.norm());
  }
  Outcome o;
  o.pass = worst <= 1e-6;
  o.detail = "max relative error " + fmt("%.2e", worst);
  return o;
}

Outcome homotopy_limit() {
  const ComplexMatrix E = random_hermitian(2, 10);
  const FreeMatrixPoly p = power_form(2, 1, 0, 3) + FreeMatrixPoly::constant(E);
  const SphereMap cube(power_form(2, 1, 0, 3));
  std::vector<ComplexMatrix> points;
  Rng rng(10);
  for (int i = 0; i < 100; ++i) points.push_back(random_sphere_point(2, rng));

  std::vector<double> maxima;
  for (double t : {1e1, 1e2, 1e3, 1e4}) {
    double worst = 0.0;
    for (const ComplexMatrix& X : points) {
      const HomotopyValue v = proof_homotopy(p, t, X);
      worst = v.zero_encountered ? std::numeric_limits<double>::infinity()
                                 : std::max(worst, norm_h(v.value - sphere_map_eval(cube, X)));
    }
    maxima.push_back(worst);
  }
  Outcome o;
  o.pass = maxima.back() <= 1e-2;
  o.detail = "max distance";
  for (std::size_t i = 0; i < maxima.size(); ++i) {
    o.detail += " " + fmt("%.2e", maxima[i]);
    if (i > 0 && !(maxima[i] < maxima[i - 1])) o.pass = false;
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"cube and quintic maps have degree one", cube_degree},
      {"quadratic example has degree two", quadratic_degree},
      {"square map on 3x3 matrices has degree zero", odd_dimension_square},
      {"cube map preimage counts are odd", odd_parity},
      {"opening equation with positive definite A is solved", opening_equation},
      {"two-variable cubic systems are solved", two_variable},
      {"degeneracy witnesses", witnesses},
      {"algebra identities", algebra_identities},
      {"directional derivative matches finite differences", derivative},
      {"proof homotopy converges to the leading sphere map", homotopy_limit},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
