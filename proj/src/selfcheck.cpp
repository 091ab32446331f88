#include <cmath>
#include <cstdio>

#include "matpoly/cli.hpp"
#include "matpoly/hermspace.hpp"
#include "matpoly/instances.hpp"
#include "matpoly/rng.hpp"
#include "matpoly/topdegree.hpp"

namespace matpoly {

namespace {

constexpr int kCases = 20;

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

double relative_error(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

std::string format_error(double worst) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "max error %.3g", worst);
  return buf;
}

SelfcheckItem check_homomorphism() {
  double worst = 0.0;
  for (int c = 0; c < kCases; ++c) {
    Rng rng = Rng::stream(101, c);
    const int n = 2 + c % 2;
    const FreeMatrixPoly p = random_poly(n, 2, rng);
    const FreeMatrixPoly q = random_poly(n, 2, rng);
    const ComplexMatrix X = random_complex(n, rng);
    worst = std::max(worst, relative_error(evaluate(mul(p, q), X), evaluate(p, X) * evaluate(q, X)));
  }
  return {"ring homomorphism (pq)(X) = p(X) q(X)", worst <= 1e-10, format_error(worst)};
}

SelfcheckItem check_involution_evaluation(const SelfcheckHooks& hooks) {
  double worst = 0.0;
  for (int c = 0; c < kCases; ++c) {
    Rng rng = Rng::stream(202, c);
    const int n = 2 + c % 2;
    const FreeMatrixPoly p = random_poly(n, 3, rng);
    const ComplexMatrix X = random_complex(n, rng);
    const ComplexMatrix lhs = evaluate(p, X).adjoint();
    const ComplexMatrix rhs = evaluate(hooks.adjoint(p), ComplexMatrix(X.adjoint()));
    worst = std::max(worst, relative_error(rhs, lhs));
  }
  return {"involution p(X)* = p*(X*)", worst <= 1e-12, format_error(worst)};
}

SelfcheckItem check_involution_laws(const SelfcheckHooks& hooks) {
  bool ok = true;
  for (int c = 0; c < kCases && ok; ++c) {
    Rng rng = Rng::stream(303, c);
    const FreeMatrixPoly p = random_poly(2, 2, rng);
    const FreeMatrixPoly q = random_poly(2, 1, rng);
    ok = algebra_equal(hooks.adjoint(mul(p, q)), mul(hooks.adjoint(q), hooks.adjoint(p)), 1e-10) &&
         algebra_equal(hooks.adjoint(hooks.adjoint(p)), p, 1e-10) &&
         algebra_equal(hooks.adjoint(add(p, q)), add(hooks.adjoint(p), hooks.adjoint(q)), 1e-10);
  }
  return {"involution laws (pq)* = q* p*, p** = p, (p+q)* = p* + q*", ok, ok ? "ok" : "violated"};
}

SelfcheckItem check_self_adjoint_closure(const SelfcheckHooks& hooks) {
  double worst = 0.0;
  for (int c = 0; c < kCases; ++c) {
    Rng rng = Rng::stream(404, c);
    const int n = 2 + c % 2;
    const FreeMatrixPoly q = random_poly(n, 3, rng);
    const FreeMatrixPoly p = add(q, hooks.adjoint(q));
    const ComplexMatrix X = random_hermitian(n, rng);
    const ComplexMatrix value = evaluate(p, X);
    worst = std::max(worst, relative_error(value, value.adjoint()));
  }
  return {"self-adjoint p at Hermitian X is Hermitian", worst <= 1e-12, format_error(worst)};
}

SelfcheckItem check_derivative() {
  double worst = 0.0;
  const double h = 1e-5;
  for (int c = 0; c < kCases; ++c) {
    Rng rng = Rng::stream(505, c);
    const int n = 2 + c % 2;
    const FreeMatrixPoly p = random_poly(n, 3, rng);
    const ComplexMatrix X = random_complex(n, rng) * 0.5;
    const ComplexMatrix H = random_complex(n, rng) * 0.5;
    const ComplexMatrix exact = directional_derivative(p, {X}, 0, H);
    const ComplexMatrix fd =
        (evaluate(p, ComplexMatrix(X + h * H)) - evaluate(p, ComplexMatrix(X - h * H))) / (2 * h);
    worst = std::max(worst, (exact - fd).norm() / std::max(1e-300, exact.norm()));
  }
  return {"directional derivative vs central differences", worst <= 1e-6, format_error(worst)};
}

SelfcheckItem check_trivial_map() {
  const FreeMatrixPoly q = trivial_map_element();
  double worst = 0.0;
  for (int c = 0; c < kCases; ++c) {
    Rng rng = Rng::stream(606, c);
    worst = std::max(worst, evaluate(q, random_complex(2, rng)).norm());
  }
  const bool nonzero = !canonicalize(q).is_zero();
  return {"trivial-map element: zero map, nonzero algebra element", worst <= 1e-12 && nonzero,
          format_error(worst) + (nonzero ? ", canonical form nonzero" : ", canonical form zero")};
}

SelfcheckItem check_cube_degree(const SelfcheckHooks& hooks) {
  try {
    DegreeOptions options;
    options.starts = hooks.degree_starts;
    options.seed = 7;
    const DegreeReport report = brouwer_degree(SphereMap(power_form(2, 1, 0, 3)), options);
    const bool ok = report.degree_estimate == 1 && report.agreement;
    return {"cube map on 2x2 Hermitian sphere has degree 1", ok,
            "estimate " + std::to_string(report.degree_estimate) +
                (report.agreement ? ", runs agree" : ", runs disagree")};
  } catch (const std::exception& e) {
    return {"cube map on 2x2 Hermitian sphere has degree 1", false, e.what()};
  }
}

}  // namespace

std::vector<SelfcheckItem> run_selfcheck(const SelfcheckHooks& hooks) {
  return {check_homomorphism(),          check_involution_evaluation(hooks),
          check_involution_laws(hooks),  check_self_adjoint_closure(hooks),
          check_derivative(),            check_trivial_map(),
          check_cube_degree(hooks)};
}

}  // namespace matpoly
