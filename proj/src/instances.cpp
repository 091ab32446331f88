#include "matpoly/instances.hpp"

#include "matpoly/error.hpp"
#include "matpoly/hermspace.hpp"

namespace matpoly {

namespace {

ComplexMatrix gaussian_matrix(int n, Rng& rng) {
  ComplexMatrix G(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) G(i, j) = Complex(rng.gaussian(), rng.gaussian()) * M_SQRT1_2;
  }
  return G;
}

}  // namespace

std::string to_string(LeadingKind kind) {
  switch (kind) {
    case LeadingKind::kCube:
      return "cube";
    case LeadingKind::kPaperQuadratic:
      return "paper-quadratic";
    case LeadingKind::kPosdefAXAXA:
      return "posdef-AXAXA";
    case LeadingKind::kRandom:
      return "random";
  }
  return "random";
}

LeadingKind parse_leading_kind(const std::string& name) {
  if (name == "cube") return LeadingKind::kCube;
  if (name == "paper-quadratic") return LeadingKind::kPaperQuadratic;
  if (name == "posdef-AXAXA") return LeadingKind::kPosdefAXAXA;
  if (name == "random") return LeadingKind::kRandom;
  throw InvalidInput("unknown leading form kind '" + name + "'");
}

ComplexMatrix matrix_unit(int n, int i, int j) {
  ComplexMatrix E = ComplexMatrix::Zero(n, n);
  E(i, j) = 1.0;
  return E;
}

FreeMatrixPoly paper_quadratic_form() {
  auto e = [](int i, int j) { return matrix_unit(2, i - 1, j - 1); };
  auto term = [&](double c, ComplexMatrix a, ComplexMatrix b, ComplexMatrix d) {
    return FreeMatrixPoly::monomial({c * a, b, d}, {0, 0});
  };
  return term(1.0, e(1, 1), e(1, 1), e(1, 1)) + term(-1.0, e(1, 2), e(2, 2), e(2, 1)) +
         term(-1.0, e(1, 1), e(2, 2), e(1, 1)) + term(2.0, e(1, 1), e(1, 1), e(2, 2)) +
         term(2.0, e(2, 2), e(1, 1), e(1, 1)) + term(0.5, e(2, 1), e(1, 2), e(2, 2)) +
         term(0.5, e(2, 2), e(2, 1), e(1, 2));
}

FreeMatrixPoly trivial_map_element() {
  auto e = [](int i, int j) { return matrix_unit(2, i - 1, j - 1); };
  return FreeMatrixPoly::monomial({e(1, 1), e(2, 2), e(1, 1)}, {0, 0}) -
         FreeMatrixPoly::monomial({e(1, 2), e(1, 1), e(2, 1)}, {0, 0});
}

FreeMatrixPoly opening_polynomial(const ComplexMatrix& A, const ComplexMatrix& B,
                                  const ComplexMatrix& C, const ComplexMatrix& D,
                                  const ComplexMatrix& E) {
  const auto n = static_cast<int>(A.rows());
  const ComplexMatrix I = ComplexMatrix::Identity(n, n);
  return FreeMatrixPoly::monomial({I, A, A, I}, {0, 0, 0}) +
         FreeMatrixPoly::monomial({I, I, I}, {0, 0}) +
         FreeMatrixPoly::monomial({B, C, B}, {0, 0}) + FreeMatrixPoly::monomial({D, D}, {0}) -
         FreeMatrixPoly::variable(n, 1) + FreeMatrixPoly::constant(E);
}

FreeMatrixPoly power_form(int n, int k, int var, int d) {
  if (d < 1) throw InvalidInput("power_form degree must be positive");
  const ComplexMatrix I = ComplexMatrix::Identity(n, n);
  return FreeMatrixPoly(n, k, {Monomial{std::vector<ComplexMatrix>(d + 1, I),
                                        std::vector<int>(d, var)}});
}

FreeMatrixPoly random_self_adjoint_form(int n, int k, int d, Rng& rng, int terms) {
  FreeMatrixPoly q(n, k);
  for (int t = 0; t < terms; ++t) {
    Monomial mono;
    for (int l = 0; l <= d; ++l) mono.chain.push_back(gaussian_matrix(n, rng));
    for (int l = 0; l < d; ++l) {
      mono.word.push_back(static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(k)));
    }
    q = q + FreeMatrixPoly(n, k, {std::move(mono)});
  }
  return (q + adjoint(q)).scaled(0.5);
}

FreeMatrixPoly random_self_adjoint_poly(int n, int k, int max_degree, Rng& rng, int terms) {
  FreeMatrixPoly p(n, k);
  for (int d = 0; d <= max_degree; ++d) p = p + random_self_adjoint_form(n, k, d, rng, terms);
  return p;
}

FreeMatrixPoly gen_instance(const InstanceSpec& spec) {
  if (spec.n < 1 || spec.n > 6) throw InvalidInput("gen: n must be in 1..6");
  if (spec.k < 1) throw InvalidInput("gen: k must be positive");
  if (spec.degree < 1) throw InvalidInput("gen: degree must be positive");
  if (spec.equation < 0 || spec.equation >= spec.k) {
    throw InvalidInput("gen: equation index must be in 1..k");
  }
  Rng rng = Rng::stream(spec.seed, static_cast<std::uint64_t>(spec.equation));
  const int n = spec.n;
  switch (spec.leading) {
    case LeadingKind::kCube:
      return power_form(n, spec.k, spec.equation, spec.degree) +
             random_self_adjoint_poly(n, spec.k, spec.degree - 1, rng);
    case LeadingKind::kPaperQuadratic:
      if (n != 2 || spec.degree != 2 || spec.k != 1) {
        throw InvalidInput("gen: paper-quadratic requires n=2, k=1, degree=2");
      }
      return paper_quadratic_form() + random_self_adjoint_poly(n, 1, 1, rng);
    case LeadingKind::kPosdefAXAXA: {
      if (spec.degree != 3 || spec.k != 1) {
        throw InvalidInput("gen: posdef-AXAXA requires k=1, degree=3");
      }
      const ComplexMatrix G = gaussian_matrix(n, rng);
      const ComplexMatrix A = G.adjoint() * G + ComplexMatrix::Identity(n, n);
      const ComplexMatrix B = random_hermitian(n, rng);
      const ComplexMatrix C = random_hermitian(n, rng);
      const ComplexMatrix D = random_hermitian(n, rng);
      const ComplexMatrix E = random_hermitian(n, rng);
      return opening_polynomial(A, B, C, D, E);
    }
    case LeadingKind::kRandom:
      return random_self_adjoint_form(n, spec.k, spec.degree, rng) +
             random_self_adjoint_poly(n, spec.k, spec.degree - 1, rng);
  }
  throw InvalidInput("gen: unsupported leading kind");
}

}  // namespace matpoly
