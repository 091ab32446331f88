#pragma once

#include <cstdint>
#include <string>

#include "matpoly/polyalg.hpp"
#include "matpoly/rng.hpp"

namespace matpoly {

enum class LeadingKind { kCube, kPaperQuadratic, kPosdefAXAXA, kRandom };

std::string to_string(LeadingKind kind);
LeadingKind parse_leading_kind(const std::string& name);

/// Matrix unit e_ij (0-based).
ComplexMatrix matrix_unit(int n, int i, int j);

/// The self-adjoint degree-2 element of Pol(M_2) inducing
///   [[a11^2 - a22^2 - a12 a21, 2 a11 a12], [2 a11 a21, a11 a22]].
FreeMatrixPoly paper_quadratic_form();

/// e11 (x) e22 (x) e11 - e12 (x) e11 (x) e21 on M_2: nonzero in the algebra,
/// zero as a map.
FreeMatrixPoly trivial_map_element();

/// XAXAX + X^2 + BXCXB + DXD - X + E
FreeMatrixPoly opening_polynomial(const ComplexMatrix& A, const ComplexMatrix& B,
                                  const ComplexMatrix& C, const ComplexMatrix& D,
                                  const ComplexMatrix& E);

/// x_var^d with identity coefficients.
FreeMatrixPoly power_form(int n, int k, int var, int d);

/// (q + q*)/2 for q a sum of `terms` random monomials of degree d with
/// Gaussian coefficients and uniformly random words.
FreeMatrixPoly random_self_adjoint_form(int n, int k, int d, Rng& rng, int terms = 2);

/// Sum of random self-adjoint forms in every degree 0..max_degree.
FreeMatrixPoly random_self_adjoint_poly(int n, int k, int max_degree, Rng& rng, int terms = 2);

struct InstanceSpec {
  int n = 2;
  int k = 1;
  int degree = 3;
  LeadingKind leading = LeadingKind::kCube;
  std::uint64_t seed = 0;
  /// 0-based equation index; the cube leading form is x_equation^degree.
  int equation = 0;
};

/// Stated leading form plus seeded self-adjoint lower-order terms. Throws
/// InvalidInput on unsupported combinations.
FreeMatrixPoly gen_instance(const InstanceSpec& spec);

}  // namespace matpoly
