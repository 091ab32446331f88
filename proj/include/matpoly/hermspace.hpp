#pragma once

// Real coordinates on the space of n x n Hermitian matrices.
//
// Basis order (orthonormal for Re tr(A* B)):
//   e_ii                      for i = 0..n-1
//   (e_ij + e_ji) / sqrt 2    for i < j, lexicographic
//   i (e_ij - e_ji) / sqrt 2  for i < j, lexicographic
//
// The sphere is { X : sum |x_ij|^2 = n }, i.e. norm_h(X) = 1 where
// norm_h(X)^2 = (1/n) sum |x_ij|^2. In coordinates it has radius sqrt(n).

#include <cstdint>

#include "matpoly/rng.hpp"
#include "matpoly/types.hpp"

namespace matpoly {

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kSphereTolerance = 1e-10;

struct HermVector {
  int n = 0;
  RealVector coords;
};

/// n^2
inline int hermitian_dimension(int n) { return n * n; }

ComplexMatrix hermitian_basis_element(int n, int alpha);

bool is_hermitian(const ComplexMatrix& X, double tol = kHermitianTolerance);

/// Coordinates of a Hermitian matrix. Deviations below the tolerance
/// (relative to max(1, max |x_ij|)) are symmetrized away; larger ones throw
/// InvalidInput.
HermVector to_coords(const ComplexMatrix& X);
ComplexMatrix from_coords(const HermVector& v);

/// Coordinates of the Hermitian part (M + M*)/2 with no validation; the
/// alpha-th entry is Re <B_alpha, M>.
RealVector hermitian_part_coords(const ComplexMatrix& M);
ComplexMatrix from_coords(int n, const RealVector& coords);

double frobenius_inner(const ComplexMatrix& A, const ComplexMatrix& B);

double norm_h(const ComplexMatrix& X);
bool on_sphere(const ComplexMatrix& X, double tol = kSphereTolerance);

/// X / norm_h(X). Throws DegenerateInput for X = 0.
ComplexMatrix project_sphere(const ComplexMatrix& X);

/// Standard Gaussian coordinates mapped through from_coords.
ComplexMatrix random_hermitian(int n, std::uint64_t seed);
ComplexMatrix random_hermitian(int n, Rng& rng);

/// Gaussian direction scaled onto the sphere.
ComplexMatrix random_sphere_point(int n, Rng& rng);

/// Orthonormal basis (as columns) of the orthogonal complement of x in
/// R^dim. Gram-Schmidt over the standard basis in order, skipping the basis
/// vector with the largest |<e_j, x>|. x must be nonzero.
RealMatrix complement_frame(const RealVector& x);

/// complement_frame of to_coords(X) for X on the sphere; throws InvalidInput
/// off the sphere. Returns n^2 x (n^2 - 1).
RealMatrix tangent_frame(const ComplexMatrix& X);

}  // namespace matpoly
