#include "matpoly/hermspace.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "matpoly/error.hpp"

namespace matpoly {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt2 = 1.41421356237309504880;

int dimension_from_coords(const RealVector& coords) {
  const auto size = static_cast<int>(coords.size());
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(size))));
  if (n * n != size) {
    throw InvalidInput("coordinate vector length " + std::to_string(size) +
                       " is not a perfect square");
  }
  return n;
}

}  // namespace

ComplexMatrix hermitian_basis_element(int n, int alpha) {
  const int m = hermitian_dimension(n);
  if (alpha < 0 || alpha >= m) {
    throw InvalidInput("basis index out of range");
  }
  ComplexMatrix B = ComplexMatrix::Zero(n, n);
  if (alpha < n) {
    B(alpha, alpha) = 1.0;
    return B;
  }
  const int pairs = n * (n - 1) / 2;
  const bool antisymmetric = alpha >= n + pairs;
  int slot = (alpha - n) % pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (slot-- == 0) {
        if (antisymmetric) {
          B(i, j) = Complex(0.0, kInvSqrt2);
          B(j, i) = Complex(0.0, -kInvSqrt2);
        } else {
          B(i, j) = kInvSqrt2;
          B(j, i) = kInvSqrt2;
        }
        return B;
      }
    }
  }
  return B;
}

bool is_hermitian(const ComplexMatrix& X, double tol) {
  if (X.rows() != X.cols()) return false;
  const double scale = std::max(1.0, X.cwiseAbs().maxCoeff());
  return (X - X.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

RealVector hermitian_part_coords(const ComplexMatrix& M) {
  const auto n = static_cast<int>(M.rows());
  const int pairs = n * (n - 1) / 2;
  RealVector v(hermitian_dimension(n));
  for (int i = 0; i < n; ++i) v(i) = M(i, i).real();
  int slot = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++slot) {
      // Re <B, M> over the Hermitian part averages the (i,j) and (j,i) entries.
      const Complex upper = 0.5 * (M(i, j) + std::conj(M(j, i)));
      v(n + slot) = kSqrt2 * upper.real();
      v(n + pairs + slot) = kSqrt2 * upper.imag();
    }
  }
  return v;
}

HermVector to_coords(const ComplexMatrix& X) {
  if (X.rows() != X.cols() || X.rows() == 0) {
    throw InvalidInput("to_coords expects a nonempty square matrix");
  }
  if (!is_hermitian(X)) {
    throw InvalidInput("matrix is not Hermitian within tolerance");
  }
  return {static_cast<int>(X.rows()), hermitian_part_coords(X)};
}

ComplexMatrix from_coords(int n, const RealVector& coords) {
  if (coords.size() != hermitian_dimension(n)) {
    throw InvalidInput("coordinate vector length does not match n^2");
  }
  const int pairs = n * (n - 1) / 2;
  ComplexMatrix X(n, n);
  for (int i = 0; i < n; ++i) X(i, i) = coords(i);
  int slot = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++slot) {
      const Complex z(coords(n + slot) * kInvSqrt2,
                      coords(n + pairs + slot) * kInvSqrt2);
      X(i, j) = z;
      X(j, i) = std::conj(z);
    }
  }
  return X;
}

ComplexMatrix from_coords(const HermVector& v) {
  if (v.n != dimension_from_coords(v.coords)) {
    throw InvalidInput("HermVector dimension does not match its coordinates");
  }
  return from_coords(v.n, v.coords);
}

double frobenius_inner(const ComplexMatrix& A, const ComplexMatrix& B) {
  return (A.conjugate().cwiseProduct(B)).sum().real();
}

double norm_h(const ComplexMatrix& X) {
  if (X.rows() == 0) return 0.0;
  return X.norm() / std::sqrt(static_cast<double>(X.rows()));
}

bool on_sphere(const ComplexMatrix& X, double tol) {
  return std::abs(norm_h(X) - 1.0) <= tol;
}

ComplexMatrix project_sphere(const ComplexMatrix& X) {
  const double r = norm_h(X);
  if (!(r > 0.0)) {
    throw DegenerateInput("cannot project the zero matrix onto the sphere");
  }
  return X / r;
}

ComplexMatrix random_hermitian(int n, Rng& rng) {
  RealVector coords(hermitian_dimension(n));
  for (Eigen::Index i = 0; i < coords.size(); ++i) coords(i) = rng.gaussian();
  return from_coords(n, coords);
}

ComplexMatrix random_hermitian(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_hermitian(n, rng);
}

ComplexMatrix random_sphere_point(int n, Rng& rng) {
  for (;;) {
    ComplexMatrix X = random_hermitian(n, rng);
    if (norm_h(X) > 1e-8) return project_sphere(X);
  }
}

RealMatrix complement_frame(const RealVector& x) {
  const auto dim = x.size();
  const double len = x.norm();
  if (!(len > 0.0)) {
    throw InvalidInput("complement_frame of the zero vector");
  }
  const RealVector unit = x / len;
  Eigen::Index pivot = 0;
  unit.cwiseAbs().maxCoeff(&pivot);

  RealMatrix frame(dim, dim - 1);
  Eigen::Index col = 0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (j == pivot) continue;
    RealVector v = RealVector::Unit(dim, j);
    // Two passes of modified Gram-Schmidt keep the frame orthonormal to 1e-15.
    for (int pass = 0; pass < 2; ++pass) {
      v -= unit.dot(v) * unit;
      for (Eigen::Index c = 0; c < col; ++c) v -= frame.col(c).dot(v) * frame.col(c);
    }
    frame.col(col++) = v.normalized();
  }
  return frame;
}

RealMatrix tangent_frame(const ComplexMatrix& X) {
  if (!on_sphere(X)) {
    throw InvalidInput("tangent_frame expects a point on the sphere");
  }
  return complement_frame(to_coords(X).coords);
}

}  // namespace matpoly
