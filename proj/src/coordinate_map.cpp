#include "matpoly/coordinate_map.hpp"

#include <algorithm>
#include <cmath>

#include "matpoly/error.hpp"
#include "matpoly/hermspace.hpp"

namespace matpoly {

CoordinateMap::CoordinateMap(std::vector<FreeMatrixPoly> polys) : polys_(std::move(polys)) {
  if (polys_.empty()) throw InvalidInput("CoordinateMap needs at least one polynomial");
  n_ = polys_.front().n();
  k_ = polys_.front().k();
  for (const auto& p : polys_) {
    if (p.n() != n_ || p.k() != k_) {
      throw InvalidInput("all polynomials must share matrix size and variable count");
    }
  }
  for (int a = 0; a < n_ * n_; ++a) basis_.push_back(hermitian_basis_element(n_, a));
}

MatrixTuple CoordinateMap::unpack(const RealVector& x) const {
  if (x.size() != input_dimension()) throw InvalidInput("coordinate vector has the wrong length");
  const int m = n_ * n_;
  MatrixTuple Xs;
  Xs.reserve(k_);
  for (int i = 0; i < k_; ++i) Xs.push_back(from_coords(n_, x.segment(i * m, m)));
  return Xs;
}

RealVector CoordinateMap::pack(const MatrixTuple& Xs) const {
  if (static_cast<int>(Xs.size()) != k_) throw InvalidInput("wrong number of matrices");
  const int m = n_ * n_;
  RealVector x(input_dimension());
  for (int i = 0; i < k_; ++i) x.segment(i * m, m) = hermitian_part_coords(Xs[i]);
  return x;
}

RealVector CoordinateMap::residual(const MatrixTuple& Xs) const {
  const int m = n_ * n_;
  RealVector r(output_dimension());
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    r.segment(static_cast<Eigen::Index>(i) * m, m) = hermitian_part_coords(evaluate(polys_[i], Xs));
  }
  return r;
}

RealVector CoordinateMap::residual(const RealVector& x) const { return residual(unpack(x)); }

RealMatrix CoordinateMap::jacobian(const RealVector& x) const {
  const MatrixTuple Xs = unpack(x);
  const int m = n_ * n_;
  RealMatrix J(output_dimension(), input_dimension());
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    for (int var = 0; var < k_; ++var) {
      for (int a = 0; a < m; ++a) {
        J.block(static_cast<Eigen::Index>(i) * m, var * m + a, m, 1) =
            hermitian_part_coords(directional_derivative(polys_[i], Xs, var, basis_[a]));
      }
    }
  }
  return J;
}

double max_residual(const std::vector<FreeMatrixPoly>& polys, const MatrixTuple& Xs) {
  double worst = 0.0;
  for (const auto& p : polys) worst = std::max(worst, norm_h(evaluate(p, Xs)));
  return worst;
}

double joint_norm_h(const MatrixTuple& Xs) {
  double sum = 0.0;
  for (const auto& X : Xs) {
    const double r = norm_h(X);
    sum += r * r;
  }
  return std::sqrt(sum);
}

}  // namespace matpoly
