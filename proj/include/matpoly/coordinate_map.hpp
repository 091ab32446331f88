#pragma once

#include <vector>

#include "matpoly/polyalg.hpp"
#include "matpoly/types.hpp"

namespace matpoly {

/// A tuple of polynomials (p_1, ..., p_r) in k variables viewed as a map
/// R^(k n^2) -> R^(r n^2) through Hermitian coordinates. Outputs are the
/// coordinates of the Hermitian part of each p_i(X).
class CoordinateMap {
 public:
  explicit CoordinateMap(std::vector<FreeMatrixPoly> polys);

  int n() const { return n_; }
  int k() const { return k_; }
  int input_dimension() const { return k_ * n_ * n_; }
  int output_dimension() const { return static_cast<int>(polys_.size()) * n_ * n_; }
  const std::vector<FreeMatrixPoly>& polys() const { return polys_; }

  MatrixTuple unpack(const RealVector& x) const;
  RealVector pack(const MatrixTuple& Xs) const;

  RealVector residual(const RealVector& x) const;
  RealVector residual(const MatrixTuple& Xs) const;
  /// Columns are directional derivatives along the Hermitian basis
  /// directions of every variable.
  RealMatrix jacobian(const RealVector& x) const;

 private:
  int n_;
  int k_;
  std::vector<FreeMatrixPoly> polys_;
  std::vector<ComplexMatrix> basis_;
};

/// max_i norm_h(p_i(Xs)), computed directly through evaluate().
double max_residual(const std::vector<FreeMatrixPoly>& polys, const MatrixTuple& Xs);

/// sqrt(sum_i norm_h(X_i)^2)
double joint_norm_h(const MatrixTuple& Xs);

}  // namespace matpoly
