#pragma once

#include <map>
#include <string>
#include <vector>

#include "matpoly/types.hpp"

namespace matpoly {

/// Commutative polynomial with real coefficients in a fixed number of
/// variables, stored sparsely by exponent vector.
class RealPolynomial {
 public:
  using Exponents = std::vector<int>;

  explicit RealPolynomial(int num_vars = 0) : num_vars_(num_vars) {}

  static RealPolynomial constant(int num_vars, double c);
  static RealPolynomial variable(int num_vars, int index);

  int num_vars() const { return num_vars_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  void add_term(const Exponents& exponents, double coeff);
  /// Drops coefficients with |c| <= tol.
  void prune(double tol);

  double coefficient(const Exponents& exponents) const;
  double evaluate(const RealVector& t) const;

  RealPolynomial& operator+=(const RealPolynomial& other);
  RealPolynomial& operator-=(const RealPolynomial& other);
  RealPolynomial& operator*=(double s);

  friend RealPolynomial operator+(RealPolynomial a, const RealPolynomial& b) { return a += b; }
  friend RealPolynomial operator-(RealPolynomial a, const RealPolynomial& b) { return a -= b; }
  friend RealPolynomial operator*(RealPolynomial a, double s) { return a *= s; }
  friend RealPolynomial operator*(double s, RealPolynomial a) { return a *= s; }
  friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);

  /// Same variable count and every coefficient within tol.
  bool approx_equal(const RealPolynomial& other, double tol) const;

  std::string to_string() const;

 private:
  int num_vars_;
  std::map<Exponents, double> terms_;
};

}  // namespace matpoly
