#pragma once

#include <complex>
#include <compare>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace matpoly {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// One matrix per variable, X_1, ..., X_k.
using MatrixTuple = std::vector<ComplexMatrix>;

/// Polynomial degree with a dedicated minus-infinity tag for the zero
/// polynomial. Finite degrees are nonnegative word lengths.
class Degree {
 public:
  static constexpr Degree minus_infinity() { return Degree(); }
  static constexpr Degree finite(int d) { return Degree(d); }

  constexpr bool is_minus_infinity() const { return minus_infinity_; }
  constexpr bool is_finite() const { return !minus_infinity_; }

  /// Throws std::logic_error on the minus-infinity sentinel.
  int value() const;

  std::string to_string() const;

  constexpr bool operator==(const Degree& other) const {
    return minus_infinity_ == other.minus_infinity_ &&
           (minus_infinity_ || value_ == other.value_);
  }
  constexpr std::strong_ordering operator<=>(const Degree& other) const {
    if (minus_infinity_ || other.minus_infinity_) {
      return other.minus_infinity_ <=> minus_infinity_;
    }
    return value_ <=> other.value_;
  }

  /// -inf absorbs: (-inf) + d = -inf.
  friend constexpr Degree operator+(const Degree& a, const Degree& b) {
    if (a.minus_infinity_ || b.minus_infinity_) return Degree();
    return Degree(a.value_ + b.value_);
  }

 private:
  constexpr Degree() = default;
  constexpr explicit Degree(int d) : minus_infinity_(false), value_(d) {}

  bool minus_infinity_ = true;
  int value_ = 0;
};

}  // namespace matpoly
