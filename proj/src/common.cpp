#include <cmath>
#include <stdexcept>

#include "matpoly/error.hpp"
#include "matpoly/rng.hpp"
#include "matpoly/types.hpp"

namespace matpoly {

int Degree::value() const {
  if (minus_infinity_) {
    throw std::logic_error("degree of the zero polynomial is -inf");
  }
  return value_;
}

std::string Degree::to_string() const {
  return minus_infinity_ ? std::string("-inf") : std::to_string(value_);
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return "invalid-input";
    case ErrorKind::kResource:
      return "resource";
    case ErrorKind::kDegenerateInput:
      return "degenerate-input";
    case ErrorKind::kDegeneracyDetected:
      return "degeneracy-detected";
    case ErrorKind::kNoRegularValue:
      return "no-regular-value";
    case ErrorKind::kCorruptedReport:
      return "corrupted-report";
  }
  return "unknown";
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace matpoly
