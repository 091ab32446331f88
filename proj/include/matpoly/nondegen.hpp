#pragma once

// Numerical non-degeneracy screen for homogeneous self-adjoint forms: a tuple
// (p_1, ..., p_r) is non-degenerate when the only Hermitian tuple on which all
// of them vanish is zero. We minimize the joint residual over the unit sphere
// of the product space and classify the minimum.

#include <cstdint>
#include <string>
#include <vector>

#include "matpoly/polyalg.hpp"
#include "matpoly/types.hpp"

namespace matpoly {

inline constexpr double kWitnessThreshold = 1e-10;
inline constexpr double kNondegenerateThreshold = 1e-4;

enum class Verdict { kNondegenerateLikely, kDegenerateWitness, kInconclusive };

std::string to_string(Verdict verdict);

struct NondegOptions {
  int starts = 32;
  std::uint64_t seed = 0;
  int gradient_iters = 400;
  int polish_iters = 60;
  int threads = 1;
};

struct NondegReport {
  /// Residual of the forms as given, sqrt(sum_i norm_h(p_i(Xs))^2), at the
  /// minimizer.
  double min_value = 0.0;
  /// The same residual after scaling each form to unit canonical-form norm;
  /// the verdict thresholds apply to this value.
  double normalized_min = 0.0;
  MatrixTuple minimizer;
  Verdict verdict = Verdict::kInconclusive;
  int starts_used = 0;
  std::uint64_t seed = 0;
  /// Powers applied to equalize degrees before minimizing (all 1 when the
  /// forms already share a degree).
  std::vector<int> powers;
};

/// Requires homogeneous, self-adjoint forms sharing n and k.
NondegReport min_norm_on_sphere(const std::vector<FreeMatrixPoly>& forms,
                                const NondegOptions& options = {});

Verdict classify_residual(double normalized_min);

Verdict assess(const std::vector<FreeMatrixPoly>& forms, const NondegOptions& options = {});

/// Projects Xs to the joint sphere and checks every normalized residual
/// against kWitnessThreshold. Throws InvalidInput for a zero tuple.
bool verify_witness(const std::vector<FreeMatrixPoly>& forms, const MatrixTuple& Xs);

}  // namespace matpoly
