#pragma once

// Brouwer degree of the sphere self-map X -> p(X)/norm_h(p(X)) induced by a
// homogeneous self-adjoint form in one variable, estimated by signed counting
// of the preimages of a regular value.

#include <cstdint>
#include <vector>

#include "matpoly/nondegen.hpp"
#include "matpoly/polyalg.hpp"
#include "matpoly/types.hpp"

namespace matpoly {

inline constexpr double kVanishingThreshold = 1e-12;

class SphereMap {
 public:
  /// Throws InvalidInput unless the form is nonzero, homogeneous, self-adjoint
  /// and in one variable.
  explicit SphereMap(FreeMatrixPoly form);

  const FreeMatrixPoly& form() const { return form_; }
  int degree() const { return degree_; }
  int n() const { return form_.n(); }

 private:
  FreeMatrixPoly form_;
  int degree_;
};

/// Throws DegeneracyDetected (carrying X) if norm_h(p(X)) < 1e-12.
ComplexMatrix sphere_map_eval(const SphereMap& map, const ComplexMatrix& X);

/// Value of p(tX)/norm_h(p(tX)), or the point tX where the denominator
/// vanishes. The latter is a root candidate for p, not an error.
struct HomotopyValue {
  bool zero_encountered = false;
  ComplexMatrix value;  // sphere point, or t X when zero_encountered
};

HomotopyValue proof_homotopy(const FreeMatrixPoly& p, double t, const ComplexMatrix& X);

struct Preimage {
  ComplexMatrix point;
  int sign = 0;
  /// Condition number of the differential restricted to tangent spaces.
  double condition = 0.0;
};

struct PreimageOptions {
  int starts = 500;
  std::uint64_t seed = 0;
  int max_newton_iters = 100;
  double tolerance = 1e-12;
  double dedup_distance = 1e-6;
  int threads = 1;
};

std::vector<Preimage> find_preimages(const SphereMap& map, const ComplexMatrix& target,
                                     const PreimageOptions& options);

/// max(500, 100 d^(n^2-1)), capped at 100000.
int default_starts(int d, int n);

struct DegreeOptions {
  int starts = 0;  // 0 selects default_starts
  std::uint64_t seed = 0;
  int resample_budget = 20;
  double condition_limit = 1e8;
  int screen_starts = 24;
  bool screen = true;
  int threads = 1;
};

struct RegularValue {
  ComplexMatrix target;
  std::vector<Preimage> preimages;
  int attempts = 0;
};

/// Draws seeded targets until every located preimage has condition at most
/// options.condition_limit. Throws NoRegularValue after resample_budget draws.
RegularValue regular_value_sample(const SphereMap& map, std::uint64_t seed,
                                  const DegreeOptions& options);

struct DegreeRun {
  std::uint64_t seed = 0;
  ComplexMatrix target;
  std::vector<Preimage> preimages;
  int estimate = 0;
  int attempts = 0;
};

struct DegreeReport {
  int degree_estimate = 0;
  int mod2 = 0;
  std::vector<Preimage> preimages;
  ComplexMatrix target;
  int starts_used = 0;
  std::vector<std::uint64_t> seeds;
  bool agreement = false;
  /// The second, independently seeded run.
  DegreeRun check_run;
  int attempts = 0;
  bool screened = false;
  Verdict screen_verdict = Verdict::kInconclusive;
};

int signed_count(const std::vector<Preimage>& preimages);

/// Runs the non-degeneracy screen (DegeneracyDetected on a witness), then two
/// independently seeded signed counts.
DegreeReport brouwer_degree(const SphereMap& map, const DegreeOptions& options = {});

/// Preimage count parity; throws CorruptedReport if it disagrees with the
/// parity of the estimate.
int mod2_degree(const DegreeReport& report);

}  // namespace matpoly
