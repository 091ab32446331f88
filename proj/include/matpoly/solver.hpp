#pragma once

// Self-adjoint solutions of p_1(X_1..X_k) = ... = p_k(X_1..X_k) = 0. All
// iteration runs in the real coordinates of the Hermitian tuple, so iterates
// stay exactly Hermitian.

#include <cstdint>
#include <string>
#include <vector>

#include "matpoly/nondegen.hpp"
#include "matpoly/polyalg.hpp"
#include "matpoly/types.hpp"

namespace matpoly {

enum class SolveMethod { kNewton, kHomotopy, kAuto };

std::string to_string(SolveMethod method);
SolveMethod parse_solve_method(const std::string& name);

struct SolveOptions {
  double tol = 1e-10;
  int max_starts = 200;
  int max_newton_iters = 200;
  int homotopy_steps = 100;
  double min_step = 1e-6;
  std::uint64_t seed = 0;
  SolveMethod method = SolveMethod::kAuto;
  bool all = false;
  int screen_starts = 16;
  int threads = 1;
};

struct NewtonOutcome {
  bool converged = false;
  MatrixTuple solution;
  double residual = 0.0;
  int iterations = 0;
  std::string failure;
};

/// Damped Newton from Xs0. Residual is max_i norm_h(p_i(Xs)).
NewtonOutcome newton_refine(const std::vector<FreeMatrixPoly>& ps, const MatrixTuple& Xs0,
                            const SolveOptions& options = {});

struct LeadingScreen {
  Verdict verdict = Verdict::kInconclusive;
  std::vector<int> degrees;
  std::vector<int> powers;
  double normalized_min = 0.0;
  /// True when every degree is odd and the screen is nondegenerate-likely,
  /// the situation where a solution is known to exist.
  bool existence_guaranteed = false;
  std::string note;
};

LeadingScreen screen_leading_tuple(const std::vector<FreeMatrixPoly>& ps,
                                   const SolveOptions& options);

struct PathRecord {
  int start = 0;
  double reached = 0.0;  // homotopy parameter at termination
  int steps = 0;
  std::vector<double> parameters;
  std::string failure;  // empty on success
};

enum class SolveStatus { kSolved, kNoSolutionFound };

struct SolveReport {
  SolveStatus status = SolveStatus::kNoSolutionFound;
  std::string method;
  std::vector<MatrixTuple> solutions;
  /// Per solution, norm_h of every equation, recomputed through evaluate().
  std::vector<std::vector<double>> residuals;
  int starts_tried = 0;
  std::vector<std::string> failures;
  std::vector<PathRecord> paths;
  LeadingScreen screen;
};

SolveReport multistart_solve(const std::vector<FreeMatrixPoly>& ps, const SolveOptions& options = {});
SolveReport homotopy_solve(const std::vector<FreeMatrixPoly>& ps, const SolveOptions& options = {});
/// Screens the leading tuple, then dispatches on options.method (auto tries
/// multistart Newton first and the homotopy on failure).
SolveReport solve_system(const std::vector<FreeMatrixPoly>& ps, const SolveOptions& options = {});

}  // namespace matpoly
