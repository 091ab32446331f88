#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "matpoly/polyalg.hpp"

namespace matpoly {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 2,
  kExitBudgetExhausted = 3,
  kExitNumericalFailure = 4,
};

struct SelfcheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Replaceable pieces of the algebra, so tests can confirm that a broken
/// implementation is caught.
struct SelfcheckHooks {
  std::function<FreeMatrixPoly(const FreeMatrixPoly&)> adjoint =
      [](const FreeMatrixPoly& p) { return matpoly::adjoint(p); };
  int degree_starts = 500;
};

std::vector<SelfcheckItem> run_selfcheck(const SelfcheckHooks& hooks = {});

/// Entry point of the command-line tool; reports go to `out` (or --out),
/// diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matpoly
