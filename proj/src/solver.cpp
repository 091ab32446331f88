#include "matpoly/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "matpoly/coordinate_map.hpp"
#include "matpoly/error.hpp"
#include "matpoly/hermspace.hpp"
#include "matpoly/parallel.hpp"
#include "matpoly/rng.hpp"

namespace matpoly {

namespace {

constexpr double kStartRadii[] = {0.1, 1.0, 10.0};
constexpr double kDedupDistance = 1e-6;
constexpr int kCorrectorIters = 8;

void validate_options(const SolveOptions& o) {
  if (!(o.tol > 0.0)) throw InvalidInput("tolerance must be positive");
  if (o.max_starts < 1 || o.max_newton_iters < 1 || o.homotopy_steps < 1) {
    throw InvalidInput("solver budgets must be positive");
  }
  if (!(o.min_step > 0.0)) throw InvalidInput("minimum homotopy step must be positive");
}

void validate_system(const std::vector<FreeMatrixPoly>& ps) {
  if (ps.empty()) throw InvalidInput("no equations given");
  const int n = ps.front().n();
  const int k = ps.front().k();
  if (static_cast<int>(ps.size()) != k) {
    throw InvalidInput("system has " + std::to_string(ps.size()) + " equations in " +
                       std::to_string(k) + " variables");
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].n() != n || ps[i].k() != k) {
      throw InvalidInput("equation " + std::to_string(i) + " differs in n or k");
    }
    if (!is_self_adjoint(ps[i])) {
      throw InvalidInput("equation " + std::to_string(i) + " is not self-adjoint");
    }
  }
}

double block_residual(const RealVector& F, int n) {
  const int m = n * n;
  double worst = 0.0;
  for (Eigen::Index b = 0; b < F.size() / m; ++b) {
    worst = std::max(worst, F.segment(b * m, m).norm() / std::sqrt(static_cast<double>(n)));
  }
  return worst;
}

struct CoreResult {
  bool converged = false;
  RealVector x;
  double residual = 0.0;
  int iterations = 0;
  std::string failure;
};

// Damped Newton for F(x) - offset = 0.
CoreResult newton_core(const CoordinateMap& map, RealVector x, const RealVector& offset,
                       double tol, int max_iters) {
  CoreResult out;
  RealVector F = map.residual(x) - offset;
  const double initial = std::max(F.norm(), 1e-300);
  for (int it = 0;; ++it) {
    out.iterations = it;
    out.residual = block_residual(F, map.n());
    if (!F.allFinite()) {
      out.failure = "non-finite residual";
      break;
    }
    if (out.residual <= tol) {
      out.converged = true;
      break;
    }
    if (F.norm() > 1e6 * initial) {
      out.failure = "diverged";
      break;
    }
    if (it == max_iters) {
      out.failure = "iteration budget exhausted";
      break;
    }
    const RealMatrix J = map.jacobian(x);
    Eigen::PartialPivLU<RealMatrix> lu(J);
    RealVector delta = lu.solve(-F);
    if (!(lu.rcond() > 1e-14) || !delta.allFinite()) {
      RealMatrix normal = J.transpose() * J;
      normal.diagonal().array() += 1e-10;
      delta = normal.ldlt().solve(-(J.transpose() * F));
    }
    const double fnorm = F.norm();
    bool accepted = false;
    double t = 1.0;
    for (int tries = 0; tries < 30; ++tries, t *= 0.5) {
      const RealVector trial = x + t * delta;
      const RealVector Ft = map.residual(trial) - offset;
      if (Ft.allFinite() && Ft.norm() < (1.0 - 1e-4 * t) * fnorm) {
        x = trial;
        F = Ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.failure = "line search stalled";
      break;
    }
  }
  out.x = std::move(x);
  return out;
}

RealVector start_point(const CoordinateMap& map, std::uint64_t seed, std::size_t index) {
  Rng rng = Rng::stream(seed, index);
  MatrixTuple Xs;
  for (int i = 0; i < map.k(); ++i) Xs.push_back(random_hermitian(map.n(), rng));
  const double r = joint_norm_h(Xs);
  const double radius = kStartRadii[index % 3];
  for (auto& X : Xs) X *= radius / r;
  return map.pack(Xs);
}

std::vector<double> independent_residuals(const std::vector<FreeMatrixPoly>& ps,
                                          const MatrixTuple& Xs) {
  std::vector<double> out;
  for (const auto& p : ps) out.push_back(norm_h(evaluate(p, Xs)));
  return out;
}

double tuple_distance(const MatrixTuple& a, const MatrixTuple& b) {
  MatrixTuple diff;
  for (std::size_t i = 0; i < a.size(); ++i) diff.push_back(a[i] - b[i]);
  return joint_norm_h(diff);
}

// Adds a verified solution unless it duplicates one already present.
void add_solution(SolveReport& report, const std::vector<FreeMatrixPoly>& ps,
                  const MatrixTuple& Xs, double tol) {
  std::vector<double> residuals = independent_residuals(ps, Xs);
  if (*std::max_element(residuals.begin(), residuals.end()) > tol) {
    report.failures.push_back("candidate rejected by independent re-evaluation");
    return;
  }
  for (const auto& s : report.solutions) {
    if (tuple_distance(s, Xs) < kDedupDistance) return;
  }
  report.solutions.push_back(Xs);
  report.residuals.push_back(std::move(residuals));
}

void sort_by_norm(SolveReport& report) {
  std::vector<std::size_t> order(report.solutions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return joint_norm_h(report.solutions[a]) < joint_norm_h(report.solutions[b]);
  });
  SolveReport sorted = report;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.solutions[i] = report.solutions[order[i]];
    sorted.residuals[i] = report.residuals[order[i]];
  }
  report.solutions = std::move(sorted.solutions);
  report.residuals = std::move(sorted.residuals);
}

std::string screen_note(const LeadingScreen& screen) {
  if (screen.verdict == Verdict::kDegenerateWitness) return "leading form degenerate";
  if (screen.verdict == Verdict::kInconclusive) return "leading form screen inconclusive";
  if (!screen.existence_guaranteed) return "leading form non-degenerate but of even degree";
  return "leading form non-degenerate of odd degree";
}

SolveReport run_multistart(const std::vector<FreeMatrixPoly>& ps, const SolveOptions& options,
                           const LeadingScreen& screen) {
  const CoordinateMap map(ps);
  const RealVector zero = RealVector::Zero(map.output_dimension());
  SolveReport report;
  report.method = "newton";
  report.screen = screen;

  const std::size_t batch = static_cast<std::size_t>(std::max(options.threads, 1));
  std::vector<CoreResult> results(static_cast<std::size_t>(options.max_starts));
  for (std::size_t begin = 0; begin < results.size(); begin += batch) {
    const std::size_t end = std::min(results.size(), begin + batch);
    parallel_for(begin, end, options.threads, [&](std::size_t s) {
      results[s] = newton_core(map, start_point(map, options.seed, s), zero, options.tol,
                               options.max_newton_iters);
    });
    bool stop = false;
    for (std::size_t s = begin; s < end && !stop; ++s) {
      report.starts_tried = static_cast<int>(s + 1);
      if (results[s].converged) {
        add_solution(report, ps, map.unpack(results[s].x), options.tol);
        stop = !options.all && !report.solutions.empty();
      } else {
        report.failures.push_back("start " + std::to_string(s) + ": " + results[s].failure);
      }
    }
    if (stop) break;
  }
  if (options.all) sort_by_norm(report);
  report.status = report.solutions.empty() ? SolveStatus::kNoSolutionFound : SolveStatus::kSolved;
  if (report.solutions.empty()) report.failures.push_back("no solution found: " + screen.note);
  return report;
}

struct PathResult {
  PathRecord record;
  bool solved = false;
  RealVector x;
};

PathResult track_path(const CoordinateMap& map, const SolveOptions& options, std::size_t index) {
  PathResult out;
  out.record.start = static_cast<int>(index);
  const RealVector x0 = start_point(map, options.seed, index);
  const RealVector F0 = map.residual(x0);
  const double path_tol = std::max(options.tol, 1e-9 * (1.0 + block_residual(F0, map.n())));

  RealVector x = x0;
  RealVector x_prev;
  double s = 0.0;
  double s_prev = 0.0;
  bool has_prev = false;
  double ds = 1.0;
  out.record.parameters.push_back(0.0);
  while (s < 1.0) {
    if (out.record.steps >= options.homotopy_steps) {
      out.record.failure = "step budget exhausted";
      break;
    }
    ++out.record.steps;
    ds = std::min(ds, 1.0 - s);
    const double s_next = (1.0 - s) - ds <= 0.0 ? 1.0 : s + ds;
    RealVector predicted = x;
    if (has_prev) predicted += (x - x_prev) * ((s_next - s) / (s - s_prev));
    const bool final_step = s_next >= 1.0;
    const CoreResult corr =
        newton_core(map, predicted, (1.0 - s_next) * F0, final_step ? options.tol : path_tol,
                    final_step ? options.max_newton_iters : kCorrectorIters);
    if (corr.converged) {
      x_prev = x;
      s_prev = s;
      has_prev = true;
      x = corr.x;
      s = s_next;
      out.record.parameters.push_back(s);
      ds *= 2.0;
    } else {
      ds *= 0.5;
      if (ds < options.min_step) {
        out.record.failure = "step below minimum at s=" + std::to_string(s) + " (" +
                             corr.failure + ")";
        break;
      }
    }
  }
  out.record.reached = s;
  out.solved = s >= 1.0;
  out.x = x;
  return out;
}

SolveReport run_homotopy(const std::vector<FreeMatrixPoly>& ps, const SolveOptions& options,
                         const LeadingScreen& screen) {
  const CoordinateMap map(ps);
  SolveReport report;
  report.method = "homotopy";
  report.screen = screen;

  const std::size_t batch = static_cast<std::size_t>(std::max(options.threads, 1));
  std::vector<PathResult> results(static_cast<std::size_t>(options.max_starts));
  for (std::size_t begin = 0; begin < results.size(); begin += batch) {
    const std::size_t end = std::min(results.size(), begin + batch);
    parallel_for(begin, end, options.threads,
                 [&](std::size_t i) { results[i] = track_path(map, options, i); });
    bool stop = false;
    for (std::size_t i = begin; i < end && !stop; ++i) {
      report.starts_tried = static_cast<int>(i + 1);
      report.paths.push_back(results[i].record);
      if (results[i].solved) {
        add_solution(report, ps, map.unpack(results[i].x), options.tol);
        stop = !options.all && !report.solutions.empty();
      } else {
        report.failures.push_back("path " + std::to_string(i) + ": " + results[i].record.failure);
      }
    }
    if (stop) break;
  }
  if (options.all) sort_by_norm(report);
  report.status = report.solutions.empty() ? SolveStatus::kNoSolutionFound : SolveStatus::kSolved;
  if (report.solutions.empty()) report.failures.push_back("no solution found: " + screen.note);
  return report;
}

}  // namespace

std::string to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::kNewton:
      return "newton";
    case SolveMethod::kHomotopy:
      return "homotopy";
    case SolveMethod::kAuto:
      return "auto";
  }
  return "auto";
}

SolveMethod parse_solve_method(const std::string& name) {
  if (name == "newton") return SolveMethod::kNewton;
  if (name == "homotopy") return SolveMethod::kHomotopy;
  if (name == "auto") return SolveMethod::kAuto;
  throw InvalidInput("unknown solve method '" + name + "'");
}

NewtonOutcome newton_refine(const std::vector<FreeMatrixPoly>& ps, const MatrixTuple& Xs0,
                            const SolveOptions& options) {
  validate_options(options);
  const CoordinateMap map(ps);
  if (static_cast<int>(Xs0.size()) != map.k()) {
    throw InvalidInput("start tuple has the wrong number of matrices");
  }
  for (const auto& X : Xs0) {
    if (X.rows() != map.n() || X.cols() != map.n() || !is_hermitian(X)) {
      throw InvalidInput("start matrices must be Hermitian and n x n");
    }
  }
  const CoreResult core = newton_core(map, map.pack(Xs0), RealVector::Zero(map.output_dimension()),
                                      options.tol, options.max_newton_iters);
  NewtonOutcome out;
  out.solution = map.unpack(core.x);
  out.iterations = core.iterations;
  out.failure = core.failure;
  out.residual = max_residual(ps, out.solution);
  out.converged = core.converged && out.residual <= options.tol;
  if (core.converged && !out.converged) out.failure = "rejected by independent re-evaluation";
  return out;
}

LeadingScreen screen_leading_tuple(const std::vector<FreeMatrixPoly>& ps,
                                   const SolveOptions& options) {
  LeadingScreen screen;
  std::vector<FreeMatrixPoly> forms;
  try {
    for (const auto& p : ps) {
      const Degree d = effective_degree(p);
      screen.degrees.push_back(d.is_finite() ? d.value() : -1);
      forms.push_back(d.is_finite() ? graded_component(p, d.value())
                                    : FreeMatrixPoly(p.n(), p.k()));
    }
    NondegOptions nd;
    nd.starts = options.screen_starts;
    nd.seed = options.seed;
    nd.threads = options.threads;
    const NondegReport report = min_norm_on_sphere(forms, nd);
    screen.verdict = report.verdict;
    screen.powers = report.powers;
    screen.normalized_min = report.normalized_min;
  } catch (const ResourceError& e) {
    screen.verdict = Verdict::kInconclusive;
    screen.note = std::string("screen skipped: ") + e.what();
    return screen;
  }
  const bool all_odd = std::all_of(screen.degrees.begin(), screen.degrees.end(),
                                   [](int d) { return d > 0 && d % 2 == 1; });
  screen.existence_guaranteed = all_odd && screen.verdict == Verdict::kNondegenerateLikely;
  screen.note = screen_note(screen);
  return screen;
}

SolveReport multistart_solve(const std::vector<FreeMatrixPoly>& ps, const SolveOptions& options) {
  validate_options(options);
  validate_system(ps);
  return run_multistart(ps, options, screen_leading_tuple(ps, options));
}

SolveReport homotopy_solve(const std::vector<FreeMatrixPoly>& ps, const SolveOptions& options) {
  validate_options(options);
  validate_system(ps);
  return run_homotopy(ps, options, screen_leading_tuple(ps, options));
}

SolveReport solve_system(const std::vector<FreeMatrixPoly>& ps, const SolveOptions& options) {
  validate_options(options);
  validate_system(ps);
  const LeadingScreen screen = screen_leading_tuple(ps, options);
  switch (options.method) {
    case SolveMethod::kNewton:
      return run_multistart(ps, options, screen);
    case SolveMethod::kHomotopy:
      return run_homotopy(ps, options, screen);
    case SolveMethod::kAuto:
      break;
  }
  SolveReport first = run_multistart(ps, options, screen);
  if (first.status == SolveStatus::kSolved) {
    first.method = "auto:newton";
    return first;
  }
  SolveReport second = run_homotopy(ps, options, screen);
  second.method = "auto:homotopy";
  second.starts_tried += first.starts_tried;
  second.failures.insert(second.failures.begin(), first.failures.begin(), first.failures.end());
  return second;
}

}  // namespace matpoly
