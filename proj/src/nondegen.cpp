#include "matpoly/nondegen.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "matpoly/coordinate_map.hpp"
#include "matpoly/error.hpp"
#include "matpoly/hermspace.hpp"
#include "matpoly/parallel.hpp"
#include "matpoly/rng.hpp"

namespace matpoly {

namespace {

struct PreparedForms {
  std::vector<FreeMatrixPoly> original;
  std::vector<FreeMatrixPoly> scaled;  // degree-equalized, unit canonical norm
  std::vector<int> powers;
  int n = 0;
  int k = 0;
};

PreparedForms prepare(const std::vector<FreeMatrixPoly>& forms) {
  if (forms.empty()) throw InvalidInput("non-degeneracy screen needs at least one form");
  PreparedForms out;
  out.original = forms;
  out.n = forms.front().n();
  out.k = forms.front().k();
  int common = 1;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto& p = forms[i];
    if (p.n() != out.n || p.k() != out.k) {
      throw InvalidInput("forms differ in matrix size or variable count");
    }
    if (!p.is_homogeneous()) {
      throw InvalidInput("form " + std::to_string(i) + " is not homogeneous");
    }
    if (!is_self_adjoint(p)) {
      throw InvalidInput("form " + std::to_string(i) + " is not self-adjoint");
    }
    const Degree d = p.degree();
    if (d.is_finite() && d.value() > 0) common = std::lcm(common, d.value());
  }
  for (const auto& p : forms) {
    const Degree d = p.degree();
    const int power = (d.is_finite() && d.value() > 0) ? common / d.value() : 1;
    out.powers.push_back(power);
    FreeMatrixPoly lifted = power == 1 ? p : pow(p, power);
    const double c = canonicalize(lifted).norm();
    out.scaled.push_back(c > 1e-300 ? lifted.scaled(1.0 / c) : lifted);
  }
  return out;
}

struct StartResult {
  RealVector x;
  double value = std::numeric_limits<double>::infinity();
};

// f(x) = |F(x)|^2 / n on the sphere |x|^2 = n; returns sqrt(f) at the end.
StartResult minimize_from(const CoordinateMap& map, RealVector x, const NondegOptions& options) {
  const double n = map.n();
  const double radius = std::sqrt(n);
  auto retract = [radius](const RealVector& v) -> RealVector { return radius * v.normalized(); };
  auto objective = [&](const RealVector& v) { return map.residual(v).squaredNorm() / n; };

  x = retract(x);
  double f = objective(x);
  double step = 1.0;
  for (int it = 0; it < options.gradient_iters && f > 1e-30; ++it) {
    const RealVector F = map.residual(x);
    const RealMatrix J = map.jacobian(x);
    RealVector g = (2.0 / n) * (J.transpose() * F);
    g -= (g.dot(x) / x.squaredNorm()) * x;
    const double g2 = g.squaredNorm();
    if (g2 <= 1e-30 * std::max(1.0, f)) break;
    bool accepted = false;
    for (int tries = 0; tries < 50; ++tries) {
      const RealVector trial = retract(x - step * g);
      const double ft = objective(trial);
      if (ft <= f - 1e-4 * step * g2) {
        x = trial;
        f = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    step *= 2.0;
  }

  // Gauss-Newton polish in a tangent frame.
  for (int it = 0; it < options.polish_iters && f > 1e-32; ++it) {
    const RealVector F = map.residual(x);
    const RealMatrix U = complement_frame(x);
    if (U.cols() == 0) break;  // the sphere is two points
    const RealMatrix Jt = map.jacobian(x) * U;
    RealMatrix normal = Jt.transpose() * Jt;
    const double shift = 1e-12 * std::max(1e-300, normal.diagonal().maxCoeff());
    normal.diagonal().array() += shift;
    const RealVector delta = normal.ldlt().solve(-(Jt.transpose() * F));
    bool improved = false;
    double scale = 1.0;
    for (int tries = 0; tries < 8; ++tries, scale *= 0.5) {
      const RealVector trial = retract(x + scale * (U * delta));
      const double ft = objective(trial);
      if (ft < f) {
        x = trial;
        f = ft;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {x, std::sqrt(f)};
}

double normalized_residual(const std::vector<FreeMatrixPoly>& forms, const MatrixTuple& Xs) {
  double sum = 0.0;
  for (const auto& p : forms) {
    const double r = norm_h(evaluate(p, Xs));
    sum += r * r;
  }
  return std::sqrt(sum);
}

}  // namespace

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kNondegenerateLikely:
      return "nondegenerate-likely";
    case Verdict::kDegenerateWitness:
      return "degenerate-witness";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify_residual(double normalized_min) {
  if (normalized_min <= kWitnessThreshold) return Verdict::kDegenerateWitness;
  if (normalized_min >= kNondegenerateThreshold) return Verdict::kNondegenerateLikely;
  return Verdict::kInconclusive;
}

NondegReport min_norm_on_sphere(const std::vector<FreeMatrixPoly>& forms,
                                const NondegOptions& options) {
  if (options.starts < 1) throw InvalidInput("non-degeneracy screen needs at least one start");
  const PreparedForms prepared = prepare(forms);
  const CoordinateMap map(prepared.scaled);
  const int dim = map.input_dimension();

  std::vector<StartResult> results(options.starts);
  parallel_for(0, results.size(), options.threads, [&](std::size_t s) {
    Rng rng = Rng::stream(options.seed, s);
    RealVector x0(dim);
    for (int i = 0; i < dim; ++i) x0(i) = rng.gaussian();
    results[s] = minimize_from(map, x0, options);
  });

  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s) {
    if (results[s].value < results[best].value) best = s;
  }

  NondegReport report;
  report.minimizer = map.unpack(results[best].x);
  report.normalized_min = normalized_residual(prepared.scaled, report.minimizer);
  double raw = 0.0;
  for (const auto& p : prepared.original) {
    const double r = norm_h(evaluate(p, report.minimizer));
    raw += r * r;
  }
  report.min_value = std::sqrt(raw);
  report.verdict = classify_residual(report.normalized_min);
  report.starts_used = options.starts;
  report.seed = options.seed;
  report.powers = prepared.powers;
  return report;
}

Verdict assess(const std::vector<FreeMatrixPoly>& forms, const NondegOptions& options) {
  return min_norm_on_sphere(forms, options).verdict;
}

bool verify_witness(const std::vector<FreeMatrixPoly>& forms, const MatrixTuple& Xs) {
  const PreparedForms prepared = prepare(forms);
  if (static_cast<int>(Xs.size()) != prepared.k) {
    throw InvalidInput("witness has the wrong number of matrices");
  }
  for (const auto& X : Xs) {
    if (!is_hermitian(X)) throw InvalidInput("witness matrices must be Hermitian");
  }
  const double r = joint_norm_h(Xs);
  if (!(r > 0.0)) throw InvalidInput("witness must be nonzero");
  MatrixTuple projected;
  for (const auto& X : Xs) projected.push_back(X / r);
  for (const auto& p : prepared.scaled) {
    if (norm_h(evaluate(p, projected)) > kWitnessThreshold) return false;
  }
  return true;
}

}  // namespace matpoly
