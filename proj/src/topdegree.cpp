#include "matpoly/topdegree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "matpoly/coordinate_map.hpp"
#include "matpoly/error.hpp"
#include "matpoly/hermspace.hpp"
#include "matpoly/parallel.hpp"
#include "matpoly/rng.hpp"

namespace matpoly {

namespace {

int determinant_sign(const RealMatrix& M) {
  const double det = M.partialPivLu().determinant();
  return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
}

// Local orientation data at a preimage x of the unit target direction y.
struct LocalData {
  int sign = 0;
  double condition = 0.0;
};

LocalData local_data(const CoordinateMap& map, const RealVector& x, const RealVector& y_unit,
                     const RealMatrix& target_frame) {
  const RealMatrix J = map.jacobian(x);
  const RealMatrix U = complement_frame(x);
  const auto m = x.size();

  RealMatrix image(m, m);
  image.leftCols(m - 1) = J * U;
  image.col(m - 1) = y_unit;
  RealMatrix source(m, m);
  source.leftCols(m - 1) = U;
  source.col(m - 1) = x.normalized();

  LocalData out;
  out.condition = 1.0;  // a zero-dimensional sphere has no tangent directions
  if (m > 1) {
    const RealMatrix tangent = target_frame.transpose() * J * U;
    Eigen::JacobiSVD<RealMatrix> svd(tangent);
    const auto& s = svd.singularValues();
    const double smallest = s(s.size() - 1);
    out.condition = smallest > 0.0 ? s(0) / smallest : std::numeric_limits<double>::infinity();
  }
  out.sign = determinant_sign(image) * determinant_sign(source);
  return out;
}

// Projected Newton on the sphere for P_{y-perp} p(x) = 0. Returns the point
// when it converges on the positive side <p(x), y> > 0.
std::optional<RealVector> newton_on_sphere(const CoordinateMap& map, RealVector x,
                                           const RealVector& y_unit,
                                           const RealMatrix& target_frame,
                                           const PreimageOptions& options) {
  const double radius = std::sqrt(static_cast<double>(map.n()));
  auto retract = [radius](const RealVector& v) -> RealVector { return radius * v.normalized(); };
  auto vanishing = [&](const RealVector& v, const RealVector& P) {
    if (P.norm() / radius < kVanishingThreshold) {
      throw DegeneracyDetected("form vanishes on the sphere during preimage search",
                               map.unpack(v));
    }
  };

  x = retract(x);
  RealVector P = map.residual(x);
  vanishing(x, P);
  double rho = (target_frame.transpose() * P).norm() / P.norm();
  for (int it = 0; it < options.max_newton_iters; ++it) {
    if (rho <= options.tolerance) break;
    const RealMatrix U = complement_frame(x);
    const RealMatrix A = target_frame.transpose() * map.jacobian(x) * U;
    const RealVector rhs = -(target_frame.transpose() * P);
    Eigen::PartialPivLU<RealMatrix> lu(A);
    RealVector delta = lu.solve(rhs);
    if (!delta.allFinite() || !(std::abs(lu.determinant()) > 0.0)) {
      RealMatrix normal = A.transpose() * A;
      normal.diagonal().array() += 1e-10 * std::max(1.0, normal.diagonal().maxCoeff());
      delta = normal.ldlt().solve(A.transpose() * rhs);
    }
    bool accepted = false;
    double scale = 1.0;
    for (int tries = 0; tries < 12; ++tries, scale *= 0.5) {
      const RealVector trial = retract(x + scale * (U * delta));
      const RealVector Pt = map.residual(trial);
      vanishing(trial, Pt);
      const double rt = (target_frame.transpose() * Pt).norm() / Pt.norm();
      if (rt < rho) {
        x = trial;
        P = Pt;
        rho = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (rho > options.tolerance || P.dot(y_unit) <= 0.0) return std::nullopt;
  return x;
}

}  // namespace

SphereMap::SphereMap(FreeMatrixPoly form) : form_(std::move(form)), degree_(0) {
  if (form_.k() != 1) throw InvalidInput("sphere maps are defined for one variable");
  if (form_.empty()) throw InvalidInput("sphere map of the zero polynomial is undefined");
  if (!form_.is_homogeneous()) throw InvalidInput("sphere map form must be homogeneous");
  if (!is_self_adjoint(form_)) throw InvalidInput("sphere map form must be self-adjoint");
  degree_ = form_.degree().value();
}

ComplexMatrix sphere_map_eval(const SphereMap& map, const ComplexMatrix& X) {
  if (!on_sphere(X)) throw InvalidInput("sphere_map_eval expects a point on the sphere");
  const ComplexMatrix value = evaluate(map.form(), X);
  if (norm_h(value) < kVanishingThreshold) {
    throw DegeneracyDetected("form vanishes at a sphere point", MatrixTuple{X});
  }
  return value / norm_h(value);
}

HomotopyValue proof_homotopy(const FreeMatrixPoly& p, double t, const ComplexMatrix& X) {
  if (p.k() != 1) throw InvalidInput("proof_homotopy is defined for one variable");
  if (!(t >= 0.0)) throw InvalidInput("homotopy parameter must be nonnegative");
  if (!on_sphere(X)) throw InvalidInput("proof_homotopy expects a point on the sphere");
  const ComplexMatrix point = t * X;
  const ComplexMatrix value = evaluate(p, point);
  const double r = norm_h(value);
  if (r < kVanishingThreshold) return {true, point};
  return {false, value / r};
}

int default_starts(int d, int n) {
  const double heuristic = 100.0 * std::pow(static_cast<double>(d), n * n - 1);
  return static_cast<int>(std::min(100000.0, std::max(500.0, heuristic)));
}

std::vector<Preimage> find_preimages(const SphereMap& map, const ComplexMatrix& target,
                                     const PreimageOptions& options) {
  if (options.starts < 1) throw InvalidInput("find_preimages needs at least one start");
  if (!on_sphere(target)) throw InvalidInput("target must lie on the sphere");
  const CoordinateMap coords({map.form()});
  const RealVector y_unit = to_coords(target).coords.normalized();
  const RealMatrix target_frame = complement_frame(y_unit);
  const int n = map.n();

  std::vector<std::optional<RealVector>> found(options.starts);
  parallel_for(0, found.size(), options.threads, [&](std::size_t s) {
    Rng rng = Rng::stream(options.seed, s);
    const RealVector x0 = hermitian_part_coords(random_sphere_point(n, rng));
    found[s] = newton_on_sphere(coords, x0, y_unit, target_frame, options);
  });

  // Deduplicate in start order so the result does not depend on threading.
  std::vector<RealVector> unique;
  const double scale = std::sqrt(static_cast<double>(n));
  for (const auto& x : found) {
    if (!x) continue;
    const bool seen = std::any_of(unique.begin(), unique.end(), [&](const RealVector& u) {
      return (u - *x).norm() / scale < options.dedup_distance;
    });
    if (!seen) unique.push_back(*x);
  }

  std::vector<Preimage> out;
  out.reserve(unique.size());
  for (const auto& x : unique) {
    const LocalData local = local_data(coords, x, y_unit, target_frame);
    out.push_back({from_coords(n, x), local.sign, local.condition});
  }
  return out;
}

RegularValue regular_value_sample(const SphereMap& map, std::uint64_t seed,
                                  const DegreeOptions& options) {
  const int starts = options.starts > 0 ? options.starts : default_starts(map.degree(), map.n());
  for (int attempt = 0; attempt < options.resample_budget; ++attempt) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(attempt));
    const ComplexMatrix target = random_sphere_point(map.n(), rng);
    PreimageOptions search;
    search.starts = starts;
    search.seed = rng.next_u64();
    search.threads = options.threads;
    std::vector<Preimage> preimages = find_preimages(map, target, search);
    const bool regular = std::all_of(preimages.begin(), preimages.end(), [&](const Preimage& p) {
      return p.sign != 0 && p.condition <= options.condition_limit;
    });
    if (regular) return {target, std::move(preimages), attempt + 1};
  }
  throw NoRegularValue("no regular value found after " +
                       std::to_string(options.resample_budget) + " targets");
}

int signed_count(const std::vector<Preimage>& preimages) {
  int total = 0;
  for (const auto& p : preimages) total += p.sign;
  return total;
}

DegreeReport brouwer_degree(const SphereMap& map, const DegreeOptions& options) {
  DegreeReport report;
  if (options.screen) {
    NondegOptions screen;
    screen.starts = options.screen_starts;
    screen.seed = options.seed;
    screen.threads = options.threads;
    const NondegReport nd = min_norm_on_sphere({map.form()}, screen);
    report.screened = true;
    report.screen_verdict = nd.verdict;
    if (nd.verdict == Verdict::kDegenerateWitness) {
      throw DegeneracyDetected("form is degenerate; the sphere map is undefined", nd.minimizer);
    }
  }

  const std::uint64_t check_seed = splitmix64(options.seed ^ 0x5bd1e9955bd1e995ULL);
  RegularValue first = regular_value_sample(map, options.seed, options);
  RegularValue second = regular_value_sample(map, check_seed, options);

  report.degree_estimate = signed_count(first.preimages);
  report.preimages = std::move(first.preimages);
  report.mod2 = static_cast<int>(report.preimages.size() % 2);
  report.target = std::move(first.target);
  report.attempts = first.attempts;
  report.starts_used = options.starts > 0 ? options.starts : default_starts(map.degree(), map.n());
  report.seeds = {options.seed, check_seed};
  report.check_run.seed = check_seed;
  report.check_run.target = std::move(second.target);
  report.check_run.estimate = signed_count(second.preimages);
  report.check_run.preimages = std::move(second.preimages);
  report.check_run.attempts = second.attempts;
  report.agreement = report.check_run.estimate == report.degree_estimate;
  return report;
}

int mod2_degree(const DegreeReport& report) {
  const int parity = static_cast<int>(report.preimages.size() % 2);
  const int estimate_parity = ((report.degree_estimate % 2) + 2) % 2;
  if (parity != estimate_parity || parity != report.mod2) {
    throw CorruptedReport("preimage count parity disagrees with the degree estimate");
  }
  return parity;
}

}  // namespace matpoly
