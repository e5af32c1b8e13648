#include "maskobs/comask.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "maskobs/error.hpp"

namespace maskobs {

namespace {

constexpr double kBallSlack = 1e-10;
constexpr double kPlanarResidual = 1e-9;
constexpr int kMaxIterations = 10000;
constexpr double kConverged = 1e-9;
constexpr double kStallInfeasible = 1e-6;
constexpr double kFeasibleDefect = 1e-7;

void require_qubit_point(const RealVector& b, const char* what) {
  if (b.size() != 3) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be a 3-vector");
  if (!b.allFinite() || b.norm() > 0.5 + kBallSlack) {
    throw Error(ErrorCode::InvalidState, std::string(what) + " lies outside the Bloch ball");
  }
}

RealMatrix differences(const std::vector<RealVector>& points) {
  const Eigen::Index n = points.front().size();
  RealMatrix diff(n, static_cast<Eigen::Index>(points.size()) - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diff.col(i - 1) = points[i] - points.front();
  return diff;
}

// Euclidean projection onto the probability simplex.
RealVector project_simplex(const RealVector& v) {
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).max(0.0).matrix();
}

RealVector project_states(const RealVector& b, int d) {
  const Matrix rho = bloch_to_state(BlochVector{d, b});
  const HermitianEig eig = eig_hermitian(rho);
  const RealVector p = project_simplex(eig.eigenvalues);
  Matrix projected = eig.eigenvectors * p.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  projected = 0.5 * (projected + projected.adjoint());
  projected /= projected.trace().real();
  return state_to_bloch(projected).b;
}

}  // namespace

bool AffineSet::contains(const RealVector& x, double tolerance) const {
  if (x.size() != base.size()) return false;
  const RealVector offset = x - base;
  const RealVector residual = offset - directions * (directions.transpose() * offset);
  return residual.cwiseAbs().maxCoeff() <= tolerance;
}

AffineSet AffineSet::slice(int coord, double value) const {
  if (coord < 0 || coord >= ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "slice coordinate");
  const RealVector row = directions.row(coord).transpose();
  if (row.norm() < 1e-12) {
    if (std::abs(base(coord) - value) <= tol::kMaskable) return *this;
    throw Error(ErrorCode::EmptySet, "slice misses the affine set");
  }
  AffineSet out;
  out.base = base + directions * (row * ((value - base(coord)) / row.squaredNorm()));
  out.directions = directions * null_space(row.transpose());
  return out;
}

std::string_view to_string(ComaskKind kind) {
  switch (kind) {
    case ComaskKind::Singleton: return "singleton";
    case ComaskKind::Line: return "line";
    case ComaskKind::Plane: return "plane";
    case ComaskKind::General: return "general";
  }
  return "unknown";
}

ObservableCoeffs ComaskDescription::observable(const RealVector& x) const {
  if (a0_fixed) return ObservableCoeffs{dimension, *a0_fixed, x};
  return ObservableCoeffs{dimension, x(0), x.tail(x.size() - 1)};
}

double masking_defect(const ObservableCoeffs& c, const RealVector& b) {
  if (c.a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "observable and state lengths differ");
  return c.a0 / 2.0 + c.a.dot(b) - 0.5;
}

ComaskDescription comask_from_point(const RealVector& b) {
  require_qubit_point(b, "output state");
  const double norm2 = b.squaredNorm();
  if (norm2 < 1e-24) {
    throw Error(ErrorCode::DegenerateState, "b = 0: a.b = 1/2 has no solution");
  }
  ComaskDescription out;
  out.kind = ComaskKind::Plane;
  out.a0_fixed = 0.0;
  out.set.base = b / (2.0 * norm2);
  out.set.directions = null_space(b.transpose());
  return out;
}

ComaskDescription comask_from_line(const RealVector& p, const RealVector& q) {
  require_qubit_point(p, "endpoint p");
  require_qubit_point(q, "endpoint q");
  const Eigen::Vector3d pv = p;
  const Eigen::Vector3d qv = q;
  const Eigen::Vector3d normal = pv.cross(qv);
  const double scale = std::max(pv.norm() * qv.norm(), 1e-300);
  if (normal.norm() <= tol::kRank * scale || (pv - qv).norm() <= tol::kInput) {
    throw Error(ErrorCode::DegenerateLine, "endpoints and origin are collinear");
  }
  RealMatrix rows(2, 3);
  rows.row(0) = p.transpose();
  rows.row(1) = q.transpose();
  ComaskDescription out;
  out.kind = ComaskKind::Line;
  out.a0_fixed = 0.0;
  out.set.base = pseudo_inverse(rows) * RealVector::Constant(2, 0.5);
  out.set.directions = RealMatrix(normal / normal.norm());
  return out;
}

ComaskDescription comask_from_planar(const std::vector<RealVector>& points) {
  if (points.size() < 3) throw Error(ErrorCode::Degenerate, "need at least three points");
  for (const RealVector& r : points) require_qubit_point(r, "output state");
  const int k = numerical_rank(differences(points));
  if (k < 2) {
    throw Error(ErrorCode::Degenerate, "affine span has dimension " + std::to_string(k));
  }
  RealMatrix rows(static_cast<Eigen::Index>(points.size()), 3);
  for (std::size_t i = 0; i < points.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
  const RealVector rhs = RealVector::Constant(rows.rows(), 0.5);
  const RealVector a = pseudo_inverse(rows) * rhs;
  const double residual = (rows * a - rhs).cwiseAbs().maxCoeff();
  if (residual > kPlanarResidual) {
    throw Error(ErrorCode::Inconsistent, "no single observable fits all points, residual " + std::to_string(residual));
  }
  ComaskDescription out;
  out.kind = ComaskKind::Singleton;
  out.a0_fixed = 0.0;
  out.set.base = a;
  out.set.directions = RealMatrix(3, 0);
  return out;
}

GeneralComask comask_general(const std::vector<RealVector>& points, int d) {
  if (points.empty()) throw Error(ErrorCode::Degenerate, "no output states given");
  const int n = bloch_length(d);
  for (const RealVector& b : points) {
    if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "Bloch vector length");
    if (!positivity_conditions(BlochVector{d, b}).positive) {
      throw Error(ErrorCode::InvalidState, "output point is not a valid state");
    }
  }
  GeneralComask out;
  out.v_basis = points.size() > 1 ? column_space(differences(points)) : RealMatrix(n, 0);
  out.k = static_cast<int>(out.v_basis.cols());
  const RealVector& b0 = points.front();
  out.m = b0 - out.v_basis * (out.v_basis.transpose() * b0);

  // Rows: [0, v_i^T] for the basis of V, then [1/2, m^T].
  RealMatrix constraints = RealMatrix::Zero(out.k + 1, n + 1);
  RealVector rhs = RealVector::Zero(out.k + 1);
  for (int i = 0; i < out.k; ++i) constraints.row(i).tail(n) = out.v_basis.col(i).transpose();
  constraints(out.k, 0) = 0.5;
  constraints.row(out.k).tail(n) = out.m.transpose();
  rhs(out.k) = 0.5;

  ComaskDescription& desc = out.description;
  desc.kind = ComaskKind::General;
  desc.dimension = d;
  desc.set.base = pseudo_inverse(constraints) * rhs;
  desc.set.directions = null_space(constraints);
  // The a0 column makes the last row independent of the others, so the
  // system always has full row rank and the set is never empty.
  if (desc.set.affine_dim() != d * d - out.k - 1 ||
      (constraints * desc.set.base - rhs).cwiseAbs().maxCoeff() > tol::kMaskable) {
    throw Error(ErrorCode::NumericalFailure, "comaskable constraint system lost rank");
  }
  return out;
}

ObservableCoeffs universal_counterexample(const RealVector& b, const RealVector& b_prime, int d) {
  const int n = bloch_length(d);
  if (b.size() != n || b_prime.size() != n) throw Error(ErrorCode::DimensionMismatch, "Bloch vector length");
  const RealVector diff = b - b_prime;
  if (diff.norm() <= tol::kInput) throw Error(ErrorCode::IdenticalPoints, "b and b' coincide");
  ObservableCoeffs out{d, 0.0, diff / diff.norm()};
  out.a0 = 1.0 - 2.0 * out.a.dot(b_prime);
  return out;
}

CommonStateResult find_common_output_state(const std::vector<ObservableCoeffs>& observables, int d) {
  if (observables.empty()) throw Error(ErrorCode::Degenerate, "no observables given");
  const int n = bloch_length(d);
  RealMatrix rows(static_cast<Eigen::Index>(observables.size()), n);
  RealVector rhs(rows.rows());
  for (std::size_t j = 0; j < observables.size(); ++j) {
    const ObservableCoeffs& c = observables[j];
    if (c.dimension != d || c.a.size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "observable " + std::to_string(j) + " has the wrong dimension");
    }
    rows.row(static_cast<Eigen::Index>(j)) = c.a.transpose();
    rhs(static_cast<Eigen::Index>(j)) = (1.0 - c.a0) / 2.0;
  }
  const RealMatrix pinv = pseudo_inverse(rows);
  auto project_affine = [&](const RealVector& y) -> RealVector { return y - pinv * (rows * y - rhs); };

  RealVector x = pinv * rhs;
  const double affine_residual = (rows * x - rhs).cwiseAbs().maxCoeff();
  if (affine_residual > tol::kMaskable) {
    throw Error(ErrorCode::NoAffineSolution, "linear masking constraints are inconsistent, residual " +
                                                 std::to_string(affine_residual));
  }

  CommonStateResult result;
  RealVector y = x;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= kMaxIterations; ++it) {
    y = project_states(x, d);
    x = project_affine(y);
    result.iterations = it;
    result.distance = (x - y).norm();
    result.max_defect = (rows * y - rhs).cwiseAbs().maxCoeff();
    if (result.distance < kConverged && result.max_defect <= kFeasibleDefect) break;
    const bool stalled = previous - result.distance <= 1e-13 * std::max(1.0, result.distance);
    if (stalled && result.distance > kStallInfeasible) break;
    previous = result.distance;
  }
  result.state = BlochVector{d, y};
  result.feasible = result.max_defect <= kFeasibleDefect;
  return result;
}

}  // namespace maskobs
