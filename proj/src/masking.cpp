#include "maskobs/masking.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maskobs/error.hpp"

namespace maskobs {

namespace {

constexpr double kZeroVector = 1e-12;

void require_unit(const Vec3& n) {
  if (!n.allFinite() || std::abs(n.norm() - 1.0) > tol::kInput) {
    throw Error(ErrorCode::NotUnitVector, "|n| = " + std::to_string(n.norm()));
  }
}

// Normalized projector onto the eigenspace of eigenvalue `target`.
Matrix eigenspace_state(const HermitianEig& eig, double target) {
  const Eigen::Index d = eig.eigenvalues.size();
  Matrix state = Matrix::Zero(d, d);
  int count = 0;
  for (Eigen::Index k = 0; k < d; ++k) {
    if (std::abs(eig.eigenvalues(k) - target) <= tol::kMaskable) {
      state += projector(eig.eigenvectors.col(k));
      ++count;
    }
  }
  return state / static_cast<double>(count);
}

// Unit vector orthogonal to n, chosen from the coordinate axis least aligned
// with it.
Vec3 orthogonal_unit(const Vec3& n) {
  Eigen::Index axis = 0;
  n.cwiseAbs().minCoeff(&axis);
  Vec3 e = Vec3::Zero();
  e(axis) = 1.0;
  Vec3 u = e - n * n.dot(e);
  return u / u.norm();
}

}  // namespace

std::string_view to_string(MaskMethod method) {
  switch (method) {
    case MaskMethod::BlochCriterion: return "bloch-criterion";
    case MaskMethod::NecessaryOnly: return "necessary-only";
    case MaskMethod::Oracle: return "oracle";
  }
  return "unknown";
}

MaskabilityVerdict decide_maskable_qubit(const ObservableCoeffs& c) {
  if (c.dimension != 2 || c.a.size() != 3) {
    throw Error(ErrorCode::DimensionMismatch, "qubit criterion needs d = 2");
  }
  const double norm = c.a.norm();
  MaskabilityVerdict v;
  v.method = MaskMethod::BlochCriterion;
  v.eig_range = EigRange{c.a0 - norm, c.a0 + norm};
  if (norm <= kZeroVector) {
    v.maskable = std::abs(c.a0 - 1.0) <= tol::kMaskable;
    return v;
  }
  v.plane_distance = std::abs(1.0 - c.a0) / (2.0 * norm);
  v.maskable = std::abs(1.0 - c.a0) <= norm + tol::kMaskable;
  return v;
}

MaskabilityVerdict decide_maskable_oracle(const Matrix& observable) {
  const HermitianEig eig = eig_hermitian(observable);
  MaskabilityVerdict v;
  v.method = MaskMethod::Oracle;
  const EigRange range{eig.eigenvalues.minCoeff(), eig.eigenvalues.maxCoeff()};
  v.eig_range = range;
  v.maskable = range.min <= 1.0 + tol::kMaskable && 1.0 <= range.max + tol::kMaskable;
  return v;
}

double necessary_threshold(int d, double a0) {
  const double dd = d;
  return std::abs(dd - dd * a0) / std::sqrt(2.0 * dd * (dd - 1.0));
}

bool necessary_condition_d(const ObservableCoeffs& c) {
  return c.a.norm() >= necessary_threshold(c.dimension, c.a0) - tol::kMaskable;
}

Matrix masking_output_state(const Matrix& observable) {
  const MaskabilityVerdict verdict = decide_maskable_oracle(observable);
  if (!verdict.maskable) {
    throw Error(ErrorCode::NotMaskable, "1 is outside [" + std::to_string(verdict.eig_range->min) +
                                            ", " + std::to_string(verdict.eig_range->max) + "]");
  }
  const HermitianEig eig = eig_hermitian(observable);
  const double lo = verdict.eig_range->min;
  const double hi = verdict.eig_range->max;
  const Eigen::Index d = observable.rows();
  if (hi - lo <= tol::kMaskable) return identity(static_cast<int>(d)) / static_cast<double>(d);
  const double p = std::clamp((1.0 - lo) / (hi - lo), 0.0, 1.0);
  Matrix sigma = p * eigenspace_state(eig, hi) + (1.0 - p) * eigenspace_state(eig, lo);
  return 0.5 * (sigma + sigma.adjoint());
}

KrausChannel build_constant_masker(const Matrix& observable) {
  return constant_channel(masking_output_state(observable), static_cast<int>(observable.rows()));
}

double verify_masking(const KrausChannel& channel, const Matrix& observable) {
  if (channel.input_dim() != channel.output_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "masking needs a channel on one system");
  }
  return max_norm(apply_adjoint(channel, observable) - identity(channel.input_dim()));
}

bool masks(const KrausChannel& channel, const Matrix& observable) {
  return verify_masking(channel, observable) < tol::kMasking;
}

Matrix pauli(int index) {
  Matrix s = Matrix::Zero(2, 2);
  switch (index) {
    case 1: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
    case 2: s(0, 1) = Complex(0, -1); s(1, 0) = Complex(0, 1); break;
    case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
    default: throw Error(ErrorCode::DimensionMismatch, "Pauli index must be 1, 2 or 3");
  }
  return s;
}

Matrix pauli_dot(const Vec3& n) {
  return n(0) * pauli(1) + n(1) * pauli(2) + n(2) * pauli(3);
}

Matrix rotation_unitary(const Vec3& n) {
  require_unit(n);
  const Vec3 unit = n / n.norm();
  const double theta = std::acos(std::clamp(unit(2), -1.0, 1.0));
  const double phi = std::atan2(unit(1), unit(0));
  Matrix ry(2, 2);  // exp(i theta sigma2 / 2)
  ry << std::cos(theta / 2), std::sin(theta / 2), -std::sin(theta / 2), std::cos(theta / 2);
  Matrix rz = Matrix::Zero(2, 2);  // exp(i phi sigma3 / 2)
  rz(0, 0) = std::polar(1.0, phi / 2);
  rz(1, 1) = std::polar(1.0, -phi / 2);
  return ry * rz;
}

SwapMasker build_masker_swap(const Vec3& n, const Matrix& u0, const Matrix& u1) {
  const Matrix w = rotation_unitary(n);
  std::vector<Matrix> kraus;
  for (int i = 0; i < 2; ++i) {
    kraus.push_back(w.adjoint() * ketbra(basis_ket(2, 0), basis_ket(2, i)));
  }
  UnitaryDilation dilation = masker_dilation(u0, u1);
  dilation.unitary = tensor(w.adjoint(), identity(2)) * dilation.unitary;
  return SwapMasker{w, KrausChannel(std::move(kraus)), std::move(dilation)};
}

NoHidingReport verify_nohiding(const Vec3& n, const Matrix& u0, const Matrix& u1) {
  const SwapMasker masker = build_masker_swap(n, u0, u1);
  const Matrix& u = masker.dilation.unitary;
  const Matrix observable = pauli_dot(n);
  NoHidingReport report;
  report.swap_residual = max_norm(u.adjoint() * tensor(observable, identity(2)) * u -
                                  tensor(identity(2), pauli(3)));
  report.recovery_residual = max_norm(masker.w.adjoint() * pauli(3) * masker.w - observable);
  report.verified = report.swap_residual < tol::kMasking && report.recovery_residual < tol::kMasking;
  return report;
}

OutputDisk output_disk(const Vec3& a) {
  const double norm = a.norm();
  if (!(norm >= 1.0 - tol::kMaskable)) {
    throw Error(ErrorCode::EmptyDisk, "|a| = " + std::to_string(norm) + " < 1");
  }
  const Vec3 normal = a / norm;
  const double radius = 0.5 * std::sqrt(std::max(0.0, 1.0 - 1.0 / (norm * norm)));
  return OutputDisk{normal / (2.0 * norm), radius, normal};
}

Vec3 disk_point(const OutputDisk& disk, double r, double t) {
  const Vec3 u = orthogonal_unit(disk.normal);
  const Vec3 v = disk.normal.cross(u);
  return disk.center + r * disk.radius * (std::cos(t) * u + std::sin(t) * v);
}

}  // namespace maskobs
