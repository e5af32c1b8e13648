#pragma once

// Deciding, constructing and verifying maskers for observables.
//
// A channel E masks O when its adjoint sends O to the identity,
// E*(O) = I, equivalently Tr(E(rho) O) = 1 for every input rho.

#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "maskobs/bloch.hpp"
#include "maskobs/channels.hpp"

namespace maskobs {

using Vec3 = Eigen::Vector3d;

enum class MaskMethod { BlochCriterion, NecessaryOnly, Oracle };
std::string_view to_string(MaskMethod method);

struct EigRange {
  double min = 0.0;
  double max = 0.0;
};

struct MaskabilityVerdict {
  bool maskable = false;
  MaskMethod method = MaskMethod::Oracle;
  // |1 - a0| / (2|a|): distance of the plane a.b = (1 - a0)/2 from the
  // origin of the Bloch ball. Undefined when a = 0.
  std::optional<double> plane_distance;
  std::optional<EigRange> eig_range;
};

/// Qubit criterion: maskable iff |1 - a0| <= |a| (within 1e-9); for a = 0,
/// maskable iff a0 = 1. Throws DimensionMismatch unless d = 2.
MaskabilityVerdict decide_maskable_qubit(const ObservableCoeffs& c);

/// Any d: maskable iff lambda_min <= 1 <= lambda_max (within 1e-9), since a
/// constant channel onto a suitable state realizes Tr(sigma O) = 1 exactly
/// when 1 lies in the numerical range of O.
MaskabilityVerdict decide_maskable_oracle(const Matrix& observable);

/// |a| >= |d - d a0| / sqrt(2 d (d - 1)): the masking hyperplane
/// a.b = (1 - a0)/2 must meet the ball |b|^2 <= (d-1)/(2d) that contains
/// every Bloch vector. Necessary for all d, sufficient for d = 2.
bool necessary_condition_d(const ObservableCoeffs& c);
double necessary_threshold(int d, double a0);

/// sigma0 = p * P_max + (1 - p) * P_min with P_max, P_min the normalized
/// eigenprojectors of the extreme eigenvalues and
/// p = (1 - lambda_min) / (lambda_max - lambda_min); for a flat spectrum the
/// maximally mixed state. Tr(sigma0 O) = 1. Throws NotMaskable.
Matrix masking_output_state(const Matrix& observable);
KrausChannel build_constant_masker(const Matrix& observable);

/// max|E*(O) - I|; the channel masks O when this is below 1e-9.
double verify_masking(const KrausChannel& channel, const Matrix& observable);
bool masks(const KrausChannel& channel, const Matrix& observable);

Matrix pauli(int index);  // 1, 2, 3
Matrix pauli_dot(const Vec3& n);

/// 2x2 unitary w with w^dagger sigma3 w = n.sigma, built from the spherical
/// angles of n as w = exp(i theta sigma2 / 2) exp(i phi sigma3 / 2).
Matrix rotation_unitary(const Vec3& n);

struct SwapMasker {
  Matrix w;
  KrausChannel channel;       // E'_i = w^dagger |0><i|
  UnitaryDilation dilation;   // U' = (w^dagger (x) I) U
};

SwapMasker build_masker_swap(const Vec3& n, const Matrix& u0 = identity(2),
                             const Matrix& u1 = identity(2));

struct NoHidingReport {
  double swap_residual = 0.0;      // max|U'^dagger (n.sigma (x) I) U' - I (x) sigma3|
  double recovery_residual = 0.0;  // max|w^dagger sigma3 w - n.sigma|
  bool verified = false;
};

NoHidingReport verify_nohiding(const Vec3& n, const Matrix& u0 = identity(2),
                               const Matrix& u1 = identity(2));

/// Output states of a masker for O = a.sigma: the plane a.b = 1/2 cut by the
/// Bloch ball. Throws EmptyDisk when |a| < 1.
struct OutputDisk {
  Vec3 center;
  double radius = 0.0;
  Vec3 normal;
};

OutputDisk output_disk(const Vec3& a);
// Point at radial fraction r in [0, 1] and polar angle t on the disk.
Vec3 disk_point(const OutputDisk& disk, double r, double t);

}  // namespace maskobs
