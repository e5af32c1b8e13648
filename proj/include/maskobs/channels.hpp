#pragma once

// Quantum channels in Kraus form, their Heisenberg-picture adjoints, and
// Stinespring-type dilations.

#include <vector>

#include "maskobs/algebra.hpp"

namespace maskobs {

/// A trace-preserving Kraus family {E_i}, each output_dim x input_dim.
/// Construction rejects families with max|sum E_i^dagger E_i - I| >= 1e-9,
/// so every live value is a valid channel. Kraus order is preserved.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Matrix> kraus);

  int input_dim() const { return input_dim_; }
  int output_dim() const { return output_dim_; }
  int size() const { return static_cast<int>(kraus_.size()); }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const Matrix& operator[](int i) const { return kraus_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<Matrix> kraus_;
  int input_dim_ = 0;
  int output_dim_ = 0;
};

struct UnitaryDilation {
  int system_dim = 0;
  int env_dim = 0;
  Matrix unitary;  // on system (x) environment
  Vector env_init;
};

bool is_density_matrix(const Matrix& rho);

// sum_i E_i rho E_i^dagger
Matrix apply_forward(const KrausChannel& channel, const Matrix& rho);
// sum_i E_i^dagger O E_i
Matrix apply_adjoint(const KrausChannel& channel, const Matrix& observable);

/// The replacement channel rho -> sigma0 with Kraus operators
/// sqrt(p_j) |e_j><k| over the eigendecomposition of sigma0 (largest p_j
/// first, zero weights skipped) and k = 0..input_dim-1.
KrausChannel constant_channel(const Matrix& sigma0, int input_dim);

/// V = sum_i E_i (x) |i>_E, an (output_dim * K) x input_dim isometry.
Matrix isometric_extension(const KrausChannel& channel);

/// Unitary on system (x) environment (environment dimension = Kraus count)
/// with U(|j> (x) |0>_E) = V|j>; the rest is fixed by unitary_completion.
/// Requires input_dim == output_dim.
UnitaryDilation unitary_dilation(const KrausChannel& channel);

/// Tr_E[ U (rho (x) |env><env|) U^dagger ].
Matrix reduced_output(const UnitaryDilation& dilation, const Matrix& rho);

/// The qubit masker U = sum_{ij} |j><i| (x) u_j |i><j|, i.e.
/// U(|m>_A (x) |n>_E) = |n>_A (x) u_n |m>_E. With u0 = u1 = I it is the swap.
UnitaryDilation masker_dilation(const Matrix& u0, const Matrix& u1);

}  // namespace maskobs
