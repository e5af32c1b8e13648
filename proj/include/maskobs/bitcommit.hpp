#pragma once

// Perfectly concealing bit commitment and why it cannot be binding.
//
// Alice commits to x in {0, 1} by preparing |Psi^x> on A (x) B and handing B
// to Bob. Concealing means equal B-marginals; then the two commitments share
// a Schmidt spectrum and B-basis and differ only by a unitary on A, which
// Alice can apply after committing. The measure-and-prepare channel below
// turns a concealing pair into a channel whose adjoint maps every observable
// to a multiple of the identity.

#include <cstdint>
#include <optional>
#include <string>

#include "maskobs/channels.hpp"

namespace maskobs {

struct CommitmentPair {
  BipartiteDims dims;
  Vector psi0;
  Vector psi1;
  std::optional<RealVector> lambda;  // shared Schmidt spectrum, when built from one
  Matrix marginal_b0;
  Matrix marginal_b1;
};

/// Wraps two arbitrary normalized bipartite vectors. Throws NotNormalized.
CommitmentPair commitment_pair_from_states(const Vector& psi0, const Vector& psi1, BipartiteDims dims);

/// |Psi^x> = sum_i sqrt(lambda_i) |a^x_i> |b_i> using the first r = |lambda|
/// columns of each basis matrix. Throws BadSpectrum or NotOrthonormal.
CommitmentPair make_commitment_pair(const RealVector& lambda, const Matrix& basis_a0,
                                    const Matrix& basis_a1, const Matrix& basis_b);

/// Trace distance (1/2)||rho^0_B - rho^1_B||_1, in [0, 1].
double concealment_gap(const CommitmentPair& pair);

struct CheatResult {
  Matrix unitary_a;
  double fidelity = 0.0;  // |<Psi^1| (U_A (x) I) |Psi^0>|
  bool feasible = false;
};

/// Solves X M0 = M1 for the matricized states via X = M1 M0^+, completing X
/// to a unitary off the column space of M0. When no unitary works the
/// fidelity-optimal unitary (polar part of M1 M0^dagger) is returned with
/// feasible = false.
CheatResult cheating_unitary(const CommitmentPair& pair);

/// sigma -> Tr(Pi^0 sigma) rho0 + Tr(Pi^1 sigma) rho1 with Pi^0 = |0><0| and
/// Pi^1 = I - Pi^0. Kraus operators sqrt(p^i_j) |e^i_j><u^i_k| where
/// rho^i = sum_j p^i_j |e^i_j><e^i_j| and Pi^i = sum_k |u^i_k><u^i_k|.
KrausChannel measure_prepare_channel(const Matrix& rho0, const Matrix& rho1, int d);

struct BitCommitReport {
  int dimension = 0;
  std::uint64_t seed = 0;
  double concealment_gap = 0.0;
  double marginal_difference = 0.0;  // max|rho^0_B - rho^1_B|
  bool cheat_feasible = false;
  double cheat_fidelity = 0.0;
  int kraus_count = 0;
  int observables = 0;
  int proportional_passed = 0;       // E*(O) = Tr(rho^0_B O) I within 1e-9
  double max_proportional_residual = 0.0;
  int unit_expectation = 0;          // sampled O with Tr(rho^0_B O) = 1
  int masked = 0;                    // sampled O with E*(O) = I
  bool masking_consistent = false;   // masked exactly when the expectation is 1
  bool binding_broken = false;
};

/// Seeded end-to-end run: random full-rank spectrum and Haar bases, the
/// cheating unitary, and the measure-and-prepare channel checked on 20
/// random observables (every other one shifted to expectation 1).
BitCommitReport no_bit_commitment_demo(int d, std::uint64_t seed);

}  // namespace maskobs
