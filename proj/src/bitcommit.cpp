#include "maskobs/bitcommit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maskobs/error.hpp"
#include "maskobs/masking.hpp"
#include "maskobs/random.hpp"

namespace maskobs {

namespace {

constexpr int kDemoObservables = 20;
constexpr double kDemoTolerance = 1e-9;

Matrix b_marginal(const Vector& psi, BipartiteDims dims) {
  Matrix rho = partial_trace(projector(psi), dims, Subsystem::A);
  return 0.5 * (rho + rho.adjoint());
}

// Nearest matrix with orthonormal columns (polar factor).
Matrix orthonormalize(const Matrix& family) {
  Eigen::JacobiSVD<Matrix> svd(family, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double fidelity(const CommitmentPair& pair, const Matrix& unitary_a) {
  const Vector moved = tensor(unitary_a, identity(pair.dims.b)) * pair.psi0;
  return std::min(1.0, std::abs(pair.psi1.dot(moved)));
}

}  // namespace

CommitmentPair commitment_pair_from_states(const Vector& psi0, const Vector& psi1, BipartiteDims dims) {
  if (psi0.size() != dims.total() || psi1.size() != dims.total()) {
    throw Error(ErrorCode::DimensionMismatch, "state length does not match dA * dB");
  }
  for (const Vector* psi : {&psi0, &psi1}) {
    if (std::abs(psi->norm() - 1.0) > tol::kInput) {
      throw Error(ErrorCode::NotNormalized, "|psi| = " + std::to_string(psi->norm()));
    }
  }
  return CommitmentPair{dims, psi0, psi1, std::nullopt, b_marginal(psi0, dims), b_marginal(psi1, dims)};
}

CommitmentPair make_commitment_pair(const RealVector& lambda, const Matrix& basis_a0,
                                    const Matrix& basis_a1, const Matrix& basis_b) {
  const Eigen::Index r = lambda.size();
  if (r == 0 || !lambda.allFinite() || lambda.minCoeff() < -tol::kInput ||
      std::abs(lambda.sum() - 1.0) > tol::kInput) {
    throw Error(ErrorCode::BadSpectrum, "lambda must be a probability vector");
  }
  if (basis_a0.rows() != basis_a1.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "A bases live in different dimensions");
  }
  for (const Matrix* basis : {&basis_a0, &basis_a1, &basis_b}) {
    if (basis->cols() < r || !is_orthonormal(basis->leftCols(r))) {
      throw Error(ErrorCode::NotOrthonormal, "basis needs at least r orthonormal columns");
    }
  }
  const BipartiteDims dims{static_cast<int>(basis_a0.rows()), static_cast<int>(basis_b.rows())};
  Vector psi0 = Vector::Zero(dims.total());
  Vector psi1 = Vector::Zero(dims.total());
  for (Eigen::Index i = 0; i < r; ++i) {
    const double weight = std::sqrt(std::max(0.0, lambda(i)));
    psi0 += weight * tensor(basis_a0.col(i), basis_b.col(i)).col(0);
    psi1 += weight * tensor(basis_a1.col(i), basis_b.col(i)).col(0);
  }
  CommitmentPair pair = commitment_pair_from_states(psi0, psi1, dims);
  pair.lambda = lambda;
  return pair;
}

double concealment_gap(const CommitmentPair& pair) {
  const HermitianEig eig = eig_hermitian(pair.marginal_b0 - pair.marginal_b1);
  return std::clamp(0.5 * eig.eigenvalues.cwiseAbs().sum(), 0.0, 1.0);
}

CheatResult cheating_unitary(const CommitmentPair& pair) {
  const Matrix m0 = matricize(pair.psi0, pair.dims);
  const Matrix m1 = matricize(pair.psi1, pair.dims);
  const Matrix x = m1 * pseudo_inverse(m0);
  const int da = pair.dims.a;

  const Matrix inputs = column_space(m0);
  const Matrix outputs = x * inputs;
  CheatResult result;
  result.feasible = max_norm(x * m0 - m1) < tol::kCheat && is_orthonormal(outputs, tol::kCheat);
  if (result.feasible) {
    result.unitary_a = unitary_completion(inputs, orthonormalize(outputs), da);
    result.feasible = is_unitary(result.unitary_a);
  }
  if (!result.feasible) {
    result.unitary_a = orthonormalize(m1 * m0.adjoint());
  }
  result.fidelity = fidelity(pair, result.unitary_a);
  return result;
}

KrausChannel measure_prepare_channel(const Matrix& rho0, const Matrix& rho1, int d) {
  for (const Matrix* rho : {&rho0, &rho1}) {
    if (rho->rows() != d || !is_density_matrix(*rho)) {
      throw Error(ErrorCode::InvalidState, "prepared states must be density matrices of dimension " + std::to_string(d));
    }
  }
  std::vector<Matrix> kraus;
  const Matrix* prepared[2] = {&rho0, &rho1};
  for (int outcome = 0; outcome < 2; ++outcome) {
    const HermitianEig eig = eig_hermitian(*prepared[outcome]);
    double kept = 0.0;
    std::vector<Matrix> block;
    for (int j = d - 1; j >= 0; --j) {
      const double p = eig.eigenvalues(j);
      if (p <= 1e-15) continue;
      kept += p;
      const int first = outcome == 0 ? 0 : 1;
      const int last = outcome == 0 ? 1 : d;
      for (int k = first; k < last; ++k) {
        block.push_back(std::sqrt(p) * ketbra(eig.eigenvectors.col(j), basis_ket(d, k)));
      }
    }
    for (Matrix& e : block) kraus.push_back(e / std::sqrt(kept));
  }
  return KrausChannel(std::move(kraus));
}

BitCommitReport no_bit_commitment_demo(int d, std::uint64_t seed) {
  if (d < 2) throw Error(ErrorCode::DimensionMismatch, "dimension must be >= 2");
  Rng rng(seed);
  const RealVector lambda = random_probability(rng, d);
  const Matrix a0 = random_unitary(rng, d);
  const Matrix a1 = random_unitary(rng, d);
  const Matrix b = random_unitary(rng, d);
  const CommitmentPair pair = make_commitment_pair(lambda, a0, a1, b);

  BitCommitReport report;
  report.dimension = d;
  report.seed = seed;
  report.concealment_gap = concealment_gap(pair);
  report.marginal_difference = max_norm(pair.marginal_b0 - pair.marginal_b1);
  const CheatResult cheat = cheating_unitary(pair);
  report.cheat_feasible = cheat.feasible;
  report.cheat_fidelity = cheat.fidelity;
  report.binding_broken = cheat.feasible && cheat.fidelity >= 1.0 - kDemoTolerance;

  // Bob's marginals agree, so both preparations use rho^0_B.
  const Matrix& rho = pair.marginal_b0;
  const KrausChannel channel = measure_prepare_channel(rho, rho, d);
  report.kraus_count = channel.size();
  report.observables = kDemoObservables;
  report.masking_consistent = true;
  for (int k = 0; k < kDemoObservables; ++k) {
    Matrix o = random_hermitian(rng, d);
    if (k % 2 == 0) o += (1.0 - (rho * o).trace().real()) * identity(d);
    const double expectation = (rho * o).trace().real();
    const double residual = max_norm(apply_adjoint(channel, o) - expectation * identity(d));
    report.max_proportional_residual = std::max(report.max_proportional_residual, residual);
    if (residual <= kDemoTolerance) ++report.proportional_passed;
    const bool unit = std::abs(expectation - 1.0) <= kDemoTolerance;
    const bool masked = masks(channel, o);
    report.unit_expectation += unit ? 1 : 0;
    report.masked += masked ? 1 : 0;
    if (unit != masked) report.masking_consistent = false;
  }
  return report;
}

}  // namespace maskobs
