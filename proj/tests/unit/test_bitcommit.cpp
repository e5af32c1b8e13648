#include <gtest/gtest.h>

#include "maskobs/bitcommit.hpp"
#include "maskobs/random.hpp"
#include "test_support.hpp"

using namespace maskobs;
using namespace maskobs::test;

namespace {

CommitmentPair bell_hadamard() {
  return make_commitment_pair(rvec({0.5, 0.5}), identity(2), hadamard(), identity(2));
}

}  // namespace

TEST(MakeCommitmentPair, BellAndHadamardPair) {
  const CommitmentPair p = bell_hadamard();
  EXPECT_LT(max_norm(p.psi0 - ket({kInvSqrt2, 0, 0, kInvSqrt2})), 1e-15);
  // (|+0> + |-1>)/sqrt 2 = (|00> + |01> + |10> - |11>)/2
  EXPECT_LT(max_norm(p.psi1 - ket({0.5, 0.5, 0.5, -0.5})), 1e-15);
  EXPECT_LT(max_norm(p.marginal_b0 - 0.5 * identity(2)), 1e-15);
  EXPECT_LT(max_norm(p.marginal_b1 - 0.5 * identity(2)), 1e-15);
  EXPECT_NEAR(concealment_gap(p), 0.0, 1e-15);
}

TEST(MakeCommitmentPair, RankOneGivesProductStates) {
  const CommitmentPair p = make_commitment_pair(rvec({1, 0}), identity(2), hadamard(), identity(2));
  EXPECT_NEAR(p.psi0.norm(), 1.0, 1e-15);
  EXPECT_EQ(schmidt(p.psi1, {2, 2}).coefficients.size(), 1);
  EXPECT_LT(max_norm(p.marginal_b0 - projector(basis_ket(2, 0))), 1e-15);
  EXPECT_LT(max_norm(p.marginal_b0 - p.marginal_b1), 1e-15);
}

TEST(MakeCommitmentPair, Errors) {
  EXPECT_EQ(code_of([] { make_commitment_pair(rvec({0.7, 0.7}), identity(2), identity(2), identity(2)); }),
            ErrorCode::BadSpectrum);
  EXPECT_EQ(code_of([] { make_commitment_pair(rvec({1.5, -0.5}), identity(2), identity(2), identity(2)); }),
            ErrorCode::BadSpectrum);
  EXPECT_EQ(code_of([] { make_commitment_pair(rvec({0.5, 0.5}), 2.0 * identity(2), identity(2), identity(2)); }),
            ErrorCode::NotOrthonormal);
  EXPECT_EQ(code_of([] { make_commitment_pair(rvec({0.5, 0.5}), identity(2), identity(2), identity(2).leftCols(1)); }),
            ErrorCode::NotOrthonormal);
}

TEST(ConcealmentGap, OrthogonalMarginals) {
  const CommitmentPair p = commitment_pair_from_states(basis_ket(4, 0), basis_ket(4, 3), {2, 2});
  EXPECT_NEAR(concealment_gap(p), 1.0, 1e-15);
}

TEST(CheatingUnitary, BellHadamardGivesHadamard) {
  const CheatResult r = cheating_unitary(bell_hadamard());
  EXPECT_TRUE(r.feasible);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
  EXPECT_LT(max_norm(r.unitary_a - hadamard()), 1e-10);
}

TEST(CheatingUnitary, EqualStatesGiveIdentity) {
  const Vector psi = ket({kInvSqrt2, 0, 0, kInvSqrt2});
  const CheatResult r = cheating_unitary(commitment_pair_from_states(psi, psi, {2, 2}));
  EXPECT_TRUE(r.feasible);
  EXPECT_LT(max_norm(r.unitary_a - identity(2)), 1e-12);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
}

TEST(CheatingUnitary, DifferentMarginalsInfeasible) {
  const CheatResult r = cheating_unitary(commitment_pair_from_states(basis_ket(4, 0), basis_ket(4, 3), {2, 2}));
  EXPECT_FALSE(r.feasible);
  EXPECT_LE(r.fidelity, 1.0);
}

TEST(CheatingUnitary, RankDeficientSpectrum) {
  // Schmidt rank 2 inside 3 x 3: the unitary is pinned only on a 2-plane.
  Rng rng(61);
  const CommitmentPair p = make_commitment_pair(rvec({0.6, 0.4, 0.0}), random_unitary(rng, 3), random_unitary(rng, 3),
                                                random_unitary(rng, 3));
  const CheatResult r = cheating_unitary(p);
  EXPECT_TRUE(r.feasible);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
  EXPECT_TRUE(is_unitary(r.unitary_a, 1e-10));
}

TEST(CommitmentInvariants, ConcealingPairsAreCheatableProperty) {
  Rng rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    const int da = rng.uniform_int(2, 4);
    const int db = rng.uniform_int(2, 4);
    const int r = std::min(da, db);
    const CommitmentPair p = make_commitment_pair(random_probability(rng, r), random_unitary(rng, da).leftCols(r),
                                                  random_unitary(rng, da).leftCols(r), random_unitary(rng, db).leftCols(r));
    ASSERT_NEAR(p.psi0.norm(), 1.0, 1e-12);
    ASSERT_NEAR(p.psi1.norm(), 1.0, 1e-12);
    ASSERT_LT(concealment_gap(p), 1e-10);
    ASSERT_LT(max_norm(p.marginal_b0 - p.marginal_b1), 1e-9);
    const CheatResult c = cheating_unitary(p);
    ASSERT_TRUE(c.feasible);
    ASSERT_GT(c.fidelity, 1 - 1e-9);
    ASSERT_TRUE(is_unitary(c.unitary_a, 1e-10));
  }
}

TEST(CommitmentInvariants, UnequalMarginalsNotCheatableProperty) {
  Rng rng(63);
  for (int trial = 0; trial < 100; ++trial) {
    const CommitmentPair p = commitment_pair_from_states(random_pure_state(rng, 6), random_pure_state(rng, 6), {2, 3});
    const double gap = concealment_gap(p);
    ASSERT_GE(gap, 0.0);
    ASSERT_LE(gap, 1.0 + 1e-12);
    ASSERT_FALSE(cheating_unitary(p).feasible);
  }
}

TEST(MeasurePrepare, MaximallyMixedPreparations) {
  Rng rng(64);
  const KrausChannel e = measure_prepare_channel(0.5 * identity(2), 0.5 * identity(2), 2);
  for (int trial = 0; trial < 20; ++trial)
    ASSERT_LT(max_norm(apply_forward(e, random_density(rng, 2)) - 0.5 * identity(2)), 1e-14);
}

TEST(MeasurePrepare, QubitKrausMatchesPaperForm) {
  // rho^0 = |0><0|, rho^1 = |1><1|: E_{i0} = |i><i|.
  const KrausChannel e = measure_prepare_channel(projector(basis_ket(2, 0)), projector(basis_ket(2, 1)), 2);
  ASSERT_EQ(e.size(), 2);
  EXPECT_LT(max_norm(e[0] - projector(basis_ket(2, 0))), 1e-15);
  EXPECT_LT(max_norm(e[1] - projector(basis_ket(2, 1))), 1e-15);
}

TEST(MeasurePrepare, ForwardActionAndAdjointProperty) {
  Rng rng(65);
  for (int d : {2, 3, 4}) {
    for (int trial = 0; trial < 30; ++trial) {
      const Matrix rho0 = random_density(rng, d);
      const Matrix rho1 = random_density(rng, d);
      const KrausChannel e = measure_prepare_channel(rho0, rho1, d);
      ASSERT_LT(max_norm(apply_adjoint(e, identity(d)) - identity(d)), 1e-10);
      const Matrix sigma = random_density(rng, d);
      const double p0 = sigma(0, 0).real();
      ASSERT_LT(max_norm(apply_forward(e, sigma) - (p0 * rho0 + (1 - p0) * rho1)), 1e-10);
      const KrausChannel same = measure_prepare_channel(rho0, rho0, d);
      const Matrix o = random_hermitian(rng, d, 2.0);
      const Complex expected = trace(rho0 * o);
      ASSERT_LT(max_norm(apply_adjoint(same, o) - expected.real() * identity(d)), 1e-9);
    }
  }
  EXPECT_EQ(code_of([] { measure_prepare_channel(identity(2), identity(2) / 2.0, 2); }), ErrorCode::InvalidState);
}

TEST(Demo, StructuralOutcomeAndDeterminism) {
  for (int d : {2, 3}) {
    const BitCommitReport r = no_bit_commitment_demo(d, 7);
    EXPECT_LT(r.concealment_gap, 1e-10);
    EXPECT_TRUE(r.cheat_feasible);
    EXPECT_GT(r.cheat_fidelity, 1 - 1e-9);
    EXPECT_EQ(r.observables, 20);
    EXPECT_EQ(r.proportional_passed, 20);
    EXPECT_EQ(r.masked, r.unit_expectation);
    EXPECT_GT(r.masked, 0);
    EXPECT_TRUE(r.masking_consistent);
    EXPECT_TRUE(r.binding_broken);
    const BitCommitReport again = no_bit_commitment_demo(d, 7);
    EXPECT_EQ(again.cheat_fidelity, r.cheat_fidelity);
    EXPECT_EQ(again.max_proportional_residual, r.max_proportional_residual);
  }
  EXPECT_EQ(code_of([] { no_bit_commitment_demo(1, 7); }), ErrorCode::DimensionMismatch);
}
