#include "maskobs/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "maskobs/bitcommit.hpp"
#include "maskobs/comask.hpp"
#include "maskobs/error.hpp"
#include "maskobs/masking.hpp"
#include "maskobs/random.hpp"

namespace maskobs {

namespace {

struct Tally {
  int total = 0;
  int failed = 0;
  double worst = 0.0;

  void expect(bool ok) {
    ++total;
    if (!ok) ++failed;
  }
  void residual(double r, double bound) {
    worst = std::max(worst, r);
    expect(r < bound);
  }
  SelftestCheck finish(std::string name) const {
    std::ostringstream detail;
    detail << (total - failed) << "/" << total;
    if (worst > 0.0) detail << " worst " << worst;
    return SelftestCheck{std::move(name), failed == 0, detail.str()};
  }
};

SelftestCheck generator_properties() {
  Tally t;
  for (int d = 2; d <= 6; ++d) {
    const GeneratorBasis& basis = generator_basis(d);
    t.expect(basis.size() == d * d - 1);
    for (int i = 0; i < basis.size(); ++i) {
      t.residual(max_norm(basis.generators[i] - basis.generators[i].adjoint()), 1e-14);
      t.residual(std::abs(basis.generators[i].trace()), 1e-14);
      for (int j = 0; j < basis.size(); ++j) {
        const double expected = i == j ? 2.0 : 0.0;
        t.residual(std::abs((basis.generators[i] * basis.generators[j]).trace() - expected), 1e-12);
      }
    }
  }
  return t.finish("generator_basis");
}

SelftestCheck eigen_reconstruction(Rng& rng) {
  Tally t;
  for (int d = 2; d <= 6; ++d) {
    for (int s = 0; s < 40; ++s) {
      const Matrix m = random_hermitian(rng, d);
      const HermitianEig eig = eig_hermitian(m);
      const Matrix back = eig.eigenvectors * eig.eigenvalues.cast<Complex>().asDiagonal() *
                          eig.eigenvectors.adjoint();
      t.residual(max_norm(back - m), 1e-10);
      t.expect(std::is_sorted(eig.eigenvalues.data(), eig.eigenvalues.data() + d));
    }
  }
  return t.finish("eig_hermitian");
}

SelftestCheck codecs(Rng& rng) {
  Tally t;
  for (int d = 2; d <= 5; ++d) {
    for (int s = 0; s < 40; ++s) {
      const Matrix rho = random_density(rng, d);
      t.residual(max_norm(bloch_to_state(state_to_bloch(rho)) - rho), 1e-10);
      const Matrix o = random_hermitian(rng, d, 2.0);
      t.residual(max_norm(coeffs_to_observable(observable_coeffs(o)) - o), 1e-10);
    }
  }
  return t.finish("bloch_codecs");
}

SelftestCheck positivity(Rng& rng) {
  Tally t;
  for (int d = 2; d <= 4; ++d) {
    const double radius = std::sqrt((d - 1.0) / (2.0 * d));
    for (int s = 0; s < 1000; ++s) {
      const int n = bloch_length(d);
      const BlochVector b{d, random_unit_vector(rng, n) * rng.uniform(0.0, radius)};
      const PositivityConditions pc = positivity_conditions(b);
      const double min_eig = eig_hermitian(bloch_to_state(b)).eigenvalues.minCoeff();
      t.expect(pc.positive == (min_eig >= -tol::kPositivity));
      t.residual(std::abs(2.0 * pc.values[0] - ((d - 1.0) / d - 2.0 * b.b.squaredNorm())), 1e-10);
    }
  }
  return t.finish("positivity_conditions");
}

SelftestCheck channel_duality(Rng& rng) {
  Tally t;
  for (int d = 2; d <= 4; ++d) {
    for (int s = 0; s < 30; ++s) {
      const KrausChannel e(random_kraus(rng, d, d, rng.uniform_int(1, 4)));
      const Matrix rho = random_density(rng, d);
      const Matrix o = random_hermitian(rng, d);
      const Complex lhs = (apply_forward(e, rho) * o).trace();
      const Complex rhs = (rho * apply_adjoint(e, o)).trace();
      t.residual(std::abs(lhs - rhs), 1e-10);
      t.residual(max_norm(apply_adjoint(e, identity(d)) - identity(d)), 1e-10);
      const UnitaryDilation dil = unitary_dilation(e);
      t.residual(max_norm(reduced_output(dil, rho) - apply_forward(e, rho)), 1e-10);
    }
  }
  return t.finish("channel_duality_dilation");
}

SelftestCheck qubit_oracle(Rng& rng) {
  Tally t;
  for (int s = 0; s < 10000; ++s) {
    const ObservableCoeffs c{2, rng.uniform(-2.0, 3.0), random_unit_vector(rng, 3) * rng.uniform(0.0, 2.5)};
    if (std::abs(c.a.norm() - std::abs(1.0 - c.a0)) < tol::kMaskable) continue;
    t.expect(decide_maskable_qubit(c).maskable ==
             decide_maskable_oracle(coeffs_to_observable(c)).maskable);
  }
  return t.finish("qubit_criterion_vs_oracle");
}

SelftestCheck constant_maskers(Rng& rng) {
  Tally t;
  for (int d = 2; d <= 5; ++d) {
    int built = 0;
    while (built < 50) {
      Matrix o = random_hermitian(rng, d, rng.uniform(0.1, 2.0));
      o += rng.uniform(-1.0, 2.0) * identity(d);
      if (!decide_maskable_oracle(o).maskable) continue;
      ++built;
      t.expect(necessary_condition_d(observable_coeffs(o)));
      t.residual(verify_masking(build_constant_masker(o), o), tol::kMasking);
    }
  }
  return t.finish("constant_maskers");
}

SelftestCheck no_hiding(Rng& rng) {
  Tally t;
  for (int s = 0; s < 100; ++s) {
    const Vec3 n = random_unit_vector(rng, 3);
    const NoHidingReport r = verify_nohiding(n, random_unitary(rng, 2), random_unitary(rng, 2));
    t.residual(r.swap_residual, 1e-10);
    t.residual(r.recovery_residual, 1e-10);
  }
  return t.finish("no_hiding");
}

SelftestCheck comask_dimension(Rng& rng) {
  Tally t;
  for (int d = 2; d <= 3; ++d) {
    for (int k = 0; k <= 3; ++k) {
      for (int s = 0; s < 10; ++s) {
        std::vector<RealVector> points;
        for (int i = 0; i <= k; ++i) points.push_back(state_to_bloch(random_density(rng, d)).b);
        const GeneralComask g = comask_general(points, d);
        t.expect(g.k == k && g.description.set.affine_dim() == d * d - k - 1);
      }
    }
  }
  return t.finish("comask_dimension_formula");
}

SelftestCheck bit_commitment() {
  Tally t;
  for (int d = 2; d <= 3; ++d) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const BitCommitReport r = no_bit_commitment_demo(d, seed);
      t.residual(r.concealment_gap, 1e-10);
      t.expect(r.cheat_feasible && r.cheat_fidelity > 1.0 - 1e-9);
      t.expect(r.proportional_passed == r.observables && r.masking_consistent);
    }
  }
  return t.finish("no_bit_commitment");
}

}  // namespace

std::vector<SelftestCheck> run_selftest(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::function<SelftestCheck()>> suites = {
      [] { return generator_properties(); },
      [&] { return eigen_reconstruction(rng); },
      [&] { return codecs(rng); },
      [&] { return positivity(rng); },
      [&] { return channel_duality(rng); },
      [&] { return qubit_oracle(rng); },
      [&] { return constant_maskers(rng); },
      [&] { return no_hiding(rng); },
      [&] { return comask_dimension(rng); },
      [] { return bit_commitment(); },
  };
  std::vector<SelftestCheck> out;
  for (auto& suite : suites) {
    try {
      out.push_back(suite());
    } catch (const Error& e) {
      out.push_back(SelftestCheck{"exception", false, e.what()});
    }
  }
  return out;
}

}  // namespace maskobs
