#include <gtest/gtest.h>

#include "maskobs/bloch.hpp"
#include "maskobs/comask.hpp"
#include "maskobs/masking.hpp"
#include "maskobs/random.hpp"
#include "test_support.hpp"

using namespace maskobs;
using namespace maskobs::test;

namespace {

ObservableCoeffs qubit(double a0, double a1, double a2, double a3) {
  return ObservableCoeffs{2, a0, rvec({a1, a2, a3})};
}

RealVector random_state_bloch(Rng& rng, int d) { return state_to_bloch(random_density(rng, d)).b; }

// Convex combinations of `count` random states spanning an affine set of
// dimension k (the points are generic).
std::vector<RealVector> random_points(Rng& rng, int d, int k) {
  std::vector<RealVector> corners;
  for (int i = 0; i <= k; ++i) corners.push_back(random_state_bloch(rng, d));
  std::vector<RealVector> points = corners;
  for (int extra = 0; extra < 3; ++extra) {
    const RealVector w = random_probability(rng, k + 1);
    RealVector p = RealVector::Zero(d * d - 1);
    for (int i = 0; i <= k; ++i) p += w(i) * corners[static_cast<std::size_t>(i)];
    points.push_back(p);
  }
  return points;
}

RealVector sample(const AffineSet& s, Rng& rng) {
  RealVector t(s.affine_dim());
  for (int i = 0; i < t.size(); ++i) t(i) = rng.uniform(-3, 3);
  return s.point(t);
}

}  // namespace

TEST(ComaskFromPoint, NorthPoleGivesPaperPlane) {
  const ComaskDescription c = comask_from_point(rvec({0, 0, 0.5}));
  EXPECT_EQ(c.kind, ComaskKind::Plane);
  EXPECT_EQ(c.set.affine_dim(), 2);
  ASSERT_TRUE(c.a0_fixed.has_value());
  EXPECT_EQ(*c.a0_fixed, 0.0);
  EXPECT_TRUE(c.set.contains(rvec({0, 0, 1}), 1e-12));
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const double m1 = rng.uniform(-5, 5);
    const double m2 = rng.uniform(-5, 5);
    ASSERT_TRUE(c.set.contains(rvec({m1, m2, 1}), 1e-10));
    const RealVector x = sample(c.set, rng);
    ASSERT_NEAR(x(2), 1.0, 1e-12);
  }
  EXPECT_FALSE(c.set.contains(rvec({0, 0, 1.1}), 1e-10));
}

TEST(ComaskFromPoint, Errors) {
  EXPECT_EQ(code_of([] { comask_from_point(rvec({0, 0, 0})); }), ErrorCode::DegenerateState);
  EXPECT_EQ(code_of([] { comask_from_point(rvec({0, 0, 0.7})); }), ErrorCode::InvalidState);
}

TEST(ComaskFromLine, HorizontalChord) {
  const double t = std::sqrt(3.0) / 4.0;
  const RealVector p = rvec({-t, 0, 0.25});
  const RealVector q = rvec({t, 0, 0.25});
  const ComaskDescription c = comask_from_line(p, q);
  EXPECT_EQ(c.kind, ComaskKind::Line);
  ASSERT_EQ(c.set.affine_dim(), 1);
  EXPECT_LT((c.set.base - rvec({0, 0, 2})).norm(), 1e-12);
  EXPECT_NEAR(std::abs(c.set.directions(1, 0)), 1.0, 1e-12);
  EXPECT_NEAR(c.set.base.dot(p), 0.5, 1e-12);
  EXPECT_NEAR(c.set.base.dot(q), 0.5, 1e-12);
  Rng rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    const RealVector a = sample(c.set, rng);
    for (int k = 0; k <= 20; ++k) {
      const RealVector r = p + (q - p) * (k / 20.0);
      ASSERT_NEAR(masking_defect(ObservableCoeffs{2, 0.0, a}, r), 0.0, 1e-10);
    }
  }
}

TEST(ComaskFromLine, CollinearWithOriginRefused) {
  EXPECT_EQ(code_of([] { comask_from_line(rvec({0, 0, 0.1}), rvec({0, 0, 0.4})); }), ErrorCode::DegenerateLine);
}

TEST(ComaskFromPlanar, DiskSamplesGiveSingleVector) {
  Rng rng(53);
  const OutputDisk disk = output_disk(Vec3(0, 0, 2));
  std::vector<RealVector> points;
  for (int i = 0; i < 10; ++i) points.push_back(RealVector(disk_point(disk, rng.uniform(0.1, 1.0), rng.uniform(0, 6.28))));
  const ComaskDescription c = comask_from_planar(points);
  EXPECT_EQ(c.kind, ComaskKind::Singleton);
  EXPECT_EQ(c.set.affine_dim(), 0);
  EXPECT_LT((c.set.base - rvec({0, 0, 2})).norm(), 1e-10);
}

TEST(ComaskFromPlanar, TwoCrossingSegments) {
  const double t = 0.4;
  const std::vector<RealVector> points = {rvec({-t, 0, 0.25}), rvec({t, 0, 0.25}), rvec({0, -t, 0.25}),
                                          rvec({0, t, 0.25})};
  EXPECT_LT((comask_from_planar(points).set.base - rvec({0, 0, 2})).norm(), 1e-12);
}

TEST(ComaskFromPlanar, Errors) {
  EXPECT_EQ(code_of([] { comask_from_planar({rvec({0, 0, 0.1}), rvec({0, 0, 0.2}), rvec({0, 0, 0.3})}); }),
            ErrorCode::Degenerate);
  // Non-coplanar with a plane missing the origin: no single a.
  EXPECT_EQ(code_of([] {
              comask_from_planar({rvec({0.3, 0, 0}), rvec({0, 0.3, 0}), rvec({0, 0, 0.3}), rvec({0.1, 0.1, 0.2})});
            }),
            ErrorCode::Inconsistent);
}

TEST(ComaskGeneral, SinglePointAndSliceAgreeWithPointCase) {
  const RealVector b = rvec({0, 0, 0.5});
  const GeneralComask g = comask_general({b}, 2);
  EXPECT_EQ(g.k, 0);
  EXPECT_EQ(g.description.set.affine_dim(), 3);
  Rng rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    const RealVector x = sample(g.description.set, rng);
    const ObservableCoeffs c = g.description.observable(x);
    ASSERT_NEAR(c.a0 / 2 - 0.5 + c.a.dot(b), 0.0, 1e-10);
  }
  const AffineSet slice = g.description.set.slice(0, 0.0);
  EXPECT_EQ(slice.affine_dim(), 2);
  const ComaskDescription point = comask_from_point(b);
  for (int trial = 0; trial < 50; ++trial) {
    const RealVector x = sample(slice, rng);
    ASSERT_NEAR(x(0), 0.0, 1e-12);
    ASSERT_TRUE(point.set.contains(x.tail(3), 1e-9));
    RealVector y(4);
    y << 0.0, sample(point.set, rng);
    ASSERT_TRUE(g.description.set.contains(y, 1e-9));
  }
}

TEST(ComaskGeneral, TwoPointsGiveKOne) {
  EXPECT_EQ(comask_general({rvec({0, 0, 0.5}), rvec({0.5, 0, 0})}, 2).k, 1);
}

TEST(ComaskGeneral, MaximallyMixedForcesHalfTrace) {
  // m = 0: constraint reads a0/2 = 1/2, so a0 = 1 with a free.
  const GeneralComask g = comask_general({RealVector::Zero(8)}, 3);
  EXPECT_EQ(g.description.set.affine_dim(), 8);
  Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) ASSERT_NEAR(sample(g.description.set, rng)(0), 1.0, 1e-12);
}

TEST(ComaskGeneral, RejectsInvalidState) {
  EXPECT_EQ(code_of([] { comask_general({rvec({0, 0, 0.9})}, 2); }), ErrorCode::InvalidState);
}

TEST(ComaskGeneral, DimensionFormulaProperty) {
  Rng rng(56);
  for (int d : {2, 3}) {
    for (int k = 0; k <= 3; ++k) {
      for (int trial = 0; trial < 30; ++trial) {
        const std::vector<RealVector> points = random_points(rng, d, k);
        const GeneralComask g = comask_general(points, d);
        ASSERT_EQ(g.k, k);
        ASSERT_EQ(g.description.set.affine_dim(), d * d - k - 1);
        for (int s = 0; s < 5; ++s) {
          const ObservableCoeffs c = g.description.observable(sample(g.description.set, rng));
          for (const RealVector& r : points) ASSERT_NEAR(masking_defect(c, r), 0.0, 1e-10);
        }
      }
    }
  }
}

TEST(UniversalCounterexample, WorkedExample) {
  const ObservableCoeffs c = universal_counterexample(rvec({0, 0, 0.5}), rvec({0, 0, 0.25}), 2);
  EXPECT_NEAR(c.a0, 0.5, 1e-15);
  EXPECT_LT((c.a - rvec({0, 0, 1})).norm(), 1e-15);
  EXPECT_NEAR(masking_defect(c, rvec({0, 0, 0.25})), 0.0, 1e-15);
  EXPECT_NEAR(masking_defect(c, rvec({0, 0, 0.5})), 0.25, 1e-15);
  EXPECT_EQ(code_of([] { universal_counterexample(rvec({0, 0, 0.5}), rvec({0, 0, 0.5}), 2); }),
            ErrorCode::IdenticalPoints);
}

TEST(UniversalCounterexample, MissesAtBProperty) {
  Rng rng(57);
  for (int d : {2, 3, 4}) {
    for (int trial = 0; trial < 100; ++trial) {
      const RealVector b = random_state_bloch(rng, d);
      const RealVector bp = random_state_bloch(rng, d);
      const ObservableCoeffs c = universal_counterexample(b, bp, d);
      ASSERT_NEAR(masking_defect(c, bp), 0.0, 1e-12);
      // Defect at b equals |b - b'|.
      ASSERT_NEAR(masking_defect(c, b), (b - bp).norm(), 1e-12);
      // Tr(rho' O) = 1 at the matrix level.
      ASSERT_NEAR(trace(bloch_to_state(BlochVector{d, bp}) * coeffs_to_observable(c)).real(), 1.0, 1e-10);
    }
  }
}

TEST(CommonState, PauliZAlone) {
  const CommonStateResult r = find_common_output_state({qubit(0, 0, 0, 1)}, 2);
  ASSERT_TRUE(r.feasible);
  EXPECT_LT((r.state.b - rvec({0, 0, 0.5})).norm(), 1e-7);
}

TEST(CommonState, PauliZAndXInfeasible) {
  const CommonStateResult r = find_common_output_state({qubit(0, 0, 0, 1), qubit(0, 1, 0, 0)}, 2);
  EXPECT_FALSE(r.feasible);
  EXPECT_GT(r.distance, 1e-6);
}

TEST(CommonState, PauliZAndXPlusZ) {
  const CommonStateResult r = find_common_output_state({qubit(0, 0, 0, 1), qubit(0, 1, 0, 1)}, 2);
  ASSERT_TRUE(r.feasible);
  EXPECT_LT((r.state.b - rvec({0, 0, 0.5})).norm(), 1e-6);
  EXPECT_LT(r.max_defect, 1e-7);
}

TEST(CommonState, InconsistentLinearSystem) {
  EXPECT_EQ(code_of([] { find_common_output_state({qubit(0, 0, 0, 1), qubit(0, 0, 0, 2)}, 2); }),
            ErrorCode::NoAffineSolution);
}

TEST(CommonState, FeasibleWhenAStateIsPlantedProperty) {
  Rng rng(58);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 20; ++trial) {
      const RealVector b = state_to_bloch(random_density(rng, d)).b;
      std::vector<ObservableCoeffs> obs;
      for (int j = 0; j < 2; ++j) {
        const RealVector a = random_unit_vector(rng, d * d - 1) * rng.uniform(1.0, 3.0);
        obs.push_back(ObservableCoeffs{d, 1.0 - 2.0 * a.dot(b), a});
      }
      const CommonStateResult r = find_common_output_state(obs, d);
      ASSERT_TRUE(r.feasible) << d << " " << r.distance;
      ASSERT_TRUE(positivity_conditions(r.state).positive);
      for (const ObservableCoeffs& c : obs) ASSERT_NEAR(expectation(c, r.state), 1.0, 2e-7);
    }
  }
}

TEST(CommonState, CounterexampleRejectedAlongsideExactMasker) {
  Rng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    // Pure qubit states: an observable masked only at b is tangent there.
    const RealVector b = random_unit_vector(rng, 3) * 0.5;
    const RealVector bp = state_to_bloch(random_density(rng, 2)).b;
    const ObservableCoeffs tangent{2, 0.0, b / (2.0 * b.squaredNorm())};
    const ObservableCoeffs counter = universal_counterexample(b, bp, 2);
    if (masking_defect(counter, b) < 0.05) continue;
    ASSERT_FALSE(find_common_output_state({tangent, counter}, 2).feasible);
  }
}
