#pragma once

// Sets of observables masked by a common channel.
//
// For a set S of output (Bloch) vectors, the comaskable set C_S holds every
// observable (a0, a) with Tr(rho O) = 1 for all rho in S, i.e.
//   a0/2 + a.b - 1/2 = 0   for every b in S.
// This is an affine subset of coefficient space. The qubit constructors use
// the a0 = 0 slice and work in a-space (R^3); comask_general works in the
// full (a0, a) space R^{d^2}.

#include <optional>
#include <string_view>
#include <vector>

#include "maskobs/bloch.hpp"

namespace maskobs {

/// base + span(directions). Directions are stored orthonormal.
struct AffineSet {
  RealVector base;
  RealMatrix directions;  // ambient x affine_dim

  int ambient_dim() const { return static_cast<int>(base.size()); }
  int affine_dim() const { return static_cast<int>(directions.cols()); }
  RealVector point(const RealVector& t) const { return base + directions * t; }
  bool contains(const RealVector& x, double tolerance) const;
  /// Intersection with {x : x[coord] = value}. Throws EmptySet when the
  /// hyperplane misses a set parallel to it.
  AffineSet slice(int coord, double value) const;
};

enum class ComaskKind { Singleton, Line, Plane, General };
std::string_view to_string(ComaskKind kind);

struct ComaskDescription {
  ComaskKind kind = ComaskKind::General;
  AffineSet set;
  // Present for the qubit a0 = 0 descriptions, whose set lives in a-space.
  std::optional<double> a0_fixed;
  int dimension = 2;

  /// Observable for a point of `set`.
  ObservableCoeffs observable(const RealVector& x) const;
};

// a0/2 + a.b - 1/2; zero iff Tr(rho_b O) = 1.
double masking_defect(const ObservableCoeffs& c, const RealVector& b);

/// One output state b: the plane {b/(2|b|^2) + m : m.b = 0}. Throws
/// DegenerateState for b = 0 and InvalidState outside the Bloch ball.
ComaskDescription comask_from_point(const RealVector& b);

/// Output states on the segment [p, q]: the line {a + lambda n} with n the
/// unit normal of the plane through the origin, p and q, and a the minimum
/// norm solution of a.p = a.q = 1/2. Throws DegenerateLine when p, q and the
/// origin are collinear.
ComaskDescription comask_from_line(const RealVector& p, const RealVector& q);

/// Output states spanning a 2-dimensional convex planar set: the single a
/// with a.r = 1/2 on every point. Throws Degenerate when the affine span is
/// smaller than 2 and Inconsistent when no such a exists.
ComaskDescription comask_from_planar(const std::vector<RealVector>& points);

/// General d. With k the affine dimension of the points, V the span of
/// b_i - b_0 and m the component of b_0 orthogonal to V, returns
/// {(a0, a) : a in V^perp, a0/2 - 1/2 + a.m = 0}, of affine dimension
/// d^2 - k - 1.
struct GeneralComask {
  ComaskDescription description;
  int k = 0;          // affine dimension of the output states
  RealVector m;       // component of b_0 orthogonal to V
  RealMatrix v_basis; // orthonormal basis of V
};
GeneralComask comask_general(const std::vector<RealVector>& points, int d);

/// Observable masked at b_prime but not at b: a = (b - b')/|b - b'|,
/// a0 = 1 - 2 a.b'. Throws IdenticalPoints.
ObservableCoeffs universal_counterexample(const RealVector& b, const RealVector& b_prime, int d);

struct CommonStateResult {
  bool feasible = false;
  BlochVector state;          // last iterate on the state set
  double distance = 0.0;      // final gap between the two sets
  double max_defect = 0.0;    // max |Tr(rho O_j) - 1| / 2 at `state`
  int iterations = 0;
};

/// Alternating projections between {b : a0_j/2 + a_j.b = 1/2 for all j} and
/// the density matrices (eigenvalues projected onto the simplex). Throws
/// NoAffineSolution when the linear constraints are inconsistent.
CommonStateResult find_common_output_state(const std::vector<ObservableCoeffs>& observables, int d);

}  // namespace maskobs
