#pragma once

// Generalized Bloch representation on C^d.
//
// Generators follow the generalized Gell-Mann construction in a fixed order:
// all symmetric off-diagonal pairs |j><k| + |k><j| (j < k, lexicographic),
// then all antisymmetric pairs -i|j><k| + i|k><j| in the same order, then the
// diagonal generators for l = 1..d-1. Each satisfies Tr = 0 and
// Tr(l_i l_j) = 2 delta_ij. For d = 2 the family is (sigma1, sigma2, sigma3).
//
// States:       rho = I/d + sum_i b_i l_i,   b_i = Tr(rho l_i) / 2
// Observables:  O = a0 I + sum_i a_i l_i,    a0 = Tr(O)/d, a_i = Tr(O l_i) / 2
// so that Tr(rho O) = a0 + 2 a.b.

#include <vector>

#include "maskobs/algebra.hpp"

namespace maskobs {

struct GeneratorBasis {
  int dimension = 0;
  std::vector<Matrix> generators;
  int size() const { return static_cast<int>(generators.size()); }
};

/// Totally symmetric structure constants g_ijk = Tr({l_i, l_j} l_k) / 4,
/// zero-based indices.
struct SymmetricTensor {
  int dimension = 0;
  int length = 0;  // d^2 - 1
  std::vector<double> values;
  double operator()(int i, int j, int k) const {
    return values[(static_cast<std::size_t>(i) * length + j) * length + k];
  }
};

struct BlochVector {
  int dimension = 0;
  RealVector b;
};

struct ObservableCoeffs {
  int dimension = 0;
  double a0 = 0.0;
  RealVector a;
};

struct PositivityConditions {
  // values[k] = e_{k+2}(eigenvalues of rho), k = 0..d-2.
  std::vector<double> values;
  bool positive = false;
};

inline int bloch_length(int d) { return d * d - 1; }

/// Memoized per dimension; the returned reference stays valid for the
/// lifetime of the program. Safe to call concurrently.
const GeneratorBasis& generator_basis(int d);
SymmetricTensor symmetric_tensor(int d);

BlochVector state_to_bloch(const Matrix& rho);
/// Always Hermitian with unit trace; positivity is the caller's business.
Matrix bloch_to_state(const BlochVector& b);

ObservableCoeffs observable_coeffs(const Matrix& o);
Matrix coeffs_to_observable(const ObservableCoeffs& c);

/// Positivity of bloch_to_state(b) decided from elementary symmetric
/// polynomials of its eigenvalues, obtained from the power sums Tr rho^p via
/// Newton's identities. No eigensolve.
PositivityConditions positivity_conditions(const BlochVector& b);

// (d-1)(d-2)/d^2 - 6 (d-2)/d |b|^2 + 4 sum g_ijk b_i b_j b_k, which equals
// 6 e_3 under the g normalization above. Quadratic in d^2-1 per index, so
// intended for small d.
double cubic_condition(const BlochVector& b);

// Tr(rho O) for rho = bloch_to_state(b).
double expectation(const ObservableCoeffs& c, const BlochVector& b);

}  // namespace maskobs
