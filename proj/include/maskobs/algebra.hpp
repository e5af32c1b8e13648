#pragma once

// Dense complex linear algebra used by every other module: Hermitian
// eigendecomposition, Kronecker products, partial traces, Schmidt
// decomposition and completion of partial isometries to unitaries.
//
// Matrices are plain Eigen dynamic matrices. All functions are pure.

#include <complex>

#include <Eigen/Dense>

#include "maskobs/tolerances.hpp"

namespace maskobs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct HermitianEig {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // orthonormal columns, same order
};

struct SchmidtData {
  RealVector coefficients;  // descending, strictly positive
  Matrix left;              // columns on subsystem A
  Matrix right;             // columns on subsystem B
};

struct BipartiteDims {
  int a = 0;
  int b = 0;
  int total() const { return a * b; }
};

enum class Subsystem { A, B };

template <typename Derived>
double max_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}
bool all_finite(const Matrix& m);
bool is_hermitian(const Matrix& m, double tolerance = tol::kHermitian);
bool is_unitary(const Matrix& m, double tolerance = tol::kInput);
// Columns of `family` orthonormal within tolerance (max-norm of F^dagger F - I).
bool is_orthonormal(const Matrix& family, double tolerance = tol::kInput);

Matrix identity(int d);
Vector basis_ket(int d, int index);
Matrix ketbra(const Vector& ket, const Vector& bra);
Matrix projector(const Vector& ket);
Complex trace(const Matrix& m);

// Multiplies the vector by a phase so its first component with modulus
// above 1e-12 is real and nonnegative. Returns the applied phase.
Complex normalize_phase(Vector& v);

/// Eigendecomposition of a Hermitian matrix.
/// Throws NotHermitian when max|M - M^dagger| exceeds the hermiticity
/// tolerance and NumericalFailure if the solver does not converge.
HermitianEig eig_hermitian(const Matrix& m);

Matrix tensor(const Matrix& a, const Matrix& b);

/// Trace over `traced` of an operator on C^{d_a} (x) C^{d_b}; the result lives
/// on the other factor.
Matrix partial_trace(const Matrix& m, BipartiteDims dims, Subsystem traced);

// psi = sum_{ij} M(i, j) |i>_A |j>_B
Matrix matricize(const Vector& psi, BipartiteDims dims);
Vector vectorize(const Matrix& m);

/// Schmidt decomposition psi = sum_k c_k left_k (x) right_k. Coefficients
/// below 1e-12 are dropped. Throws NotNormalized unless |psi| = 1.
SchmidtData schmidt(const Vector& psi, BipartiteDims dims);

/// Unitary U on C^d with U inputs.col(k) = outputs.col(k). The orthogonal
/// complement of the inputs is sent to the orthogonal complement of the
/// outputs; both complements are Gram-Schmidt completions over the standard
/// basis in index order, paired in order.
Matrix unitary_completion(const Matrix& inputs, const Matrix& outputs, int d);

// Gram-Schmidt extension of an orthonormal family to a basis of C^d using
// standard basis vectors in index order. Returns only the added columns.
Matrix complete_orthonormal_basis(const Matrix& family, int d);

// Orthonormal basis (columns) of the column space, rank decided by singular
// values above kRank * sigma_max (and above an absolute floor of 1e-12).
RealMatrix column_space(const RealMatrix& a);
Matrix column_space(const Matrix& a);
// Orthonormal basis of the null space {x : A x = 0}.
RealMatrix null_space(const RealMatrix& a);
int numerical_rank(const RealMatrix& a);
// Moore-Penrose pseudoinverse with the same rank rule.
RealMatrix pseudo_inverse(const RealMatrix& a);
Matrix pseudo_inverse(const Matrix& a);

}  // namespace maskobs
