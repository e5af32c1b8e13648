#include "maskobs/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maskobs/error.hpp"

namespace maskobs {

namespace {

constexpr double kPhaseEpsilon = 1e-12;
constexpr double kSchmidtCutoff = 1e-12;
constexpr double kCompletionAccept = 1e-6;
constexpr double kRankFloor = 1e-12;

std::string dims_string(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

int rank_from_singular_values(const RealVector& s) {
  if (s.size() == 0) return 0;
  const double cutoff = std::max(kRankFloor, tol::kRank * s.maxCoeff());
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool is_hermitian(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return max_norm(m - m.adjoint()) <= tolerance;
}

bool is_unitary(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return max_norm(m.adjoint() * m - identity(static_cast<int>(m.rows()))) <= tolerance;
}

bool is_orthonormal(const Matrix& family, double tolerance) {
  if (family.cols() == 0) return true;
  const Matrix gram = family.adjoint() * family;
  return max_norm(gram - Matrix::Identity(family.cols(), family.cols())) <= tolerance;
}

Matrix identity(int d) { return Matrix::Identity(d, d); }

Vector basis_ket(int d, int index) {
  Vector v = Vector::Zero(d);
  v(index) = 1.0;
  return v;
}

Matrix ketbra(const Vector& ket, const Vector& bra) { return ket * bra.adjoint(); }

Matrix projector(const Vector& ket) { return ket * ket.adjoint(); }

Complex trace(const Matrix& m) { return m.trace(); }

Complex normalize_phase(Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double r = std::abs(v(i));
    if (r > kPhaseEpsilon) {
      const Complex phase = std::conj(v(i)) / r;
      v *= phase;
      v(i) = Complex(std::abs(v(i)), 0.0);
      return phase;
    }
  }
  return Complex(1.0, 0.0);
}

HermitianEig eig_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NotHermitian, "matrix is " + dims_string(m.rows(), m.cols()));
  }
  if (!is_hermitian(m)) {
    throw Error(ErrorCode::NotHermitian,
                "max |M - M^dagger| = " + std::to_string(max_norm(m - m.adjoint())));
  }
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
  }
  HermitianEig out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) {
    Vector col = out.eigenvectors.col(k);
    normalize_phase(col);
    out.eigenvectors.col(k) = col;
  }
  return out;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, BipartiteDims dims, Subsystem traced) {
  if (dims.a <= 0 || dims.b <= 0 || m.rows() != m.cols() || m.rows() != dims.total()) {
    throw Error(ErrorCode::DimensionMismatch,
                "operator " + dims_string(m.rows(), m.cols()) + " vs dims " +
                    std::to_string(dims.a) + "*" + std::to_string(dims.b));
  }
  const int da = dims.a;
  const int db = dims.b;
  if (traced == Subsystem::B) {
    Matrix out = Matrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int k = 0; k < da; ++k)
        for (int j = 0; j < db; ++j) out(i, k) += m(i * db + j, k * db + j);
    return out;
  }
  Matrix out = Matrix::Zero(db, db);
  for (int j = 0; j < db; ++j)
    for (int l = 0; l < db; ++l)
      for (int i = 0; i < da; ++i) out(j, l) += m(i * db + j, i * db + l);
  return out;
}

Matrix matricize(const Vector& psi, BipartiteDims dims) {
  if (psi.size() != dims.total()) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector of length " + std::to_string(psi.size()) + " vs dims " +
                    std::to_string(dims.a) + "*" + std::to_string(dims.b));
  }
  Matrix m(dims.a, dims.b);
  for (int i = 0; i < dims.a; ++i)
    for (int j = 0; j < dims.b; ++j) m(i, j) = psi(i * dims.b + j);
  return m;
}

Vector vectorize(const Matrix& m) {
  Vector psi(m.rows() * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) psi(i * m.cols() + j) = m(i, j);
  return psi;
}

SchmidtData schmidt(const Vector& psi, BipartiteDims dims) {
  const Matrix m = matricize(psi, dims);
  if (std::abs(psi.norm() - 1.0) > tol::kInput) {
    throw Error(ErrorCode::NotNormalized, "|psi| = " + std::to_string(psi.norm()));
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector s = svd.singularValues();
  int kept = 0;
  while (kept < s.size() && s(kept) > kSchmidtCutoff) ++kept;

  SchmidtData out{RealVector(kept), Matrix(dims.a, kept), Matrix(dims.b, kept)};
  for (int k = 0; k < kept; ++k) {
    Vector left = svd.matrixU().col(k);
    Vector right = svd.matrixV().col(k).conjugate();
    const Complex phase = normalize_phase(left);
    right *= std::conj(phase);
    out.coefficients(k) = s(k);
    out.left.col(k) = left;
    out.right.col(k) = right;
  }
  return out;
}

Matrix complete_orthonormal_basis(const Matrix& family, int d) {
  Matrix basis(d, d);
  Eigen::Index filled = family.cols();
  basis.leftCols(filled) = family;
  const Eigen::Index needed = d - filled;
  Matrix added(d, needed);
  Eigen::Index count = 0;
  for (int i = 0; i < d && count < needed; ++i) {
    Vector v = basis_ket(d, i);
    // Two passes of classical Gram-Schmidt keep the result orthogonal to
    // working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < filled; ++k) {
        v -= basis.col(k) * basis.col(k).dot(v);
      }
    }
    const double norm = v.norm();
    if (norm <= kCompletionAccept) continue;
    v /= norm;
    basis.col(filled++) = v;
    added.col(count++) = v;
  }
  if (count != needed) {
    throw Error(ErrorCode::NumericalFailure, "basis completion stalled");
  }
  return added;
}

Matrix unitary_completion(const Matrix& inputs, const Matrix& outputs, int d) {
  if (inputs.rows() != d || outputs.rows() != d || inputs.cols() != outputs.cols() ||
      inputs.cols() > d) {
    throw Error(ErrorCode::InconsistentDimensions,
                "inputs " + dims_string(inputs.rows(), inputs.cols()) + ", outputs " +
                    dims_string(outputs.rows(), outputs.cols()) + ", d = " + std::to_string(d));
  }
  if (!is_orthonormal(inputs)) throw Error(ErrorCode::NotOrthonormal, "input family");
  if (!is_orthonormal(outputs)) throw Error(ErrorCode::NotOrthonormal, "output family");

  const Matrix in_rest = complete_orthonormal_basis(inputs, d);
  const Matrix out_rest = complete_orthonormal_basis(outputs, d);
  return outputs * inputs.adjoint() + out_rest * in_rest.adjoint();
}

RealMatrix column_space(const RealMatrix& a) {
  if (a.size() == 0) return RealMatrix(a.rows(), 0);
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeThinU);
  const int rank = rank_from_singular_values(svd.singularValues());
  return svd.matrixU().leftCols(rank);
}

Matrix column_space(const Matrix& a) {
  if (a.size() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const int rank = rank_from_singular_values(svd.singularValues());
  return svd.matrixU().leftCols(rank);
}

RealMatrix null_space(const RealMatrix& a) {
  if (a.rows() == 0) return RealMatrix::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
  const int rank = rank_from_singular_values(svd.singularValues());
  return svd.matrixV().rightCols(a.cols() - rank);
}

int numerical_rank(const RealMatrix& a) {
  if (a.size() == 0) return 0;
  return rank_from_singular_values(Eigen::JacobiSVD<RealMatrix>(a).singularValues());
}

namespace {

template <typename M>
M pinv_impl(const M& a) {
  if (a.size() == 0) return M::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<M> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  const int rank = rank_from_singular_values(s);
  M out = M::Zero(a.cols(), a.rows());
  for (int k = 0; k < rank; ++k) {
    out += (svd.matrixV().col(k) / s(k)) * svd.matrixU().col(k).adjoint();
  }
  return out;
}

}  // namespace

RealMatrix pseudo_inverse(const RealMatrix& a) { return pinv_impl(a); }
Matrix pseudo_inverse(const Matrix& a) { return pinv_impl(a); }

}  // namespace maskobs
