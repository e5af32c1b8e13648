#include "maskobs/channels.hpp"

#include <cmath>
#include <string>

#include "maskobs/error.hpp"

namespace maskobs {

namespace {

void require_input(const KrausChannel& channel, const Matrix& m, int expected) {
  if (m.rows() != expected || m.cols() != expected) {
    throw Error(ErrorCode::DimensionMismatch,
                "operator is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    ", channel " + std::to_string(channel.input_dim()) + " -> " +
                    std::to_string(channel.output_dim()));
  }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorCode::InvalidChannel, "empty Kraus family");
  output_dim_ = static_cast<int>(kraus_.front().rows());
  input_dim_ = static_cast<int>(kraus_.front().cols());
  if (input_dim_ == 0 || output_dim_ == 0) {
    throw Error(ErrorCode::InvalidChannel, "zero-sized Kraus operator");
  }
  Matrix sum = Matrix::Zero(input_dim_, input_dim_);
  for (const Matrix& e : kraus_) {
    if (e.rows() != output_dim_ || e.cols() != input_dim_) {
      throw Error(ErrorCode::InvalidChannel, "Kraus operators have inconsistent shapes");
    }
    if (!all_finite(e)) throw Error(ErrorCode::InvalidChannel, "non-finite Kraus entry");
    sum += e.adjoint() * e;
  }
  const double deviation = max_norm(sum - identity(input_dim_));
  if (!(deviation < tol::kChannel)) {
    throw Error(ErrorCode::InvalidChannel,
                "not trace preserving, max|sum E^dagger E - I| = " + std::to_string(deviation));
  }
}

bool is_density_matrix(const Matrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
  if (!all_finite(rho) || !is_hermitian(rho)) return false;
  if (std::abs(rho.trace() - 1.0) > tol::kInput) return false;
  return eig_hermitian(rho).eigenvalues.minCoeff() >= -tol::kPositivity;
}

Matrix apply_forward(const KrausChannel& channel, const Matrix& rho) {
  require_input(channel, rho, channel.input_dim());
  Matrix out = Matrix::Zero(channel.output_dim(), channel.output_dim());
  for (const Matrix& e : channel.kraus()) out += e * rho * e.adjoint();
  return out;
}

Matrix apply_adjoint(const KrausChannel& channel, const Matrix& observable) {
  require_input(channel, observable, channel.output_dim());
  Matrix out = Matrix::Zero(channel.input_dim(), channel.input_dim());
  for (const Matrix& e : channel.kraus()) out += e.adjoint() * observable * e;
  return out;
}

KrausChannel constant_channel(const Matrix& sigma0, int input_dim) {
  if (input_dim < 1) throw Error(ErrorCode::DimensionMismatch, "input dimension must be positive");
  if (!is_density_matrix(sigma0)) throw Error(ErrorCode::InvalidState, "sigma0 is not a state");
  const HermitianEig eig = eig_hermitian(sigma0);
  const int d = static_cast<int>(sigma0.rows());
  std::vector<Matrix> kraus;
  double total = 0.0;
  for (int j = d - 1; j >= 0; --j) {
    const double p = eig.eigenvalues(j);
    if (p <= 1e-15) continue;
    total += p;
    const Vector e = eig.eigenvectors.col(j);
    for (int k = 0; k < input_dim; ++k) {
      kraus.push_back(std::sqrt(p) * ketbra(e, basis_ket(input_dim, k)));
    }
  }
  // Absorb the roundoff-level weight of skipped eigenvalues.
  for (Matrix& k : kraus) k /= std::sqrt(total);
  return KrausChannel(std::move(kraus));
}

Matrix isometric_extension(const KrausChannel& channel) {
  const int env = channel.size();
  Matrix v = Matrix::Zero(static_cast<Eigen::Index>(channel.output_dim()) * env,
                          channel.input_dim());
  for (int i = 0; i < env; ++i) {
    v += tensor(channel[i], Matrix(basis_ket(env, i)));
  }
  return v;
}

UnitaryDilation unitary_dilation(const KrausChannel& channel) {
  if (channel.input_dim() != channel.output_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "dilation needs input_dim == output_dim");
  }
  const int d = channel.input_dim();
  const int env = channel.size();
  const Matrix v = isometric_extension(channel);
  Matrix inputs = Matrix::Zero(d * env, d);
  for (int j = 0; j < d; ++j) inputs(j * env, j) = 1.0;
  return UnitaryDilation{d, env, unitary_completion(inputs, v, d * env), basis_ket(env, 0)};
}

Matrix reduced_output(const UnitaryDilation& dilation, const Matrix& rho) {
  if (rho.rows() != dilation.system_dim || rho.cols() != dilation.system_dim) {
    throw Error(ErrorCode::DimensionMismatch, "state does not match dilation system");
  }
  const Matrix joint = tensor(rho, projector(dilation.env_init));
  const Matrix evolved = dilation.unitary * joint * dilation.unitary.adjoint();
  return partial_trace(evolved, {dilation.system_dim, dilation.env_dim}, Subsystem::B);
}

UnitaryDilation masker_dilation(const Matrix& u0, const Matrix& u1) {
  for (const Matrix* u : {&u0, &u1}) {
    if (u->rows() != 2 || u->cols() != 2 || !is_unitary(*u)) {
      throw Error(ErrorCode::NotUnitary, "environment unitaries must be 2x2 unitary");
    }
  }
  Matrix unitary = Matrix::Zero(4, 4);
  const Matrix* u[2] = {&u0, &u1};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Matrix sys = ketbra(basis_ket(2, j), basis_ket(2, i));
      const Matrix env = *u[j] * ketbra(basis_ket(2, i), basis_ket(2, j));
      unitary += tensor(sys, env);
    }
  }
  return UnitaryDilation{2, 2, unitary, basis_ket(2, 0)};
}

}  // namespace maskobs
