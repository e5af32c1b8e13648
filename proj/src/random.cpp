#include "maskobs/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maskobs/error.hpp"

namespace maskobs {

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

RealVector random_unit_vector(Rng& rng, int n) {
  RealVector v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

RealVector random_probability(Rng& rng, int n) {
  RealVector p(n);
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    p(i) = -std::log(u);
  }
  return p / p.sum();
}

namespace {

Matrix ginibre(Rng& rng, int rows, int cols) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  return g;
}

}  // namespace

Matrix random_unitary(Rng& rng, int d) {
  const Matrix g = ginibre(rng, d, d);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Vector random_pure_state(Rng& rng, int d) {
  Vector v = ginibre(rng, d, 1).col(0);
  return v / v.norm();
}

Matrix random_density(Rng& rng, int d) {
  const Matrix g = ginibre(rng, d, d);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

Matrix random_hermitian(Rng& rng, int d, double scale) {
  const Matrix g = ginibre(rng, d, d);
  return scale * 0.5 * (g + g.adjoint());
}

std::vector<Matrix> random_kraus(Rng& rng, int d_in, int d_out, int count) {
  if (d_out * count < d_in) {
    throw Error(ErrorCode::DimensionMismatch, "need d_out * count >= d_in for a trace-preserving family");
  }
  const int big = std::max(d_in, d_out * count);
  const Matrix u = random_unitary(rng, big);
  const Matrix isometry = u.topLeftCorner(d_out * count, d_in);
  std::vector<Matrix> kraus;
  for (int i = 0; i < count; ++i) {
    Matrix e(d_out, d_in);
    for (int r = 0; r < d_out; ++r) e.row(r) = isometry.row(r * count + i);
    kraus.push_back(std::move(e));
  }
  return kraus;
}

}  // namespace maskobs
