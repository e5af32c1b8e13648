#include "maskobs/bloch.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "maskobs/error.hpp"

namespace maskobs {

namespace {

GeneratorBasis build_basis(int d) {
  GeneratorBasis basis;
  basis.dimension = d;
  basis.generators.reserve(static_cast<std::size_t>(d * d - 1));
  const Complex i_unit(0.0, 1.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix g = Matrix::Zero(d, d);
      g(j, k) = 1.0;
      g(k, j) = 1.0;
      basis.generators.push_back(std::move(g));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix g = Matrix::Zero(d, d);
      g(j, k) = -i_unit;
      g(k, j) = i_unit;
      basis.generators.push_back(std::move(g));
    }
  }
  for (int l = 1; l < d; ++l) {
    Matrix g = Matrix::Zero(d, d);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) g(j, j) = scale;
    g(l, l) = -l * scale;
    basis.generators.push_back(std::move(g));
  }
  return basis;
}

void require_dimension(int d) {
  if (d < 2) throw Error(ErrorCode::DimensionMismatch, "dimension must be >= 2, got " + std::to_string(d));
}

void require_length(int d, const RealVector& v, const char* what) {
  if (v.size() != bloch_length(d)) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " has length " + std::to_string(v.size()) + ", expected " +
                    std::to_string(bloch_length(d)));
  }
}

int square_dimension(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 2) {
    throw Error(ErrorCode::DimensionMismatch, "expected a square matrix of size >= 2");
  }
  return static_cast<int>(m.rows());
}

}  // namespace

const GeneratorBasis& generator_basis(int d) {
  require_dimension(d);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GeneratorBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<const GeneratorBasis>(build_basis(d));
  return *slot;
}

SymmetricTensor symmetric_tensor(int d) {
  const GeneratorBasis& basis = generator_basis(d);
  const int n = basis.size();
  SymmetricTensor g{d, n, std::vector<double>(static_cast<std::size_t>(n) * n * n, 0.0)};
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Matrix anti = basis.generators[i] * basis.generators[j] +
                          basis.generators[j] * basis.generators[i];
      for (int k = j; k < n; ++k) {
        const double value = 0.25 * (anti * basis.generators[k]).trace().real();
        const int perms[6][3] = {{i, j, k}, {i, k, j}, {j, i, k}, {j, k, i}, {k, i, j}, {k, j, i}};
        for (const auto& p : perms) {
          g.values[(static_cast<std::size_t>(p[0]) * n + p[1]) * n + p[2]] = value;
        }
      }
    }
  }
  return g;
}

BlochVector state_to_bloch(const Matrix& rho) {
  const int d = square_dimension(rho);
  if (!is_hermitian(rho)) throw Error(ErrorCode::NotHermitian, "state is not Hermitian");
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > tol::kInput) {
    throw Error(ErrorCode::NotUnitTrace, "Tr rho = " + std::to_string(tr.real()));
  }
  const GeneratorBasis& basis = generator_basis(d);
  BlochVector out{d, RealVector(basis.size())};
  for (int i = 0; i < basis.size(); ++i) {
    out.b(i) = 0.5 * (rho * basis.generators[i]).trace().real();
  }
  return out;
}

Matrix bloch_to_state(const BlochVector& b) {
  require_dimension(b.dimension);
  require_length(b.dimension, b.b, "Bloch vector");
  const GeneratorBasis& basis = generator_basis(b.dimension);
  Matrix rho = identity(b.dimension) / static_cast<double>(b.dimension);
  for (int i = 0; i < basis.size(); ++i) rho += b.b(i) * basis.generators[i];
  return rho;
}

ObservableCoeffs observable_coeffs(const Matrix& o) {
  const int d = square_dimension(o);
  if (!is_hermitian(o)) throw Error(ErrorCode::NotHermitian, "observable is not Hermitian");
  const GeneratorBasis& basis = generator_basis(d);
  ObservableCoeffs out{d, o.trace().real() / d, RealVector(basis.size())};
  for (int i = 0; i < basis.size(); ++i) {
    out.a(i) = 0.5 * (o * basis.generators[i]).trace().real();
  }
  return out;
}

Matrix coeffs_to_observable(const ObservableCoeffs& c) {
  require_dimension(c.dimension);
  require_length(c.dimension, c.a, "coefficient vector");
  const GeneratorBasis& basis = generator_basis(c.dimension);
  Matrix o = c.a0 * identity(c.dimension);
  for (int i = 0; i < basis.size(); ++i) o += c.a(i) * basis.generators[i];
  return o;
}

PositivityConditions positivity_conditions(const BlochVector& b) {
  const int d = b.dimension;
  const Matrix rho = bloch_to_state(b);

  // power[p] = Tr rho^p, p = 1..d
  std::vector<double> power(static_cast<std::size_t>(d) + 1, 0.0);
  Matrix acc = rho;
  power[1] = 1.0;
  for (int p = 2; p <= d; ++p) {
    acc = acc * rho;
    power[p] = acc.trace().real();
  }
  // Newton: k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
  std::vector<double> e(static_cast<std::size_t>(d) + 1, 0.0);
  e[0] = 1.0;
  for (int k = 1; k <= d; ++k) {
    double sum = 0.0;
    for (int i = 1; i <= k; ++i) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      sum += sign * e[k - i] * power[i];
    }
    e[k] = sum / k;
  }

  PositivityConditions out;
  out.positive = true;
  for (int k = 2; k <= d; ++k) {
    out.values.push_back(e[k]);
    if (e[k] < -tol::kPositivity) out.positive = false;
  }
  return out;
}

double cubic_condition(const BlochVector& b) {
  const int d = b.dimension;
  require_length(d, b.b, "Bloch vector");
  const SymmetricTensor g = symmetric_tensor(d);
  double cubic = 0.0;
  for (int i = 0; i < g.length; ++i)
    for (int j = 0; j < g.length; ++j)
      for (int k = 0; k < g.length; ++k) cubic += g(i, j, k) * b.b(i) * b.b(j) * b.b(k);
  const double dd = d;
  return (dd - 1.0) * (dd - 2.0) / (dd * dd) - 6.0 * (dd - 2.0) / dd * b.b.squaredNorm() +
         4.0 * cubic;
}

double expectation(const ObservableCoeffs& c, const BlochVector& b) {
  if (c.dimension != b.dimension) {
    throw Error(ErrorCode::DimensionMismatch, "observable and state dimensions differ");
  }
  return c.a0 + 2.0 * c.a.dot(b.b);
}

}  // namespace maskobs
