#pragma once

// Seeded sampling of test and demo inputs. The engine is std::mt19937_64 and
// the real/normal transforms are written out here rather than taken from
// <random> distributions, so a seed produces the same numbers under every
// standard library.

#include <cstdint>
#include <random>
#include <vector>

#include "maskobs/algebra.hpp"

namespace maskobs {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi);  // inclusive
  double normal();                  // Box-Muller, one draw per call
  Complex complex_normal();         // E|z|^2 = 1

 private:
  std::mt19937_64 engine_;
};

RealVector random_unit_vector(Rng& rng, int n);
RealVector random_probability(Rng& rng, int n);  // flat Dirichlet, full support
Matrix random_unitary(Rng& rng, int d);          // Haar
Vector random_pure_state(Rng& rng, int d);
Matrix random_density(Rng& rng, int d);          // Hilbert-Schmidt measure
Matrix random_hermitian(Rng& rng, int d, double scale = 1.0);
// Kraus family of a random channel C^{d_in} -> C^{d_out} with `count`
// operators, cut from the first d_in columns of a Haar unitary.
// Kraus family cut from a Haar isometry. Requires d_out * count >= d_in.
std::vector<Matrix> random_kraus(Rng& rng, int d_in, int d_out, int count);

}  // namespace maskobs
