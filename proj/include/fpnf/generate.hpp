#pragma once

#include <cstdint>
#include <random>

#include "fpnf/jet.hpp"
#include "fpnf/series.hpp"

namespace fpnf {

// Deterministic example generator. Integers are drawn with std::mt19937_64
// reduced modulo the range, so a seed gives the same corpus everywhere.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  // Uniform in [lo, hi].
  int uniform(int lo, int hi);
  // num/den with num in [-4, 4] and den in [1, 3].
  Rational small_rational();

  // Each monomial of weight <= order present with probability density/100.
  Series random_series(VarMask vars, int order, int density_percent = 35);
  // Random J(x, y, p) known to weight `order`.
  Series random_ode(int order);
  // Random J restricted to the normal monomial pattern.
  Series random_normal(int order);
  // Valid fibre map with small integer coefficients, psi_x(0,0) = 0,
  // truncated at `order`.
  FibreMap random_map(int order);

 private:
  std::mt19937_64 rng_;
};

}  // namespace fpnf
