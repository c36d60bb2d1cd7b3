#pragma once

#include <random>
#include <vector>

#include <doctest.h>

#include "fpnf/jet.hpp"
#include "fpnf/series.hpp"

namespace fpnf::testing {

// Deterministic generator of small random series for property tests.
class SeriesGen {
 public:
  explicit SeriesGen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rational small_rational() {
    const int num = uniform(-4, 4);
    const int den = uniform(1, 3);
    return frac(num, den);
  }

  // Random series in `vars` with terms of weight <= order, each present
  // with probability density_percent/100.
  Series series(VarMask vars, int order, int density_percent = 35, bool constant_term = true) {
    std::vector<Term> terms;
    for (int w = 0; w <= order; ++w) {
      for (int j = 0; 2 * j <= w; ++j) {
        for (int i = 0; i + 2 * j <= w; ++i) {
          const int k = w - i - 2 * j;
          const Exponent e{i, j, k};
          if ((e.support() & ~vars) != 0) continue;
          if (w == 0 && !constant_term) continue;
          if (uniform(0, 99) >= density_percent) continue;
          terms.push_back({e, small_rational()});
        }
      }
    }
    return Series::from_terms(vars, order, std::move(terms));
  }

  int nonzero_small() {
    const int v = uniform(1, 3);
    return uniform(0, 1) ? v : -v;
  }

  // Valid fibre map with small coefficients, truncated at `order`.
  FibreMap map(int order, int density_percent = 40) {
    std::vector<Term> phi{{{1, 0, 0}, Rational(nonzero_small())}};
    std::vector<Term> psi{{{0, 1, 0}, Rational(nonzero_small())}};
    for (int i = 2; i <= order; ++i) {
      if (uniform(0, 99) < density_percent) phi.push_back({{i, 0, 0}, small_rational()});
    }
    for (int w = 2; w <= order; ++w) {
      for (int j = 0; 2 * j <= w; ++j) {
        const Exponent e{w - 2 * j, j, 0};
        if (e == Exponent{0, 1, 0} || e == Exponent{1, 0, 0}) continue;
        if (uniform(0, 99) < density_percent) psi.push_back({e, small_rational()});
      }
    }
    return {Series::from_terms(kX, order, std::move(phi)), Series::from_terms(kXY, order, std::move(psi))};
  }

  VectorField field(int order, int density_percent = 40) {
    return {series(kX, order, density_percent), series(kXY, order, density_percent)};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Series X(int order = kExactOrder) { return Series::variable(Var::x, order); }
inline Series Y(int order = kExactOrder) { return Series::variable(Var::y, order); }
inline Series P(int order = kExactOrder) { return Series::variable(Var::p, order); }
inline Series C(const Rational& c, int order = kExactOrder) { return Series::constant(c, order); }

// X = x/(1 - f2 x), Y = y, truncated at `order`.
inline FibreMap moebius(const Rational& f2, int order) {
  return {mul(X(), reciprocal(C(1) - f2 * X(), order - 1)).with_vars(kX), Y()};
}

}  // namespace fpnf::testing

namespace doctest {
template <>
struct StringMaker<fpnf::Series> {
  static String convert(const fpnf::Series& s) {
    return (s.to_string() + " [vars=" + std::to_string(s.vars()) + "]").c_str();
  }
};
}  // namespace doctest
