#include "fpnf/generate.hpp"

#include "fpnf/homology.hpp"

namespace fpnf {

int Generator::uniform(int lo, int hi) {
  return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational Generator::small_rational() {
  const int num = uniform(-4, 4);
  return frac(num, uniform(1, 3));
}

Series Generator::random_series(VarMask vars, int order, int density_percent) {
  std::vector<Term> terms;
  for (int w = 0; w <= order; ++w) {
    for (int j = 0; 2 * j <= w; ++j) {
      for (int i = 0; i + 2 * j <= w; ++i) {
        const Exponent e{i, j, w - i - 2 * j};
        if ((e.support() & ~vars) != 0) continue;
        if (uniform(0, 99) >= density_percent) continue;
        terms.push_back({e, small_rational()});
      }
    }
  }
  return Series::from_terms(vars, order, std::move(terms));
}

Series Generator::random_ode(int order) { return random_series(kXYP, order); }

Series Generator::random_normal(int order) {
  const Series s = random_series(kXYP, order, 50);
  std::vector<Term> kept;
  for (const Term& t : s.terms()) {
    if (is_normal_monomial(t.e)) kept.push_back(t);
  }
  return Series::from_terms(kXYP, order, std::move(kept));
}

FibreMap Generator::random_map(int order) {
  auto nonzero = [&] {
    const int v = uniform(1, 3);
    return uniform(0, 1) ? v : -v;
  };
  std::vector<Term> phi{{{1, 0, 0}, Rational(nonzero())}};
  std::vector<Term> psi{{{0, 1, 0}, Rational(nonzero())}};
  for (int i = 2; i <= order; ++i) {
    if (uniform(0, 99) < 40) phi.push_back({{i, 0, 0}, Rational(uniform(-2, 2))});
  }
  for (int w = 2; w <= order; ++w) {
    for (int j = 0; 2 * j <= w; ++j) {
      const Exponent e{w - 2 * j, j, 0};
      if (e == Exponent{0, 1, 0}) continue;
      if (uniform(0, 99) < 40) psi.push_back({e, Rational(uniform(-2, 2))});
    }
  }
  return {Series::from_terms(kX, order, std::move(phi)), Series::from_terms(kXY, order, std::move(psi))};
}

}  // namespace fpnf
