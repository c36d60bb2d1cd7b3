#include <doctest.h>

#include "fpnf/error.hpp"
#include "fpnf/homology.hpp"
#include "fpnf/invariants.hpp"
#include "support.hpp"

using namespace fpnf;
using namespace fpnf::testing;

namespace {

// Random series filtered through the normal monomial pattern.
Series random_normal(SeriesGen& gen, int order) {
  const Series s = gen.series(kXYP, order, 50);
  std::vector<Term> kept;
  for (const Term& t : s.terms()) {
    if (is_normal_monomial(t.e)) kept.push_back(t);
  }
  return Series::from_terms(kXYP, order, std::move(kept));
}

}  // namespace

TEST_CASE("check_normal") {
  const Series cubic = P() * P() * P();
  CHECK(check_normal(cubic).normal);
  CHECK(check_normal(X() * Y() * P()).normal);
  const NormalCheck yp = check_normal(Y() * P());
  CHECK_FALSE(yp.normal);
  REQUIRE(yp.violated.size() == 1);
  CHECK(yp.violated[0] == Condition::D2);

  const NormalCheck many = check_normal(C(1) + X() * P() + P() * P());
  CHECK(many.violated == std::vector<Condition>{Condition::D1, Condition::D3, Condition::D4});
}

TEST_CASE("normal_pattern_check") {
  CHECK(normal_pattern_check(P() * P() * P() + X() * P() * P() + X() * Y() * P()));
  CHECK_FALSE(normal_pattern_check(X() * P()));
  CHECK_FALSE(normal_pattern_check(Y() * P() * P()));
}

TEST_CASE("the two normality predicates agree") {
  SeriesGen gen(53);
  int normal_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    // Sparse inputs near the normal pattern, so both verdicts occur.
    Series s = random_normal(gen, gen.uniform(3, 9));
    if (gen.uniform(0, 1)) s += gen.series(kXYP, gen.uniform(0, 9), 4);
    const bool a = check_normal(s).normal;
    CHECK(a == normal_pattern_check(s));
    normal_seen += a;
  }
  CHECK(normal_seen > 50);
  CHECK(normal_seen < 250);
}

TEST_CASE("normal forms are an ideal") {
  SeriesGen gen(59);
  for (int trial = 0; trial < 100; ++trial) {
    const int order = gen.uniform(3, 9);
    const Series A = gen.series(kXYP, order);
    const Series K = random_normal(gen, order);
    CHECK(check_normal(mul(A, K)).normal);
  }
}

TEST_CASE("relative_invariants") {
  const InvariantTriple zero = relative_invariants(Series());
  CHECK(zero.I1 == Series());
  CHECK(zero.I2 == Series());
  CHECK(zero.I3 == Series());
  CHECK(relative_invariants(P() * P() * P()).I1 == C(6));
  const InvariantTriple xp2 = relative_invariants(X() * P() * P());
  CHECK(xp2.I1 == Series());
  CHECK(xp2.I2 == C(2));
}

TEST_CASE("invariants for K = M p^2 + N p") {
  // I2 = 2 M_x - N_y and I3 = N_xy - N N_y + p d/dy(2 M_x - N_y).
  SeriesGen gen(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Series M = gen.series(kXY, 6), N = gen.series(kXY, 7);
    const Series K = M * P() * P() + N * P();
    const InvariantTriple inv = relative_invariants(K);
    const Series I2 = Rational(2) * diff(M, Var::x) - diff(N, Var::y);
    CHECK(agree(inv.I1, Series()));
    CHECK(agree(inv.I2, I2));
    CHECK(agree(inv.I3, diff(diff(N, Var::x), Var::y) - N * diff(N, Var::y) + P() * diff(I2, Var::y)));
  }
}

TEST_CASE("invariants_at_origin") {
  const Series cubic = (P() * P() * P()).truncated(8);
  CHECK(invariants_at_origin(cubic) == OriginValues{6, 0, 0});
  CHECK(origin_taylor_coefficients(cubic) == OriginValues{6, 0, 0});
  const Series xp2 = (X() * P() * P()).truncated(8);
  CHECK(invariants_at_origin(xp2) == OriginValues{0, 2, 0});
  CHECK(taylor_coefficient(xp2, {1, 0, 2}) == 2);
  const Series xyp = (X() * Y() * P()).truncated(8);
  CHECK(invariants_at_origin(xyp) == OriginValues{0, 0, 1});
  CHECK_THROWS_AS(invariants_at_origin(Y() * P()), Error);

  SeriesGen gen(67);
  for (int trial = 0; trial < 40; ++trial) {
    const Series K = random_normal(gen, gen.uniform(4, 9));
    CHECK(invariants_at_origin(K) == origin_taylor_coefficients(K));
  }
}

TEST_CASE("check_flat") {
  SUBCASE("zero") {
    const FlatnessReport r = check_flat(Series(kXYP, 10));
    CHECK(r.is_flat);
    CHECK(r.order_checked == 10);
  }
  SUBCASE("x p^2") {
    const FlatnessReport r = check_flat((X() * P() * P()).truncated(10));
    CHECK_FALSE(r.is_flat);
    CHECK(r.nonvanishing == std::vector<std::string>{"I2"});
    CHECK(r.invariants.I2 == C(2, 7));
    CHECK(r.quadratic);
    CHECK(r.relation1_residual == C(2, 7));
  }
  SUBCASE("p^3") {
    const FlatnessReport r = check_flat((P() * P() * P()).truncated(10));
    CHECK_FALSE(r.is_flat);
    // I2 = D_x(6p) = 6p^3 is nonzero too.
    CHECK(r.nonvanishing == std::vector<std::string>{"I1", "I2"});
    CHECK(r.invariants.I1 == C(6, 7));
    CHECK_FALSE(r.quadratic);
  }
  SUBCASE("requires a normal form") {
    CHECK_THROWS_AS(check_flat(Y() * P()), Error);
  }
  SUBCASE("random normal forms: both routes agree") {
    SeriesGen gen(71);
    for (int trial = 0; trial < 60; ++trial) {
      const int order = gen.uniform(3, 10);
      Series K = random_normal(gen, order);
      if (trial % 3 == 0) K = Series(kXYP, order);
      CHECK_NOTHROW(check_flat(K));
    }
  }
}

TEST_CASE("flatness relations") {
  const int N = 10;
  SUBCASE("arbitrary data satisfies both relations") {
    SeriesGen gen(73);
    for (int trial = 0; trial < 10; ++trial) {
      const Series N0 = gen.series(kY, N - 1);
      std::vector<Rational> c;
      for (int k = 0; k < 4; ++k) c.push_back(gen.small_rational());
      const FlatRelationSolution s = solve_flat_relations(N0, c, gen.series(kY, N - 2), N);
      CHECK(s.N.valid_order() == N - 1);
      CHECK(s.M.valid_order() == N - 2);
      CHECK((Rational(2) * diff(s.M, Var::x) - diff(s.N, Var::y)).vanishes());
      CHECK((diff(diff(s.N, Var::x), Var::y) - diff(s.N, Var::y) * s.N).vanishes());
      CHECK(s.N.coeff({0, 0, 0}) == N0.constant_term());
      if (!N0.vanishes()) CHECK_FALSE(check_normal(s.M * P() * P() + s.N * P()).normal);
    }
  }
  SUBCASE("normal data forces K = 0") {
    const FlatRelationSolution s = solve_flat_relations(Series(kY, N - 1), {}, Series(kY, N - 2), N);
    const Series K = (s.M * P() * P() + s.N * P()).truncated(N);
    CHECK(K.valid_order() == N);
    const FlatnessReport r = check_flat(K);
    CHECK(r.is_flat);
    CHECK(r.relation1_residual.vanishes());
    CHECK(r.relation2_residual.vanishes());
  }
}
