#include <doctest.h>

#include "fpnf/error.hpp"
#include "fpnf/jet.hpp"
#include "support.hpp"

using namespace fpnf;
using namespace fpnf::testing;

namespace {

std::vector<VectorField> model_fields() {
  return {{C(1), Series()},  {Series(), C(1)}, {Series(), X()},
          {Series(), Y()},   {X(), Series()},  {X() * X(), X() * Y()}};
}

}  // namespace

TEST_CASE("prolong_map") {
  SUBCASE("identity") {
    const Prolongation2 pr = prolong_map(FibreMap::identity());
    CHECK(pr.P == P());
    CHECK(pr.A0 == Series());
    CHECK(pr.A1 == C(1));
  }
  SUBCASE("vertical quadratic shift") {
    const Prolongation2 pr = prolong_map({X(), Y() + X() * X()});
    CHECK(pr.P == Rational(2) * X() + P());
    CHECK(pr.A0 == C(2));
    CHECK(pr.A1 == C(1));
  }
  SUBCASE("Moebius map") {
    const Rational f2 = frac(2, 3);
    const int N = 9;
    const Prolongation2 pr = prolong_map(moebius(f2, N));
    const Series u = C(1) - f2 * X();
    CHECK(pr.P.valid_order() == N - 1);
    CHECK(agree(pr.P, u * u * P()));
    CHECK(agree(pr.A1, u * u * u * u));
    CHECK(agree(pr.A0, Rational(-2) * f2 * P() * u * u * u));
  }
  SUBCASE("invalid maps") {
    CHECK_THROWS_AS(prolong_map({X() * X(), Y()}), Error);
    CHECK_THROWS_AS(prolong_map({X(), X() * Y()}), Error);
    CHECK_THROWS_AS(prolong_map({X() + C(1), Y()}), Error);
    CHECK_THROWS_AS(prolong_map({X(), Y() + X()}), Error);
    CHECK_THROWS_AS(prolong_map({X(), Y() + P()}), Error);
  }
}

TEST_CASE("apply_map") {
  SUBCASE("identity leaves J alone") {
    const Series J = SeriesGen(5).series(kXYP, 8);
    CHECK(apply_map(J, FibreMap::identity()) == J);
  }
  SUBCASE("flat equation under a vertical shift") {
    CHECK(apply_map(Series(), {X(), Y() + X() * X()}) == C(-2));
  }
  SUBCASE("flat equation under a Moebius map") {
    const Rational f2 = frac(-3, 5);
    const int N = 10;
    const Series K = apply_map(Series(), moebius(f2, N + 2));
    CHECK(K.valid_order() == N + 1);
    const Series u = C(1) - f2 * X();
    CHECK(agree(K, Rational(2) * f2 * P() * reciprocal(u, N)));
    // Unreduced form: (-2 f2^4 x^3 + 6 f2^3 x^2 - 6 f2^2 x + 2 f2) p / (1 - f2 x)^4.
    const Series num = (Rational(-2) * f2 * f2 * f2 * f2 * X() * X() * X() + Rational(6) * f2 * f2 * f2 * X() * X() -
                        Rational(6) * f2 * f2 * X() + Rational(2) * f2 * C(1)) *
                       P();
    CHECK(agree(K, num * reciprocal(pow(u, 4), N)));
  }
  SUBCASE("an exact equation under an exact map with non-constant Jacobian needs an order") {
    const FibreMap m{X() + X() * X(), Y()};
    CHECK_THROWS_AS(apply_map(P(), m), Error);
    CHECK(apply_map(P(), m, 6).valid_order() == 6);
  }
}

TEST_CASE("compose_maps") {
  const FibreMap shift{X(), Y() + X() * X()};
  SUBCASE("identity on the left") {
    const FibreMap m = SeriesGen(8).map(9);
    const FibreMap c = compose_maps(FibreMap::identity(), m);
    CHECK(c.phi == m.phi);
    CHECK(c.psi == m.psi);
  }
  SUBCASE("Moebius maps add their parameters") {
    const int N = 10;
    const Rational a = frac(1, 2), b = frac(-1, 3);
    const FibreMap c = compose_maps(moebius(a, N), moebius(b, N));
    CHECK(c.phi.valid_order() == N);
    CHECK(agree(c.phi, moebius(a + b, N).phi));
  }
  SUBCASE("vertical shifts add") {
    const FibreMap c = compose_maps(shift, shift);
    CHECK(c.phi == X());
    CHECK(c.psi == Y() + Rational(2) * X() * X());
  }
}

TEST_CASE("apply_map is functorial over compose_maps") {
  SeriesGen gen(19);
  for (int trial = 0; trial < 12; ++trial) {
    const int N = gen.uniform(3, 7);
    const Series J = gen.series(kXYP, N);
    const FibreMap m1 = gen.map(N + 2), m2 = gen.map(N + 2);
    const Series stepwise = apply_map(apply_map(J, m1), m2);
    const Series direct = apply_map(J, compose_maps(m1, m2));
    CHECK(stepwise.valid_order() == N);
    CHECK(direct.valid_order() == N);
    CHECK(agree(stepwise, direct));
  }
}

TEST_CASE("prolong_field") {
  const auto basis = model_fields();
  SUBCASE("translation in x") {
    const FieldProlongation pr = prolong_field(basis[0]);
    CHECK(pr.X1 == Series());
    CHECK(pr.B0 == Series());
    CHECK(pr.B1 == Series());
  }
  SUBCASE("scaling in y") {
    const FieldProlongation pr = prolong_field(basis[3]);
    CHECK(pr.X1 == P());
    CHECK(pr.B0 == Series());
    CHECK(pr.B1 == C(1));
  }
  SUBCASE("projective field") {
    const FieldProlongation pr = prolong_field(basis[5]);
    // g_x + (g_y - f_x) p with f = x^2, g = xy.
    CHECK(pr.X1 == Y() - X() * P());
    CHECK(pr.B1 == Rational(-3) * X());
    CHECK(prolong_field_on(basis[5], Series()) == Series());
  }
}

TEST_CASE("is_symmetry") {
  for (const VectorField& v : model_fields()) CHECK(is_symmetry(v, Series()));
  const VectorField scale_y{Series(), Y()};
  const Series cubic = P() * P() * P();
  CHECK_FALSE(is_symmetry(scale_y, cubic));
  CHECK(tangency(scale_y, cubic) == Rational(-2) * cubic);

  SeriesGen gen(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Series J = restrict_zero(gen.series(kXYP, 7), Var::x);
    CHECK(is_symmetry({C(1), Series()}, J));
  }
}

TEST_CASE("total_derivative") {
  CHECK(total_derivative(Series(), X()) == C(1));
  CHECK(total_derivative(Series(), Y()) == P());
  const Series cubic = P() * P() * P();
  CHECK(total_derivative(cubic, Rational(6) * P()) == Rational(6) * cubic);
}

TEST_CASE("flow_series") {
  SUBCASE("translation") {
    const FlowSeries fl = flow_series({C(1), Series()}, 4);
    CHECK(fl.x[1] == C(1));
    for (int n = 2; n <= 4; ++n) CHECK(fl.x[static_cast<std::size_t>(n)] == Series());
    for (int n = 1; n <= 4; ++n) CHECK(fl.y[static_cast<std::size_t>(n)] == Series());
  }
  SUBCASE("Moebius generator") {
    // x/(1 - f2 x t) = sum_n f2^n x^(n+1) t^n.
    const Rational f2 = frac(3, 4);
    const FlowSeries fl = flow_series({f2 * X() * X(), Series()}, 6);
    for (int n = 0; n <= 6; ++n) {
      Rational c = 1;
      for (int i = 0; i < n; ++i) c *= f2;
      CHECK(fl.x[static_cast<std::size_t>(n)] == c * pow(X(), n + 1));
    }
  }
  SUBCASE("g = O(x^2) keeps every t-coefficient O(x^2)") {
    SeriesGen gen(29);
    const Series g = X() * X() * gen.series(kXY, 6);
    const FlowSeries fl = flow_series({Series(), g}, 5);
    for (int n = 1; n <= 5; ++n) {
      for (const Term& t : fl.y[static_cast<std::size_t>(n)].terms()) CHECK(t.e.i >= 2);
    }
  }
}

TEST_CASE("time-one map of a Moebius-and-slope field") {
  const int N = 10;
  const Rational f2 = frac(-1, 2);
  const Series s = Rational(2) * Y() + frac(1, 3) * Y() * Y();
  const FibreMap m = flow_at_t1({f2 * X() * X(), s * X()}, N);
  CHECK(m.phi.valid_order() == N);
  CHECK(agree(m.phi, moebius(f2, N).phi));
  const Series h = m.psi - Y() - s * X();
  CHECK(restrict_zero(h, Var::x).vanishes());
  CHECK(restrict_zero(diff(h, Var::x), Var::x).vanishes());

  CHECK_THROWS_AS(flow_at_t1({X(), Series()}, N), Error);
  CHECK_THROWS_AS(flow_at_t1({Series(), Y()}, N), Error);
}

TEST_CASE("t-linear part of the prolonged flow is the prolonged field") {
  auto check = [](const VectorField& v) {
    const FieldProlongation pr = prolong_field(v);
    const std::vector<Prolongation2> fl = prolong_flow(flow_series(v, 2), 2);
    CHECK(fl[0].P == P());
    CHECK(fl[1].P == pr.X1);
    CHECK(fl[1].A0 == pr.B0);
    CHECK(fl[1].A1 == pr.B1);
  };
  for (const VectorField& v : model_fields()) check(v);
  SeriesGen gen(31);
  for (int trial = 0; trial < 20; ++trial) check(gen.field(gen.uniform(2, 6)));
}

TEST_CASE("symmetries pull back to symmetries of the transformed equation") {
  SeriesGen gen(37);
  const int N = 6;
  for (int trial = 0; trial < 4; ++trial) {
    const FibreMap m = gen.map(N + 4);
    const Series K = apply_map(Series(), m);
    for (const VectorField& v : model_fields()) {
      const VectorField w = pullback_field(v, m, N);
      const Series t = tangency(w, K);
      CHECK(t.valid_order() >= 2);
      CHECK(t.vanishes());
    }
  }
}
