#include "fpnf/invariants.hpp"

#include <algorithm>

#include "fpnf/error.hpp"
#include "fpnf/homology.hpp"
#include "fpnf/jet.hpp"

namespace fpnf {

const char* to_string(Condition c) {
  switch (c) {
    case Condition::D1: return "D1";
    case Condition::D2: return "D2";
    case Condition::D3: return "D3";
    case Condition::D4: return "D4";
  }
  return "?";
}

Series condition_series(const Series& K, Condition c) {
  switch (c) {
    case Condition::D1: return restrict_zero(K, Var::p);
    case Condition::D2: return restrict_zero(restrict_zero(diff(K, Var::p), Var::p), Var::x);
    case Condition::D3: return restrict_zero(restrict_zero(diff(K, Var::p), Var::p), Var::y);
    case Condition::D4: return restrict_zero(restrict_zero(diff(K, Var::p, 2), Var::p), Var::x);
  }
  throw Error(ErrorCode::Internal, "unknown condition");
}

bool holds(const Series& K, Condition c) { return condition_series(K, c).vanishes(); }

NormalCheck check_normal(const Series& K) {
  NormalCheck out;
  for (Condition c : {Condition::D1, Condition::D2, Condition::D3, Condition::D4}) {
    if (!holds(K, c)) out.violated.push_back(c);
  }
  out.normal = out.violated.empty();
  return out;
}

bool normal_pattern_check(const Series& K) {
  return std::all_of(K.terms().begin(), K.terms().end(), [](const Term& t) { return is_normal_monomial(t.e); });
}

InvariantTriple relative_invariants(const Series& K) {
  const Series Kp = diff(K, Var::p), Ky = diff(K, Var::y);
  const Series Kpp = diff(Kp, Var::p), Kpy = diff(Kp, Var::y);
  InvariantTriple out;
  out.I1 = diff(Kpp, Var::p);
  out.I2 = total_derivative(K, Kpp) - Kpy;
  out.I3 = total_derivative(K, Kpy) + Kpp * Ky - Kpy * Kp - Rational(2) * diff(Ky, Var::y);
  return out;
}

OriginValues invariants_at_origin(const Series& K) {
  if (!check_normal(K).normal) throw Error(ErrorCode::NotNormal, "invariants at the origin need a normal form");
  if (K.valid_order() < 4) throw Error(ErrorCode::OrderExceeded, "K must be known to weight 4");
  const InvariantTriple inv = relative_invariants(K);
  return {inv.I1.constant_term(), inv.I2.constant_term(), inv.I3.constant_term()};
}

Rational taylor_coefficient(const Series& K, const Exponent& e) {
  const Integer scale = factorial(static_cast<unsigned>(e.i)) * factorial(static_cast<unsigned>(e.j)) *
                        factorial(static_cast<unsigned>(e.k));
  return K.coeff(e) * Rational(scale);
}

OriginValues origin_taylor_coefficients(const Series& K) {
  return {taylor_coefficient(K, {0, 0, 3}), taylor_coefficient(K, {1, 0, 2}), taylor_coefficient(K, {1, 1, 1})};
}

FlatnessReport check_flat(const Series& K) {
  const NormalCheck nc = check_normal(K);
  if (!nc.normal) throw Error(ErrorCode::NotNormal, "flatness is decided on normal forms");
  FlatnessReport r;
  r.order_checked = K.valid_order();
  r.invariants = relative_invariants(K);
  if (!r.invariants.I1.vanishes()) r.nonvanishing.push_back("I1");
  if (!r.invariants.I2.vanishes()) r.nonvanishing.push_back("I2");
  if (!r.invariants.I3.vanishes()) r.nonvanishing.push_back("I3");
  r.invariants_vanish = r.nonvanishing.empty();
  r.K_vanishes = K.vanishes();

  r.quadratic = std::none_of(K.terms().begin(), K.terms().end(), [](const Term& t) { return t.e.k >= 3; });
  if (r.quadratic) {
    r.M = coefficient_of(K, Var::p, 2);
    r.N = coefficient_of(K, Var::p, 1);
    r.relation1_residual = Rational(2) * diff(r.M, Var::x) - diff(r.N, Var::y);
    r.relation2_residual = diff(diff(r.N, Var::x), Var::y) - diff(r.N, Var::y) * r.N;
  }
  if (r.invariants_vanish != r.K_vanishes) {
    throw Error(ErrorCode::MethodMismatch, "invariant and coefficient flatness tests disagree");
  }
  r.is_flat = r.K_vanishes;
  return r;
}

FlatRelationSolution solve_flat_relations(const Series& N0, const std::vector<Rational>& c, const Series& M0,
                                          int order) {
  const int top = order - 1;  // N is known to weight order - 1
  std::vector<Series> Nk{N0.truncated(top).with_vars(kY)};
  for (int k = 0; k + 1 <= top; ++k) {
    Series sum;
    for (int a = 0; a <= k; ++a) {
      sum += diff(Nk[static_cast<std::size_t>(a)], Var::y) * Nk[static_cast<std::size_t>(k - a)];
    }
    Series next = Rational(1, k + 1) * integrate(sum, Var::y);
    if (static_cast<std::size_t>(k) < c.size()) next += Series::constant(c[static_cast<std::size_t>(k)]);
    Nk.push_back(next.truncated(top - (k + 1)));
  }
  FlatRelationSolution out{Series(kXY, order - 2), Series(kXY, top)};
  const Series x = Series::variable(Var::x);
  for (std::size_t k = 0; k < Nk.size(); ++k) out.N += mul(pow(x, static_cast<int>(k)), Nk[k]);
  out.N = out.N.truncated(top).with_vars(kXY);
  out.M = (M0.truncated(order - 2) + Rational(1, 2) * integrate(diff(out.N, Var::y), Var::x))
              .truncated(order - 2)
              .with_vars(kXY);
  return out;
}

}  // namespace fpnf
