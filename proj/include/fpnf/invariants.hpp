#pragma once

#include <string>
#include <vector>

#include "fpnf/series.hpp"

namespace fpnf {

// D1: K(x,y,0) = 0   D2: K_p(0,y,0) = 0   D3: K_p(x,0,0) = 0   D4: K_pp(0,y,0) = 0
enum class Condition { D1, D2, D3, D4 };

const char* to_string(Condition c);

// The restriction whose vanishing is condition c.
Series condition_series(const Series& K, Condition c);
bool holds(const Series& K, Condition c);

struct NormalCheck {
  bool normal = true;
  std::vector<Condition> violated;
};

NormalCheck check_normal(const Series& K);
// Every monomial is p^(3+k) times anything, x^(1+i) y^j p^2 or x^(1+i) y^(1+j) p.
bool normal_pattern_check(const Series& K);

// I1 = K_ppp, I2 = D_x K_pp - K_py, I3 = D_x K_py + K_pp K_y - K_py K_p - 2 K_yy,
// with D_x = d/dx + p d/dy + K d/dp. Constant prefactors are dropped.
struct InvariantTriple {
  Series I1;
  Series I2;
  Series I3;
};

InvariantTriple relative_invariants(const Series& K);

struct OriginValues {
  Rational q1, q2, q3;
  friend bool operator==(const OriginValues&, const OriginValues&) = default;
};

// (I1(0), I2(0), I3(0)). Throws NotNormal unless K passes check_normal and
// OrderExceeded when K is not known to weight 4.
OriginValues invariants_at_origin(const Series& K);

// i! j! k! times the coefficient of x^i y^j p^k.
Rational taylor_coefficient(const Series& K, const Exponent& e);
// (K_{0,0,3}, K_{1,0,2}, K_{1,1,1}) in factorial normalization.
OriginValues origin_taylor_coefficients(const Series& K);

struct FlatnessReport {
  bool is_flat = false;
  bool invariants_vanish = false;
  bool K_vanishes = false;
  // K = M p^2 + N p; empty when K has terms of p-degree >= 3.
  bool quadratic = false;
  Series M;
  Series N;
  Series relation1_residual;  // 2 M_x - N_y
  Series relation2_residual;  // N_xy - N_y N
  InvariantTriple invariants;
  std::vector<std::string> nonvanishing;  // names among I1, I2, I3
  int order_checked = 0;
};

// Throws NotNormal unless K passes check_normal. The invariant route and
// the K = 0 route are both evaluated; disagreement throws MethodMismatch.
FlatnessReport check_flat(const Series& K);

// Solution of 2 M_x = N_y and N_xy = N_y N, truncated at `order` (the valid
// order of K = M p^2 + N p), from N(0,y) = N0(y), the constants
// c[k-1] = N_k(0) of N = sum N_k(y) x^k, and M(0,y) = M0(y). Built by the
// x-power recursion (k+1) N'_(k+1) = sum_(a+b=k) N'_a N_b.
struct FlatRelationSolution {
  Series M;
  Series N;
};

FlatRelationSolution solve_flat_relations(const Series& N0, const std::vector<Rational>& c, const Series& M0,
                                          int order);

}  // namespace fpnf
