#pragma once

#include <vector>

#include "fpnf/series.hpp"

namespace fpnf {

// Fibre-preserving map X = phi(x), Y = psi(x, y).
struct FibreMap {
  Series phi;
  Series psi;

  static FibreMap identity();
  // min of the component valid orders.
  int order() const;
  // Throws InvalidMap unless phi(0) = 0, phi'(0) != 0, psi(0,0) = 0,
  // psi_y(0,0) != 0 and psi_x(0,0) = 0. The last condition keeps P free of
  // a constant term, which truncated composition needs.
  void validate() const;
};

// f(x) d/dx + g(x, y) d/dy.
struct VectorField {
  Series f;
  Series g;
};

// P = D_x Y / D_x X and Y_XX = A0 + A1 y_xx.
struct Prolongation2 {
  Series P;
  Series A0;
  Series A1;
};

// Truncated at `order`, which defaults to the map order minus one.
Prolongation2 prolong_map(const FibreMap& m, int order = -1);

// The K with y_xx = K(x, y, p) equivalent to Y_XX = J(X, Y, P) under m.
// Truncated at `order`; by default at the order the truncations of J and m
// guarantee (at most J's). An exact J under an exact map with non-constant
// Jacobian needs `order`.
Series apply_map(const Series& J, const FibreMap& m, int order = -1);

// m1 after m2: phi = phi1(phi2), psi = psi1(phi2, psi2). With this order
// apply_map(J, compose_maps(m1, m2)) = apply_map(apply_map(J, m1), m2).
FibreMap compose_maps(const FibreMap& m1, const FibreMap& m2);

// Second prolongation: X1 is the d/dp coefficient, the d/dy_xx coefficient
// is X2 = B0 + B1 y_xx.
struct FieldProlongation {
  Series X1;
  Series B0;
  Series B1;
};

FieldProlongation prolong_field(const VectorField& v);
// X2 on the surface y_xx = K.
Series prolong_field_on(const VectorField& v, const Series& K);
// X^(2)(y_xx - K) restricted to y_xx = K.
Series tangency(const VectorField& v, const Series& K);
bool is_symmetry(const VectorField& v, const Series& K);

// D_x restricted to y_xx = K: h_x + p h_y + K h_p.
Series total_derivative(const Series& K, const Series& h);

// Coefficients of t^n, n = 0..t_order, of the flow (gamma1, gamma2) of v
// started at (x, y). Computed as the Lie series V^n(x)/n!, V^n(y)/n!.
struct FlowSeries {
  std::vector<Series> x;
  std::vector<Series> y;
};

FlowSeries flow_series(const VectorField& v, int t_order);

// The time-one map truncated at `order`. Requires every application of v to
// raise weight: f = O(weight 2) and g = O(weight 3). Throws
// FlowNotWeightRaising otherwise.
FibreMap flow_at_t1(const VectorField& v, int order);

// Prolongation of a map depending on t, coefficientwise in t. Entry n holds
// the t^n coefficients of P, A0 and A1. Requires x[0] = x and y[0] = y.
std::vector<Prolongation2> prolong_flow(const FlowSeries& flow, int t_order);

// The field w with m_* w = v, so that v is a symmetry of J exactly when w is
// a symmetry of apply_map(J, m). Truncated at `order`.
VectorField pullback_field(const VectorField& v, const FibreMap& m, int order);

}  // namespace fpnf
