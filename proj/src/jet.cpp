#include "fpnf/jet.hpp"

#include <algorithm>
#include <string>

#include "fpnf/error.hpp"

namespace fpnf {

namespace {

const Series kXs = Series::variable(Var::x);
const Series kYs = Series::variable(Var::y);
const Series kPs = Series::variable(Var::p);

int shifted(int order, int by) { return order >= kExactOrder ? kExactOrder : order + by; }

// 1/s truncated at `order`.
Series inverse(const Series& s, int order) {
  const bool constant = s.vanishes() || s.terms().back().e.weight() == 0;
  if (s.is_exact() && !constant) {
    if (order >= kExactOrder) {
      throw Error(ErrorCode::OrderExceeded, "an explicit truncation order is needed to invert " + s.to_string());
    }
    return reciprocal(s, order);
  }
  return reciprocal(s.truncated(order));
}

}  // namespace

FibreMap FibreMap::identity() { return {kXs, kYs}; }

int FibreMap::order() const { return std::min(phi.valid_order(), psi.valid_order()); }

void FibreMap::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidMap, why); };
  if ((phi.vars() & ~kX) != 0) fail("phi may depend on x only");
  if ((psi.vars() & ~kXY) != 0) fail("psi may depend on x and y only");
  if (phi.valid_order() < 1 || psi.valid_order() < 2) fail("map truncated below its linear part");
  if (sgn(phi.constant_term()) != 0 || sgn(psi.constant_term()) != 0) fail("map must fix the origin");
  if (sgn(phi.coeff({1, 0, 0})) == 0) fail("phi'(0) = 0");
  if (sgn(psi.coeff({0, 1, 0})) == 0) fail("psi_y(0,0) = 0");
  if (sgn(psi.coeff({1, 0, 0})) != 0) fail("psi_x(0,0) != 0 is not supported");
}

Prolongation2 prolong_map(const FibreMap& m, int order) {
  m.validate();
  const int T = order >= 0 ? order : shifted(m.order(), -1);
  const Series phx = diff(m.phi, Var::x);
  const Series phxx = diff(phx, Var::x);
  const Series psx = diff(m.psi, Var::x), psy = diff(m.psi, Var::y);
  const Series r = inverse(phx, T);
  const Series r2 = mul(r, r, T);
  const Series slope = psx + mul(psy, kPs, T);

  Prolongation2 out;
  out.P = mul(slope, r, T);
  const Series second = mul(diff(psy, Var::y), kPs * kPs, T) + Rational(2) * mul(diff(psx, Var::y), kPs, T) +
                        diff(psx, Var::x);
  out.A0 = mul(second, r2, T) - mul(mul(slope, phxx, T), mul(r2, r, T), T);
  out.A1 = mul(psy, r2, T);
  return out;
}

Series apply_map(const Series& J, const FibreMap& m, int order) {
  m.validate();
  // Without an explicit order the result keeps whatever the bookkeeping proves.
  const int T = order >= 0 ? order : J.valid_order();
  const Series phx = diff(m.phi, Var::x);
  const Series phxx = diff(phx, Var::x);
  const Series psx = diff(m.psi, Var::x), psy = diff(m.psi, Var::y);
  const Series r = inverse(phx, T);
  const Series rpsy = inverse(psy, T);
  const Series slope = psx + mul(psy, kPs, T);
  const Series P = mul(slope, r, T);

  const Series Jc = compose(J, m.phi.truncated(T), m.psi.truncated(T), P);
  // K = (J(phi, psi, P) - A0) / A1 with A1 = psi_y / phi_x^2.
  const Series second = mul(diff(psy, Var::y), kPs * kPs, T) + Rational(2) * mul(diff(psx, Var::y), kPs, T) +
                        diff(psx, Var::x);
  Series K = mul(Jc, mul(mul(phx, phx, T), rpsy, T), T);
  K -= mul(second, rpsy, T);
  K += mul(mul(slope, phxx, T), mul(r, rpsy, T), T);
  return K.truncated(T);
}

FibreMap compose_maps(const FibreMap& m1, const FibreMap& m2) {
  m1.validate();
  m2.validate();
  FibreMap out{compose(m1.phi, m2.phi, kYs, kPs), compose(m1.psi, m2.phi, m2.psi, kPs)};
  out.phi = out.phi.with_vars(kX);
  out.psi = out.psi.with_vars(kXY);
  return out;
}

FieldProlongation prolong_field(const VectorField& v) {
  const Series fx = diff(v.f, Var::x);
  const Series gx = diff(v.g, Var::x), gy = diff(v.g, Var::y);
  FieldProlongation out;
  out.X1 = gx + (gy - fx) * kPs;
  out.B0 = diff(gx, Var::x) + (Rational(2) * diff(gx, Var::y) - diff(fx, Var::x)) * kPs +
           diff(gy, Var::y) * kPs * kPs;
  out.B1 = gy - Rational(2) * fx;
  return out;
}

Series prolong_field_on(const VectorField& v, const Series& K) {
  const FieldProlongation pr = prolong_field(v);
  return pr.B0 + pr.B1 * K;
}

Series tangency(const VectorField& v, const Series& K) {
  const FieldProlongation pr = prolong_field(v);
  const Series lie = v.f * diff(K, Var::x) + v.g * diff(K, Var::y) + pr.X1 * diff(K, Var::p);
  return pr.B0 + pr.B1 * K - lie;
}

bool is_symmetry(const VectorField& v, const Series& K) { return tangency(v, K).vanishes(); }

Series total_derivative(const Series& K, const Series& h) {
  return diff(h, Var::x) + kPs * diff(h, Var::y) + K * diff(h, Var::p);
}

FlowSeries flow_series(const VectorField& v, int t_order) {
  auto apply_v = [&](const Series& h) { return v.f * diff(h, Var::x) + v.g * diff(h, Var::y); };
  FlowSeries out;
  out.x.push_back(kXs);
  out.y.push_back(kYs);
  for (int n = 1; n <= t_order; ++n) {
    const Rational inv_n(1, n);
    out.x.push_back(inv_n * apply_v(out.x.back()));
    out.y.push_back(inv_n * apply_v(out.y.back()));
  }
  return out;
}

FibreMap flow_at_t1(const VectorField& v, int order) {
  if (v.f.min_weight() < 2 || v.g.min_weight() < 3) {
    throw Error(ErrorCode::FlowNotWeightRaising, "flow at t = 1 needs f = O(x^2) and g of weight >= 3");
  }
  // V^n raises weight by at least n, so t^n with n > order is invisible.
  const FlowSeries flow = flow_series(VectorField{v.f.truncated(order + 1), v.g.truncated(order + 1)}, order);
  Series phi(kX, order), psi(kXY, order);
  for (int n = 0; n <= order; ++n) {
    phi += flow.x[static_cast<std::size_t>(n)].truncated(order);
    psi += flow.y[static_cast<std::size_t>(n)].truncated(order);
  }
  return {phi.with_vars(kX), psi.with_vars(kXY)};
}

namespace {

// Polynomials in t with Series coefficients, truncated at degree n.
using TSeries = std::vector<Series>;

TSeries tmul(const TSeries& a, const TSeries& b) {
  TSeries out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

TSeries tadd(const TSeries& a, const TSeries& b) {
  TSeries out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

TSeries tdiff(const TSeries& a, Var v) {
  TSeries out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = diff(a[i], v);
  return out;
}

TSeries tscale(const Series& s, const TSeries& a) {
  TSeries out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

// Inverse of a t-series whose t^0 coefficient is 1.
TSeries tinverse_unit(const TSeries& a) {
  TSeries out(a.size());
  out[0] = Series::constant(Rational(1));
  for (std::size_t n = 1; n < a.size(); ++n) {
    Series acc;
    for (std::size_t i = 1; i <= n; ++i) acc += a[i] * out[n - i];
    out[n] = -acc;
  }
  return out;
}

}  // namespace

std::vector<Prolongation2> prolong_flow(const FlowSeries& flow, int t_order) {
  const std::size_t n = static_cast<std::size_t>(t_order) + 1;
  if (flow.x.size() < n || flow.y.size() < n || !(flow.x[0] == kXs) || !(flow.y[0] == kYs)) {
    throw Error(ErrorCode::Internal, "flow series does not start at the identity");
  }
  const TSeries phi(flow.x.begin(), flow.x.begin() + static_cast<long>(n));
  const TSeries psi(flow.y.begin(), flow.y.begin() + static_cast<long>(n));
  const TSeries phx = tdiff(phi, Var::x);
  const TSeries phxx = tdiff(phx, Var::x);
  const TSeries psx = tdiff(psi, Var::x), psy = tdiff(psi, Var::y);
  const TSeries r = tinverse_unit(phx);
  const TSeries r2 = tmul(r, r);
  const TSeries slope = tadd(psx, tscale(kPs, psy));
  const TSeries second =
      tadd(tadd(tscale(kPs * kPs, tdiff(psy, Var::y)), tscale(Series::constant(Rational(2)) * kPs, tdiff(psx, Var::y))),
           tdiff(psx, Var::x));
  const TSeries P = tmul(slope, r);
  const TSeries A0 = tadd(tmul(second, r2), tscale(Series::constant(Rational(-1)), tmul(tmul(slope, phxx), tmul(r2, r))));
  const TSeries A1 = tmul(psy, r2);
  std::vector<Prolongation2> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {P[i], A0[i], A1[i]};
  return out;
}

VectorField pullback_field(const VectorField& v, const FibreMap& m, int order) {
  m.validate();
  const Series phx = diff(m.phi, Var::x);
  const Series f = mul(compose(v.f, m.phi.truncated(order + 1), kYs, kPs), inverse(phx, order + 1), order + 1);
  const Series G = compose(v.g, m.phi.truncated(order + 2), m.psi.truncated(order + 2), kPs);
  const Series g = mul(G - mul(diff(m.psi, Var::x), f, order + 2), inverse(diff(m.psi, Var::y), order + 2), order + 2);
  return {f.truncated(order + 1).with_vars(kX), g.truncated(order + 2).with_vars(kXY)};
}

}  // namespace fpnf
