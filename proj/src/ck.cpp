#include "fpnf/ck.hpp"

#include <functional>
#include <string>

#include "fpnf/error.hpp"

namespace fpnf {

namespace {

const Series kXs = Series::variable(Var::x);
const Series kYs = Series::variable(Var::y);
const Series kPs = Series::variable(Var::p);
const Series kOne = Series::constant(Rational(1));

int lowest_degree(const Series& s, Var v) {
  int d = -1;
  for (const Term& t : s.terms()) {
    if (d < 0 || t.e.degree(v) < d) d = t.e.degree(v);
  }
  return d;
}

// Fixed point of u = step(u), starting from `start`. The recursion is
// triangular in powers of v when each pass settles at least one more
// degree; this is checked on every pass.
Series fixed_point(const std::function<Series(const Series&)>& step, Series start, Var v) {
  Series u = std::move(start);
  int settled = -1;
  for (int pass = 0;; ++pass) {
    Series next = step(u);
    if (next == u) return u;
    const int d = lowest_degree(next - u, v);
    if (d >= 0 && d <= settled) {
      throw Error(ErrorCode::Internal, "coefficient recursion is not triangular");
    }
    if (pass > 4096) throw Error(ErrorCode::Internal, "coefficient recursion does not settle");
    settled = d >= 0 ? d : settled + 1;
    u = std::move(next);
  }
}

Series integrate2(const Series& s, Var v) { return integrate(integrate(s, v), v); }

void require_finite(const Series& J) {
  if (J.is_exact()) throw Error(ErrorCode::OrderExceeded, "the equation needs a finite truncation order");
}

void require(const Series& J, std::initializer_list<Condition> conds, ErrorCode code) {
  for (Condition c : conds) {
    if (!holds(J, c)) throw Error(code, std::string("precondition ") + to_string(c) + " fails");
  }
}

CkStepResult finish(CkStep step, const Series& J, FibreMap map, std::vector<NamedSeries> unknowns,
                    std::vector<NamedSeries> residuals) {
  CkStepResult out;
  out.K = apply_map(J, map);
  out.report.step = step;
  out.report.map = std::move(map);
  out.report.unknowns = std::move(unknowns);
  out.report.residuals = std::move(residuals);
  for (Condition c : {Condition::D1, Condition::D2, Condition::D3, Condition::D4}) {
    if (holds(out.K, c)) out.report.conditions_after.push_back(c);
  }
  out.report.order = out.K.valid_order();
  return out;
}

// Solves u_xx = rhs(u) with u = O(x^2), u valid to `order`.
Series solve_x2(const std::function<Series(const Series&)>& rhs, VarMask vars, int order) {
  return fixed_point([&](const Series& u) { return integrate2(rhs(u), Var::x).truncated(order).with_vars(vars); },
                     Series(vars, order), Var::x);
}

}  // namespace

const char* to_string(CkStep s) {
  switch (s) {
    case CkStep::Step1: return "1";
    case CkStep::Step2a: return "2a";
    case CkStep::Step2b: return "2b";
    case CkStep::Step3: return "3";
    case CkStep::Step4: return "4";
  }
  return "?";
}

bool CkStepReport::residuals_vanish() const {
  for (const NamedSeries& r : residuals) {
    if (!r.value.vanishes()) return false;
  }
  return true;
}

CkStepResult step1_D1(const Series& J) {
  require_finite(J);
  const int N = J.valid_order();
  auto rhs = [&](const Series& G) { return compose(J, kXs, kYs + G, diff(G, Var::x)); };
  const Series G = solve_x2(rhs, kXY, N + 2);
  const Series residual = diff(G, Var::x, 2) - rhs(G);
  return finish(CkStep::Step1, J, {kXs, (kYs + G).with_vars(kXY)}, {{"G", G}}, {{"G_xx - J(x, y + G, G_x)", residual}});
}

CkStepResult step2_moebius(const Series& J) {
  require_finite(J);
  require(J, {Condition::D1}, ErrorCode::PreconditionD1);
  const int N = J.valid_order();
  const Rational Jp0 = J.coeff({0, 0, 1});
  const Rational f2 = -Jp0 / 2;
  FibreMap map = FibreMap::identity();
  if (sgn(f2) != 0) map.phi = mul(kXs, reciprocal(kOne - f2 * kXs, N + 1)).with_vars(kX);
  CkStepResult out = finish(CkStep::Step2a, J, std::move(map), {{"f2", Series::constant(f2)}},
                            {{"2 f2 + J_p(0,0,0)", Series::constant(2 * f2 + Jp0)}});
  out.report.residuals.push_back({"K_p(0,0,0)", Series::constant(out.K.coeff({0, 0, 1}))});
  return out;
}

CkStepResult step2_D2(const Series& J) {
  require_finite(J);
  require(J, {Condition::D1}, ErrorCode::PreconditionD1);
  if (sgn(J.coeff({0, 0, 1})) != 0) throw Error(ErrorCode::PreconditionOriginSlope, "J_p(0,0,0) != 0");
  const int N = J.valid_order();

  // s(y), valid to N + 1 so that s x is valid to N + 2.
  const Series Jp0 = restrict_zero(diff(J, Var::p), Var::x);
  auto s_rhs = [&](const Series& s) { return Rational(1, 2) * compose(Jp0, kXs, kYs, s); };
  const Series s = fixed_point(
      [&](const Series& u) { return integrate(s_rhs(u), Var::y).truncated(N + 1).with_vars(kY); }, Series(kY, N + 1),
      Var::y);

  const Series sx = s * kXs;
  auto h_rhs = [&](const Series& h) { return compose(J, kXs, kYs + sx + h, s + diff(h, Var::x)); };
  const Series h = solve_x2(h_rhs, kXY, N + 2);

  std::vector<NamedSeries> residuals{{"s_y - J_p(0, y, s)/2", diff(s, Var::y) - s_rhs(s)},
                                     {"h_xx - J(x, y + s x + h, s + h_x)", diff(h, Var::x, 2) - h_rhs(h)}};
  return finish(CkStep::Step2b, J, {kXs, (kYs + sx + h).truncated(N + 2).with_vars(kXY)}, {{"s", s}, {"h", h}},
                std::move(residuals));
}

CkStepResult step3_D3(const Series& J) {
  require_finite(J);
  require(J, {Condition::D1, Condition::D2}, ErrorCode::PreconditionD1D2);
  const int N = J.valid_order();
  const Series A = restrict_zero(restrict_zero(diff(J, Var::p), Var::p), Var::y);  // J_p(x,0,0)
  auto at = [](const Series& a, const Series& f) { return compose(a, kXs + f, kYs, kPs); };
  auto rhs = [&](const Series& f) {
    const Series w = kOne + diff(f, Var::x);
    return -(w * w * at(A, f));
  };
  const Series f = solve_x2(rhs, kX, N + 2);

  // Third-order form: f_xxx = f_xx^2/(1+f_x) - (1+f_x)^3 J_xp(x+f,0,0) - f_xx (1+f_x) J_p(x+f,0,0).
  const Series fx = diff(f, Var::x), fxx = diff(fx, Var::x);
  const Series w = kOne + fx;
  const Series third = fxx * fxx * reciprocal(w) - w * w * w * at(diff(A, Var::x), f) - fxx * w * at(A, f);
  std::vector<NamedSeries> residuals{{"f_xx + (1 + f_x)^2 J_p(x + f, 0, 0)", fxx - rhs(f)},
                                     {"f_xxx - third-order right side", diff(fxx, Var::x) - third}};
  return finish(CkStep::Step3, J, {(kXs + f).with_vars(kX), kYs}, {{"f", f}}, std::move(residuals));
}

CkStepResult step4_D4(const Series& J) {
  require_finite(J);
  require(J, {Condition::D1, Condition::D2, Condition::D3}, ErrorCode::PreconditionD1D2D3);
  const int N = J.valid_order();
  const Series B = Rational(1, 2) * restrict_zero(restrict_zero(diff(J, Var::p, 2), Var::p), Var::x);
  auto rhs = [&](const Series& g) {
    const Series w = kOne + diff(g, Var::y);
    return compose(B, kXs, kYs + g, kPs) * w * w;
  };
  const Series g = fixed_point(
      [&](const Series& u) { return integrate2(rhs(u), Var::y).truncated(N + 2).with_vars(kY); }, Series(kY, N + 2),
      Var::y);
  return finish(CkStep::Step4, J, {kXs, (kYs + g).with_vars(kXY)}, {{"g", g}},
                {{"g_yy - J_pp(0, y + g, 0)(1 + g_y)^2/2", diff(g, Var::y, 2) - rhs(g)}});
}

CkResult normalize_ck(const Series& J, int order) {
  CkResult out{J.truncated(order), FibreMap::identity(), {}, 0};
  using StepFn = CkStepResult (*)(const Series&);
  const std::pair<StepFn, std::vector<Condition>> steps[] = {
      {step1_D1, {Condition::D1}},
      {step2_moebius, {Condition::D1}},
      {step2_D2, {Condition::D1, Condition::D2}},
      {step3_D3, {Condition::D1, Condition::D2, Condition::D3}},
      {step4_D4, {Condition::D1, Condition::D2, Condition::D3, Condition::D4}},
  };
  for (const auto& [fn, claimed] : steps) {
    CkStepResult r = fn(out.K);
    if (!r.report.residuals_vanish()) {
      throw Error(ErrorCode::ResidualNonzero, std::string("step ") + to_string(r.report.step) + " residual");
    }
    for (Condition c : claimed) {
      if (!holds(r.K, c)) {
        throw Error(ErrorCode::ResidualNonzero,
                    std::string("step ") + to_string(r.report.step) + " does not achieve " + to_string(c));
      }
    }
    out.composite = compose_maps(out.composite, r.report.map);
    out.K = std::move(r.K);
    out.reports.push_back(std::move(r.report));
  }
  out.order = out.K.valid_order();
  return out;
}

}  // namespace fpnf
