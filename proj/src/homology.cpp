#include "fpnf/homology.hpp"

#include <map>
#include <string>
#include <tuple>

#include "fpnf/error.hpp"
#include "fpnf/linalg.hpp"

namespace fpnf {

namespace {

const Series kPs = Series::variable(Var::p);

Series monomial_x(int i, const Rational& c) { return Series::monomial({i, 0, 0}, c).with_vars(kX); }
Series monomial_xy(int i, int j, const Rational& c) { return Series::monomial({i, j, 0}, c).with_vars(kXY); }

using Key = std::tuple<int, int, int>;
Key key_of(const Exponent& e) { return {e.i, e.j, e.k}; }

// Coordinates of pairs in a shared basis: f monomials tagged 0, g tagged 1.
std::vector<std::map<Key, Rational>> coordinates(const std::vector<CorrectionPair>& pairs) {
  std::vector<std::map<Key, Rational>> out;
  for (const CorrectionPair& c : pairs) {
    std::map<Key, Rational> v;
    for (const Term& t : c.f.terms()) v[{0, t.e.i, 0}] = t.c;
    for (const Term& t : c.g.terms()) v[{1, t.e.i, t.e.j}] = t.c;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Series L(const CorrectionPair& c) {
  const Series gx = diff(c.g, Var::x);
  return diff(gx, Var::x) + (Rational(2) * diff(gx, Var::y) - diff(c.f, Var::x, 2)) * kPs +
         diff(c.g, Var::y, 2) * kPs * kPs;
}

bool in_Fprime(const CorrectionPair& c) {
  if (sgn(c.f.coeff({0, 0, 0})) != 0 || sgn(c.f.coeff({1, 0, 0})) != 0) return false;
  for (const Exponent e : {Exponent{0, 0, 0}, Exponent{1, 0, 0}, Exponent{0, 1, 0}, Exponent{1, 1, 0}}) {
    if (sgn(c.g.coeff(e)) != 0) return false;
  }
  return true;
}

std::vector<CorrectionPair> model_symmetries() {
  const Series zx = Series().with_vars(kX), zxy = Series().with_vars(kXY);
  return {
      {monomial_x(0, 1), zxy},
      {zx, monomial_xy(0, 0, 1)},
      {zx, monomial_xy(1, 0, 1)},
      {zx, monomial_xy(0, 1, 1)},
      {monomial_x(1, 1), zxy},
      {monomial_x(2, 1), monomial_xy(1, 1, 1)},
  };
}

std::vector<CorrectionPair> kernel_basis(int order) {
  std::vector<CorrectionPair> unknowns;
  for (int a = 0; a <= order; ++a) unknowns.push_back({monomial_x(a, 1), Series()});
  for (int w = 0; w <= order; ++w) {
    for (int j = 0; 2 * j <= w; ++j) unknowns.push_back({Series(), monomial_xy(w - 2 * j, j, 1)});
  }
  std::map<Key, std::size_t> rows;
  std::vector<Series> images;
  for (const CorrectionPair& u : unknowns) {
    images.push_back(L(u));
    for (const Term& t : images.back().terms()) rows.emplace(key_of(t.e), rows.size());
  }
  Matrix m(rows.size(), unknowns.size());
  for (std::size_t c = 0; c < unknowns.size(); ++c) {
    for (const Term& t : images[c].terms()) m(rows.at(key_of(t.e)), c) = t.c;
  }
  std::vector<CorrectionPair> basis;
  for (const Vector& v : nullspace(m)) {
    CorrectionPair pair{Series().with_vars(kX), Series().with_vars(kXY)};
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (sgn(v[c]) == 0) continue;
      pair.f += v[c] * unknowns[c].f;
      pair.g += v[c] * unknowns[c].g;
    }
    basis.push_back(std::move(pair));
  }
  return basis;
}

std::size_t joint_rank(const std::vector<CorrectionPair>& a, const std::vector<CorrectionPair>& b) {
  std::vector<CorrectionPair> all = a;
  all.insert(all.end(), b.begin(), b.end());
  const auto coords = coordinates(all);
  std::map<Key, std::size_t> cols;
  for (const auto& v : coords) {
    for (const auto& [k, c] : v) cols.emplace(k, cols.size());
  }
  Matrix m(coords.size(), cols.size());
  for (std::size_t r = 0; r < coords.size(); ++r) {
    for (const auto& [k, c] : coords[r]) m(r, cols.at(k)) = c;
  }
  return rank(m);
}

Series determining_equation(const VectorField& v) { return L({v.f, v.g}); }

bool is_normal_monomial(const Exponent& e) {
  if (e.k >= 3) return true;
  if (e.k == 2) return e.i >= 1;
  if (e.k == 1) return e.i >= 1 && e.j >= 1;
  return false;
}

Series non_normal_part(const Series& J) {
  std::vector<Term> out;
  for (const Term& t : J.terms()) {
    if (!is_normal_monomial(t.e)) out.push_back(t);
  }
  return Series::from_canonical_terms(J.vars(), J.valid_order(), std::move(out));
}

Series normal_defect(const Series& J, int alpha) {
  if (alpha > J.valid_order()) {
    throw Error(ErrorCode::OrderExceeded,
                "weight " + std::to_string(alpha) + " exceeds valid order " + std::to_string(J.valid_order()));
  }
  std::vector<Term> out;
  for (const Term& t : J.terms()) {
    if (t.e.weight() > alpha) break;
    if (is_normal_monomial(t.e)) continue;
    if (t.e.weight() < alpha) {
      throw Error(ErrorCode::NotNormalBelow, "non-normal term of weight " + std::to_string(t.e.weight()) +
                                                 " below stage " + std::to_string(alpha));
    }
    out.push_back(t);
  }
  return Series::from_canonical_terms(J.vars(), kExactOrder, std::move(out));
}

namespace {

void require_stage_shape(const Series& defect, int alpha) {
  if (alpha < 0) throw Error(ErrorCode::NotSemiHomogeneous, "negative stage weight");
  for (const Term& t : defect.terms()) {
    if (t.e.weight() != alpha || t.e.k > 2) {
      throw Error(ErrorCode::NotSemiHomogeneous, "defect term " + Series::monomial(t.e, t.c).to_string() +
                                                     " does not belong to stage " + std::to_string(alpha));
    }
  }
}

void require_solved(const Series& defect, const CorrectionPair& c) {
  if (!non_normal_part(defect - L(c)).vanishes()) {
    throw Error(ErrorCode::UnsolvableDefect, "stage correction leaves a non-normal remainder");
  }
}

}  // namespace

CorrectionPair solve_stage(const Series& defect, int alpha) {
  require_stage_shape(defect, alpha);
  CorrectionPair c{Series().with_vars(kX), Series().with_vars(kXY)};
  for (const Term& t : defect.terms()) {
    const auto [i, j, k] = t.e;
    if (k == 0) {
      // g_xx absorbs the p^0 terms.
      c.g += monomial_xy(i + 2, j, t.c / ((i + 1) * (i + 2)));
    } else if (k == 2 && i == 0) {
      // g_yy(0, y) absorbs the p^2 terms at x = 0; g(0,0) = g_y(0,0) = 0.
      c.g += monomial_xy(0, j + 2, t.c / ((j + 1) * (j + 2)));
    } else if (k == 1 && i == 0 && j >= 1) {
      // 2 g_xy(0, y) absorbs the y-dependent p terms; g_xy(0,0) = 0.
      c.g += monomial_xy(1, j + 1, t.c / (2 * (j + 1)));
    }
  }
  // -f_xx + 2 g_xy along y = 0 absorbs x^i p; x^(alpha+1) is the only f term.
  if (alpha >= 1) {
    const Rational d = defect.coeff({alpha - 1, 0, 1});
    Rational slope;  // g'_alpha(0), already fixed by the p^0 terms
    if (alpha >= 2) slope = defect.coeff({alpha - 2, 1, 0}) / ((alpha - 1) * alpha);
    const Rational fa = (2 * alpha * slope - d) / (alpha * (alpha + 1));
    if (sgn(fa) != 0) c.f += monomial_x(alpha + 1, fa);
  }
  require_solved(defect, c);
  return c;
}

CorrectionPair solve_stage_linear(const Series& defect, int alpha) {
  require_stage_shape(defect, alpha);
  std::vector<CorrectionPair> unknowns;
  if (alpha + 1 >= 2) unknowns.push_back({monomial_x(alpha + 1, 1), Series()});
  for (int j = 0; 2 * j <= alpha + 2; ++j) {
    const int i = alpha + 2 - 2 * j;
    const CorrectionPair u{Series(), monomial_xy(i, j, 1)};
    if (in_Fprime(u)) unknowns.push_back(u);
  }
  std::map<Key, std::size_t> rows;
  for (int j = 0; 2 * j <= alpha; ++j) {
    for (int i = 0; i + 2 * j <= alpha; ++i) {
      const int k = alpha - i - 2 * j;
      if (k <= 2 && !is_normal_monomial({i, j, k})) rows.emplace(Key{i, j, k}, rows.size());
    }
  }
  Matrix m(rows.size(), unknowns.size());
  for (std::size_t c = 0; c < unknowns.size(); ++c) {
    const Series image = L(unknowns[c]);
    for (const Term& t : image.terms()) {
      auto it = rows.find(key_of(t.e));
      if (it != rows.end()) m(it->second, c) = t.c;
    }
  }
  Vector rhs(rows.size());
  for (const auto& [key, r] : rows) rhs[r] = defect.coeff({std::get<0>(key), std::get<1>(key), std::get<2>(key)});
  const auto sol = solve(m, rhs);
  if (!sol || !nullspace(m).empty()) throw Error(ErrorCode::UnsolvableDefect, "stage system is not uniquely solvable");
  CorrectionPair c{Series().with_vars(kX), Series().with_vars(kXY)};
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    c.f += (*sol)[u] * unknowns[u].f;
    c.g += (*sol)[u] * unknowns[u].g;
  }
  require_solved(defect, c);
  return c;
}

FormalResult formal_normalize(const Series& J, int order) {
  const int N = std::min(order, J.valid_order());
  FormalResult out{J.truncated(N), FibreMap::identity(), {}, N};
  const Series x = Series::variable(Var::x), y = Series::variable(Var::y);
  for (int alpha = 0; alpha <= N; ++alpha) {
    StageRecord rec{alpha, normal_defect(out.K, alpha), {}, FibreMap::identity()};
    rec.correction = solve_stage(rec.defect, alpha);
    if (!rec.correction.is_zero()) {
      rec.map_applied = {(x + rec.correction.f).truncated(N + 2), (y + rec.correction.g).truncated(N + 2)};
      out.K = apply_map(out.K, rec.map_applied);
      out.composite = compose_maps(out.composite, rec.map_applied);
      if (!normal_defect(out.K, alpha).vanishes()) {
        throw Error(ErrorCode::ResidualNonzero, "stage " + std::to_string(alpha) + " left a defect");
      }
    }
    out.stages.push_back(std::move(rec));
  }
  out.order = out.K.valid_order();
  return out;
}

}  // namespace fpnf
