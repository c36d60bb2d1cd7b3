#pragma once

#include <vector>

#include "fpnf/jet.hpp"
#include "fpnf/series.hpp"

namespace fpnf {

// (f(x), g(x, y)), the components of a field f d/dx + g d/dy used as an
// infinitesimal correction.
struct CorrectionPair {
  Series f;
  Series g;

  bool is_zero() const { return f.vanishes() && g.vanishes(); }
};

// Homological operator: g_xx + (2 g_xy - f_xx) p + g_yy p^2.
Series L(const CorrectionPair& c);

// f = O(x^2); g has no constant, x, y or xy term.
bool in_Fprime(const CorrectionPair& c);

// The six fields 1, x, x^2 in d/dx and 1, x, y, xy in d/dy that span the
// symmetries of y_xx = 0: d/dx, d/dy, x d/dy, y d/dy, x d/dx,
// x^2 d/dx + xy d/dy.
std::vector<CorrectionPair> model_symmetries();

// Basis of ker L among polynomial pairs whose components have weight
// <= order, by exact elimination.
std::vector<CorrectionPair> kernel_basis(int order);

// Dimension of span(a) + span(b) as coefficient vectors.
std::size_t joint_rank(const std::vector<CorrectionPair>& a, const std::vector<CorrectionPair>& b);

Series determining_equation(const VectorField& v);

// Monomials that may survive in a normal form: p^k with k >= 3, x y p and
// its multiples by x^i y^j, x p^2 and its multiples by x^i y^j.
bool is_normal_monomial(const Exponent& e);
// The non-normal terms of J.
Series non_normal_part(const Series& J);

// Non-normal terms of weight alpha. Throws NotNormalBelow when a lower
// weight is not normal yet, OrderExceeded when alpha > J.valid_order().
Series normal_defect(const Series& J, int alpha);

// The unique c in F' with f of weight alpha + 1 and g of weight alpha + 2
// such that defect - L(c) is normal. Throws NotSemiHomogeneous for terms of
// another weight or of p-degree > 2.
CorrectionPair solve_stage(const Series& defect, int alpha);
// Same result by a generic exact linear solve over F' at that weight.
CorrectionPair solve_stage_linear(const Series& defect, int alpha);

struct StageRecord {
  int alpha = 0;
  Series defect;
  CorrectionPair correction;
  FibreMap map_applied;
};

struct FormalResult {
  Series K;
  FibreMap composite;
  std::vector<StageRecord> stages;
  int order = 0;
};

// Weight-by-weight normalization. Each stage applies the polynomial map
// (x + f, y + g), carried at order + 2, through apply_map.
FormalResult formal_normalize(const Series& J, int order);

}  // namespace fpnf
