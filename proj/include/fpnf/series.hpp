#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fpnf/rational.hpp"

namespace fpnf {

enum class Var : std::uint8_t { x = 0, y = 1, p = 2 };

// Weighted grading [x] = 1, [y] = 2, [p] = 1.
constexpr int weight_of(Var v) { return v == Var::y ? 2 : 1; }

using VarMask = std::uint8_t;
inline constexpr VarMask kNoVars = 0;
inline constexpr VarMask kX = 1;
inline constexpr VarMask kY = 2;
inline constexpr VarMask kP = 4;
inline constexpr VarMask kXY = kX | kY;
inline constexpr VarMask kXYP = kX | kY | kP;

constexpr VarMask mask_of(Var v) { return static_cast<VarMask>(1u << static_cast<unsigned>(v)); }

// Valid order carried by polynomials that are known exactly. Every
// operation saturates at this value, so exactness survives arithmetic.
inline constexpr int kExactOrder = 1 << 20;

struct Exponent {
  int i = 0;  // x
  int j = 0;  // y
  int k = 0;  // p

  constexpr int weight() const { return i + 2 * j + k; }
  constexpr int degree(Var v) const { return v == Var::x ? i : v == Var::y ? j : k; }
  constexpr VarMask support() const {
    return static_cast<VarMask>((i ? kX : 0) | (j ? kY : 0) | (k ? kP : 0));
  }
  constexpr Exponent operator+(const Exponent& o) const { return {i + o.i, j + o.j, k + o.k}; }
  friend constexpr bool operator==(const Exponent&, const Exponent&) = default;
};

// Canonical term order: ascending (weight, i, j, k).
constexpr bool canonical_less(const Exponent& a, const Exponent& b) {
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  if (a.i != b.i) return a.i < b.i;
  if (a.j != b.j) return a.j < b.j;
  return a.k < b.k;
}

struct Term {
  Exponent e;
  Rational c;

  friend bool operator==(const Term&, const Term&) = default;
};

// Truncated formal power series in (x, y, p) with exact rational
// coefficients. All coefficients of weight <= valid_order() are exact; no
// term above that weight is stored. Values are immutable.
class Series {
 public:
  // The zero series, known exactly.
  Series() = default;
  Series(VarMask vars, int valid_order);

  static Series constant(const Rational& c, int order = kExactOrder);
  static Series variable(Var v, int order = kExactOrder);
  static Series monomial(Exponent e, const Rational& c, int order = kExactOrder);
  // Merges duplicate exponents, drops zeros and terms above `order`.
  // Throws Error(MalformedDocument) if a term uses a variable outside `vars`.
  static Series from_terms(VarMask vars, int order, std::vector<Term> terms);
  // Terms must already be canonical: sorted, unique, nonzero, within order.
  static Series from_canonical_terms(VarMask vars, int order, std::vector<Term> terms);

  std::span<const Term> terms() const& { return terms_; }
  std::span<const Term> terms() const&& = delete;
  int valid_order() const { return valid_order_; }
  bool is_exact() const { return valid_order_ >= kExactOrder; }
  VarMask vars() const { return vars_; }
  // True when no term survives up to valid_order().
  bool vanishes() const { return terms_.empty(); }

  Rational coeff(const Exponent& e) const;
  Rational constant_term() const { return coeff({0, 0, 0}); }
  // Lowest weight of a stored term; valid_order() + 1 for a vanishing series.
  int min_weight() const;
  int max_degree(Var v) const;

  Series truncated(int order) const;
  Series with_vars(VarMask extra) const;

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const Rational& s, const Series& a);
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  // Compares terms and valid order; the variable mask is metadata.
  friend bool operator==(const Series& a, const Series& b) {
    return a.valid_order_ == b.valid_order_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
  VarMask vars_ = kNoVars;
  int valid_order_ = kExactOrder;
};

// Product truncated at min(cap, natural valid order). The natural order is
// min(Va + wmin(b), Vb + wmin(a)), which is exact for truncated factors.
Series mul(const Series& a, const Series& b, int cap = kExactOrder);
Series pow(const Series& a, int n, int cap = kExactOrder);

// 1/a. Throws ZeroConstantTerm when a(0) = 0. An exact non-constant input
// needs an explicit truncation order.
Series reciprocal(const Series& a);
Series reciprocal(const Series& a, int order);

// Partial derivative; the valid order drops by weight_of(v) per derivative.
Series diff(const Series& a, Var v, int times = 1);
// Antiderivative vanishing at v = 0; the valid order rises by weight_of(v).
Series integrate(const Series& a, Var v);

// a(sub_x, sub_y, sub_p). Substituents for variables that occur in `a` must
// have zero constant term.
Series compose(const Series& a, const Series& sub_x, const Series& sub_y, const Series& sub_p);

// Sum of the terms of weight exactly alpha, known exactly. Throws OrderExceeded if
// alpha > a.valid_order().
Series project_weight(const Series& a, int alpha);

// a restricted to v = 0.
Series restrict_zero(const Series& a, Var v);
// Coefficient of v^power, as a series in the remaining variables.
Series coefficient_of(const Series& a, Var v, int power);

// a and b coincide up to min(a.valid_order(), b.valid_order()).
bool agree(const Series& a, const Series& b);

}  // namespace fpnf
