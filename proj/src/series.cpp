#include "fpnf/series.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "fpnf/error.hpp"

namespace fpnf {

namespace {

int saturate(long long order) {
  if (order >= kExactOrder / 2) return kExactOrder;
  if (order < -kExactOrder) return -kExactOrder;
  return static_cast<int>(order);
}

bool term_less(const Term& a, const Term& b) { return canonical_less(a.e, b.e); }

// Dense accumulator over a box of exponents; used by products, where the
// number of candidate exponents is small compared to the number of pairs.
class Accumulator {
 public:
  Accumulator(int max_i, int max_j, int max_k)
      : ni_(max_i + 1), nj_(max_j + 1), nk_(max_k + 1),
        cells_(static_cast<std::size_t>(ni_) * nj_ * nk_), used_(cells_.size(), 0) {}

  void add_product(const Exponent& e, const Rational& a, const Rational& b) {
    const std::size_t idx = index(e);
    if (!used_[idx]) {
      used_[idx] = 1;
      touched_.push_back(e);
      mpq_mul(cells_[idx].get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
      return;
    }
    mpq_mul(scratch_.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    mpq_add(cells_[idx].get_mpq_t(), cells_[idx].get_mpq_t(), scratch_.get_mpq_t());
  }

  std::vector<Term> take() {
    std::vector<Term> out;
    out.reserve(touched_.size());
    for (const Exponent& e : touched_) {
      Rational& c = cells_[index(e)];
      if (sgn(c) != 0) out.push_back({e, std::move(c)});
    }
    std::sort(out.begin(), out.end(), term_less);
    return out;
  }

 private:
  std::size_t index(const Exponent& e) const {
    return (static_cast<std::size_t>(e.i) * nj_ + e.j) * nk_ + e.k;
  }

  int ni_, nj_, nk_;
  std::vector<Rational> cells_;
  std::vector<char> used_;
  std::vector<Exponent> touched_;
  Rational scratch_;
};

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::NonzeroConstantSubstituent: return "NonzeroConstantSubstituent";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::NotNormalBelow: return "NotNormalBelow";
    case ErrorCode::NotSemiHomogeneous: return "NotSemiHomogeneous";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::PreconditionD1: return "PreconditionD1";
    case ErrorCode::PreconditionOriginSlope: return "PreconditionOriginSlope";
    case ErrorCode::PreconditionD1D2: return "PreconditionD1D2";
    case ErrorCode::PreconditionD1D2D3: return "PreconditionD1D2D3";
    case ErrorCode::FlowNotWeightRaising: return "FlowNotWeightRaising";
    case ErrorCode::UnsolvableDefect: return "UnsolvableDefect";
    case ErrorCode::ResidualNonzero: return "ResidualNonzero";
    case ErrorCode::MethodMismatch: return "MethodMismatch";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Series::Series(VarMask vars, int valid_order) : vars_(vars), valid_order_(saturate(valid_order)) {}

Series Series::constant(const Rational& c, int order) {
  return monomial({0, 0, 0}, c, order);
}

Series Series::variable(Var v, int order) {
  Exponent e;
  if (v == Var::x) e.i = 1;
  if (v == Var::y) e.j = 1;
  if (v == Var::p) e.k = 1;
  return monomial(e, Rational(1), order);
}

Series Series::monomial(Exponent e, const Rational& c, int order) {
  Series s(e.support(), order);
  if (sgn(c) != 0 && e.weight() <= s.valid_order_) s.terms_.push_back({e, c});
  return s;
}

Series Series::from_terms(VarMask vars, int order, std::vector<Term> terms) {
  Series s(vars, order);
  std::sort(terms.begin(), terms.end(), term_less);
  for (Term& t : terms) {
    if (t.e.i < 0 || t.e.j < 0 || t.e.k < 0) {
      throw Error(ErrorCode::MalformedDocument, "negative exponent");
    }
    if ((t.e.support() & ~vars) != 0) {
      throw Error(ErrorCode::MalformedDocument, "term uses a variable outside the series' variables");
    }
    if (t.e.weight() > s.valid_order_) continue;
    if (!s.terms_.empty() && s.terms_.back().e == t.e) {
      s.terms_.back().c += t.c;
      if (sgn(s.terms_.back().c) == 0) s.terms_.pop_back();
      continue;
    }
    if (sgn(t.c) != 0) s.terms_.push_back(std::move(t));
  }
  return s;
}

Series Series::from_canonical_terms(VarMask vars, int order, std::vector<Term> terms) {
  Series s(vars, order);
  s.terms_ = std::move(terms);
  return s;
}

Rational Series::coeff(const Exponent& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exponent& key) { return canonical_less(t.e, key); });
  if (it != terms_.end() && it->e == e) return it->c;
  return Rational(0);
}

int Series::min_weight() const {
  return terms_.empty() ? saturate(static_cast<long long>(valid_order_) + 1) : terms_.front().e.weight();
}

int Series::max_degree(Var v) const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, t.e.degree(v));
  return d;
}

Series Series::truncated(int order) const {
  Series s(vars_, std::min(order, valid_order_));
  for (const Term& t : terms_) {
    if (t.e.weight() > s.valid_order_) break;
    s.terms_.push_back(t);
  }
  return s;
}

Series Series::with_vars(VarMask extra) const {
  Series s = *this;
  s.vars_ = static_cast<VarMask>(s.vars_ | extra);
  return s;
}

Series Series::operator-() const {
  Series s = *this;
  for (Term& t : s.terms_) t.c = -t.c;
  return s;
}

namespace {

template <bool Subtract>
Series merge(const Series& a, const Series& b) {
  const int order = std::min(a.valid_order(), b.valid_order());
  std::vector<Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  auto push_b = [&](const Term& t) {
    if constexpr (Subtract) {
      out.push_back({t.e, -t.c});
    } else {
      out.push_back(t);
    }
  };
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && canonical_less(ia->e, ib->e))) {
      if (ia->e.weight() > order) break;
      out.push_back(*ia++);
    } else if (ia == ea || canonical_less(ib->e, ia->e)) {
      if (ib->e.weight() > order) break;
      push_b(*ib++);
    } else {
      if (ia->e.weight() > order) break;
      Rational c = Subtract ? Rational(ia->c - ib->c) : Rational(ia->c + ib->c);
      if (sgn(c) != 0) out.push_back({ia->e, std::move(c)});
      ++ia;
      ++ib;
    }
  }
  return Series::from_canonical_terms(static_cast<VarMask>(a.vars() | b.vars()), order, std::move(out));
}

}  // namespace

Series operator+(const Series& a, const Series& b) { return merge<false>(a, b); }
Series operator-(const Series& a, const Series& b) { return merge<true>(a, b); }
Series operator*(const Series& a, const Series& b) { return mul(a, b); }

Series operator*(const Rational& s, const Series& a) {
  if (sgn(s) == 0) return Series(a.vars(), a.valid_order());
  std::vector<Term> out(a.terms().begin(), a.terms().end());
  for (Term& t : out) t.c *= s;
  return Series::from_canonical_terms(a.vars(), a.valid_order(), std::move(out));
}

std::string Series::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    Rational c = t.c;
    const bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit = c == 1;
    const bool constant = t.e == Exponent{};
    if (!unit || constant) os << c.get_str();
    bool need_star = !unit || constant;
    auto factor = [&](const char* name, int d) {
      if (d == 0) return;
      if (need_star) os << "*";
      os << name;
      if (d > 1) os << "^" << d;
      need_star = true;
    };
    if (!constant) {
      factor("x", t.e.i);
      factor("y", t.e.j);
      factor("p", t.e.k);
    }
  }
  if (first) os << "0";
  if (!is_exact()) os << " + O(w>" << valid_order_ << ")";
  return os.str();
}

Series mul(const Series& a, const Series& b, int cap) {
  const long long natural =
      std::min(static_cast<long long>(a.valid_order()) + b.min_weight(),
               static_cast<long long>(b.valid_order()) + a.min_weight());
  const int order = std::min(saturate(natural), cap);
  const VarMask vars = static_cast<VarMask>(a.vars() | b.vars());
  if (a.vanishes() || b.vanishes()) return Series(vars, order);

  const int bound_i = a.max_degree(Var::x) + b.max_degree(Var::x);
  const int bound_j = a.max_degree(Var::y) + b.max_degree(Var::y);
  const int bound_k = a.max_degree(Var::p) + b.max_degree(Var::p);
  const int reach = order >= kExactOrder ? std::numeric_limits<int>::max() : order;
  Accumulator acc(std::min(bound_i, std::max(reach, 0)), std::min(bound_j, std::max(reach / 2, 0)),
                  std::min(bound_k, std::max(reach, 0)));
  for (const Term& ta : a.terms()) {
    const int wa = ta.e.weight();
    if (wa + b.min_weight() > order) break;
    for (const Term& tb : b.terms()) {
      if (wa + tb.e.weight() > order) break;
      acc.add_product(ta.e + tb.e, ta.c, tb.c);
    }
  }
  return Series::from_canonical_terms(vars, order, acc.take());
}

Series pow(const Series& a, int n, int cap) {
  Series result = Series::constant(Rational(1)).truncated(cap);
  Series base = a;
  while (n > 0) {
    if (n & 1) result = mul(result, base, cap);
    n >>= 1;
    if (n > 0) base = mul(base, base, cap);
  }
  return result;
}

Series reciprocal(const Series& a) {
  if (a.is_exact() && a.terms().size() > 1) {
    throw Error(ErrorCode::Internal, "reciprocal of an exact non-constant series needs a truncation order");
  }
  return reciprocal(a, a.valid_order());
}

Series reciprocal(const Series& a, int order) {
  const Rational a0 = a.constant_term();
  if (sgn(a0) == 0) throw Error(ErrorCode::ZeroConstantTerm, "reciprocal of a series vanishing at the origin");
  order = std::min(order, a.valid_order());
  const Rational inv0 = 1 / a0;
  if (a.terms().size() == 1) return Series::constant(inv0, order).with_vars(a.vars());

  // Weight-graded recurrence b_w = -(1/a0) * sum_{u>=1} a_u b_{w-u}.
  const int bound_i = order * 1, bound_j = order / 2, bound_k = order;
  auto idx = [&](const Exponent& e) {
    return (static_cast<std::size_t>(e.i) * (bound_j + 1) + e.j) * (bound_k + 1) + e.k;
  };
  std::vector<Rational> cells(static_cast<std::size_t>(bound_i + 1) * (bound_j + 1) * (bound_k + 1));
  std::vector<std::vector<Term>> by_weight(order + 1);
  by_weight[0].push_back({{0, 0, 0}, inv0});
  std::vector<Exponent> touched;
  Rational scratch;
  for (int w = 1; w <= order; ++w) {
    touched.clear();
    for (const Term& ta : a.terms()) {
      const int u = ta.e.weight();
      if (u == 0) continue;
      if (u > w) break;
      for (const Term& tb : by_weight[w - u]) {
        const Exponent e = ta.e + tb.e;
        Rational& cell = cells[idx(e)];
        if (sgn(cell) == 0) touched.push_back(e);
        mpq_mul(scratch.get_mpq_t(), ta.c.get_mpq_t(), tb.c.get_mpq_t());
        cell += scratch;
      }
    }
    std::sort(touched.begin(), touched.end(), canonical_less);
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (const Exponent& e : touched) {
      Rational& cell = cells[idx(e)];
      if (sgn(cell) != 0) by_weight[w].push_back({e, -cell * inv0});
      cell = 0;
    }
  }
  std::vector<Term> out;
  for (auto& layer : by_weight) {
    for (Term& t : layer) out.push_back(std::move(t));
  }
  return Series::from_canonical_terms(a.vars(), order, std::move(out));
}

Series diff(const Series& a, Var v, int times) {
  Series current = a;
  for (int n = 0; n < times; ++n) {
    std::vector<Term> out;
    for (const Term& t : current.terms()) {
      const int d = t.e.degree(v);
      if (d == 0) continue;
      Exponent e = t.e;
      if (v == Var::x) e.i -= 1;
      if (v == Var::y) e.j -= 1;
      if (v == Var::p) e.k -= 1;
      out.push_back({e, t.c * d});
    }
    std::sort(out.begin(), out.end(), term_less);
    current = Series::from_canonical_terms(
        current.vars(), saturate(static_cast<long long>(current.valid_order()) - weight_of(v)), std::move(out));
  }
  return current;
}

Series integrate(const Series& a, Var v) {
  std::vector<Term> out;
  for (const Term& t : a.terms()) {
    Exponent e = t.e;
    int d = 0;
    if (v == Var::x) d = ++e.i;
    if (v == Var::y) d = ++e.j;
    if (v == Var::p) d = ++e.k;
    out.push_back({e, t.c / d});
  }
  std::sort(out.begin(), out.end(), term_less);
  return Series::from_canonical_terms(static_cast<VarMask>(a.vars() | mask_of(v)),
                                      saturate(static_cast<long long>(a.valid_order()) + weight_of(v)),
                                      std::move(out));
}

Series compose(const Series& a, const Series& sub_x, const Series& sub_y, const Series& sub_p) {
  const VarMask used = [&] {
    VarMask m = kNoVars;
    for (const Term& t : a.terms()) m = static_cast<VarMask>(m | t.e.support());
    return a.is_exact() ? m : static_cast<VarMask>(m | a.vars());
  }();
  const Series* subs[3] = {&sub_x, &sub_y, &sub_p};
  long long wmin[3];
  for (int v = 0; v < 3; ++v) {
    wmin[v] = subs[v]->min_weight();
    if ((used & (1u << v)) && sgn(subs[v]->constant_term()) != 0) {
      throw Error(ErrorCode::NonzeroConstantSubstituent, "substituted series must vanish at the origin");
    }
    if ((used & (1u << v)) && wmin[v] < 1) wmin[v] = 1;
  }

  // Weight bound for the contribution of the unknown tail of `a`.
  long long tail = kExactOrder;
  if (!a.is_exact()) {
    const long long need = static_cast<long long>(a.valid_order()) + 1;
    const bool has_x = used & kX, has_y = used & kY, has_p = used & kP;
    long long unit = kExactOrder;
    if (has_x) unit = std::min(unit, wmin[0]);
    if (has_p) unit = std::min(unit, wmin[2]);
    long long best = kExactOrder;
    const long long jmax = has_y ? std::max(0LL, (need + 1) / 2) : 0;
    for (long long j = 0; j <= jmax; ++j) {
      const long long rest = std::max(0LL, need - 2 * j);
      if (rest > 0 && unit >= kExactOrder) continue;
      best = std::min(best, j * wmin[1] + rest * (rest > 0 ? unit : 0));
    }
    if (need <= 0) best = 0;
    tail = best - 1;
  }
  const int cap = saturate(tail);

  VarMask out_vars = kNoVars;
  for (int v = 0; v < 3; ++v) {
    if (used & (1u << v)) out_vars = static_cast<VarMask>(out_vars | subs[v]->vars());
  }
  if (a.vanishes()) return Series(out_vars, cap);

  // Horner-style grouping: sum_k P^k sum_j Y^j (sum_i c_ijk X^i).
  const int max_i = a.max_degree(Var::x), max_j = a.max_degree(Var::y), max_k = a.max_degree(Var::p);
  std::vector<Series> xpow(max_i + 1), ypow(max_j + 1), ppow(max_k + 1);
  auto build = [cap](std::vector<Series>& pw, const Series& s) {
    pw[0] = Series::constant(Rational(1));
    for (std::size_t n = 1; n < pw.size(); ++n) pw[n] = mul(pw[n - 1], s, cap);
  };
  build(xpow, sub_x);
  build(ypow, sub_y);
  build(ppow, sub_p);

  std::map<std::pair<int, int>, std::vector<const Term*>> groups;  // (k, j) -> terms
  for (const Term& t : a.terms()) groups[{t.e.k, t.e.j}].push_back(&t);

  Series result(out_vars, cap);
  std::map<int, Series> by_k;
  for (const auto& [key, list] : groups) {
    const auto [k, j] = key;
    Series inner(out_vars, cap);
    for (const Term* t : list) inner = inner + t->c * xpow[t->e.i];
    Series piece = j == 0 ? inner : mul(ypow[j], inner, cap);
    auto it = by_k.find(k);
    if (it == by_k.end()) {
      by_k.emplace(k, std::move(piece));
    } else {
      it->second = it->second + piece;
    }
  }
  for (auto& [k, piece] : by_k) {
    result = result + (k == 0 ? piece : mul(ppow[k], piece, cap));
  }
  return result.with_vars(out_vars);
}

Series project_weight(const Series& a, int alpha) {
  if (alpha > a.valid_order()) {
    throw Error(ErrorCode::OrderExceeded, "projection weight " + std::to_string(alpha) +
                                              " exceeds valid order " + std::to_string(a.valid_order()));
  }
  std::vector<Term> out;
  for (const Term& t : a.terms()) {
    if (t.e.weight() == alpha) out.push_back(t);
  }
  return Series::from_canonical_terms(a.vars(), kExactOrder, std::move(out));
}

Series restrict_zero(const Series& a, Var v) {
  std::vector<Term> out;
  for (const Term& t : a.terms()) {
    if (t.e.degree(v) == 0) out.push_back(t);
  }
  return Series::from_canonical_terms(static_cast<VarMask>(a.vars() & ~mask_of(v)), a.valid_order(),
                                      std::move(out));
}

Series coefficient_of(const Series& a, Var v, int power) {
  std::vector<Term> out;
  for (const Term& t : a.terms()) {
    if (t.e.degree(v) != power) continue;
    Exponent e = t.e;
    if (v == Var::x) e.i = 0;
    if (v == Var::y) e.j = 0;
    if (v == Var::p) e.k = 0;
    out.push_back({e, t.c});
  }
  std::sort(out.begin(), out.end(), term_less);
  return Series::from_canonical_terms(
      static_cast<VarMask>(a.vars() & ~mask_of(v)),
      saturate(static_cast<long long>(a.valid_order()) - static_cast<long long>(power) * weight_of(v)),
      std::move(out));
}

bool agree(const Series& a, const Series& b) { return (a - b).vanishes(); }

}  // namespace fpnf
