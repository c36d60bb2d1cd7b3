#include "fpnf/document.hpp"

#include <set>
#include <tuple>

#include "fpnf/error.hpp"

namespace fpnf {

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedDocument, why); }

int finite_order(const Series& s, int cap) {
  const int order = std::min(s.valid_order(), cap);
  if (order >= kExactOrder) malformed("cannot serialize an untruncated series without an order cap");
  return order;
}

Json terms_json(const Series& s, int order, int arity) {
  Json terms = Json::array();
  for (const Term& t : s.terms()) {
    if (t.e.weight() > order) break;
    Json e = Json::array({t.e.i});
    if (arity >= 2) e.push_back(t.e.j);
    if (arity >= 3) e.push_back(t.e.k);
    terms.push_back({{"c", format_rational(t.c)}, {"e", e}});
  }
  return terms;
}

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object()) malformed("document must be an object");
  auto it = doc.find(name);
  if (it == doc.end()) malformed(std::string("missing field '") + name + "'");
  return *it;
}

void check_version(const Json& doc) {
  const Json& v = field(doc, "format_version");
  if (!v.is_string() || v.get<std::string>() != kFormatVersion) malformed("unsupported format_version");
}

int read_order(const Json& doc) {
  const Json& o = field(doc, "order");
  if (!o.is_number_integer() || o.get<long long>() < 0 || o.get<long long>() >= kExactOrder / 2) {
    malformed("order must be a non-negative integer");
  }
  return o.get<int>();
}

Series read_terms(const Json& terms, VarMask vars, int arity, int order) {
  if (!terms.is_array()) malformed("terms must be an array");
  std::vector<Term> out;
  std::set<std::tuple<int, int, int>> seen;
  for (const Json& t : terms) {
    if (!t.is_object() || t.size() != 2) malformed("each term is an object with fields c and e");
    const Json& c = field(t, "c");
    const Json& e = field(t, "e");
    if (!c.is_string()) malformed("coefficients are strings \"num/den\"");
    if (!e.is_array() || e.size() != static_cast<std::size_t>(arity)) {
      malformed("exponent must have " + std::to_string(arity) + " entries");
    }
    int deg[3] = {0, 0, 0};
    for (int v = 0; v < arity; ++v) {
      const Json& d = e[static_cast<std::size_t>(v)];
      if (!d.is_number_integer() || d.get<long long>() < 0 || d.get<long long>() > order) {
        malformed("exponents are non-negative integers bounded by the order");
      }
      deg[v] = d.get<int>();
    }
    const Exponent ex{deg[0], deg[1], deg[2]};
    if (ex.weight() > order) malformed("term of weight " + std::to_string(ex.weight()) + " exceeds order");
    if (!seen.insert({ex.i, ex.j, ex.k}).second) malformed("duplicate exponent");
    Rational q = parse_rational(c.get<std::string>());
    if (sgn(q) != 0) out.push_back({ex, std::move(q)});
  }
  return Series::from_terms(vars, order, std::move(out));
}

}  // namespace

Json series_to_json(const Series& s, int cap) {
  const int order = finite_order(s, cap);
  return {{"order", order}, {"terms", terms_json(s, order, 3)}};
}

Json ode_to_json(const Series& J, int cap) {
  Json doc = series_to_json(J, cap);
  doc["format_version"] = kFormatVersion;
  return doc;
}

Series ode_from_json(const Json& doc) {
  check_version(doc);
  const int order = read_order(doc);
  return read_terms(field(doc, "terms"), kXYP, 3, order);
}

Json map_to_json(const FibreMap& m, int cap) {
  const int order = std::min(m.order(), cap);
  if (order >= kExactOrder) malformed("cannot serialize an untruncated map without an order cap");
  return {{"format_version", kFormatVersion},
          {"order", order},
          {"phi_terms", terms_json(m.phi, order, 1)},
          {"psi_terms", terms_json(m.psi, order, 2)}};
}

FibreMap map_from_json(const Json& doc) {
  check_version(doc);
  const int order = read_order(doc);
  FibreMap m{read_terms(field(doc, "phi_terms"), kX, 1, order), read_terms(field(doc, "psi_terms"), kXY, 2, order)};
  m.validate();
  return m;
}

std::string dump_canonical(const Json& doc) { return doc.dump(); }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace fpnf
