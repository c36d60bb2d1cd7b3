#include "fpnf/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "fpnf/ck.hpp"
#include "fpnf/document.hpp"
#include "fpnf/error.hpp"
#include "fpnf/generate.hpp"
#include "fpnf/homology.hpp"
#include "fpnf/invariants.hpp"

namespace fpnf {

namespace {

struct Options {
  int order = 10;
  std::string format = "text";
  std::string output;
  std::uint64_t seed = 0;
  std::string method = "both";
  std::string what = "normal";
  std::string kind = "random";
  std::string input;
  std::string map_input;
};

class Mismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedDocument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text << '\n';
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string describe(const Series& s) {
  std::string text = s.to_string();
  if (!s.is_exact() && text.find("O(w>") == std::string::npos) text += " + O(w>" + std::to_string(s.valid_order()) + ")";
  return text;
}

Json conditions_json(const std::vector<Condition>& cs) {
  Json out = Json::array();
  for (Condition c : cs) out.push_back(to_string(c));
  return out;
}

std::string conditions_text(const std::vector<Condition>& cs) {
  std::string out;
  for (Condition c : cs) out += (out.empty() ? "" : ",") + std::string(to_string(c));
  return out.empty() ? "none" : out;
}

Json origin_json(const OriginValues& v) {
  return Json::array({format_rational(v.q1), format_rational(v.q2), format_rational(v.q3)});
}

std::string origin_text(const OriginValues& v) {
  return "(" + v.q1.get_str() + ", " + v.q2.get_str() + ", " + v.q3.get_str() + ")";
}

Series load_ode(const std::string& path) { return ode_from_json(parse_json(read_file(path))); }

// ---- normalize ----------------------------------------------------------

Json formal_json(const FormalResult& r, int cap) {
  Json stages = Json::array();
  for (const StageRecord& s : r.stages) {
    if (s.correction.is_zero()) continue;
    stages.push_back({{"alpha", s.alpha},
                      {"defect", series_to_json(s.defect, cap)},
                      {"f", series_to_json(s.correction.f, cap)},
                      {"g", series_to_json(s.correction.g, cap)}});
  }
  return {{"normal_form", series_to_json(r.K)}, {"map", map_to_json(r.composite, cap)}, {"stages", stages}};
}

Json ck_json(const CkResult& r, int cap) {
  Json steps = Json::array();
  for (const CkStepReport& s : r.reports) {
    Json unknowns = Json::object();
    for (const NamedSeries& u : s.unknowns) unknowns[u.name] = series_to_json(u.value, cap);
    steps.push_back({{"step", to_string(s.step)},
                     {"conditions_after", conditions_json(s.conditions_after)},
                     {"residuals_vanish", s.residuals_vanish()},
                     {"order", s.order},
                     {"unknowns", unknowns}});
  }
  return {{"normal_form", series_to_json(r.K)}, {"map", map_to_json(r.composite, cap)}, {"steps", steps}};
}

void print_map_text(std::ostream& out, const FibreMap& m) {
  out << "  X = " << describe(m.phi) << "\n  Y = " << describe(m.psi) << "\n";
}

int cmd_normalize(const Options& o, std::ostream& out) {
  const Series J = load_ode(o.input);
  const int N = std::min(o.order, J.valid_order());
  const int cap = N + 2;
  const bool do_formal = o.method != "ck", do_ck = o.method != "formal";
  std::optional<FormalResult> formal;
  std::optional<CkResult> ck;
  if (do_formal) formal = formal_normalize(J, N);
  if (do_ck) ck = normalize_ck(J, N);
  const Series& K = ck ? ck->K : formal->K;
  bool agree_ok = true;
  if (formal && ck) {
    const int common = std::min(formal->K.valid_order(), ck->K.valid_order());
    agree_ok = formal->K.truncated(common) == ck->K.truncated(common);
  }

  if (o.format == "json") {
    Json report{{"command", "normalize"}, {"method", o.method}, {"order", K.valid_order()},
                {"normal_form", series_to_json(K)}, {"normal", check_normal(K).normal}};
    if (formal) report["formal"] = formal_json(*formal, cap);
    if (ck) report["ck"] = ck_json(*ck, cap);
    if (formal && ck) report["agree"] = agree_ok;
    out << dump_canonical(report) << "\n";
  } else {
    out << "normal form (method " << o.method << ", valid to weight " << K.valid_order() << ")\n";
    out << "  K = " << describe(K) << "\n";
    if (formal) {
      out << "formal stages:\n";
      for (const StageRecord& s : formal->stages) {
        if (s.correction.is_zero()) continue;
        out << "  alpha " << s.alpha << ": defect " << describe(s.defect) << "; f = " << describe(s.correction.f)
            << ", g = " << describe(s.correction.g) << "\n";
      }
      out << "formal map:\n";
      print_map_text(out, formal->composite);
    }
    if (ck) {
      out << "ck steps:\n";
      for (const CkStepReport& s : ck->reports) {
        out << "  step " << to_string(s.step) << ": residuals " << (s.residuals_vanish() ? "vanish" : "NONZERO")
            << ", conditions " << conditions_text(s.conditions_after) << "\n";
      }
      out << "ck map:\n";
      print_map_text(out, ck->composite);
    }
    if (formal && ck) out << "methods agree: " << (agree_ok ? "yes" : "NO") << "\n";
  }

  if (!o.output.empty()) {
    write_atomic(o.output, dump_canonical(ode_to_json(K)));
    if (ck) write_atomic(o.output + ".map.json", dump_canonical(map_to_json(ck->composite, cap)));
    if (formal) {
      write_atomic(o.output + (ck ? ".formal.map.json" : ".map.json"),
                   dump_canonical(map_to_json(formal->composite, cap)));
    }
  }
  if (!agree_ok) throw Mismatch("formal and ck normal forms differ");
  return 0;
}

// ---- check --------------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out) {
  Series K = load_ode(o.input);
  if (o.order < K.valid_order()) K = K.truncated(o.order);
  Json report{{"command", "check"}, {"what", o.what}, {"order", K.valid_order()}};
  std::ostringstream text;

  const NormalCheck nc = check_normal(K);
  if (o.what == "normal" || o.what == "invariants") {
    report["normal"] = nc.normal;
    report["violated"] = conditions_json(nc.violated);
    text << "normal: " << (nc.normal ? "true" : "false") << "\n";
    if (!nc.normal) text << "violated: " << conditions_text(nc.violated) << "\n";
    if (nc.normal && K.valid_order() >= 4) {
      const OriginValues v = invariants_at_origin(K);
      report["invariants_at_origin"] = origin_json(v);
      text << "invariants_at_origin: " << origin_text(v) << "\n";
    }
  }
  if (o.what == "invariants") {
    const InvariantTriple inv = relative_invariants(K);
    report["I1"] = series_to_json(inv.I1);
    report["I2"] = series_to_json(inv.I2);
    report["I3"] = series_to_json(inv.I3);
    text << "I1 = " << describe(inv.I1) << "\nI2 = " << describe(inv.I2) << "\nI3 = " << describe(inv.I3) << "\n";
  }
  if (o.what == "flat") {
    if (!nc.normal) {
      text << "note: input is not normal; normalizing first\n";
      report["normalized_first"] = true;
      K = normalize_ck(K, K.valid_order()).K;
    }
    const FlatnessReport r = check_flat(K);
    report["flat"] = r.is_flat;
    report["order_checked"] = r.order_checked;
    report["nonvanishing"] = r.nonvanishing;
    report["normal_form"] = series_to_json(K);
    text << "flat: " << (r.is_flat ? "true" : "false") << " (checked to weight " << r.order_checked << ")\n";
    if (!r.nonvanishing.empty()) {
      const Series* series[] = {&r.invariants.I1, &r.invariants.I2, &r.invariants.I3};
      for (const std::string& name : r.nonvanishing) {
        text << name << " = " << describe(*series[name[1] - '1']) << "\n";
      }
    }
    if (r.quadratic) {
      report["relation1_residual"] = series_to_json(r.relation1_residual);
      report["relation2_residual"] = series_to_json(r.relation2_residual);
      text << "2M_x - N_y = " << describe(r.relation1_residual) << "\n";
      text << "N_xy - N_y N = " << describe(r.relation2_residual) << "\n";
    }
  }
  if (o.format == "json") {
    out << dump_canonical(report) << "\n";
  } else {
    out << text.str();
  }
  return 0;
}

// ---- apply --------------------------------------------------------------

int cmd_apply(const Options& o, std::ostream& out) {
  const Series J = load_ode(o.input);
  const FibreMap m = map_from_json(parse_json(read_file(o.map_input)));
  const Series K = apply_map(J.truncated(std::min(o.order, J.valid_order())), m);
  const std::string doc = dump_canonical(ode_to_json(K));
  if (!o.output.empty()) write_atomic(o.output, doc);
  if (o.format == "json") {
    out << doc << "\n";
  } else {
    out << "K = " << describe(K) << "\n";
  }
  return 0;
}

// ---- symmetries ---------------------------------------------------------

int cmd_symmetries(const Options& o, std::ostream& out) {
  if (o.order < 3) throw Error(ErrorCode::MalformedDocument, "order must be at least 3 to contain x^2 d/dx + xy d/dy");
  const std::vector<CorrectionPair> basis = kernel_basis(o.order);
  const std::size_t span = joint_rank(basis, model_symmetries());
  const bool ok = basis.size() == 6 && span == 6;
  if (o.format == "json") {
    Json fields = Json::array();
    for (const CorrectionPair& c : basis) {
      fields.push_back({{"f", series_to_json(c.f, o.order)}, {"g", series_to_json(c.g, o.order)}});
    }
    out << dump_canonical({{"command", "symmetries"},
                           {"order", o.order},
                           {"dimension", basis.size()},
                           {"matches_model", ok},
                           {"basis", fields}})
        << "\n";
  } else {
    out << "dimension " << basis.size() << " at order " << o.order << "\n";
    for (const CorrectionPair& c : basis) out << "  (" << c.f.to_string() << ") d/dx + (" << c.g.to_string() << ") d/dy\n";
    out << "span equals the model symmetry algebra: " << (ok ? "yes" : "NO") << "\n";
  }
  if (!ok) throw Mismatch("symmetry algebra of y'' = 0 does not have dimension 6");
  return 0;
}

// ---- generate -----------------------------------------------------------

int cmd_generate(const Options& o, std::ostream& out) {
  Generator gen(o.seed);
  const int N = o.order;
  Series J;
  std::optional<FibreMap> witness;
  if (o.kind == "flat") {
    witness = gen.random_map(N + 2);
    J = apply_map(Series(kXYP, N), *witness);
  } else if (o.kind == "normal") {
    J = gen.random_normal(N);
  } else {
    J = gen.random_ode(N);
  }
  const std::string doc = dump_canonical(ode_to_json(J));
  if (!o.output.empty()) {
    write_atomic(o.output, doc);
    if (witness) write_atomic(o.output + ".map.json", dump_canonical(map_to_json(*witness)));
  } else {
    out << doc << "\n";
    if (witness) out << dump_canonical(map_to_json(*witness)) << "\n";
  }
  return 0;
}

int exit_code(ErrorCode code) {
  switch (category(code)) {
    case ErrorCategory::Input: return 1;
    case ErrorCategory::Precondition: return 2;
    case ErrorCategory::Internal: return 3;
  }
  return 3;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Normal forms of y'' = J(x, y, y') under fibre-preserving maps", "fpnf"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--order", o.order, "weighted truncation order")->check(CLI::NonNegativeNumber);
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--output", o.output, "write the resulting document here (maps go to PATH.map.json)");
  app.add_option("--seed", o.seed, "generator seed");
  app.add_option("--method", o.method, "normalization method")->check(CLI::IsMember({"formal", "ck", "both"}));

  auto* normalize = app.add_subcommand("normalize", "normal form of an ODE document");
  normalize->add_option("input", o.input, "ODE document")->required();
  auto* check = app.add_subcommand("check", "normality, invariants or flatness");
  check->add_option("input", o.input, "ODE document")->required();
  check->add_option("--what", o.what)->check(CLI::IsMember({"normal", "flat", "invariants"}));
  auto* apply = app.add_subcommand("apply", "transform an ODE by a fibre map");
  apply->add_option("ode", o.input, "ODE document")->required();
  apply->add_option("map", o.map_input, "map document")->required();
  auto* symmetries = app.add_subcommand("symmetries", "symmetry algebra of y'' = 0");
  auto* generate = app.add_subcommand("generate", "seeded example documents");
  generate->add_option("--kind", o.kind)->check(CLI::IsMember({"flat", "random", "normal"}));

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (normalize->parsed()) return cmd_normalize(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (apply->parsed()) return cmd_apply(o, out);
    if (symmetries->parsed()) return cmd_symmetries(o, out);
    if (generate->parsed()) return cmd_generate(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const Mismatch& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

}  // namespace fpnf
