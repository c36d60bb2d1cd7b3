#pragma once

#include <string>
#include <vector>

#include "fpnf/invariants.hpp"
#include "fpnf/jet.hpp"
#include "fpnf/series.hpp"

namespace fpnf {

enum class CkStep { Step1, Step2a, Step2b, Step3, Step4 };

const char* to_string(CkStep s);  // "1", "2a", "2b", "3", "4"

struct NamedSeries {
  std::string name;
  Series value;
};

struct CkStepReport {
  CkStep step = CkStep::Step1;
  FibreMap map;
  std::vector<NamedSeries> unknowns;
  // Defining equations evaluated on the solution; each vanishes to its order.
  std::vector<NamedSeries> residuals;
  std::vector<Condition> conditions_after;  // the D-conditions that hold
  int order = 0;                            // valid order of the output

  bool residuals_vanish() const;
};

struct CkStepResult {
  Series K;
  CkStepReport report;
};

// Each step needs J with a finite valid order N; the solved unknowns are
// carried to the weights the map needs for an output valid to N.

// G_xx = J(x, y + G, G_x), G = O(x^2); map (x, y + G). Gives D1.
CkStepResult step1_D1(const Series& J);
// X = x/(1 - f2 x) with f2 = -J_p(0,0,0)/2. Needs D1; gives K_p(0,0,0) = 0.
CkStepResult step2_moebius(const Series& J);
// s' = J_p(0, y, s)/2, s(0) = 0, then h_xx = J(x, y + s x + h, s + h_x),
// h = O(x^2); map (x, y + s x + h). Needs D1 and J_p(0,0,0) = 0; gives D1, D2.
CkStepResult step2_D2(const Series& J);
// f_xx = -(1 + f_x)^2 J_p(x + f, 0, 0), f = O(x^3); map (x + f, y).
// Needs D1, D2; gives D1-D3.
CkStepResult step3_D3(const Series& J);
// g_yy = J_pp(0, y + g, 0)(1 + g_y)^2/2, g = O(y^2); map (x, y + g).
// Needs D1-D3; gives D1-D4.
CkStepResult step4_D4(const Series& J);

struct CkResult {
  Series K;
  FibreMap composite;
  std::vector<CkStepReport> reports;
  int order = 0;
};

// Steps 1, 2a, 2b, 3, 4 on J truncated at `order`. Throws ResidualNonzero
// if a step's residual or claimed conditions fail.
CkResult normalize_ck(const Series& J, int order);

}  // namespace fpnf
