#pragma once

// Pinching polynomials p_H, q_H, their positive roots L_H, M_H, and
// hypothesis classification of surfaces against the pinching theorems.

#include <optional>
#include <string>
#include <vector>

#include "cmc/errors.hpp"

namespace cmc {

// p_H(t) = -t^2 - t/H + (4H^2-1)/2; positive root exists for H > 1/2.
double p_H(double t, double H);

// q_H(t) = -t^2 - t/H + (8H^4-12H^2-1)/(4H^2); positive root exists for
// H > sqrt((12+sqrt(176))/16).
double q_H(double t, double H);

// Validity threshold for M_H.
double mh_min_H();

// Positive roots by safeguarded bisection/Newton, residual <= 1e-12.
double L_H(double H);
double M_H(double H);

// Quadratic-formula rationalizations, cross-checked against the root
// finder in tests:
//   L_H = (sqrt(8H^4-2H^2+1)-1)/(2H),  M_H = (sqrt(8H^4-12H^2)-1)/(2H).
double L_H_closed_form(double H);
double M_H_closed_form(double H);

struct SurfaceInvariants {
  double H_median = 0.0;
  double cmc_deviation = 0.0;
  double sup_A2 = 0.0;          // sup |A|^2
  double sup_abs_S = 0.0;       // sup |S|
  double inf_abs_S = 0.0;       // inf |S| (for the forbidden-equality checks)
  double sup_A2_5nu2 = 0.0;     // sup (|A|^2 + 5 nu^2)
  double sup_phi2_5nu2 = 0.0;   // sup (|phi|^2 + 5 nu^2)
  double inf_phiTT = 0.0;       // inf <phi T, T>
};

struct HypothesisValue {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool strict = true;   // hypothesis uses a strict inequality
  bool satisfied = false;
  double margin = 0.0;  // bound - value (signed)
};

struct TheoremVerdict {
  std::string id;
  std::string statement;    // hypothesis summary
  std::string conclusion;   // what the theorem concludes when hypotheses hold
  std::string verdict;      // hypotheses-satisfied | hypotheses-violated |
                            // not-applicable
  std::string reason;       // why not-applicable, when it is
  std::vector<HypothesisValue> values;
};

struct ThresholdReport {
  double H = 0.0;
  double c = 1.0;
  bool complete = false;
  bool closed = false;
  std::optional<double> L;      // absent when H is out of range
  std::optional<double> M;
  double p_residual = 0.0;      // |p_H(L_H)| when L is present
  double q_residual = 0.0;      // |q_H(M_H)| when M is present
  std::vector<TheoremVerdict> theorems;
  std::string caveat;
};

// Pure function of the listed inputs; completeness/closedness are declared
// metadata, never computed.
ThresholdReport classify(const SurfaceInvariants& inv, double c, bool complete,
                         bool closed);

}  // namespace cmc
