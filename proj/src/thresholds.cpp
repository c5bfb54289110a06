#include "cmc/thresholds.hpp"

#include <cmath>
#include <functional>

namespace cmc {

double p_H(double t, double H) {
  if (!(H > 0.0)) throw Error("p_H requires H > 0");
  return -t * t - t / H + 0.5 * (4.0 * H * H - 1.0);
}

double q_H(double t, double H) {
  if (!(H > 0.0)) throw Error("q_H requires H > 0");
  const double H2 = H * H;
  return -t * t - t / H + (8.0 * H2 * H2 - 12.0 * H2 - 1.0) / (4.0 * H2);
}

double mh_min_H() { return std::sqrt((12.0 + std::sqrt(176.0)) / 16.0); }

namespace {

// Safeguarded Newton with a bisection fallback on a bracketing interval.
double rtsafe(const std::function<double(double)>& f,
              const std::function<double(double)>& df, double lo, double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw Error("root is not bracketed");
  if (flo < 0.0) {
    std::swap(lo, hi);
  }
  // From here f(lo) > 0 > f(hi).
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx > 0.0) lo = x; else hi = x;
    const double d = df(x);
    double step = d != 0.0 ? fx / d : 0.0;
    double xn = x - step;
    const double a = std::min(lo, hi), b = std::max(lo, hi);
    if (d == 0.0 || xn <= a || xn >= b) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) <= 1e-13 * std::max(1.0, std::abs(x))) {
      x = xn;
      break;
    }
    x = xn;
  }
  return x;
}

}  // namespace

double L_H(double H) {
  if (!(H > 0.5)) throw Error("L_H requires H > 1/2");
  // p_H(0) > 0 and p_H decreasing for t > 0; expand to bracket.
  double hi = std::max(1.0, 2.0 * H * H);
  while (p_H(hi, H) > 0.0) hi *= 2.0;
  return rtsafe([H](double t) { return p_H(t, H); },
                [H](double t) { return -2.0 * t - 1.0 / H; }, 0.0, hi);
}

double M_H(double H) {
  if (!(H > mh_min_H())) throw Error("M_H requires H > sqrt((12+sqrt(176))/16)");
  double hi = std::max(1.0, 2.0 * H * H);
  while (q_H(hi, H) > 0.0) hi *= 2.0;
  return rtsafe([H](double t) { return q_H(t, H); },
                [H](double t) { return -2.0 * t - 1.0 / H; }, 0.0, hi);
}

double L_H_closed_form(double H) {
  const double H2 = H * H;
  return (std::sqrt(8.0 * H2 * H2 - 2.0 * H2 + 1.0) - 1.0) / (2.0 * H);
}

double M_H_closed_form(double H) {
  const double H2 = H * H;
  return (std::sqrt(8.0 * H2 * H2 - 12.0 * H2) - 1.0) / (2.0 * H);
}

namespace {

HypothesisValue sup_strictly_below(const std::string& name, double value,
                                   double bound) {
  return HypothesisValue{name, value, bound, true, value < bound, bound - value};
}

HypothesisValue sup_at_most(const std::string& name, double value, double bound) {
  return HypothesisValue{name, value, bound, false, value <= bound, bound - value};
}

HypothesisValue inf_at_least(const std::string& name, double value, double bound) {
  return HypothesisValue{name, value, bound, false, value >= bound, value - bound};
}

TheoremVerdict settle(TheoremVerdict v) {
  bool all = true;
  for (const auto& h : v.values) all = all && h.satisfied;
  v.verdict = all ? "hypotheses-satisfied" : "hypotheses-violated";
  return v;
}

TheoremVerdict not_applicable(std::string id, std::string statement,
                              std::string conclusion, std::string reason) {
  TheoremVerdict v;
  v.id = std::move(id);
  v.statement = std::move(statement);
  v.conclusion = std::move(conclusion);
  v.verdict = "not-applicable";
  v.reason = std::move(reason);
  return v;
}

constexpr double kEqualityTol = 1e-9;
constexpr double kMinimalHTol = 1e-6;

}  // namespace

ThresholdReport classify(const SurfaceInvariants& inv, double c, bool complete,
                         bool closed) {
  ThresholdReport rep;
  rep.H = inv.H_median;
  rep.c = c;
  rep.complete = complete;
  rep.closed = closed;
  rep.caveat =
      "completeness and closedness are user-declared inputs; no finite-grid "
      "computation verifies them";

  const double H = inv.H_median;
  if (H > 0.5) {
    rep.L = L_H(H);
    rep.p_residual = std::abs(p_H(*rep.L, H));
  }
  if (H > mh_min_H()) {
    rep.M = M_H(H);
    rep.q_residual = std::abs(q_H(*rep.M, H));
  }

  // Minimal surfaces in H2xR: sup(|A|^2 + 5 nu^2) < 1 forces a vertical
  // plane (oriented complete non-compact case).
  {
    const std::string id = "minimal_vertical_plane";
    const std::string st = "c = -1, H = 0, complete non-compact, sup(|A|^2+5nu^2) < 1";
    const std::string cl = "the surface is a vertical plane gamma x R over a geodesic gamma of H2";
    if (c != -1.0)
      rep.theorems.push_back(not_applicable(id, st, cl, "ambient is not H2xR"));
    else if (std::abs(H) > kMinimalHTol)
      rep.theorems.push_back(not_applicable(id, st, cl, "surface is not minimal"));
    else if (!complete || closed)
      rep.theorems.push_back(
          not_applicable(id, st, cl, "requires declared complete non-compact"));
    else {
      TheoremVerdict v;
      v.id = id;
      v.statement = st;
      v.conclusion = cl;
      v.values.push_back(
          sup_strictly_below("sup(|A|^2+5nu^2)", inv.sup_A2_5nu2, 1.0));
      rep.theorems.push_back(settle(std::move(v)));
    }
  }

  // CMC surfaces in H2xR: sup(|phi|^2 + 5 nu^2) < 2H^2 + 1 and
  // <phi T,T> >= 0 force a vertical plane (complete case).
  {
    const std::string id = "cmc_vertical_plane";
    const std::string st =
        "c = -1, complete, sup(|phi|^2+5nu^2) < 2H^2+1, <phi T,T> >= 0";
    const std::string cl = "the surface is a vertical plane gamma x R over a geodesic gamma of H2";
    if (c != -1.0)
      rep.theorems.push_back(not_applicable(id, st, cl, "ambient is not H2xR"));
    else if (!complete)
      rep.theorems.push_back(not_applicable(id, st, cl, "requires declared complete"));
    else {
      TheoremVerdict v;
      v.id = id;
      v.statement = st;
      v.conclusion = cl;
      v.values.push_back(sup_strictly_below("sup(|phi|^2+5nu^2)",
                                            inv.sup_phi2_5nu2, 2.0 * H * H + 1.0));
      v.values.push_back(inf_at_least("inf<phi T,T>", inv.inf_phiTT, 0.0));
      rep.theorems.push_back(settle(std::move(v)));
    }
  }

  // S2xR pinching: complete, H > 1/2, sup|S| < L_H ==> Hsiang-Pedrosa sphere.
  {
    const std::string id = "lh_pinching_complete";
    const std::string st = "c = +1, complete, H > 1/2, sup|S| < L_H";
    const std::string cl = "the surface is a Hsiang-Pedrosa sphere S^2_H";
    if (c != 1.0)
      rep.theorems.push_back(not_applicable(id, st, cl, "ambient is not S2xR"));
    else if (!(H > 0.5))
      rep.theorems.push_back(not_applicable(id, st, cl, "H must exceed 1/2"));
    else if (!complete)
      rep.theorems.push_back(not_applicable(id, st, cl, "requires declared complete"));
    else {
      TheoremVerdict v;
      v.id = id;
      v.statement = st;
      v.conclusion = cl;
      v.values.push_back(sup_strictly_below("sup|S|", inv.sup_abs_S, *rep.L));
      rep.theorems.push_back(settle(std::move(v)));
    }
  }

  // S2xR forbidden equality: no complete CMC surface with H > 1/2 has
  // |S| identically L_H (the cylinder gives |S| = (sqrt2/2)(4H^2+1) > L_H).
  {
    const std::string id = "lh_equality_nonexistence";
    const std::string st = "c = +1, complete, H > 1/2, |S| = L_H everywhere";
    const std::string cl = "no such surface exists";
    if (c != 1.0)
      rep.theorems.push_back(not_applicable(id, st, cl, "ambient is not S2xR"));
    else if (!(H > 0.5))
      rep.theorems.push_back(not_applicable(id, st, cl, "H must exceed 1/2"));
    else if (!complete)
      rep.theorems.push_back(not_applicable(id, st, cl, "requires declared complete"));
    else {
      TheoremVerdict v;
      v.id = id;
      v.statement = st;
      v.conclusion = cl;
      const bool realizes = std::abs(inv.sup_abs_S - *rep.L) <= kEqualityTol &&
                            std::abs(inv.inf_abs_S - *rep.L) <= kEqualityTol;
      HypothesisValue h{"|S| = L_H within 1e-9", inv.sup_abs_S, *rep.L, false,
                        realizes, inv.sup_abs_S - *rep.L};
      v.values.push_back(h);
      v = settle(std::move(v));
      if (realizes)
        v.reason = "surface realizes the forbidden equality";
      rep.theorems.push_back(std::move(v));
    }
  }

  // S2xR closed case: closed, H > 1/2, |S| <= L_H ==> Hsiang-Pedrosa sphere.
  {
    const std::string id = "lh_pinching_closed";
    const std::string st = "c = +1, closed, H > 1/2, sup|S| <= L_H";
    const std::string cl = "the surface is a Hsiang-Pedrosa sphere S^2_H";
    if (c != 1.0)
      rep.theorems.push_back(not_applicable(id, st, cl, "ambient is not S2xR"));
    else if (!(H > 0.5))
      rep.theorems.push_back(not_applicable(id, st, cl, "H must exceed 1/2"));
    else if (!closed)
      rep.theorems.push_back(not_applicable(id, st, cl, "requires declared closed"));
    else {
      TheoremVerdict v;
      v.id = id;
      v.statement = st;
      v.conclusion = cl;
      v.values.push_back(sup_at_most("sup|S|", inv.sup_abs_S, *rep.L));
      rep.theorems.push_back(settle(std::move(v)));
    }
  }

  // H2xR pinching: complete, H > mh_min_H, sup|S| < M_H ==>
  // Abresch-Rosenberg surface.
  {
    const std::string id = "mh_pinching_complete";
    const std::string st = "c = -1, complete, H > 1.25664..., sup|S| < M_H";
    const std::string cl = "the surface is an Abresch-Rosenberg surface";
    if (c != -1.0)
      rep.theorems.push_back(not_applicable(id, st, cl, "ambient is not H2xR"));
    else if (!(H > mh_min_H()))
      rep.theorems.push_back(
          not_applicable(id, st, cl, "H must exceed sqrt((12+sqrt(176))/16)"));
    else if (!complete)
      rep.theorems.push_back(not_applicable(id, st, cl, "requires declared complete"));
    else {
      TheoremVerdict v;
      v.id = id;
      v.statement = st;
      v.conclusion = cl;
      v.values.push_back(sup_strictly_below("sup|S|", inv.sup_abs_S, *rep.M));
      rep.theorems.push_back(settle(std::move(v)));
    }
  }

  // H2xR forbidden equality |S| = M_H.
  {
    const std::string id = "mh_equality_nonexistence";
    const std::string st = "c = -1, complete, H > 1.25664..., |S| = M_H everywhere";
    const std::string cl = "no such surface exists";
    if (c != -1.0)
      rep.theorems.push_back(not_applicable(id, st, cl, "ambient is not H2xR"));
    else if (!(H > mh_min_H()))
      rep.theorems.push_back(
          not_applicable(id, st, cl, "H must exceed sqrt((12+sqrt(176))/16)"));
    else if (!complete)
      rep.theorems.push_back(not_applicable(id, st, cl, "requires declared complete"));
    else {
      TheoremVerdict v;
      v.id = id;
      v.statement = st;
      v.conclusion = cl;
      const bool realizes = std::abs(inv.sup_abs_S - *rep.M) <= kEqualityTol &&
                            std::abs(inv.inf_abs_S - *rep.M) <= kEqualityTol;
      v.values.push_back(HypothesisValue{"|S| = M_H within 1e-9", inv.sup_abs_S,
                                         *rep.M, false, realizes,
                                         inv.sup_abs_S - *rep.M});
      v = settle(std::move(v));
      if (realizes) v.reason = "surface realizes the forbidden equality";
      rep.theorems.push_back(std::move(v));
    }
  }

  // H2xR closed case: closed, H > mh_min_H, |S| <= M_H; the conclusion is
  // stated for S^2_H.
  {
    const std::string id = "mh_pinching_closed";
    const std::string st = "c = -1, closed, H > 1.25664..., sup|S| <= M_H";
    const std::string cl = "the surface is a Hsiang-Pedrosa sphere S^2_H";
    if (c != -1.0)
      rep.theorems.push_back(not_applicable(id, st, cl, "ambient is not H2xR"));
    else if (!(H > mh_min_H()))
      rep.theorems.push_back(
          not_applicable(id, st, cl, "H must exceed sqrt((12+sqrt(176))/16)"));
    else if (!closed)
      rep.theorems.push_back(not_applicable(id, st, cl, "requires declared closed"));
    else {
      TheoremVerdict v;
      v.id = id;
      v.statement = st;
      v.conclusion = cl;
      v.values.push_back(sup_at_most("sup|S|", inv.sup_abs_S, *rep.M));
      rep.theorems.push_back(settle(std::move(v)));
    }
  }

  return rep;
}

}  // namespace cmc
