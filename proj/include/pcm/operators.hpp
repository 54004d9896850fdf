#pragma once

#include <functional>

#include "pcm/convex_function.hpp"
#include "pcm/sets.hpp"
#include "pcm/vec.hpp"

namespace pcm {

// Built-in resolvents J_A = (Id + A)^{-1} for two monotone operators:
//   prox_abs                A = ∂‖·‖   (soft threshold by 1)
//   squared_distance_ball   A = ∇d_B², B = ball(center; radius)
struct ResolventSpec {
  enum class Kind { prox_abs, squared_distance_ball };
  Kind kind;
  Vec center;          // squared_distance_ball
  double radius = 0.0;

  static ResolventSpec prox_abs();
  static ResolventSpec squared_distance_ball(Vec center, double radius);
};

Vec resolvent_apply(const ResolventSpec& spec, const Vec& x);

// ‖(x - y) - a‖ for the unique a ∈ A(y) admitted by the closed form, or the
// constraint slack when A is multivalued at y. Zero (to rounding) certifies
// x ∈ y + A(y), i.e. y = J_A x.
double resolvent_inclusion_residual(const ResolventSpec& spec, const Vec& x, const Vec& y);

// An evaluable operator T with a fixed-point membership test.
//
// Fixed-point tests are exact where the semantics allow: f(x) <= 0 for a
// subgradient projector, exact set membership for a metric projector. Only
// the resolvent kind needs a float surrogate, ‖Tx - x‖ <= atol, with atol < 0
// meaning the default 1e-12 * (1 + ‖x‖).
struct CutterOperator {
  enum class Kind { subgradient_projector, metric_projector, resolvent };
  Kind kind;
  ConvexFunction f;   // subgradient_projector
  ConvexSet set;      // metric_projector
  ResolventSpec res;  // resolvent
  double fix_atol = -1.0;

  static CutterOperator subgradient_projector(ConvexFunction f);
  static CutterOperator metric_projector(ConvexSet S);
  static CutterOperator resolvent(ResolventSpec spec, double fix_atol = -1.0);
};

Vec cutter_apply(const CutterOperator& T, const Vec& x);
bool in_fixed_set(const CutterOperator& T, const Vec& x);

// x - (f(x)/‖s(x)‖²) s(x) when f(x) > 0, else x. A vanishing subgradient at
// an infeasible point certifies min f > 0, contradicting the declared
// nonempty sublevel set: InconsistentProblem.
Vec subgradient_projector_apply(const ConvexFunction& f, const Vec& x);

// Extrapolation of T by a fixed extra distance r past Tx:
//   U_r x = Tx + (r/‖Tx - x‖)(Tx - x)   (x ∉ Fix T),   U_r x = x on Fix T.
// r = 0 is accepted (U_0 = T); the finite-convergence results need r > 0.
Vec ur_apply(const CutterOperator& T, double r, const Vec& x);

// Relaxation (1 - eta) x + eta U_r x, eta in ]0, 2].
Vec ur_eta_apply(const CutterOperator& T, double r, double eta, const Vec& x);

struct CutterDiagnostics {
  double tau;              // <x-y, (x-Tx)/‖x-Tx‖> - (r + ‖x-Tx‖)
  double residual_T;       // ‖x - Tx‖
  double cutter_residual;  // <y - Tx, x - Tx>
};

// Diagnostics for the descent identity
//   ‖U_r x - y‖² = ‖Tx - y‖² - r² - 2 r τ,
// valid when ball(y; r) ⊆ Fix T (caller-asserted). Undefined on Fix T.
CutterDiagnostics tau_diagnostic(const CutterOperator& T, const Vec& x, const Vec& y, double r);

// <y - op(x), x - op(x)>. Nonpositive for every fixed point y of a cutter;
// a positive value witnesses that op is not a cutter at (x, y).
double cutter_inequality_residual(const CutterOperator& T, const Vec& x, const Vec& y);
double cutter_inequality_residual(const std::function<Vec(const Vec&)>& op, const Vec& x,
                                  const Vec& y);

}  // namespace pcm
