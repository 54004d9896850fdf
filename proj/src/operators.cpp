#include "pcm/operators.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "pcm/errors.hpp"

namespace pcm {

ConvexFunction builtin_objective(const std::string& name) {
  if (name == "x2m1") return quadratic_sublevel(1.0, -1.0, "x2m1");
  if (name == "100x2m1") return quadratic_sublevel(100.0, -1.0, "100x2m1");
  if (name == "ball_d") return quadratic_sublevel(1.0, -1.0, "ball_d");
  if (name == "square") return quadratic_sublevel(1.0, 0.0, "square");
  if (name == "square_p1") return quadratic_sublevel(1.0, 1.0, "square_p1");
  throw InvalidParameter("unknown objective: " + name);
}

ResolventSpec ResolventSpec::prox_abs() {
  ResolventSpec s;
  s.kind = Kind::prox_abs;
  return s;
}

ResolventSpec ResolventSpec::squared_distance_ball(Vec center, double radius) {
  if (center.empty()) throw InvalidInput("squared_distance_ball: empty center");
  if (!(radius > 0.0)) throw InvalidParameter("squared_distance_ball: radius must be positive");
  ResolventSpec s;
  s.kind = Kind::squared_distance_ball;
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

Vec resolvent_apply(const ResolventSpec& spec, const Vec& x) {
  switch (spec.kind) {
    case ResolventSpec::Kind::prox_abs: {
      // block soft threshold: shrink toward 0 by 1 in norm
      double nx = norm(x);
      if (nx <= 1.0) return Vec::zeros(x.size());
      std::vector<double> out(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - x[i] / nx;
      return Vec(std::move(out));
    }
    case ResolventSpec::Kind::squared_distance_ball: {
      // (Id + 2(Id - P_B))^{-1}: scale the overshoot past the ball by 1/3
      check_same_dim(x, spec.center, "resolvent_apply");
      Vec d = x - spec.center;
      double D = norm(d);
      if (D <= spec.radius) return x;
      double dd = (D + 2.0 * spec.radius) / 3.0;
      std::vector<double> out(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = spec.center[i] + dd * (d[i] / D);
      return Vec(std::move(out));
    }
  }
  throw InvalidInput("resolvent_apply: unknown kind");
}

double resolvent_inclusion_residual(const ResolventSpec& spec, const Vec& x, const Vec& y) {
  check_same_dim(x, y, "resolvent_inclusion_residual");
  switch (spec.kind) {
    case ResolventSpec::Kind::prox_abs: {
      double ny = norm(y);
      Vec d = x - y;
      if (ny == 0.0) {
        // subdifferential at 0 is the unit ball: slack of the norm constraint
        return std::max(norm(d) - 1.0, 0.0);
      }
      std::vector<double> res(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) res[i] = d[i] - y[i] / ny;
      return norm(Vec(std::move(res)));
    }
    case ResolventSpec::Kind::squared_distance_ball: {
      Vec p = project(ConvexSet::ball(spec.center, spec.radius), y);
      std::vector<double> res(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) res[i] = (x[i] - y[i]) - 2.0 * (y[i] - p[i]);
      return norm(Vec(std::move(res)));
    }
  }
  throw InvalidInput("resolvent_inclusion_residual: unknown kind");
}

CutterOperator CutterOperator::subgradient_projector(ConvexFunction f) {
  CutterOperator T;
  T.kind = Kind::subgradient_projector;
  T.f = std::move(f);
  return T;
}

CutterOperator CutterOperator::metric_projector(ConvexSet S) {
  CutterOperator T;
  T.kind = Kind::metric_projector;
  T.set = std::move(S);
  return T;
}

CutterOperator CutterOperator::resolvent(ResolventSpec spec, double fix_atol) {
  CutterOperator T;
  T.kind = Kind::resolvent;
  T.res = std::move(spec);
  T.fix_atol = fix_atol;
  return T;
}

Vec subgradient_projector_apply(const ConvexFunction& f, const Vec& x) {
  double v = f.value(x);
  if (!std::isfinite(v)) throw NonFiniteResult("objective value is not finite");
  if (v <= 0.0) return x;
  Vec s = f.subgrad(x);
  double ss = dot(s, s);
  if (!std::isfinite(ss)) throw NonFiniteResult("subgradient norm is not finite");
  if (ss == 0.0) {
    throw InconsistentProblem(
        "positive objective value with zero subgradient: the sublevel set is empty");
  }
  double c = v / ss;
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = x[i] - c * s[i];
    if (!std::isfinite(out[i])) throw NonFiniteResult("subgradient step is not finite");
  }
  return Vec(std::move(out));
}

Vec cutter_apply(const CutterOperator& T, const Vec& x) {
  switch (T.kind) {
    case CutterOperator::Kind::subgradient_projector:
      return subgradient_projector_apply(T.f, x);
    case CutterOperator::Kind::metric_projector:
      return project(T.set, x);
    case CutterOperator::Kind::resolvent:
      return resolvent_apply(T.res, x);
  }
  throw InvalidInput("cutter_apply: unknown kind");
}

bool in_fixed_set(const CutterOperator& T, const Vec& x) {
  switch (T.kind) {
    case CutterOperator::Kind::subgradient_projector:
      return T.f.value(x) <= 0.0;
    case CutterOperator::Kind::metric_projector:
      return membership(T.set, x, 0.0);
    case CutterOperator::Kind::resolvent: {
      double atol = T.fix_atol < 0.0 ? 1e-12 * (1.0 + norm(x)) : T.fix_atol;
      return norm(resolvent_apply(T.res, x) - x) <= atol;
    }
  }
  return false;
}

Vec ur_apply(const CutterOperator& T, double r, const Vec& x) {
  if (r < 0.0) throw InvalidParameter("extrapolation radius must be nonnegative");
  if (in_fixed_set(T, x)) return x;
  Vec t = cutter_apply(T, x);
  Vec d = t - x;
  double nd = std::sqrt(dot(d, d));
  if (nd == 0.0) return t;
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = t[i] + r * (d[i] / nd);
  return Vec(std::move(out));
}

Vec ur_eta_apply(const CutterOperator& T, double r, double eta, const Vec& x) {
  if (!(eta > 0.0 && eta <= 2.0)) {
    throw InvalidParameter("relaxation must lie in ]0, 2]");
  }
  Vec u = ur_apply(T, r, x);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + eta * (u[i] - x[i]);
  return Vec(std::move(out));
}

CutterDiagnostics tau_diagnostic(const CutterOperator& T, const Vec& x, const Vec& y, double r) {
  if (!(r > 0.0)) throw InvalidParameter("tau_diagnostic: radius must be positive");
  if (in_fixed_set(T, x)) throw InvalidInput("tau_diagnostic: undefined on the fixed set");
  check_same_dim(x, y, "tau_diagnostic");
  Vec t = cutter_apply(T, x);
  Vec w = x - t;
  double nd = norm(w);
  CutterDiagnostics diag;
  diag.residual_T = nd;
  diag.cutter_residual = dot(y - t, x - t);
  diag.tau = dot(x - y, w) / nd - (r + nd);
  return diag;
}

double cutter_inequality_residual(const CutterOperator& T, const Vec& x, const Vec& y) {
  Vec t = cutter_apply(T, x);
  return dot(y - t, x - t);
}

double cutter_inequality_residual(const std::function<Vec(const Vec&)>& op, const Vec& x,
                                  const Vec& y) {
  Vec t = op(x);
  return dot(y - t, x - t);
}

}  // namespace pcm
