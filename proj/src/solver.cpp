#include "pcm/solver.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "pcm/errors.hpp"

namespace pcm {

const Vec& IterationTrace::final_point() const {
  if (points.empty()) throw InvalidInput("final_point: empty trace");
  return points.back();
}

namespace {

// Dense up to `window`, then strided by the next power of two above
// n/window, so the stored count grows logarithmically with the run length.
bool stored_by_rule(long n, long window) {
  if (n <= window) return true;
  long ratio = n / window;
  long stride = 1;
  while (stride <= ratio) stride <<= 1;
  return n % stride == 0;
}

struct TraceRecorder {
  IterationTrace& tr;
  long window;

  void record(long n, const Vec& x, double residual) {
    if (!stored_by_rule(n, window)) return;
    tr.indices.push_back(n);
    tr.points.push_back(x);
    tr.residuals.push_back(residual);
  }

  void force_final(long n, const Vec& x, double residual) {
    if (!tr.indices.empty() && tr.indices.back() == n) return;
    tr.indices.push_back(n);
    tr.points.push_back(x);
    tr.residuals.push_back(residual);
  }
};

double cutter_residual_value(const CutterOperator& T, const Vec& x) {
  if (T.kind == CutterOperator::Kind::subgradient_projector) return T.f.value(x);
  return norm(cutter_apply(T, x) - x);
}

bool feasibility_test(const CutterOperator& T, const QuasiProjector& Q, const Vec& x,
                      double residual, double tol) {
  if (T.kind == CutterOperator::Kind::subgradient_projector) return residual <= tol;
  return residual <= tol && membership(Q.set, x, 1e-9);
}

}  // namespace

Vec step(const CutterOperator& T, const QuasiProjector& Q, const Vec& x, double r, double eta) {
  if (!(eta > 0.0 && eta <= 2.0)) throw InvalidParameter("step: relaxation must lie in ]0, 2]");
  if (r < 0.0) throw InvalidParameter("step: radius must be nonnegative");
  if (in_fixed_set(T, x)) return x;  // frozen, not projected
  Vec u = ur_apply(T, r, x);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + eta * (u[i] - x[i]);
  return quasi_project(Q, Vec(std::move(y)));
}

IterationTrace run(ProblemSpec& problem, long max_iters, double feasibility_tol,
                   const RunOptions& opts) {
  if (max_iters <= 0) throw InvalidParameter("run: max_iters must be positive");
  if (feasibility_tol < 0.0) throw InvalidParameter("run: feasibility tolerance must be >= 0");
  if (!membership(problem.constraint.set, problem.x0, 1e-9)) {
    throw InvalidInput("run: start point is not in the constraint set");
  }

  IterationTrace tr;
  TraceRecorder rec{tr, opts.trace_window > 0 ? opts.trace_window : 1};
  Vec x = problem.x0;
  long n = 0;

  while (true) {
    double res = cutter_residual_value(problem.op, x);
    rec.record(n, x, res);
    bool feas = feasibility_test(problem.op, problem.constraint, x, res, feasibility_tol);
    if (opts.stop_on_feasible && feas) {
      tr.verdict = Verdict::converged_at;
      tr.n_star = n;
      rec.force_final(n, x, res);
      break;
    }
    if (n == max_iters) {
      tr.verdict = Verdict::max_iters_reached;
      rec.force_final(n, x, res);
      break;
    }
    StepContext ctx{&x, &problem.op};
    double r = problem.r_schedule->next(&ctx);
    double eta = problem.eta_schedule->next(&ctx);
    try {
      x = step(problem.op, problem.constraint, x, r, eta);
    } catch (const InconsistentProblem& e) {
      tr.verdict = Verdict::inconsistent;
      tr.message = e.what();
      rec.force_final(n, x, res);
      break;
    }
    tr.params.push_back(StepParams{r, eta});
    ++n;
  }

  tr.steps = static_cast<long>(tr.params.size());
  return tr;
}

IterationTrace run_mcspa(const ConvexFunction& f, const Vec& y0, ParameterSchedule& eps_schedule,
                         ParameterSchedule& eta_schedule, long max_iters, double feasibility_tol,
                         const RunOptions& opts) {
  if (max_iters <= 0) throw InvalidParameter("run_mcspa: max_iters must be positive");
  if (feasibility_tol < 0.0) {
    throw InvalidParameter("run_mcspa: feasibility tolerance must be >= 0");
  }

  IterationTrace tr;
  TraceRecorder rec{tr, opts.trace_window > 0 ? opts.trace_window : 1};
  Vec y = y0;
  long n = 0;

  while (true) {
    double v = f.value(y);
    if (!std::isfinite(v)) throw NonFiniteResult("run_mcspa: objective value is not finite");
    rec.record(n, y, v);
    if (opts.stop_on_feasible && v <= feasibility_tol) {
      tr.verdict = Verdict::converged_at;
      tr.n_star = n;
      rec.force_final(n, y, v);
      break;
    }
    if (n == max_iters) {
      tr.verdict = Verdict::max_iters_reached;
      rec.force_final(n, y, v);
      break;
    }
    StepContext ctx{&y, nullptr};
    double eps = eps_schedule.next(&ctx);
    double eta = eta_schedule.next(&ctx);
    if (!(eps > 0.0)) throw InvalidParameter("run_mcspa: perturbation must be positive");
    if (!(eta > 0.0 && eta < 2.0)) {
      throw InvalidParameter("run_mcspa: relaxation must lie in ]0, 2[");
    }
    if (v > 0.0) {
      Vec s = f.subgrad(y);
      double ss = dot(s, s);
      if (!std::isfinite(ss)) throw NonFiniteResult("run_mcspa: subgradient is not finite");
      if (ss == 0.0) {
        tr.verdict = Verdict::inconsistent;
        tr.message = "positive objective value with zero subgradient: the sublevel set is empty";
        rec.force_final(n, y, v);
        break;
      }
      double factor = eta * ((v + eps) / ss);
      std::vector<double> out(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        out[i] = y[i] - factor * s[i];
        if (!std::isfinite(out[i])) {
          throw NonFiniteResult("run_mcspa: perturbed step is not finite");
        }
      }
      y = Vec(std::move(out));
    }
    tr.params.push_back(StepParams{eps, eta});
    ++n;
  }

  tr.steps = static_cast<long>(tr.params.size());
  return tr;
}

FejerAudit fejer_violations(const IterationTrace& trace, const Vec& y, long start_index) {
  if (trace.indices.empty()) throw InvalidParameter("fejer_violations: empty trace");
  if (start_index < 0 || start_index > trace.indices.back()) {
    throw InvalidParameter("fejer_violations: start index outside the trace");
  }
  FejerAudit audit;
  for (std::size_t i = 0; i + 1 < trace.indices.size(); ++i) {
    if (trace.indices[i + 1] != trace.indices[i] + 1) continue;  // decimation gap
    if (trace.indices[i] < start_index) continue;
    double d0 = norm(trace.points[i] - y);
    double d1 = norm(trace.points[i + 1] - y);
    if (d1 > d0 + 1e-9) {
      ++audit.violations;
      if (audit.first_violation_index < 0) audit.first_violation_index = trace.indices[i];
    }
  }
  return audit;
}

}  // namespace pcm
