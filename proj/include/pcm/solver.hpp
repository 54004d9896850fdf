#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pcm/convex_function.hpp"
#include "pcm/operators.hpp"
#include "pcm/quasi_projector.hpp"
#include "pcm/schedules.hpp"
#include "pcm/vec.hpp"

namespace pcm {

enum class Verdict { converged_at, max_iters_reached, inconsistent };

struct StepParams {
  double r;  // extrapolation radius, or the perturbation eps for run_mcspa
  double eta;
};

// Recorded run. Points are stored densely up to trace_window and subsampled
// beyond it (final iterate always kept); params has one entry per executed
// step regardless of decimation, so params[n] pairs with iterate index n.
struct IterationTrace {
  std::vector<long> indices;      // iterate index of each stored point
  std::vector<Vec> points;        // same length as indices
  std::vector<double> residuals;  // per stored point: f(x) or ‖Tx - x‖
  std::vector<StepParams> params;
  Verdict verdict = Verdict::max_iters_reached;
  long n_star = -1;  // verdict index for converged_at
  long steps = 0;    // executed steps
  std::string message;

  const Vec& final_point() const;
};

// The full problem tuple: cutter T, constraint set C with its quasi
// projector, parameter schedules, start x_0 ∈ C. Owns the schedules
// (single-owner iterators), hence move-only.
struct ProblemSpec {
  CutterOperator op;
  QuasiProjector constraint;
  std::unique_ptr<ParameterSchedule> r_schedule;
  std::unique_ptr<ParameterSchedule> eta_schedule;
  Vec x0;
};

struct RunOptions {
  // The limiting-example replays study runs that must NOT stop at
  // feasibility (their point is non-convergence); everything else leaves
  // this on.
  bool stop_on_feasible = true;
  long trace_window = 10000;
};

// One update x + eta (U_r x - x) followed by the quasi projection; identity
// on the fixed set of T.
Vec step(const CutterOperator& T, const QuasiProjector& Q, const Vec& x, double r, double eta);

// Iterate step() until the stopping test passes or max_iters is reached.
// Stopping: f(x_n) <= feasibility_tol for subgradient-projector cutters
// (the function value is the observable the benchmarks expose), else
// ‖Tx_n - x_n‖ <= feasibility_tol together with membership in C. The test
// runs before each step, so converged_at(n) means x_n already passed.
// A mid-run InconsistentProblem is reported as verdict Verdict::inconsistent
// with the partial trace attached rather than thrown.
IterationTrace run(ProblemSpec& problem, long max_iters, double feasibility_tol,
                   const RunOptions& opts = RunOptions{});

// Perturbed subgradient iteration
//   y_{n+1} = y_n - eta_n (f(y_n) + eps_n)/‖s(y_n)‖² s(y_n)   while f(y_n) > 0.
// Convention: 0 < eta_n < 2 strictly, eps_n > 0 strictly. Same stopping rule
// and trace layout as run(); params entries hold (eps_n, eta_n).
IterationTrace run_mcspa(const ConvexFunction& f, const Vec& y0, ParameterSchedule& eps_schedule,
                         ParameterSchedule& eta_schedule, long max_iters, double feasibility_tol,
                         const RunOptions& opts = RunOptions{});

struct FejerAudit {
  long violations = 0;
  long first_violation_index = -1;  // pair-start iterate index
};

// Count stored consecutive pairs (x_n, x_{n+1}) with n >= start_index whose
// distance to y grows: ‖x_{n+1} - y‖ > ‖x_n - y‖ + 1e-9. Indices label the
// pair start. Only consecutively stored pairs are audited, so run the trace
// inside its dense window when a full audit is wanted.
FejerAudit fejer_violations(const IterationTrace& trace, const Vec& y, long start_index = 0);

}  // namespace pcm
