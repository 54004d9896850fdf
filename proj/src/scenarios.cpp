#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>

#include "pcm/bench.hpp"
#include "pcm/errors.hpp"
#include "pcm/solver.hpp"

namespace pcm {

namespace {

IterationTrace replay(ConvexFunction f, std::unique_ptr<ParameterSchedule> r_schedule,
                      double x0, long horizon) {
  ProblemSpec p{CutterOperator::subgradient_projector(std::move(f)),
                QuasiProjector::metric(ConvexSet::whole_space(1)), std::move(r_schedule),
                make_constant(1.0), Vec::scalar(x0)};
  RunOptions opts;
  opts.stop_on_feasible = false;  // the point of these runs is non-convergence
  opts.trace_window = horizon;   // keep the whole trajectory dense
  return run(p, horizon, 1e-6, opts);
}

std::string fmt_detail(const char* fmt, double a, long b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

// Summable radii: the iterate tracks 1 + r_{n-1} and stalls strictly above
// the solution set, never becoming feasible.
ScenarioReport divergent_series_report(long horizon) {
  ScenarioReport rep;
  rep.name = "divergent_series";
  rep.horizon = horizon;
  IterationTrace tr = replay(builtin_objective("x2m1"), make_recurrence_4_1(1.0), 2.0, horizon);
  auto sched = make_recurrence_4_1(1.0);
  double r_prev = 1.0;
  double dev = 0.0;
  for (std::size_t i = 0; i < tr.points.size(); ++i) {
    double expected = 1.0 + r_prev;
    dev = std::max(dev, std::fabs(tr.points[i][0] - expected));
    r_prev = sched->next();
  }
  rep.max_deviation = dev;
  rep.pass = dev <= 1e-12;
  rep.detail =
      fmt_detail("iterate tracks 1 + r_{n-1} to within %.3g over %ld steps", dev, horizon);
  return rep;
}

// Solution set {0} has no interior: the radius-doubling schedule keeps
// 0 < |x_n|/2 < r_n at every step, so the iterate never lands on 0 and
// converges only in the limit.
ScenarioReport empty_interior_report(long horizon) {
  ScenarioReport rep;
  rep.name = "empty_interior";
  rep.horizon = horizon;
  IterationTrace tr = replay(builtin_objective("square"), make_adaptive_4_2(), 2.0, horizon);
  double dev = 0.0;
  double min_margin = HUGE_VAL;
  bool hit_zero = false;
  long first_bad = -1;
  for (std::size_t i = 0; i < tr.points.size(); ++i) {
    double ax = std::fabs(tr.points[i][0]);
    if (ax == 0.0) {
      hit_zero = true;
      if (first_bad < 0) first_bad = tr.indices[i];
    }
    if (tr.indices[i] < tr.steps) {
      double margin = tr.params[static_cast<std::size_t>(tr.indices[i])].r - 0.5 * ax;
      min_margin = std::min(min_margin, margin);
      if (margin <= 0.0) {
        dev = std::max(dev, -margin);
        if (first_bad < 0) first_bad = tr.indices[i];
      }
    }
  }
  rep.max_deviation = dev;
  rep.pass = !hit_zero && dev == 0.0 && min_margin > 0.0;
  rep.detail = rep.pass
                   ? fmt_detail("0 < |x_n|/2 < r_n held (tightest margin %.3g) over %ld steps",
                                min_margin, horizon)
                   : fmt_detail("invariant 0 < |x_n|/2 < r_n first broken (by %.3g) at n = %ld",
                                dev, first_bad);
  return rep;
}

// No fixed point at all: |x_n| = 1/sqrt(3) + 1/sqrt(n+1) with strictly
// alternating sign, a bounded non-convergent oscillation.
ScenarioReport empty_fixset_report(long horizon) {
  ScenarioReport rep;
  rep.name = "empty_fixset";
  rep.horizon = horizon;
  const double is3 = 1.0 / std::sqrt(3.0);
  IterationTrace tr =
      replay(builtin_objective("square_p1"), make_schedule_4_3(1.0, true), is3 + 1.0, horizon);
  double dev = 0.0;
  bool alternates = true;
  for (std::size_t i = 0; i < tr.points.size(); ++i) {
    long n = tr.indices[i];
    double x = tr.points[i][0];
    dev = std::max(dev, std::fabs(std::fabs(x) - (is3 + 1.0 / std::sqrt(n + 1.0))));
    if (n % 2 == 0 ? !(x > 0.0) : !(x < 0.0)) alternates = false;
  }
  rep.max_deviation = dev;
  rep.pass = alternates && dev <= 1e-9;
  rep.detail = alternates ? fmt_detail("|x_n| matched 1/sqrt(3) + 1/sqrt(n+1) to within %.3g "
                                       "with strict sign alternation over %ld steps",
                                       dev, horizon)
                          : fmt_detail("sign alternation broke (deviation %.3g, horizon %ld)",
                                       dev, horizon);
  return rep;
}

}  // namespace

ScenarioReport run_limiting_example(const std::string& name, long horizon) {
  if (horizon < 0) throw InvalidParameter("run_limiting_example: horizon must be nonnegative");
  if (name == "divergent_series") {
    return divergent_series_report(horizon == 0 ? 40 : horizon);
  }
  if (name == "empty_interior") {
    return empty_interior_report(horizon == 0 ? 10000 : horizon);
  }
  if (name == "empty_fixset") {
    return empty_fixset_report(horizon == 0 ? 1000 : horizon);
  }
  throw UnknownScenario("unknown scenario: " + name);
}

}  // namespace pcm
