#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pcm/operators.hpp"
#include "pcm/vec.hpp"

namespace pcm {

// Solver state handed to state-dependent schedules (adaptive_4_2 inspects
// the extrapolated step; schedule_4_3 in anchored mode re-derives its carried
// value from the iterate).
struct StepContext {
  const Vec* x = nullptr;
  const CutterOperator* T = nullptr;
};

// Stateful single-owner iterator over a parameter sequence. next() returns
// the value for the current index and advances. Not shareable while
// iterating; fresh() clones the initial state for replays and parallel
// trials.
class ParameterSchedule {
public:
  virtual ~ParameterSchedule() = default;
  virtual double next(const StepContext* ctx = nullptr) = 0;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<ParameterSchedule> fresh() const = 0;
  long index() const { return n_; }

protected:
  long n_ = 0;
};

// scale * (n+1)^(-p). Exponents 1 and 1/2 use 1/(n+1) and 1/sqrt(n+1)
// directly so the emitted doubles match the benchmark's reference
// arithmetic bit for bit.
std::unique_ptr<ParameterSchedule> make_power(double p, double scale = 1.0);

std::unique_ptr<ParameterSchedule> make_constant(double c);

// r_n = r_{n-1}^2 / (4 (1 + r_{n-1})), seeded with r_{-1} = r_init. Decays
// at least geometrically with ratio 1/4; underflows to exact zero in
// doubles after a dozen or so steps, which is kept as-is.
std::unique_ptr<ParameterSchedule> make_recurrence_4_1(double r_init);

// w_n = (n+1)^{-1/2}; emits 2*w_n when the extrapolated point U_{w_n} x_n
// vanishes (|U_{w_n} x_n| <= 1e-12 (1 + |x_n|)), w_n otherwise. Needs the
// iterate context.
std::unique_ptr<ParameterSchedule> make_adaptive_4_2();

// k_{n+1} = sqrt((n+1)/(n+2)) k_n (so k_n = k_0/sqrt(n+1)), with
//   r_n = 1/2 (sqrt(3) + 2 k_{n+1} + k_n - 1/(k_n + 1/sqrt(3))).
// anchored=true re-derives k_n from the iterate as |x_n| - 1/sqrt(3) each
// step instead of carrying the recurrence, which is exponentially unstable
// as a forward iteration; the carried form is the default.
std::unique_ptr<ParameterSchedule> make_schedule_4_3(double k0, bool anchored = false);

// 1/(n+1) at even n, n^{-1/2} at odd n (so r_1 = 1).
std::unique_ptr<ParameterSchedule> make_alternating_5_2();

// Parse a schedule description: inv_n | inv_sqrt_n | const:c | power:p[:scale]
// | recurrence_4_1:r_init | adaptive_4_2 | schedule_4_3:k0[:anchored]
// | alternating_5_2.
std::unique_ptr<ParameterSchedule> make_schedule(const std::string& desc);

enum class Trend { diverging, bounded, inconclusive };

std::string to_string(Trend t);

// Numerical audit of the step-size series conditions sum(eta_n r_n) and
// sum(eta_n (2-eta_n) r_n^2). A finite sum proves nothing; the trend flags
// are a least-squares fit of the last-quartile increments against power and
// geometric tail models, advisory only.
struct DivergenceReport {
  double partial_sum_eta_r = 0.0;
  double partial_sum_eta_2me_r2 = 0.0;
  long horizon = 0;
  Trend trend_eta_r = Trend::inconclusive;
  Trend trend_eta_2me_r2 = Trend::inconclusive;
};

DivergenceReport divergence_report(ParameterSchedule& r_sched, ParameterSchedule& eta_sched,
                                   long N);

// eps_n = r_n * ‖grad f(x_n)‖, the perturbation that makes the subgradient
// variant of the extrapolated step a special case of the perturbed update.
double mcspa_epsilon_linked(double r, double grad_norm);

struct MonotonicityAudit {
  bool strictly_decreasing = true;
  long first_violation_index = -1;  // first n with values[n+1] >= values[n]
};

MonotonicityAudit epsilon_monotonicity_audit(const std::vector<double>& values);

}  // namespace pcm
