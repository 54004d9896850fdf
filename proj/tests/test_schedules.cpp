#include <cmath>
#include <vector>

#include "doctest.h"
#include "pcm/convex_function.hpp"
#include "pcm/operators.hpp"
#include "pcm/schedules.hpp"
#include "pcm/solver.hpp"
#include "pcm/vec.hpp"

using namespace pcm;

TEST_CASE("power schedules") {
  auto p1 = make_power(1.0);
  CHECK(p1->next() == 1.0);
  CHECK(p1->next() == 0.5);
  CHECK(p1->next() == 1.0 / 3.0);
  CHECK(p1->name() == "inv_n");

  auto ph = make_power(0.5);
  CHECK(ph->next() == 1.0);
  CHECK(ph->next() == 1.0 / std::sqrt(2.0));
  CHECK(ph->name() == "inv_sqrt_n");

  auto p2 = make_power(2.0, 3.0);
  CHECK(p2->next() == 3.0);
  CHECK(p2->next() == doctest::Approx(0.75).epsilon(1e-15));

  // non-increasing, strictly positive
  auto p = make_power(0.7);
  double prev = p->next();
  for (int n = 1; n < 500; ++n) {
    double v = p->next();
    CHECK(v > 0.0);
    CHECK(v <= prev);
    prev = v;
  }

  CHECK_THROWS_AS(make_power(0.0), InvalidParameter);
  CHECK_THROWS_AS(make_power(-1.0), InvalidParameter);
  CHECK_THROWS_AS(make_power(1.0, 0.0), InvalidParameter);

  SUBCASE("harmonic partial sums against a higher-precision reference") {
    auto s = make_power(1.0);
    double sum = 0.0;
    long double ref = 0.0L;
    for (long n = 0; n < 1000000; ++n) {
      sum += s->next();
      ref += 1.0L / (static_cast<long double>(n) + 1.0L);
    }
    CHECK(std::fabs(sum - static_cast<double>(ref)) <= 1e-9);
  }
}

TEST_CASE("constant schedule") {
  auto c = make_constant(0.25);
  CHECK(c->next() == 0.25);
  CHECK(c->next() == 0.25);
  CHECK(c->index() == 2);
  CHECK_THROWS_AS(make_constant(-1.0), InvalidParameter);
}

TEST_CASE("quartic-decay recurrence") {
  auto r = make_recurrence_4_1(1.0);
  CHECK(r->next() == 0.125);
  CHECK(r->next() == 1.0 / 288.0);

  auto s = make_recurrence_4_1(1.0);
  double prev = 1.0;
  double quarter_bound = 1.0;
  for (int n = 0; n < 60; ++n) {
    double v = s->next();
    quarter_bound *= 0.25;
    CHECK(v <= prev / 4.0);
    CHECK(v <= quarter_bound);  // r_n <= (1/4)^{n+1} r_init
    CHECK(v >= 0.0);
    prev = v;
  }
  // the recurrence underflows to exact zero in doubles; kept as-is
  CHECK(prev == 0.0);

  CHECK_THROWS_AS(make_recurrence_4_1(0.0), InvalidParameter);
  CHECK_THROWS_AS(make_recurrence_4_1(-2.0), InvalidParameter);
}

TEST_CASE("adaptive schedule needs and uses the iterate") {
  auto a = make_adaptive_4_2();
  CHECK_THROWS_AS(a->next(), MissingContext);
  CHECK_THROWS_AS(a->next(nullptr), MissingContext);

  CutterOperator T = CutterOperator::subgradient_projector(builtin_objective("square"));

  // at n=0, w=1: from x=0.5 the extrapolated point is -0.75, nonzero -> w
  Vec x1 = Vec::scalar(0.5);
  StepContext c1{&x1, &T};
  auto a1 = make_adaptive_4_2();
  CHECK(a1->next(&c1) == 1.0);

  // from x=2 the extrapolated point is exactly 0 -> doubled radius 2w
  Vec x2 = Vec::scalar(2.0);
  StepContext c2{&x2, &T};
  auto a2 = make_adaptive_4_2();
  CHECK(a2->next(&c2) == 2.0);
}

TEST_CASE("oscillation schedule") {
  auto s = make_schedule_4_3(1.0);
  double r0 = s->next();
  CHECK(r0 == doctest::Approx(1.7561448868632055).epsilon(1e-14));
  CHECK(r0 == doctest::Approx(1.756146).epsilon(1e-6));

  CHECK_THROWS_AS(make_schedule_4_3(0.0), InvalidParameter);

  SUBCASE("carried recurrence matches the closed form") {
    // k_n = k0/sqrt(n+1) exactly, so the emitted r_n must match the value
    // computed from closed-form k's within 1e-12 relative
    const double k0 = 1.0;
    const double s3 = std::sqrt(3.0);
    const double is3 = 1.0 / std::sqrt(3.0);
    auto sched = make_schedule_4_3(k0);
    for (long n = 0; n < 1000; ++n) {
      double r = sched->next();
      double kn = k0 / std::sqrt(n + 1.0);
      double kn1 = k0 / std::sqrt(n + 2.0);
      double expect = 0.5 * (((s3 + 2.0 * kn1) + kn) - 1.0 / (kn + is3));
      CHECK(std::fabs(r - expect) <= 1e-12 * std::fabs(expect));
      CHECK(r > 1.5 * kn1);  // r_n > 3 k_{n+1} / 2
      CHECK(r > 0.0);
    }
  }

  SUBCASE("anchored variant derives its state from the iterate") {
    // seed the plain recurrence with the exact double the anchored variant
    // will derive from |x0| = 2: k = 2 - 1/sqrt(3)
    auto plain = make_schedule_4_3(2.0 - 1.0 / std::sqrt(3.0));
    auto anchored = make_schedule_4_3(1.0, true);
    CHECK_THROWS_AS(anchored->next(), MissingContext);

    ConvexFunction f = builtin_objective("square_p1");
    CutterOperator T = CutterOperator::subgradient_projector(f);
    Vec x0 = Vec::scalar(2.0);
    StepContext ctx{&x0, &T};
    CHECK(anchored->next(&ctx) == plain->next());
  }
}

TEST_CASE("alternating schedule") {
  auto s = make_alternating_5_2();
  CHECK(s->next() == 1.0);        // even: 1/(n+1)
  CHECK(s->next() == 1.0);        // odd: n^{-1/2} at n=1
  CHECK(s->next() == 1.0 / 3.0);
  CHECK(s->next() == 1.0 / std::sqrt(3.0));
  CHECK(s->next() == 0.2);
}

TEST_CASE("schedule parsing") {
  CHECK(make_schedule("inv_n")->next() == 1.0);
  CHECK(make_schedule("inv_sqrt_n")->name() == "inv_sqrt_n");
  CHECK(make_schedule("const:0.5")->next() == 0.5);
  CHECK(make_schedule("power:2")->next() == 1.0);
  CHECK(make_schedule("power:1:0.5")->next() == 0.5);
  CHECK(make_schedule("recurrence_4_1:1")->next() == 0.125);
  CHECK(make_schedule("schedule_4_3:1")->next() == doctest::Approx(1.7561448868632055));
  CHECK(make_schedule("alternating_5_2")->name() == "alternating_5_2");
  CHECK_THROWS_AS(make_schedule("adaptive_4_2")->next(), MissingContext);
  CHECK_THROWS_AS(make_schedule("no_such_schedule"), InvalidParameter);
  CHECK_THROWS_AS(make_schedule("const:abc"), InvalidParameter);
  CHECK_THROWS_AS(make_schedule("const:"), InvalidParameter);
  CHECK_THROWS_AS(make_schedule(""), InvalidParameter);
}

TEST_CASE("fresh clones restart the sequence") {
  auto s = make_power(1.0);
  s->next();
  s->next();
  auto f = s->fresh();
  CHECK(f->next() == 1.0);
  CHECK(s->next() == 1.0 / 3.0);

  auto r = make_recurrence_4_1(1.0);
  r->next();
  CHECK(r->fresh()->next() == 0.125);
}

TEST_CASE("divergence audit of the series conditions") {
  SUBCASE("harmonic series diverges") {
    auto r = make_power(1.0);
    auto e = make_constant(1.0);
    DivergenceReport rep = divergence_report(*r, *e, 1000);
    CHECK(rep.partial_sum_eta_r == doctest::Approx(7.485470860550343).epsilon(1e-14));
    CHECK(rep.horizon == 1000);
    CHECK(rep.trend_eta_r == Trend::diverging);
    // second series sum 1/(n+1)^2 is summable
    CHECK(rep.trend_eta_2me_r2 == Trend::bounded);
  }

  SUBCASE("quartic-decay radii are summable") {
    auto r = make_recurrence_4_1(1.0);
    auto e = make_constant(1.0);
    DivergenceReport rep = divergence_report(*r, *e, 1000);
    CHECK(rep.partial_sum_eta_r == doctest::Approx(0.12847522587691906).epsilon(1e-14));
    CHECK(rep.partial_sum_eta_r < 0.13);
    CHECK(rep.trend_eta_r == Trend::bounded);
    CHECK(rep.trend_eta_2me_r2 == Trend::bounded);
  }

  SUBCASE("eta = 2 kills the second series exactly") {
    auto r = make_power(0.5);
    auto e = make_constant(2.0);
    DivergenceReport rep = divergence_report(*r, *e, 1000);
    CHECK(rep.partial_sum_eta_2me_r2 == 0.0);
    CHECK(rep.trend_eta_2me_r2 == Trend::bounded);
    CHECK(rep.trend_eta_r == Trend::diverging);
  }

  SUBCASE("inverse square root diverges in both series") {
    auto r = make_power(0.5);
    auto e = make_constant(1.0);
    DivergenceReport rep = divergence_report(*r, *e, 1000);
    CHECK(rep.trend_eta_r == Trend::diverging);
    CHECK(rep.trend_eta_2me_r2 == Trend::diverging);
  }

  SUBCASE("constant radii diverge") {
    auto r = make_constant(0.5);
    auto e = make_constant(1.0);
    DivergenceReport rep = divergence_report(*r, *e, 1000);
    CHECK(rep.trend_eta_r == Trend::diverging);
  }

  SUBCASE("clearly summable power tail") {
    auto r = make_power(2.0);
    auto e = make_constant(1.0);
    CHECK(divergence_report(*r, *e, 1000).trend_eta_r == Trend::bounded);
  }

  SUBCASE("partial sums are non-decreasing in the horizon") {
    auto r1 = make_power(1.0);
    auto e1 = make_constant(1.0);
    double s500 = divergence_report(*r1, *e1, 500).partial_sum_eta_r;
    auto r2 = make_power(1.0);
    auto e2 = make_constant(1.0);
    double s1000 = divergence_report(*r2, *e2, 1000).partial_sum_eta_r;
    CHECK(s1000 >= s500);
  }

  SUBCASE("horizon validation") {
    auto r = make_power(1.0);
    auto e = make_constant(1.0);
    CHECK_THROWS_AS(divergence_report(*r, *e, 0), InvalidParameter);
  }
}

TEST_CASE("linked perturbation magnitude") {
  CHECK(mcspa_epsilon_linked(0.5, 4.0) == 2.0);
  CHECK(mcspa_epsilon_linked(0.7, 0.0) == 0.0);
  CHECK(mcspa_epsilon_linked(0.1, 200.0) == doctest::Approx(20.0).epsilon(1e-15));
  CHECK_THROWS_AS(mcspa_epsilon_linked(0.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(mcspa_epsilon_linked(-1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(mcspa_epsilon_linked(1.0, -1.0), InvalidParameter);
}

TEST_CASE("perturbation monotonicity audit") {
  MonotonicityAudit ok = epsilon_monotonicity_audit({1.0, 0.5, 0.25});
  CHECK(ok.strictly_decreasing);
  CHECK(ok.first_violation_index == -1);

  MonotonicityAudit tie = epsilon_monotonicity_audit({1.0, 1.0});
  CHECK_FALSE(tie.strictly_decreasing);
  CHECK(tie.first_violation_index == 0);

  MonotonicityAudit single = epsilon_monotonicity_audit({3.0});
  CHECK(single.strictly_decreasing);

  CHECK_THROWS_AS(epsilon_monotonicity_audit({}), InvalidParameter);

  SUBCASE("the alternating-radius run produces a non-monotone perturbation") {
    // iterate x_{n+1} = U_{r_n} x_n for f(x)=x^2-1 from a large start and
    // audit eps_n = r_n * |f'(x_n)|: the first increase lands at an even
    // index >= 4
    for (double x0 : {100.0, 1000.0, 1e6}) {
      ProblemSpec p{
          CutterOperator::subgradient_projector(builtin_objective("x2m1")),
          QuasiProjector::metric(ConvexSet::whole_space(1)),
          make_alternating_5_2(),
          make_constant(1.0),
          Vec::scalar(x0),
      };
      RunOptions opts;
      opts.stop_on_feasible = false;
      IterationTrace tr = run(p, 40, 1e-6, opts);

      std::vector<double> eps;
      for (long n = 0; n < 30; ++n) {
        double grad = std::fabs(2.0 * tr.points[static_cast<std::size_t>(n)][0]);
        eps.push_back(mcspa_epsilon_linked(tr.params[static_cast<std::size_t>(n)].r, grad));
      }
      MonotonicityAudit audit = epsilon_monotonicity_audit(eps);
      CHECK_FALSE(audit.strictly_decreasing);
      CHECK(audit.first_violation_index == 4);
      CHECK(audit.first_violation_index % 2 == 0);
    }
  }
}
