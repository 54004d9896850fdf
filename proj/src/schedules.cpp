#include "pcm/schedules.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "pcm/errors.hpp"

namespace pcm {

namespace {

class PowerSchedule final : public ParameterSchedule {
public:
  PowerSchedule(double p, double scale) : p_(p), scale_(scale) {
    if (!(p > 0.0)) throw InvalidParameter("power schedule: exponent must be positive");
    if (!(scale > 0.0)) throw InvalidParameter("power schedule: scale must be positive");
  }

  double next(const StepContext*) override {
    double v;
    // exponents 1 and 1/2 use the division forms directly so the emitted
    // doubles match the reference arithmetic bit for bit
    if (p_ == 1.0) {
      v = scale_ * (1.0 / (n_ + 1.0));
    } else if (p_ == 0.5) {
      v = scale_ * (1.0 / std::sqrt(n_ + 1.0));
    } else {
      v = scale_ * std::pow(n_ + 1.0, -p_);
    }
    ++n_;
    return v;
  }

  std::string name() const override {
    if (p_ == 1.0 && scale_ == 1.0) return "inv_n";
    if (p_ == 0.5 && scale_ == 1.0) return "inv_sqrt_n";
    char buf[48];
    std::snprintf(buf, sizeof buf, "power:%g:%g", p_, scale_);
    return buf;
  }

  std::unique_ptr<ParameterSchedule> fresh() const override {
    return std::make_unique<PowerSchedule>(p_, scale_);
  }

private:
  double p_, scale_;
};

class ConstantSchedule final : public ParameterSchedule {
public:
  explicit ConstantSchedule(double c) : c_(c) {
    if (c < 0.0) throw InvalidParameter("constant schedule: value must be nonnegative");
  }

  double next(const StepContext*) override {
    ++n_;
    return c_;
  }

  std::string name() const override {
    char buf[32];
    std::snprintf(buf, sizeof buf, "const:%g", c_);
    return buf;
  }

  std::unique_ptr<ParameterSchedule> fresh() const override {
    return std::make_unique<ConstantSchedule>(c_);
  }

private:
  double c_;
};

class Recurrence41 final : public ParameterSchedule {
public:
  explicit Recurrence41(double r_init) : r_init_(r_init), r_(r_init) {
    if (!(r_init > 0.0)) throw InvalidParameter("recurrence schedule: seed must be positive");
  }

  double next(const StepContext*) override {
    r_ = r_ * r_ / (4.0 * (1.0 + r_));
    ++n_;
    return r_;
  }

  std::string name() const override { return "recurrence_4_1"; }

  std::unique_ptr<ParameterSchedule> fresh() const override {
    return std::make_unique<Recurrence41>(r_init_);
  }

private:
  double r_init_, r_;
};

class Adaptive42 final : public ParameterSchedule {
public:
  double next(const StepContext* ctx) override {
    if (ctx == nullptr || ctx->x == nullptr || ctx->T == nullptr) {
      throw MissingContext("adaptive schedule needs the iterate and the operator");
    }
    double w = 1.0 / std::sqrt(n_ + 1.0);
    Vec u = ur_apply(*ctx->T, w, *ctx->x);
    double v = norm(u) <= 1e-12 * (1.0 + norm(*ctx->x)) ? 2.0 * w : w;
    ++n_;
    return v;
  }

  std::string name() const override { return "adaptive_4_2"; }

  std::unique_ptr<ParameterSchedule> fresh() const override {
    return std::make_unique<Adaptive42>();
  }
};

class Schedule43 final : public ParameterSchedule {
public:
  Schedule43(double k0, bool anchored) : k0_(k0), k_(k0), anchored_(anchored) {
    if (!(k0 > 0.0)) throw InvalidParameter("oscillation schedule: k0 must be positive");
  }

  double next(const StepContext* ctx) override {
    const double s3 = std::sqrt(3.0);
    const double is3 = 1.0 / std::sqrt(3.0);
    double kn;
    if (anchored_) {
      // re-derive the carried value from the iterate; the forward recurrence
      // amplifies rounding exponentially
      if (ctx == nullptr || ctx->x == nullptr) {
        throw MissingContext("anchored oscillation schedule needs the iterate");
      }
      const Vec& x = *ctx->x;
      kn = (x.size() == 1 ? std::fabs(x[0]) : norm(x)) - is3;
    } else {
      kn = k_;
    }
    double kn1 = std::sqrt((n_ + 1.0) / (n_ + 2.0)) * kn;
    double r = 0.5 * (((s3 + 2.0 * kn1) + kn) - 1.0 / (kn + is3));
    k_ = kn1;
    ++n_;
    return r;
  }

  std::string name() const override { return anchored_ ? "schedule_4_3:anchored" : "schedule_4_3"; }

  std::unique_ptr<ParameterSchedule> fresh() const override {
    return std::make_unique<Schedule43>(k0_, anchored_);
  }

private:
  double k0_, k_;
  bool anchored_;
};

class Alternating52 final : public ParameterSchedule {
public:
  double next(const StepContext*) override {
    double v = (n_ % 2 == 0) ? 1.0 / (n_ + 1.0) : 1.0 / std::sqrt(static_cast<double>(n_));
    ++n_;
    return v;
  }

  std::string name() const override { return "alternating_5_2"; }

  std::unique_ptr<ParameterSchedule> fresh() const override {
    return std::make_unique<Alternating52>();
  }
};

double parse_double_strict(const std::string& s, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidParameter(std::string(what) + ": bad numeric argument '" + s + "'");
  }
  return v;
}

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(':', start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::unique_ptr<ParameterSchedule> make_power(double p, double scale) {
  return std::make_unique<PowerSchedule>(p, scale);
}

std::unique_ptr<ParameterSchedule> make_constant(double c) {
  return std::make_unique<ConstantSchedule>(c);
}

std::unique_ptr<ParameterSchedule> make_recurrence_4_1(double r_init) {
  return std::make_unique<Recurrence41>(r_init);
}

std::unique_ptr<ParameterSchedule> make_adaptive_4_2() { return std::make_unique<Adaptive42>(); }

std::unique_ptr<ParameterSchedule> make_schedule_4_3(double k0, bool anchored) {
  return std::make_unique<Schedule43>(k0, anchored);
}

std::unique_ptr<ParameterSchedule> make_alternating_5_2() {
  return std::make_unique<Alternating52>();
}

std::unique_ptr<ParameterSchedule> make_schedule(const std::string& desc) {
  std::vector<std::string> parts = split_colon(desc);
  const std::string& head = parts[0];
  std::size_t nargs = parts.size() - 1;

  if (head == "inv_n" && nargs == 0) return make_power(1.0);
  if (head == "inv_sqrt_n" && nargs == 0) return make_power(0.5);
  if (head == "adaptive_4_2" && nargs == 0) return make_adaptive_4_2();
  if (head == "alternating_5_2" && nargs == 0) return make_alternating_5_2();
  if (head == "const" && nargs == 1) return make_constant(parse_double_strict(parts[1], "const"));
  if (head == "power" && (nargs == 1 || nargs == 2)) {
    double p = parse_double_strict(parts[1], "power");
    double scale = nargs == 2 ? parse_double_strict(parts[2], "power") : 1.0;
    return make_power(p, scale);
  }
  if (head == "recurrence_4_1" && nargs == 1) {
    return make_recurrence_4_1(parse_double_strict(parts[1], "recurrence_4_1"));
  }
  if (head == "schedule_4_3" && (nargs == 1 || nargs == 2)) {
    double k0 = parse_double_strict(parts[1], "schedule_4_3");
    bool anchored = false;
    if (nargs == 2) {
      if (parts[2] != "anchored") {
        throw InvalidParameter("schedule_4_3: unknown option '" + parts[2] + "'");
      }
      anchored = true;
    }
    return make_schedule_4_3(k0, anchored);
  }
  throw InvalidParameter("unknown schedule description: '" + desc + "'");
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::diverging:
      return "diverging";
    case Trend::bounded:
      return "bounded";
    case Trend::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Least-squares tail classification: fit the last quartile of the series
// against a power tail (log-log) and a geometric tail (semi-log) and compare
// residuals. Advisory; a partial sum proves nothing about the limit.
Trend classify_tail(const std::vector<double>& a) {
  long N = static_cast<long>(a.size());
  long q0 = (3 * N) / 4;

  bool all_zero = true;
  std::vector<double> xs, ys, ns;
  for (long n = q0; n < N; ++n) {
    if (a[static_cast<std::size_t>(n)] != 0.0) all_zero = false;
    if (a[static_cast<std::size_t>(n)] > 0.0) {
      xs.push_back(std::log(static_cast<double>(n) + 1.0));
      ys.push_back(std::log(a[static_cast<std::size_t>(n)]));
      ns.push_back(static_cast<double>(n));
    }
  }
  if (all_zero) return Trend::bounded;
  if (xs.size() < 3) return Trend::inconclusive;

  auto fit = [](const std::vector<double>& X, const std::vector<double>& Y) {
    double m = static_cast<double>(X.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      sx += X[i];
      sy += Y[i];
      sxx += X[i] * X[i];
      sxy += X[i] * Y[i];
    }
    double denom = sxx - sx * sx / m;
    double slope = denom != 0.0 ? (sxy - sx * sy / m) / denom : 0.0;
    double icept = sy / m - slope * (sx / m);
    double sse = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      double e = Y[i] - (icept + slope * X[i]);
      sse += e * e;
    }
    return std::pair<double, double>(slope, sse);
  };

  auto [slope_pow, sse_pow] = fit(xs, ys);
  auto [slope_geo, sse_geo] = fit(ns, ys);
  double beta = -slope_pow;
  double q = std::exp(slope_geo);

  if ((sse_geo < sse_pow && q <= 0.99) || beta >= 1.1) return Trend::bounded;
  if (beta <= 1.05) return Trend::diverging;
  return Trend::inconclusive;
}

}  // namespace

DivergenceReport divergence_report(ParameterSchedule& r_sched, ParameterSchedule& eta_sched,
                                   long N) {
  if (N <= 0) throw InvalidParameter("divergence_report: horizon must be positive");
  DivergenceReport rep;
  rep.horizon = N;
  std::vector<double> a1, a2;
  a1.reserve(static_cast<std::size_t>(N));
  a2.reserve(static_cast<std::size_t>(N));
  for (long n = 0; n < N; ++n) {
    double r = r_sched.next();
    double e = eta_sched.next();
    double t1 = e * r;
    double t2 = e * (2.0 - e) * (r * r);
    rep.partial_sum_eta_r += t1;
    rep.partial_sum_eta_2me_r2 += t2;
    a1.push_back(t1);
    a2.push_back(t2);
  }
  rep.trend_eta_r = classify_tail(a1);
  rep.trend_eta_2me_r2 = classify_tail(a2);
  return rep;
}

double mcspa_epsilon_linked(double r, double grad_norm) {
  if (!(r > 0.0)) throw InvalidParameter("mcspa_epsilon_linked: radius must be positive");
  if (grad_norm < 0.0) throw InvalidParameter("mcspa_epsilon_linked: negative gradient norm");
  return r * grad_norm;
}

MonotonicityAudit epsilon_monotonicity_audit(const std::vector<double>& values) {
  if (values.empty()) throw InvalidParameter("epsilon_monotonicity_audit: empty sequence");
  MonotonicityAudit audit;
  for (std::size_t n = 0; n + 1 < values.size(); ++n) {
    if (values[n + 1] >= values[n]) {
      audit.strictly_decreasing = false;
      audit.first_violation_index = static_cast<long>(n);
      break;
    }
  }
  return audit;
}

}  // namespace pcm
