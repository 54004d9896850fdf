#include "pcm/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/rng.hpp"
#include "pcm/solver.hpp"

namespace pcm {

namespace {

const char* algorithm_label(Algorithm alg) {
  return alg == Algorithm::projected_cutter ? "projected_cutter" : "mcspa";
}

// Magnitude is drawn first (one u01), then a gaussian direction for d > 1,
// so the 1-dimensional tables consume exactly one draw per trial.
Vec start_point(SplitMix64& rng, int dim, double magnitude) {
  if (dim == 1) return Vec::scalar(magnitude);
  std::vector<double> g(static_cast<std::size_t>(dim));
  double ng = 0.0;
  do {
    ng = 0.0;
    for (double& gi : g) {
      gi = sample_gaussian(rng);
      ng += gi * gi;
    }
    ng = std::sqrt(ng);
  } while (!(ng > 0.0));
  for (double& gi : g) gi = magnitude * (gi / ng);
  return Vec(std::move(g));
}

void validate_row(const RowSpec& row) {
  make_schedule(row.schedule);  // throws InvalidParameter on unknown names
  if (row.alg == Algorithm::projected_cutter) {
    if (!(row.eta > 0.0 && row.eta <= 2.0)) {
      throw InvalidParameter("run_table: cutter relaxation must lie in ]0, 2]");
    }
  } else if (!(row.eta > 0.0 && row.eta < 2.0)) {
    throw InvalidParameter("run_table: mcspa relaxation must lie in ]0, 2[");
  }
}

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_csv_double(const std::string& field) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw IoError("csv: malformed float field '" + field + "'");
  }
  return v;
}

long parse_csv_long(const std::string& field) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw IoError("csv: malformed integer field '" + field + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

constexpr const char* kCsvHeader = "algorithm,schedule,eta,mean,median,min,max,trials";

}  // namespace

long run_row_from_start(const RowSpec& row, const ConvexFunction& f, const Vec& x0, double tol,
                        long max_iters) {
  if (row.alg == Algorithm::mcspa) {
    auto eps = make_schedule(row.schedule);
    auto eta = make_constant(row.eta);
    IterationTrace tr = run_mcspa(f, x0, *eps, *eta, max_iters, tol);
    return tr.verdict == Verdict::converged_at ? tr.n_star : -1;
  }
  ProblemSpec p{CutterOperator::subgradient_projector(f),
                QuasiProjector::metric(ConvexSet::whole_space(x0.size())),
                make_schedule(row.schedule), make_constant(row.eta), x0};
  IterationTrace tr = run(p, max_iters, tol);
  return tr.verdict == Verdict::converged_at ? tr.n_star : -1;
}

std::vector<StatsRow> run_table(const TableSpec& spec) {
  if (spec.trials <= 0) throw InvalidParameter("run_table: trials must be positive");
  if (spec.rows.empty()) throw InvalidParameter("run_table: table has no rows");
  if (!(spec.lo < spec.hi)) throw InvalidParameter("run_table: start range needs lo < hi");
  if (spec.dist == StartDist::log_uniform && !(spec.lo > 0.0)) {
    throw InvalidParameter("run_table: log-uniform starts need lo > 0");
  }
  if (spec.dim <= 0) throw InvalidParameter("run_table: dimension must be positive");
  if (spec.max_iters <= 0) throw InvalidParameter("run_table: max_iters must be positive");
  if (spec.feasibility_tol < 0.0) {
    throw InvalidParameter("run_table: feasibility tolerance must be >= 0");
  }
  ConvexFunction f = builtin_objective(spec.objective);
  for (const RowSpec& row : spec.rows) validate_row(row);

  std::vector<StatsRow> out;
  std::string failed;
  for (std::size_t ri = 0; ri < spec.rows.size(); ++ri) {
    const RowSpec& row = spec.rows[ri];
    std::vector<long> counts(static_cast<std::size_t>(spec.trials));
    int exhausted = 0;
    for (int t = 0; t < spec.trials; ++t) {
      SplitMix64 rng = trial_stream(spec.seed, ri, static_cast<std::uint64_t>(t));
      double m = spec.dist == StartDist::log_uniform ? sample_log_uniform(rng, spec.lo, spec.hi)
                                                     : sample_uniform(rng, spec.lo, spec.hi);
      Vec x0 = start_point(rng, spec.dim, m);
      long c = run_row_from_start(row, f, x0, spec.feasibility_tol, spec.max_iters);
      if (c < 0) ++exhausted;
      counts[static_cast<std::size_t>(t)] = c;
    }
    if (exhausted > 0) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%srow %zu (%s, %s): %d of %d trials exhausted max_iters",
                    failed.empty() ? "" : "; ", ri, algorithm_label(row.alg),
                    row.schedule.c_str(), exhausted, spec.trials);
      failed += buf;
    }
    std::sort(counts.begin(), counts.end());
    double sum = 0.0;
    for (long c : counts) sum += static_cast<double>(c);
    StatsRow s;
    s.algorithm = algorithm_label(row.alg);
    s.schedule = row.schedule;
    s.eta = row.eta;
    s.mean = sum / static_cast<double>(spec.trials);
    s.median = counts[(counts.size() - 1) / 2];
    s.min = counts.front();
    s.max = counts.back();
    s.trials = spec.trials;
    out.push_back(std::move(s));
  }
  if (!failed.empty()) throw RowFailed("run_table: " + failed);
  return out;
}

namespace {

TableSpec reference_table(const char* objective) {
  TableSpec spec;
  spec.objective = objective;
  spec.rows = {{Algorithm::projected_cutter, "inv_n", 1.0},
               {Algorithm::projected_cutter, "inv_n", 2.0},
               {Algorithm::projected_cutter, "inv_sqrt_n", 1.0},
               {Algorithm::projected_cutter, "inv_sqrt_n", 2.0},
               {Algorithm::mcspa, "inv_n", 1.0},
               {Algorithm::mcspa, "inv_sqrt_n", 1.0}};
  return spec;
}

}  // namespace

TableSpec table1_spec() { return reference_table("x2m1"); }

TableSpec table2_spec() { return reference_table("100x2m1"); }

std::string emit_csv_string(const std::vector<StatsRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const StatsRow& r : rows) {
    out += r.algorithm;
    out += ',';
    out += r.schedule;
    out += ',';
    out += fmt_g17(r.eta);
    out += ',';
    out += fmt_g17(r.mean);
    char buf[96];
    std::snprintf(buf, sizeof buf, ",%ld,%ld,%ld,%d\n", r.median, r.min, r.max, r.trials);
    out += buf;
  }
  return out;
}

void emit_csv(const std::vector<StatsRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("csv: cannot open for writing: " + path);
  out << emit_csv_string(rows);
  out.flush();
  if (!out) throw IoError("csv: write failed: " + path);
}

std::vector<StatsRow> parse_csv_string(const std::string& text) {
  std::vector<std::string> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != kCsvHeader) {
    throw IoError("csv: missing or malformed header");
  }
  std::vector<StatsRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields = split(lines[i], ',');
    if (fields.size() != 8) {
      throw IoError("csv: expected 8 fields, got " + std::to_string(fields.size()));
    }
    StatsRow r;
    r.algorithm = fields[0];
    r.schedule = fields[1];
    r.eta = parse_csv_double(fields[2]);
    r.mean = parse_csv_double(fields[3]);
    r.median = parse_csv_long(fields[4]);
    r.min = parse_csv_long(fields[5]);
    r.max = parse_csv_long(fields[6]);
    r.trials = static_cast<int>(parse_csv_long(fields[7]));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<StatsRow> parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("csv: cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("csv: read failed: " + path);
  return parse_csv_string(ss.str());
}

}  // namespace pcm
