#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "pcm/bench.hpp"
#include "pcm/errors.hpp"
#include "pcm/solver.hpp"

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find(',', start);
    std::string field =
        pos == std::string::npos ? text.substr(start) : text.substr(start, pos - start);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
      throw pcm::InvalidParameter("malformed number '" + field + "' in list '" + text + "'");
    }
    out.push_back(v);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

pcm::ConvexSet parse_constraint(const std::string& desc, std::size_t dim) {
  if (desc == "none") return pcm::ConvexSet::whole_space(dim);
  if (desc == "orthant") return pcm::ConvexSet::nonneg_orthant(dim);
  if (desc.rfind("box:", 0) == 0) {
    std::string rest = desc.substr(4);
    for (char& c : rest) {
      if (c == ':') c = ',';  // "box:lo:hi" -> list parser input
    }
    std::vector<double> bounds = parse_number_list(rest);
    if (bounds.size() != 2) {
      throw pcm::InvalidParameter("constraint box needs exactly two bounds: box:lo:hi");
    }
    return pcm::ConvexSet::box(pcm::Vec(dim, bounds[0]), pcm::Vec(dim, bounds[1]));
  }
  throw pcm::InvalidParameter("unknown constraint '" + desc + "' (none | orthant | box:lo:hi)");
}

std::string fmt_point(const pcm::Vec& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) out += ", ";
    if (i == 16) {
      out += "...";
      break;
    }
    out += g17(x[i]);
  }
  out += "]";
  return out;
}

void write_trace_csv(const pcm::IterationTrace& tr, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pcm::IoError("trace: cannot open for writing: " + path);
  std::size_t d = tr.points.empty() ? 0 : tr.points.front().size();
  out << "n";
  for (std::size_t i = 0; i < d; ++i) out << ",x" << i;
  out << ",r,eta,residual\n";
  for (std::size_t i = 0; i < tr.indices.size(); ++i) {
    long n = tr.indices[i];
    out << n;
    for (std::size_t j = 0; j < d; ++j) out << ',' << g17(tr.points[i][j]);
    if (n < tr.steps) {
      const pcm::StepParams& p = tr.params[static_cast<std::size_t>(n)];
      out << ',' << g17(p.r) << ',' << g17(p.eta);
    } else {
      out << ",,";  // no step was taken from the final stored point
    }
    out << ',' << g17(tr.residuals[i]) << '\n';
  }
  out.flush();
  if (!out) throw pcm::IoError("trace: write failed: " + path);
}

struct SolveArgs {
  std::string objective = "x2m1";
  std::string constraint = "none";
  std::string r_schedule = "inv_n";
  double eta = 1.0;
  double tol = 1e-6;
  long max_iters = 100000;
  std::string x0 = "2";
  std::string trace_out;
};

int run_solve(const SolveArgs& a) {
  pcm::ConvexFunction f = pcm::builtin_objective(a.objective);
  pcm::Vec x0{parse_number_list(a.x0)};
  pcm::ProblemSpec p{pcm::CutterOperator::subgradient_projector(std::move(f)),
                     pcm::QuasiProjector::metric(parse_constraint(a.constraint, x0.size())),
                     pcm::make_schedule(a.r_schedule), pcm::make_constant(a.eta), x0};
  pcm::IterationTrace tr = pcm::run(p, a.max_iters, a.tol);
  std::printf("objective %s, constraint %s, r-schedule %s, eta %s, tol %s\n", a.objective.c_str(),
              a.constraint.c_str(), a.r_schedule.c_str(), g17(a.eta).c_str(),
              g17(a.tol).c_str());
  switch (tr.verdict) {
    case pcm::Verdict::converged_at:
      std::printf("converged at n = %ld (%ld steps executed)\n", tr.n_star, tr.steps);
      break;
    case pcm::Verdict::max_iters_reached:
      std::printf("max iterations (%ld) reached without feasibility\n", a.max_iters);
      break;
    case pcm::Verdict::inconsistent:
      std::printf("inconsistent problem: %s\n", tr.message.c_str());
      break;
  }
  std::printf("final point %s, residual %s\n", fmt_point(tr.final_point()).c_str(),
              g17(tr.residuals.back()).c_str());
  if (!a.trace_out.empty()) {
    write_trace_csv(tr, a.trace_out);
    std::printf("trace (%zu stored points) written to %s\n", tr.indices.size(),
                a.trace_out.c_str());
  }
  return tr.verdict == pcm::Verdict::converged_at ? 0 : 1;
}

struct BenchArgs {
  std::string table = "1";
  std::string objective;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string distribution;
  double lo = 0.0;
  double hi = 0.0;
  int dim = 0;
  long max_iters = 0;
  double tol = 0.0;
  std::string out;
};

int run_bench(const CLI::App* cmd, const BenchArgs& a) {
  pcm::TableSpec spec = a.table == "2" ? pcm::table2_spec() : pcm::table1_spec();
  if (cmd->count("--objective") > 0) spec.objective = a.objective;
  if (cmd->count("--trials") > 0) spec.trials = a.trials;
  if (cmd->count("--seed") > 0) spec.seed = a.seed;
  if (cmd->count("--distribution") > 0) {
    spec.dist =
        a.distribution == "uniform" ? pcm::StartDist::uniform : pcm::StartDist::log_uniform;
  }
  if (cmd->count("--lo") > 0) spec.lo = a.lo;
  if (cmd->count("--hi") > 0) spec.hi = a.hi;
  if (cmd->count("--dim") > 0) spec.dim = a.dim;
  if (cmd->count("--max-iters") > 0) spec.max_iters = a.max_iters;
  if (cmd->count("--tol") > 0) spec.feasibility_tol = a.tol;
  std::vector<pcm::StatsRow> rows = pcm::run_table(spec);
  if (a.out.empty()) {
    std::fputs(pcm::emit_csv_string(rows).c_str(), stdout);
  } else {
    pcm::emit_csv(rows, a.out);
    std::printf("wrote %zu rows to %s\n", rows.size(), a.out.c_str());
  }
  return 0;
}

struct ScenarioArgs {
  std::string name;
  long horizon = 0;
};

int run_scenario(const ScenarioArgs& a) {
  pcm::ScenarioReport rep = pcm::run_limiting_example(a.name, a.horizon);
  std::printf("scenario %s: %s\n", rep.name.c_str(), rep.pass ? "PASS" : "FAIL");
  std::printf("  horizon        %ld\n", rep.horizon);
  std::printf("  max deviation  %.3g\n", rep.max_deviation);
  std::printf("  %s\n", rep.detail.c_str());
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projected cutter method: single runs, benchmark tables, limiting-example replays"};
  app.require_subcommand(1);
  app.set_config("--config", "", "plain-text key=value config file");

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand("solve", "run one projected cutter iteration to feasibility");
  solve->add_option("--objective", sa.objective, "built-in objective name")
      ->capture_default_str();
  solve->add_option("--constraint", sa.constraint, "none | orthant | box:lo:hi")
      ->capture_default_str();
  solve->add_option("--r-schedule", sa.r_schedule,
                    "extrapolation radius schedule (e.g. inv_n, inv_sqrt_n, const:0.5, "
                    "power:p[:scale], recurrence_4_1:r0, adaptive_4_2, schedule_4_3:k0[:anchored], "
                    "alternating_5_2)")
      ->capture_default_str();
  solve->add_option("--eta", sa.eta, "relaxation in ]0, 2]")->capture_default_str();
  solve->add_option("--tol", sa.tol, "feasibility tolerance")->capture_default_str();
  solve->add_option("--max-iters", sa.max_iters, "iteration cap")->capture_default_str();
  solve->add_option("--x0", sa.x0, "start point, comma-separated components")
      ->capture_default_str();
  solve->add_option("--trace-out", sa.trace_out, "write the stored trace as CSV to this path");

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "run a benchmark table and emit CSV");
  bench->add_option("--table", ba.table, "1 | 2 | custom (custom = six-row layout, tune via flags)")
      ->check(CLI::IsMember({"1", "2", "custom"}))
      ->capture_default_str();
  bench->add_option("--objective", ba.objective, "override the table objective");
  bench->add_option("--trials", ba.trials, "starts per row");
  bench->add_option("--seed", ba.seed, "RNG seed (default pinned for the reference tables)");
  bench->add_option("--distribution", ba.distribution, "start magnitude distribution")
      ->check(CLI::IsMember({"uniform", "log_uniform"}));
  bench->add_option("--lo", ba.lo, "start range lower bound");
  bench->add_option("--hi", ba.hi, "start range upper bound");
  bench->add_option("--dim", ba.dim, "ambient dimension");
  bench->add_option("--max-iters", ba.max_iters, "per-trial iteration cap");
  bench->add_option("--tol", ba.tol, "feasibility tolerance");
  bench->add_option("--out", ba.out, "write CSV here instead of stdout");

  ScenarioArgs sc;
  CLI::App* scenario = app.add_subcommand("scenario", "replay a named limiting example");
  scenario->add_option("--name", sc.name, "divergent_series | empty_interior | empty_fixset")
      ->required();
  scenario->add_option("--horizon", sc.horizon, "steps to replay (0 = scenario default)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return run_solve(sa);
    if (bench->parsed()) return run_bench(bench, ba);
    return run_scenario(sc);
  } catch (const pcm::InvalidParameter& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const pcm::InvalidInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const pcm::UnknownScenario& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const pcm::NotACone& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const pcm::MissingContext& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const pcm::InvalidRelaxation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const pcm::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
