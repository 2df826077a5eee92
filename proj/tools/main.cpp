#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arcsqp/bench.hpp"
#include "arcsqp/driver.hpp"
#include "arcsqp/testlib.hpp"

namespace {

std::string res_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

std::string file_stem(const std::string& path) {
  const std::size_t slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const std::size_t dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base;
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << content;
}

arcsqp::HessianStrategy parse_hessian(const std::string& s) {
  if (s == "exact") return arcsqp::HessianStrategy::Exact;
  if (s == "fd") return arcsqp::HessianStrategy::FD;
  if (s == "bfgs") return arcsqp::HessianStrategy::BFGS;
  throw CLI::ValidationError("--hessian", "expected exact|fd|bfgs");
}

int cmd_solve(const std::string& name, double tol, int max_iter, double sigma0,
              const std::string& hessian, bool verbose, bool json) {
  arcsqp::TestProblem tp;
  try {
    tp = arcsqp::get_problem(name);
  } catch (const std::out_of_range& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  arcsqp::SolverConfig config;
  config.epsilon = tol;
  config.max_iter = max_iter;
  config.sigma0 = sigma0;
  config.hessian_strategy = parse_hessian(hessian);

  const arcsqp::SolverReport report = arcsqp::solve(tp.problem, config);
  std::cout << tp.problem.name << ' ' << arcsqp::status_name(report.status)
            << " nit=" << report.nit << " res=" << res_sci(report.res) << '\n';
  if (json) {
    std::cout << arcsqp::report_to_json(report, tp.problem.name) << '\n';
  }
  if (verbose) {
    std::cout << arcsqp::report_to_kv(report, tp.problem.name);
    for (const arcsqp::IterationRecord& r : report.history) {
      std::cout << "iter k=" << r.k << " type=" << r.step_type
                << " alpha=" << r.alpha << " h=" << res_sci(r.h)
                << " l=" << res_sci(r.l) << " sigma=" << res_sci(r.sigma)
                << " res=" << res_sci(r.res) << " trials=" << r.ls_trials
                << '\n';
      for (const auto& [alpha, reason] : r.rejected_trials) {
        std::cout << "  rejected alpha=" << alpha << " reason=" << reason
                  << '\n';
      }
      if (!r.restoration_trace.empty()) {
        std::cout << "  restoration h:";
        for (double h : r.restoration_trace) std::cout << ' ' << res_sci(h);
        std::cout << '\n';
      }
    }
    std::cout << "filter csv\n" << "h,l\n";
    for (const arcsqp::FilterEntry& e : report.final_filter) {
      std::cout << e.h << ',' << e.l << '\n';
    }
  }
  return report.status == arcsqp::SolverStatus::Converged ? 0 : 1;
}

int cmd_bench(const std::string& suite, const std::string& out, int parallel) {
  std::vector<std::string> names;
  for (const std::string& n : arcsqp::problem_names()) {
    if (suite == "all" || arcsqp::reference_stats(n).has_value()) {
      names.push_back(n);
    }
  }
  arcsqp::SolverConfig config;
  const std::vector<arcsqp::BenchRecord> records =
      arcsqp::run_suite(names, config, parallel);
  write_or_print(out, arcsqp::bench_csv(records));
  return 0;
}

int cmd_profile(const std::vector<std::string>& inputs,
                const std::string& metric, const std::string& out) {
  std::vector<std::vector<arcsqp::BenchRecord>> runs;
  std::vector<std::string> names;
  for (const std::string& path : inputs) {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "cannot open " << path << '\n';
      return 2;
    }
    runs.push_back(arcsqp::parse_bench_csv(in));
    names.push_back(file_stem(path));
  }
  const arcsqp::ProfileResult prof =
      arcsqp::performance_profile(runs, names, metric);
  write_or_print(out, arcsqp::profile_csv(prof));
  return 0;
}

int cmd_list() {
  for (const std::string& n : arcsqp::problem_names()) {
    const arcsqp::TestProblem tp = arcsqp::get_problem(n);
    std::cout << n << " n=" << tp.problem.n << " m=" << tp.problem.m << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubic-regularization SQP solver for equality-constrained "
               "problems with a filter line search"};
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "solve one built-in problem");
  std::string problem;
  double tol = 1e-6;
  int max_iter = 500;
  double sigma0 = arcsqp::SolverConfig{}.sigma0;
  std::string hessian = "exact";
  bool verbose = false;
  bool json = false;
  solve_cmd->add_option("--problem", problem, "problem name")->required();
  solve_cmd->add_option("--tol", tol, "termination tolerance on the residual");
  solve_cmd->add_option("--max-iter", max_iter, "iteration budget");
  solve_cmd->add_option("--sigma0", sigma0, "initial regularization weight");
  solve_cmd->add_option("--hessian", hessian, "exact|fd|bfgs");
  solve_cmd->add_flag("--verbose", verbose, "per-iteration trace");
  solve_cmd->add_flag("--json", json, "print a JSON report");

  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite");
  std::string suite = "paper";
  std::string bench_out;
  int parallel = 1;
  bench_cmd->add_option("--suite", suite, "paper|all")
      ->check(CLI::IsMember({"paper", "all"}));
  bench_cmd->add_option("--out", bench_out, "CSV output file (default stdout)");
  bench_cmd->add_option("--parallel", parallel, "concurrent solves");

  auto* profile_cmd =
      app.add_subcommand("profile", "performance profiles from bench CSVs");
  std::vector<std::string> inputs;
  std::string metric = "nit";
  std::string profile_out;
  profile_cmd->add_option("--inputs", inputs, "bench CSV files, one per solver")
      ->required()
      ->expected(-1);
  profile_cmd->add_option("--metric", metric, "nit|nf|nc|ng")
      ->check(CLI::IsMember({"nit", "nf", "nc", "ng"}));
  profile_cmd->add_option("--out", profile_out, "CSV output file (default stdout)");

  auto* list_cmd = app.add_subcommand("list", "list built-in problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (solve_cmd->parsed()) {
      return cmd_solve(problem, tol, max_iter, sigma0, hessian, verbose, json);
    }
    if (bench_cmd->parsed()) return cmd_bench(suite, bench_out, parallel);
    if (profile_cmd->parsed()) return cmd_profile(inputs, metric, profile_out);
    if (list_cmd->parsed()) return cmd_list();
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
