#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "arcsqp/driver.hpp"
#include "arcsqp/testlib.hpp"

namespace arcsqp {

/// One row of a benchmark run.
struct BenchRecord {
  std::string problem;
  int n = 0;
  int m = 0;
  std::string status;
  long nit = 0;
  long nf = 0;
  long nc = 0;
  long ng = 0;
  double res = 0.0;
  double time_s = 0.0;
};

/// Fixed CSV schema: "problem,n,m,status,nit,nf,nc,ng,res,time_s".
std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& r);
std::string bench_csv(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> parse_bench_csv(std::istream& in);

/// Solves one registered problem and condenses the report to a record.
BenchRecord run_problem(const std::string& name, const SolverConfig& config);

/// Runs the named problems, optionally on `parallel` threads. Records come
/// back in input order; runs are deterministic apart from time_s.
std::vector<BenchRecord> run_suite(const std::vector<std::string>& names,
                                   const SolverConfig& config, int parallel);

/// Stepwise performance profile over one metric. For problem p and solver s,
/// r_{p,s} = metric_{p,s} / min_s metric_{p,s}, with r = inf for failed runs;
/// rho_s(tau) = |{p : r_{p,s} <= tau}| / |P|, tabulated on a log2 grid.
struct ProfileResult {
  std::vector<std::string> solver_names;
  std::vector<double> tau;
  std::vector<std::vector<double>> rho;  ///< rho[s][i] at tau[i]
};

ProfileResult performance_profile(
    const std::vector<std::vector<BenchRecord>>& runs,
    const std::vector<std::string>& solver_names, const std::string& metric);

std::string profile_csv(const ProfileResult& p);

/// Structured report serializations for the CLI.
std::string report_to_json(const SolverReport& report,
                           const std::string& problem_name);
std::string report_to_kv(const SolverReport& report,
                         const std::string& problem_name);

}  // namespace arcsqp
