#include "arcsqp/bench.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace arcsqp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  return std::stod(s);
}

}  // namespace

std::string bench_csv_header() {
  return "problem,n,m,status,nit,nf,nc,ng,res,time_s";
}

std::string bench_csv_row(const BenchRecord& r) {
  std::string out = r.problem;
  out += ',' + std::to_string(r.n);
  out += ',' + std::to_string(r.m);
  out += ',' + r.status;
  out += ',' + std::to_string(r.nit);
  out += ',' + std::to_string(r.nf);
  out += ',' + std::to_string(r.nc);
  out += ',' + std::to_string(r.ng);
  out += ',' + shortest(r.res);
  out += ',' + fixed4(r.time_s);
  return out;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::string out = bench_csv_header();
  out.push_back('\n');
  for (const BenchRecord& r : records) {
    out += bench_csv_row(r);
    out.push_back('\n');
  }
  return out;
}

std::vector<BenchRecord> parse_bench_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("bench CSV: empty input");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != bench_csv_header()) {
    throw std::runtime_error("bench CSV: unexpected header '" + line + "'");
  }
  std::vector<BenchRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 10) {
      throw std::runtime_error("bench CSV: malformed row '" + line + "'");
    }
    BenchRecord r;
    r.problem = f[0];
    r.n = std::stoi(f[1]);
    r.m = std::stoi(f[2]);
    r.status = f[3];
    r.nit = std::stol(f[4]);
    r.nf = std::stol(f[5]);
    r.nc = std::stol(f[6]);
    r.ng = std::stol(f[7]);
    r.res = parse_double(f[8]);
    r.time_s = parse_double(f[9]);
    out.push_back(std::move(r));
  }
  return out;
}

BenchRecord run_problem(const std::string& name, const SolverConfig& config) {
  const TestProblem tp = get_problem(name);
  BenchRecord rec;
  rec.problem = tp.problem.name;
  rec.n = tp.problem.n;
  rec.m = tp.problem.m;
  try {
    const SolverReport report = solve(tp.problem, config);
    rec.status = status_name(report.status);
    rec.nit = report.nit;
    rec.nf = report.counters.nf;
    rec.nc = report.counters.nc;
    rec.ng = report.counters.ng;
    rec.res = report.res;
    rec.time_s = report.wall_time_s;
  } catch (const std::exception&) {
    rec.status = "error";
    rec.res = std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

std::vector<BenchRecord> run_suite(const std::vector<std::string>& names,
                                   const SolverConfig& config, int parallel) {
  std::vector<BenchRecord> records(names.size());
  if (parallel <= 1) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      records[i] = run_problem(names[i], config);
    }
    return records;
  }
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < names.size();
         i = next.fetch_add(1)) {
      records[i] = run_problem(names[i], config);
    }
  };
  std::vector<std::thread> pool;
  const int nthreads =
      std::min<int>(parallel, static_cast<int>(names.size()));
  pool.reserve(nthreads);
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return records;
}

ProfileResult performance_profile(
    const std::vector<std::vector<BenchRecord>>& runs,
    const std::vector<std::string>& solver_names, const std::string& metric) {
  if (runs.empty()) throw std::invalid_argument("profile: no input runs");
  if (runs.size() != solver_names.size()) {
    throw std::invalid_argument("profile: name/run count mismatch");
  }
  const auto metric_of = [&](const BenchRecord& r) -> double {
    if (metric == "nit") return static_cast<double>(r.nit);
    if (metric == "nf") return static_cast<double>(r.nf);
    if (metric == "nc") return static_cast<double>(r.nc);
    if (metric == "ng") return static_cast<double>(r.ng);
    throw std::invalid_argument("profile: unknown metric '" + metric + "'");
  };

  // problems are matched by name across runs; every run must cover the set
  // of the first one
  const std::vector<BenchRecord>& base = runs[0];
  const std::size_t np = base.size();
  const std::size_t ns = runs.size();
  std::vector<std::vector<double>> ratio(ns, std::vector<double>(np, kInf));

  for (std::size_t p = 0; p < np; ++p) {
    std::vector<double> vals(ns, kInf);
    for (std::size_t s = 0; s < ns; ++s) {
      const BenchRecord* found = nullptr;
      for (const BenchRecord& r : runs[s]) {
        if (r.problem == base[p].problem) {
          found = &r;
          break;
        }
      }
      if (found == nullptr) {
        throw std::runtime_error("profile: run " + solver_names[s] +
                                 " misses problem " + base[p].problem);
      }
      if (found->status == "converged") vals[s] = metric_of(*found);
    }
    double best = kInf;
    for (double v : vals) best = std::min(best, v);
    for (std::size_t s = 0; s < ns; ++s) {
      if (!std::isfinite(vals[s])) continue;
      if (best == 0.0) {
        ratio[s][p] = vals[s] == 0.0 ? 1.0 : kInf;
      } else {
        ratio[s][p] = vals[s] / best;
      }
    }
  }

  double rmax = 1.0;
  for (const auto& rs : ratio) {
    for (double r : rs) {
      if (std::isfinite(r)) rmax = std::max(rmax, r);
    }
  }

  ProfileResult out;
  out.solver_names = solver_names;
  const int jmax = static_cast<int>(std::ceil(4.0 * std::log2(rmax))) + 4;
  for (int j = 0; j <= jmax; ++j) {
    out.tau.push_back(std::exp2(static_cast<double>(j) / 4.0));
  }
  out.rho.assign(ns, std::vector<double>(out.tau.size(), 0.0));
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t i = 0; i < out.tau.size(); ++i) {
      int count = 0;
      for (std::size_t p = 0; p < np; ++p) {
        if (ratio[s][p] <= out.tau[i]) ++count;
      }
      out.rho[s][i] = np == 0 ? 0.0 : static_cast<double>(count) / np;
    }
  }
  return out;
}

std::string profile_csv(const ProfileResult& p) {
  std::string out = "tau";
  for (const std::string& s : p.solver_names) out += ',' + s;
  out.push_back('\n');
  for (std::size_t i = 0; i < p.tau.size(); ++i) {
    out += shortest(p.tau[i]);
    for (std::size_t s = 0; s < p.rho.size(); ++s) {
      out += ',' + shortest(p.rho[s][i]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string report_to_json(const SolverReport& report,
                           const std::string& problem_name) {
  nlohmann::json j;
  j["problem"] = problem_name;
  j["status"] = status_name(report.status);
  j["nit"] = report.nit;
  j["res"] = report.res;
  j["wall_time_s"] = report.wall_time_s;
  j["x_final"] = std::vector<double>(report.x_final.data(),
                                     report.x_final.data() + report.x_final.size());
  j["counters"] = {{"nf", report.counters.nf},
                   {"nc", report.counters.nc},
                   {"ng", report.counters.ng},
                   {"nj", report.counters.nj},
                   {"nh", report.counters.nh}};
  j["fd_gradient"] = report.used_fd_gradient;
  j["fd_jacobian"] = report.used_fd_jacobian;
  nlohmann::json hist = nlohmann::json::array();
  for (const IterationRecord& r : report.history) {
    hist.push_back({{"k", r.k},
                    {"h", r.h},
                    {"l", r.l},
                    {"sigma", r.sigma},
                    {"alpha", r.alpha},
                    {"step_type", std::string(1, r.step_type)},
                    {"res", r.res},
                    {"ls_trials", r.ls_trials}});
  }
  j["history"] = hist;
  return j.dump(2);
}

std::string report_to_kv(const SolverReport& report,
                         const std::string& problem_name) {
  std::ostringstream os;
  os << "problem " << problem_name << '\n';
  os << "status " << status_name(report.status) << '\n';
  os << "nit " << report.nit << '\n';
  os << "res " << shortest(report.res) << '\n';
  os << "nf " << report.counters.nf << '\n';
  os << "nc " << report.counters.nc << '\n';
  os << "ng " << report.counters.ng << '\n';
  os << "nj " << report.counters.nj << '\n';
  os << "nh " << report.counters.nh << '\n';
  os << "wall_time_s " << fixed4(report.wall_time_s) << '\n';
  os << "fd_gradient " << (report.used_fd_gradient ? 1 : 0) << '\n';
  os << "fd_jacobian " << (report.used_fd_jacobian ? 1 : 0) << '\n';
  os << "x_final";
  for (Eigen::Index i = 0; i < report.x_final.size(); ++i) {
    os << ' ' << shortest(report.x_final[i]);
  }
  os << '\n';
  return os.str();
}

}  // namespace arcsqp
