#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "arcsqp/bench.hpp"

using namespace arcsqp;

namespace {

BenchRecord rec(const std::string& name, const std::string& status, long nit,
                long nf, double res) {
  BenchRecord r;
  r.problem = name;
  r.n = 2;
  r.m = 1;
  r.status = status;
  r.nit = nit;
  r.nf = nf;
  r.nc = nf + 1;
  r.ng = nf;
  r.res = res;
  r.time_s = 0.001;
  return r;
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("csv header is fixed") {
    CHECK(bench_csv_header() == "problem,n,m,status,nit,nf,nc,ng,res,time_s");
  }

  TEST_CASE("csv round trip") {
    std::vector<BenchRecord> records = {
        rec("A", "converged", 3, 4, 1.2345678901234567e-9),
        rec("B", "max-iter", 500, 777, 0.25),
    };
    records[1].res = std::nan("");
    const std::string csv = bench_csv(records);
    std::istringstream in(csv);
    const std::vector<BenchRecord> back = parse_bench_csv(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].problem == "A");
    CHECK(back[0].nit == 3);
    CHECK(back[0].res == records[0].res);  // shortest round-trip is exact
    CHECK(back[1].status == "max-iter");
    CHECK(std::isnan(back[1].res));
    CHECK(back[0].time_s == doctest::Approx(0.001).epsilon(1e-9));
  }

  TEST_CASE("csv parser rejects a wrong header") {
    std::istringstream in("problem,n,m\nA,1,1\n");
    CHECK_THROWS(parse_bench_csv(in));
  }

  TEST_CASE("run_problem produces a converged record") {
    const BenchRecord r = run_problem("BOOTH", SolverConfig{});
    CHECK(r.problem == "BOOTH");
    CHECK(r.status == "converged");
    CHECK(r.nit == 1);
    CHECK(r.n == 2);
    CHECK(r.m == 2);
  }

  TEST_CASE("parallel suite matches the serial one apart from timing") {
    const std::vector<std::string> names = {"BOOTH", "MARATOS", "HS7",
                                            "HS28", "HS40", "RECIPE"};
    const SolverConfig config;
    const auto serial = run_suite(names, config, 1);
    const auto parallel = run_suite(names, config, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].problem == parallel[i].problem);
      CHECK(serial[i].status == parallel[i].status);
      CHECK(serial[i].nit == parallel[i].nit);
      CHECK(serial[i].nf == parallel[i].nf);
      CHECK(serial[i].res == parallel[i].res);
    }
  }

  TEST_CASE("profile of a dominant solver is one at tau = 1") {
    std::vector<BenchRecord> a = {
        rec("P1", "converged", 2, 3, 1e-8),
        rec("P2", "converged", 4, 5, 1e-8),
        rec("P3", "converged", 6, 7, 1e-8),
    };
    std::vector<BenchRecord> b = {
        rec("P1", "converged", 5, 9, 1e-8),
        rec("P2", "converged", 9, 11, 1e-8),
        rec("P3", "max-iter", 500, 700, 1e-1),
    };
    const ProfileResult prof =
        performance_profile({a, b}, {"a", "b"}, "nf");
    REQUIRE(prof.tau.size() >= 2);
    CHECK(prof.tau[0] == 1.0);
    CHECK(prof.rho[0][0] == doctest::Approx(1.0));  // a wins every problem
    CHECK(prof.rho[1][0] == doctest::Approx(0.0));

    // monotone in tau, and the tail equals the solved fraction
    for (std::size_t s = 0; s < prof.rho.size(); ++s) {
      for (std::size_t i = 1; i < prof.tau.size(); ++i) {
        CHECK(prof.rho[s][i] >= prof.rho[s][i - 1]);
      }
    }
    CHECK(prof.rho[0].back() == doctest::Approx(1.0));
    CHECK(prof.rho[1].back() == doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("profile csv layout") {
    std::vector<BenchRecord> a = {rec("P1", "converged", 2, 3, 1e-8)};
    const ProfileResult prof = performance_profile({a}, {"solver"}, "nit");
    const std::string csv = profile_csv(prof);
    CHECK(csv.rfind("tau,solver\n", 0) == 0);
    CHECK(csv.find("\n1,") != std::string::npos);
  }

  TEST_CASE("json report carries the headline numbers") {
    const SolverReport report = solve(get_problem("MARATOS").problem);
    const std::string text = report_to_json(report, "MARATOS");
    const nlohmann::json j = nlohmann::json::parse(text);
    CHECK(j["problem"] == "MARATOS");
    CHECK(j["status"] == "converged");
    CHECK(j["nit"].get<int>() == report.nit);
    CHECK(j["history"].size() == report.history.size());

    const std::string kv = report_to_kv(report, "MARATOS");
    CHECK(kv.find("status converged\n") != std::string::npos);
    CHECK(kv.find("nit ") != std::string::npos);
  }
}
