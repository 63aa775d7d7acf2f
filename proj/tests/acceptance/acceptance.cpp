// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "tnn/verify.hpp"

using namespace tnn;

namespace {

struct Run {
  std::string suite;
  int n;
  int samples;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Run> runs;
  long min_cases;         // the criterion's sample size, counted over all runs
  double time_limit = 0;  // seconds; 0 = none
};

RunConfig config(const Run& r) {
  RunConfig c;
  c.n = r.n;
  c.samples = r.samples;
  c.seed = 20240601;
  return c;
}

bool check(const Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  long cases = 0, failures = 0;
  std::string detail, first_failure;
  for (const auto& r : c.runs) {
    VerificationReport rep;
    try {
      rep = run_suite(r.suite, config(r));
    } catch (const std::exception& e) {
      ++failures;
      if (first_failure.empty()) first_failure = e.what();
      continue;
    }
    cases += rep.cases;
    failures += static_cast<long>(rep.failures.size());
    if (first_failure.empty() && !rep.failures.empty())
      first_failure = rep.failures.front().key + ": " + rep.failures.front().message;
    detail += " [" + r.suite + " n=" + std::to_string(r.n) + " cases=" +
              std::to_string(rep.cases) + (rep.summary.empty() ? "" : " " + rep.summary.dump()) + "]";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool timely = c.time_limit <= 0 || secs <= c.time_limit;
  const bool ok = failures == 0 && cases >= c.min_cases && timely;
  std::printf("AC%-2d %s  %s: cases=%ld (need >= %ld) failures=%ld time=%.1fs%s%s\n", c.id,
              ok ? "PASS" : "FAIL", c.title.c_str(), cases, c.min_cases, failures, secs,
              c.time_limit > 0 ? (" (limit " + std::to_string(static_cast<int>(c.time_limit)) + "s)").c_str() : "",
              detail.c_str());
  if (!first_failure.empty()) std::printf("     first failure: %s\n", first_failure.c_str());
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  // Case counts: verma S_5 has 3781 comparable pairs of which 3661 are strict;
  // bruhat S_4 covers all 576 ordered pairs; param-cell is 120 cells x 3;
  // the rho run at n = 3 adds 50 closed-form cases.
  const std::vector<Criterion> criteria = {
      {1, "Verma sums on all S_5 intervals, Moebius on all S_4 pairs",
       {{"verma", 5, 1}, {"bruhat", 4, 1}}, 3781 + 576, 60},
      {2, "Lusztig points land in their cell and are TNN, S_5 x 3", {{"param-cell", 5, 3}}, 360, 120},
      {3, "Factorization x = x_u x^u, 500 cases in S_4", {{"factorization", 4, 500}}, 500},
      {4, "rho contract and inverse pair (500, S_4) and SL(3) closed forms (50)",
       {{"rho", 4, 500}, {"rho", 3, 1}}, 551},
      {5, "Torus equivariance, tau in {1/3, 2, 7/5}, 200 cases", {{"equivariance", 4, 200}}, 200},
      {6, "Sign pattern and str(A^-1 nu A) >= 0, 1000 samples in S_3, S_4",
       {{"signs", 3, 500}, {"signs", 4, 500}}, 1000},
      {7, "str(psi(x)) > 0 on 10^4 fiber points, psi(x_u) = 0",
       {{"psi-positivity", 3, 5000}, {"psi-positivity", 4, 5000}}, 10000},
      {8, "Backward flows reach x_u within 1e-6, 100 points in S_3", {{"flow", 3, 100}}, 100, 60},
      {9, "Link census on all S_4 intervals, eps in {1/2, 1, 2}", {{"link-census", 4, 2}}, 23},
      {10, "Retraction of L(e, w_o) in S_3 over 20 link points", {{"retraction", 3, 20}}, 21},
  };
  int failed = 0;
  for (const auto& c : criteria) failed += check(c) ? 0 : 1;
  std::printf("%d of %zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
