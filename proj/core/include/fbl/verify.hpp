#pragma once

#include <string>
#include <vector>

namespace fbl {

struct CheckPoint {
  std::string label;
  bool ok = false;
  std::string note;
};

struct SuiteResult {
  std::string suite;
  std::string description;
  bool passed = false;
  std::vector<CheckPoint> checks;

  std::size_t failed_count() const;
};

// Numerical verification suites for the monotonicity / convexity /
// discontinuity structure of the bounds, each on a documented default grid:
//   lemma2  P_pair(D) decreasing and convex for D >= 2R
//   lemma3  dmin_upper nondecreasing in n at fixed (M, k)
//   lemma4  dmin_upper(n) <= lambda_bound(M,k,n) * n, lambda < 2(M-1)/M + 1/n
//   lemma5  2 H_M^{-1}(1/(k+1)) < 1/M for qualifying k
//   thm1    simulator radius sweep: error/erasure rates nonincreasing,
//           confusion nondecreasing under common random numbers
//   thm4    p_con_lb decreasing and convex in E
//   thm5    p_con_lb decreasing in n inside dmin_max-consistent intervals,
//           via the exact interval ratio factors
//   thm6    p_con_ub decreasing in E inside each interval, jumps exactly at
//           E_i = 4 R^2 / i
//   thm7    p_con_ub decreasing in n inside dmin_min-consistent intervals
//   cor1    p_con_ub local maxima at E_i all equal; local minima shrink as
//           E grows
const std::vector<std::string>& suite_names();

SuiteResult run_suite(const std::string& name);  // throws on unknown name
std::vector<SuiteResult> run_all_suites();

std::string to_json(const SuiteResult& result);
std::string to_json(const std::vector<SuiteResult>& results);

}  // namespace fbl
