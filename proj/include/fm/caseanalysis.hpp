#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fm/instance.hpp"
#include "fm/lp.hpp"

namespace fm {

// One case of the symbolic worst-ratio analysis for (m, k).
//
// The processing times of a normalized instance (mu(r) == lambda(r+1),
// mu(k) == 0) are treated as LP variables, laid out as
//   lambda_1 .. lambda_k, then mid_{r,i} for r = 1..k, i = 2..m-1
// (rank r reads as lambda_r >= mid_{r,2} >= ... >= mid_{r,m-1} >=
// lambda_{r+1}, with lambda_{k+1} = 0). A case fixes one run of the LD
// rule: the ascending machine order assumed before each rank and the
// machine whose final load is the makespan, all expressed as non-strict
// homogeneous inequalities (sign_conditions), which makes the LD makespan
// a single linear expression. It also fixes one candidate assignment whose
// machine loads are constrained <= 1, so the LP maximizes the LD makespan
// over all instances for which that candidate proves an optimum <= 1.
// The max over all cases is the exact worst-case ratio.
struct CaseSpec {
  int m = 0;
  int k = 0;
  std::string id;
  // LD branch assumptions plus the final argmax choice; every lhs <= 0.
  std::vector<Constraint> sign_conditions;
  // candidate[r-1][i] = index (into the rank's nonincreasing value list)
  // of the value machine i runs in rank r. Rank 1 is the identity.
  std::vector<std::vector<int>> candidate;
  LinExpr ld_makespan;
  LpProblem lp;

  nlohmann::json to_json() const;
};

inline constexpr std::uint64_t kDefaultCaseCap = 1u << 20;

/// Thrown when (m!)^(k-1) * m * (m!)^(k-1) would exceed the cap.
struct CaseLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Number of symbolic variables for (m, k): k lambdas + k*(m-2) middles.
std::size_t case_var_count(int m, int k);

/// Maps a normalized instance onto the symbolic variable layout.
/// Requires inst.machines() == m, inst.ranks() == k and Property 2.
std::vector<Rational> symbolic_point(const Instance& inst);

/// True iff x satisfies every sign condition of the case (non-strict).
bool sign_conditions_hold(const CaseSpec& c, const std::vector<Rational>& x);

/// All cases for (m, k), deterministic order and ids.
std::vector<CaseSpec> enumerate_cases(int m, int k,
                                      std::uint64_t cap = kDefaultCaseCap);

struct CaseResult {
  std::string id;
  LpSolution solution;
  bool certificate_ok = false;  // meaningful when status == Optimal
};

struct BoundReport {
  int m = 0;
  int k = 0;
  Rational bound;
  std::vector<CaseSpec> specs;
  std::vector<CaseResult> cases;  // aligned with specs
  bool any_unbounded = false;
  bool any_bad_certificate = false;
  Rational max_value;                  // over optimal cases; 0 if none
  std::vector<std::string> attaining;  // case ids reaching max_value
  bool pass = false;

  nlohmann::json to_json() const;
};

/// Solves every case of (m, k), re-checks all certificates, and passes iff
/// no LP is unbounded, every certificate verifies and the max optimum is
/// <= bound. threads > 1 solves cases in parallel; the report is
/// identical either way.
BoundReport verify_bound(int m, int k, const Rational& bound, int threads = 1,
                         std::uint64_t cap = kDefaultCaseCap);

/// Rank counts k for which the (5m-2)/(4m-1) worst-ratio bound is not yet
/// settled at m machines: empty for m in {2, 3}, {4, 5} for m >= 4.
/// Throws for m < 2.
std::set<int> remaining_cases(int m);

// Hand-written reference LPs with known exact outcomes, kept alongside the
// generic enumerator so a regression in either is detectable.
struct ReferenceLp {
  LpProblem lp;
  LpStatus expected_status = LpStatus::Optimal;
  Rational expected_value;
  std::vector<Rational> expected_point;  // empty when the optimum is not unique
  bool point_is_unique = false;  // if true the solver must return it exactly
};

/// The seven two-machine, three-rank reference LPs (one infeasible).
std::vector<ReferenceLp> reference_lps_m2k3();

/// A three-machine, three-rank reference LP over (l1, l2, l3, a1, a2) with
/// optimum 9/8; expected_point is one optimal vertex, not necessarily the
/// one the solver picks.
ReferenceLp reference_lp_m3k3_grid();

}  // namespace fm
