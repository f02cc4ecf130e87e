#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "fm/schedule.hpp"

namespace fm {

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

// Result of the exact FM optimum search. When resolved is false the budget
// ran out; optimum/witness are absent but the bounds bracket the true value
// (upper_bound comes from the best schedule seen, never a guess).
struct OracleResult {
  bool resolved = false;
  Rational optimum;
  std::optional<Schedule> witness;
  Rational lower_bound;
  Rational upper_bound;
  std::uint64_t nodes = 0;
};

/// Thrown by makespan_ratio when the oracle budget is exhausted.
struct OracleBudgetExceeded : std::runtime_error {
  Rational lower_bound;
  Rational upper_bound;
  OracleBudgetExceeded(Rational lo, Rational hi)
      : std::runtime_error("oracle node budget exhausted"),
        lower_bound(std::move(lo)),
        upper_bound(std::move(hi)) {}
};

/// Minimum makespan over all flowtime-optimal schedules, by DFS over the
/// per-rank machine assignments. Rank 1 is fixed (machine symmetry); the
/// incumbent starts at the LD makespan; a node is pruned when
/// max(current longest load, total work / m) cannot beat the incumbent.
/// threads > 1 partitions the rank-2 assignments across workers with a
/// per-worker budget share; the result is the exact minimum either way.
/// prune=false disables the lower-bound cut (cross-check hook for tests).
OracleResult optimal_fm_makespan(const Instance& inst,
                                 std::uint64_t budget = kDefaultOracleBudget,
                                 int threads = 1, bool prune = true);

struct RatioResult {
  Rational t_ld_worst;
  Rational t_opt;
  Rational ratio;  // 1 when t_opt == 0 (then t_ld_worst == 0 as well)
};

/// Worst LD makespan, exact optimum and their exact ratio.
/// Throws OracleBudgetExceeded if the oracle cannot finish.
RatioResult makespan_ratio(const Instance& inst,
                           std::uint64_t budget = kDefaultOracleBudget);

}  // namespace fm
