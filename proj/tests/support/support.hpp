#pragma once

#include <random>
#include <vector>

#include "fm/lp.hpp"
#include "fm/schedule.hpp"

namespace fmtest {

/// Every rank-respecting assignment of the instance's jobs (all per-rank
/// machine permutations, rank 1 included), left-justified. Size (m!)^k;
/// use only on tiny instances.
std::vector<fm::Schedule> all_rank_assignments(const fm::Instance& inst);

/// Minimum makespan over all_rank_assignments.
fm::Rational brute_force_optimum(const fm::Instance& inst);

struct VertexLpResult {
  fm::LpStatus status = fm::LpStatus::Infeasible;
  fm::Rational objective;
};

/// Independent LP oracle: enumerates all candidate active sets (constraint
/// rows plus x_j >= 0 rows), solves each square system exactly, keeps
/// feasible vertices and maximizes. Unboundedness is detected through the
/// recession cone. Exponential; use only on small problems.
VertexLpResult lp_by_vertex_enumeration(const fm::LpProblem& p);

/// Uniformly random small LP: nvars in [1,3], a few rows with coefficients
/// in [-3,3], mixed <= and =, occasionally box rows to force boundedness.
fm::LpProblem random_lp(std::mt19937_64& rng);

/// Random nonincreasing nonnegative integer instance with the given shape.
fm::Instance random_instance(std::mt19937_64& rng, int m, int k, int lmax);

}  // namespace fmtest
