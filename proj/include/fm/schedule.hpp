#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fm/instance.hpp"

namespace fm {

/// Completion times of the m machines, sorted nonincreasing.
using Profile = std::vector<Rational>;

/// Sorts machine completion times into a profile.
Profile make_profile(std::vector<Rational> completions);

// A rank-respecting schedule. job_at[i][r-1] is the (0-based) job index run
// by machine i in rank r; start[i][r-1] its start time. Machines execute
// ranks in decreasing order, rank k first. Construct with left_justified()
// for the flowtime-optimal form (rank k starts at 0, no idle anywhere).
struct Schedule {
  Instance instance;
  std::vector<std::vector<int>> job_at;
  std::vector<std::vector<Rational>> start;

  static Schedule left_justified(Instance inst,
                                 std::vector<std::vector<int>> job_at);

  const Rational& processing_time(int machine, int rank) const;
  Rational completion(int machine, int rank) const;
  /// Completion time of the machine's rank-1 job.
  Rational machine_load(int machine) const;

  nlohmann::json to_json() const;
};

Rational makespan(const Schedule& s);
Rational total_flowtime(const Schedule& s);

/// True iff the schedule is well-formed (each job exactly once, rank slots
/// hold jobs of that rank) and flowtime-optimal: every rank-k job starts at
/// time 0, no machine has idle time, and all rank r+1 jobs start no later
/// than any rank r job.
bool is_flowtime_optimal(const Schedule& s);

}  // namespace fm
