#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fm/schedule.hpp"

namespace fm {

// How to resolve ties among machines with equal completion times during
// list construction. LowestMachineIndex hands the larger job to the
// lower-indexed machine; EnumerateAll explores every resolution.
enum class TieBreak { LowestMachineIndex, EnumerateAll };

inline constexpr std::uint64_t kDefaultTieBranchCap = 1u << 20;

/// Thrown when tie enumeration would exceed its branch cap.
struct TieEnumerationLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// LD: ranks assigned 1..k, each rank's jobs matched largest-first against
/// the reverse-sorted current profile, then the sequence is reversed and
/// left-justified into flowtime-optimal form. Deterministic tie-break.
Schedule ld_schedule(const Instance& inst);

/// All LD schedules reachable under some resolution of completion-time
/// ties, deduplicated by assignment. Throws TieEnumerationLimit past the cap.
std::vector<Schedule> ld_schedules(
    const Instance& inst, TieBreak ties = TieBreak::EnumerateAll,
    std::uint64_t branch_cap = kDefaultTieBranchCap);

/// Maximum makespan over all LD schedules. The completion-time multiset
/// after each rank is independent of tie resolution (equal profile entries
/// swap equal addends), so every LD schedule of an instance has the same
/// makespan; this is asserted by property tests against ld_schedules.
Rational worst_ld_makespan(const Instance& inst);

/// Machine completion-time profiles of the forward LD pass, one per rank.
std::vector<Profile> ld_forward_profiles(const Instance& inst);

/// LI: ranks assigned k..1 with the same largest-to-smallest matching;
/// flowtime-optimal as built.
Schedule li_schedule(const Instance& inst);

/// Closed-form worst-case LD0 makespan:
///   max_i { tau(i,1) + tau(m-i+1,2) } + sum_{r>=3} lambda(r),
/// the largest makespan over all schedules that assign rank 1 arbitrarily,
/// rank 2 largest-first and later ranks arbitrarily. For k == 1 this is
/// lambda(1).
Rational ld0_worst_makespan(const Instance& inst);

/// An explicit LD0 schedule attaining ld0_worst_makespan: rank 1 in index
/// order, rank 2 largest-first, each lambda(r) for r >= 3 on the currently
/// longest machine.
Schedule ld0_worst_schedule(const Instance& inst);

}  // namespace fm
