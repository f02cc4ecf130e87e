#include "fm/algorithms.hpp"

#include <algorithm>
#include <numeric>

namespace fm {

namespace {

// Machines ordered by (completion ascending, index ascending): position 0
// receives the largest job of the next rank.
std::vector<int> machine_order(const std::vector<Rational>& completion) {
  std::vector<int> order(completion.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (completion[a] != completion[b]) return completion[a] < completion[b];
    return a < b;
  });
  return order;
}

void assign_rank(const Instance& inst, int rank, const std::vector<int>& order,
                 std::vector<Rational>& completion,
                 std::vector<std::vector<int>>& job_at) {
  const int m = inst.machines();
  for (int pos = 0; pos < m; ++pos) {
    int job = (rank - 1) * m + pos;  // pos-th largest job of the rank
    int machine = order[pos];
    job_at[machine][rank - 1] = job;
    completion[machine] += inst.times()[job];
  }
}

}  // namespace

Schedule ld_schedule(const Instance& inst) {
  const int m = inst.machines();
  const int k = inst.ranks();
  std::vector<Rational> completion(m, Rational(0));
  std::vector<std::vector<int>> job_at(m, std::vector<int>(k, -1));
  for (int r = 1; r <= k; ++r)
    assign_rank(inst, r, machine_order(completion), completion, job_at);
  // Reversal and left-justification are inherent in Schedule's layout.
  return Schedule::left_justified(inst, std::move(job_at));
}

std::vector<Profile> ld_forward_profiles(const Instance& inst) {
  const int m = inst.machines();
  std::vector<Rational> completion(m, Rational(0));
  std::vector<std::vector<int>> job_at(m, std::vector<int>(inst.ranks(), -1));
  std::vector<Profile> profiles;
  for (int r = 1; r <= inst.ranks(); ++r) {
    assign_rank(inst, r, machine_order(completion), completion, job_at);
    profiles.push_back(make_profile(completion));
  }
  return profiles;
}

namespace {

struct TieEnumerator {
  const Instance& inst;
  std::uint64_t cap;
  std::uint64_t branches = 0;
  std::vector<std::vector<std::vector<int>>> results;

  void run(int rank, std::vector<Rational>& completion,
           std::vector<std::vector<int>>& job_at) {
    if (rank > inst.ranks()) {
      results.push_back(job_at);
      return;
    }
    std::vector<int> order = machine_order(completion);
    // Enumerate every ordering consistent with nondecreasing completion:
    // permute machines within each tied group independently.
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    std::size_t lo = 0;
    for (std::size_t hi = 1; hi <= order.size(); ++hi) {
      if (hi == order.size() ||
          completion[order[hi]] != completion[order[lo]]) {
        groups.emplace_back(lo, hi);
        lo = hi;
      }
    }
    enumerate_groups(rank, order, groups, 0, completion, job_at);
  }

  void enumerate_groups(int rank, std::vector<int>& order,
                        const std::vector<std::pair<std::size_t, std::size_t>>& groups,
                        std::size_t g, std::vector<Rational>& completion,
                        std::vector<std::vector<int>>& job_at) {
    if (g == groups.size()) {
      if (++branches > cap)
        throw TieEnumerationLimit("tie enumeration exceeded branch cap");
      std::vector<Rational> next_completion = completion;
      assign_rank(inst, rank, order, next_completion, job_at);
      run(rank + 1, next_completion, job_at);
      return;
    }
    auto [lo, hi] = groups[g];
    std::vector<int> ids(order.begin() + lo, order.begin() + hi);
    std::sort(ids.begin(), ids.end());
    do {
      std::copy(ids.begin(), ids.end(), order.begin() + lo);
      enumerate_groups(rank, order, groups, g + 1, completion, job_at);
    } while (std::next_permutation(ids.begin(), ids.end()));
  }
};

}  // namespace

std::vector<Schedule> ld_schedules(const Instance& inst, TieBreak ties,
                                   std::uint64_t branch_cap) {
  if (ties == TieBreak::LowestMachineIndex) return {ld_schedule(inst)};
  TieEnumerator e{inst, branch_cap};
  std::vector<Rational> completion(inst.machines(), Rational(0));
  std::vector<std::vector<int>> job_at(inst.machines(),
                                       std::vector<int>(inst.ranks(), -1));
  e.run(1, completion, job_at);
  std::sort(e.results.begin(), e.results.end());
  e.results.erase(std::unique(e.results.begin(), e.results.end()),
                  e.results.end());
  std::vector<Schedule> out;
  out.reserve(e.results.size());
  for (auto& assignment : e.results)
    out.push_back(Schedule::left_justified(inst, std::move(assignment)));
  return out;
}

Rational worst_ld_makespan(const Instance& inst) {
  return makespan(ld_schedule(inst));
}

Schedule li_schedule(const Instance& inst) {
  const int m = inst.machines();
  const int k = inst.ranks();
  std::vector<Rational> completion(m, Rational(0));
  std::vector<std::vector<int>> job_at(m, std::vector<int>(k, -1));
  for (int r = k; r >= 1; --r)
    assign_rank(inst, r, machine_order(completion), completion, job_at);
  return Schedule::left_justified(inst, std::move(job_at));
}

Rational ld0_worst_makespan(const Instance& inst) {
  const int m = inst.machines();
  if (inst.ranks() == 1) return inst.lambda(1);
  Rational head = inst.tau(1, 1) + inst.tau(m, 2);
  for (int i = 2; i <= m; ++i)
    head = std::max(head, Rational(inst.tau(i, 1) + inst.tau(m - i + 1, 2)));
  for (int r = 3; r <= inst.ranks(); ++r) head += inst.lambda(r);
  return head;
}

Schedule ld0_worst_schedule(const Instance& inst) {
  const int m = inst.machines();
  const int k = inst.ranks();
  std::vector<Rational> completion(m, Rational(0));
  std::vector<std::vector<int>> job_at(m, std::vector<int>(k, -1));
  // Rank 1 in index order, rank 2 largest-first.
  for (int i = 0; i < m; ++i) {
    job_at[i][0] = i;
    completion[i] = inst.times()[i];
  }
  if (k >= 2) assign_rank(inst, 2, machine_order(completion), completion, job_at);
  for (int r = 3; r <= k; ++r) {
    // lambda(r) goes to the currently longest machine, the rest fill the
    // remaining machines in index order.
    int longest = 0;
    for (int i = 1; i < m; ++i)
      if (completion[i] > completion[longest]) longest = i;
    std::vector<int> order;
    order.push_back(longest);
    for (int i = 0; i < m; ++i)
      if (i != longest) order.push_back(i);
    // Here order[0] must receive the *largest* job; assign_rank expects the
    // largest job at position 0 already.
    for (int pos = 0; pos < m; ++pos) {
      int job = (r - 1) * m + pos;
      job_at[order[pos]][r - 1] = job;
      completion[order[pos]] += inst.times()[job];
    }
  }
  return Schedule::left_justified(inst, std::move(job_at));
}

}  // namespace fm
