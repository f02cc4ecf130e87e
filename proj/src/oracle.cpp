#include "fm/oracle.hpp"

#include <algorithm>
#include <thread>

#include "fm/algorithms.hpp"

namespace fm {

namespace {

struct Dfs {
  const std::vector<std::vector<Rational>>& rank_values;  // [r-1], nonincreasing
  const std::vector<Rational>& suffix_total;  // work in ranks > r, index r
  int m;
  bool prune;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool exhausted = false;
  Rational incumbent;
  // Value permutations (value assigned to machine i) for ranks 2..k of the
  // best complete assignment found so far; empty if none beat the incumbent.
  std::vector<std::vector<Rational>> best;
  std::vector<std::vector<Rational>> current;

  Dfs(const std::vector<std::vector<Rational>>& rv,
      const std::vector<Rational>& st, int machines, bool do_prune,
      std::uint64_t node_budget, Rational start_incumbent)
      : rank_values(rv),
        suffix_total(st),
        m(machines),
        prune(do_prune),
        budget(node_budget),
        incumbent(std::move(start_incumbent)) {
    current.resize(rank_values.size() >= 1 ? rank_values.size() - 1 : 0);
  }

  void expand(std::size_t r, const std::vector<Rational>& loads,
              const Rational& assigned_total) {
    if (r == rank_values.size()) {
      Rational longest = *std::max_element(loads.begin(), loads.end());
      if (longest < incumbent) {
        incumbent = longest;
        best = current;
      }
      return;
    }
    std::vector<Rational> perm = rank_values[r];
    std::sort(perm.begin(), perm.end());
    Rational rank_sum = 0;
    for (const auto& v : perm) rank_sum += v;
    do {
      if (exhausted) return;
      if (++nodes > budget) {
        exhausted = true;
        return;
      }
      std::vector<Rational> next_loads = loads;
      Rational longest = 0;
      for (int i = 0; i < m; ++i) {
        next_loads[i] += perm[i];
        longest = std::max(longest, next_loads[i]);
      }
      Rational bound =
          std::max(longest, (assigned_total + rank_sum + suffix_total[r + 1]) /
                                Rational(m));
      if (!prune || bound < incumbent) {
        current[r - 1] = perm;
        expand(r + 1, next_loads, assigned_total + rank_sum);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
};

// Turns per-rank value permutations (ranks 2..k) into a concrete job
// assignment; rank 1 stays in index order.
Schedule build_witness(const Instance& inst,
                       const std::vector<std::vector<Rational>>& perms) {
  const int m = inst.machines();
  const int k = inst.ranks();
  std::vector<std::vector<int>> job_at(m, std::vector<int>(k, -1));
  for (int i = 0; i < m; ++i) job_at[i][0] = i;
  for (int r = 2; r <= k; ++r) {
    std::vector<bool> used(m, false);
    for (int i = 0; i < m; ++i) {
      const Rational& want = perms[r - 2][i];
      for (int pos = 0; pos < m; ++pos) {
        if (!used[pos] && inst.tau(pos + 1, r) == want) {
          used[pos] = true;
          job_at[i][r - 1] = (r - 1) * m + pos;
          break;
        }
      }
    }
  }
  return Schedule::left_justified(inst, std::move(job_at));
}

Rational static_lower_bound(const Instance& inst) {
  Rational lb = std::max(inst.lambda(1), inst.total() / Rational(inst.machines()));
  Rational mu_sum = 0;
  for (int r = 1; r <= inst.ranks(); ++r) mu_sum += inst.mu(r);
  return std::max(lb, mu_sum);
}

}  // namespace

OracleResult optimal_fm_makespan(const Instance& inst, std::uint64_t budget,
                                 int threads, bool prune) {
  const int m = inst.machines();
  const int k = inst.ranks();
  Schedule ld = ld_schedule(inst);
  Rational ld_value = makespan(ld);

  std::vector<std::vector<Rational>> rank_values;
  for (int r = 1; r <= k; ++r) rank_values.push_back(inst.rank_values(r));
  std::vector<Rational> suffix_total(k + 1, Rational(0));
  for (int r = k; r >= 1; --r) {
    suffix_total[r - 1] = suffix_total[r];
    for (const auto& v : rank_values[r - 1]) suffix_total[r - 1] += v;
  }

  std::vector<Rational> base_loads = rank_values[0];  // rank 1 fixed
  Rational base_total = suffix_total[0] - suffix_total[1];

  OracleResult result;
  if (threads <= 1 || k < 2) {
    Dfs dfs(rank_values, suffix_total, m, prune, budget, ld_value);
    dfs.expand(1, base_loads, base_total);
    result.nodes = dfs.nodes;
    result.resolved = !dfs.exhausted;
    result.upper_bound = dfs.incumbent;
    if (result.resolved) {
      result.optimum = dfs.incumbent;
      result.lower_bound = dfs.incumbent;
      result.witness = dfs.best.empty() ? std::move(ld)
                                        : build_witness(inst, dfs.best);
    } else {
      result.lower_bound = std::min(static_lower_bound(inst), result.upper_bound);
    }
    return result;
  }

  // Partition the rank-2 assignments across workers; each worker gets an
  // equal budget share so the outcome does not depend on scheduling.
  std::vector<std::vector<Rational>> second_rank_perms;
  {
    std::vector<Rational> perm = rank_values[1];
    std::sort(perm.begin(), perm.end());
    do {
      second_rank_perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  int workers = std::min<int>(threads, static_cast<int>(second_rank_perms.size()));
  std::uint64_t share = std::max<std::uint64_t>(1, budget / workers);
  std::vector<Dfs> states;
  states.reserve(workers);
  for (int w = 0; w < workers; ++w)
    states.emplace_back(rank_values, suffix_total, m, prune, share, ld_value);
  Rational rank2_sum = suffix_total[1] - suffix_total[2];
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      Dfs& dfs = states[w];
      for (std::size_t idx = w; idx < second_rank_perms.size();
           idx += static_cast<std::size_t>(workers)) {
        if (dfs.exhausted) break;
        if (++dfs.nodes > dfs.budget) {
          dfs.exhausted = true;
          break;
        }
        const auto& perm = second_rank_perms[idx];
        std::vector<Rational> loads = base_loads;
        Rational longest = 0;
        for (int i = 0; i < m; ++i) {
          loads[i] += perm[i];
          longest = std::max(longest, loads[i]);
        }
        Rational bound = std::max(
            longest, (base_total + rank2_sum + suffix_total[2]) / Rational(m));
        if (!prune || bound < dfs.incumbent) {
          dfs.current[0] = perm;
          dfs.expand(2, loads, base_total + rank2_sum);
        }
      }
    });
  }
  for (auto& t : pool) t.join();

  result.resolved = true;
  int best_worker = 0;
  for (int w = 0; w < workers; ++w) {
    result.nodes += states[w].nodes;
    result.resolved = result.resolved && !states[w].exhausted;
    if (states[w].incumbent < states[best_worker].incumbent) best_worker = w;
  }
  result.upper_bound = states[best_worker].incumbent;
  if (result.resolved) {
    result.optimum = result.upper_bound;
    result.lower_bound = result.optimum;
    result.witness = states[best_worker].best.empty()
                         ? std::move(ld)
                         : build_witness(inst, states[best_worker].best);
  } else {
    result.lower_bound = std::min(static_lower_bound(inst), result.upper_bound);
  }
  return result;
}

RatioResult makespan_ratio(const Instance& inst, std::uint64_t budget) {
  OracleResult opt = optimal_fm_makespan(inst, budget);
  if (!opt.resolved)
    throw OracleBudgetExceeded(opt.lower_bound, opt.upper_bound);
  RatioResult out;
  out.t_ld_worst = worst_ld_makespan(inst);
  out.t_opt = opt.optimum;
  out.ratio = (out.t_opt == 0) ? Rational(1) : out.t_ld_worst / out.t_opt;
  return out;
}

}  // namespace fm
