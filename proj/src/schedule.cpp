#include "fm/schedule.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fm {

Profile make_profile(std::vector<Rational> completions) {
  std::sort(completions.begin(), completions.end(),
            [](const Rational& a, const Rational& b) { return a > b; });
  return completions;
}

Schedule Schedule::left_justified(Instance inst,
                                  std::vector<std::vector<int>> job_at) {
  const int m = inst.machines();
  const int k = inst.ranks();
  if (static_cast<int>(job_at.size()) != m)
    throw std::invalid_argument("assignment must cover every machine");
  std::vector<std::vector<Rational>> start(
      m, std::vector<Rational>(static_cast<std::size_t>(k)));
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(job_at[i].size()) != k)
      throw std::invalid_argument("machine must hold one job per rank");
    Rational t = 0;
    for (int r = k; r >= 1; --r) {
      start[i][r - 1] = t;
      t += inst.times()[job_at[i][r - 1]];
    }
  }
  return Schedule{std::move(inst), std::move(job_at), std::move(start)};
}

const Rational& Schedule::processing_time(int machine, int rank) const {
  return instance.times()[job_at[machine][rank - 1]];
}

Rational Schedule::completion(int machine, int rank) const {
  return start[machine][rank - 1] + processing_time(machine, rank);
}

Rational Schedule::machine_load(int machine) const {
  return completion(machine, 1);
}

Rational makespan(const Schedule& s) {
  Rational best = 0;
  for (int i = 0; i < s.instance.machines(); ++i)
    best = std::max(best, s.machine_load(i));
  return best;
}

Rational total_flowtime(const Schedule& s) {
  Rational sum = 0;
  for (int i = 0; i < s.instance.machines(); ++i)
    for (int r = 1; r <= s.instance.ranks(); ++r) sum += s.completion(i, r);
  return sum;
}

bool is_flowtime_optimal(const Schedule& s) {
  const int m = s.instance.machines();
  const int k = s.instance.ranks();
  if (static_cast<int>(s.job_at.size()) != m ||
      static_cast<int>(s.start.size()) != m)
    return false;
  std::vector<bool> seen(s.instance.jobs(), false);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(s.job_at[i].size()) != k ||
        static_cast<int>(s.start[i].size()) != k)
      return false;
    for (int r = 1; r <= k; ++r) {
      int job = s.job_at[i][r - 1];
      if (job < 0 || job >= s.instance.jobs() || seen[job]) return false;
      seen[job] = true;
      // Rank membership by sorted index block.
      if (job / m != r - 1) return false;
    }
  }
  for (int i = 0; i < m; ++i) {
    if (s.start[i][k - 1] != 0) return false;
    for (int r = k; r > 1; --r)
      if (s.start[i][r - 2] != s.completion(i, r)) return false;
  }
  // All rank r+1 jobs start no later than any rank r job.
  for (int r = 1; r < k; ++r) {
    Rational latest_next = 0, earliest_this = s.start[0][r - 1];
    for (int i = 0; i < m; ++i) {
      latest_next = std::max(latest_next, s.start[i][r]);
      earliest_this = std::min(earliest_this, s.start[i][r - 1]);
    }
    if (latest_next > earliest_this) return false;
  }
  return true;
}

nlohmann::json Schedule::to_json() const {
  nlohmann::json machines = nlohmann::json::array();
  for (int i = 0; i < instance.machines(); ++i) {
    nlohmann::json slots = nlohmann::json::array();
    for (int r = 1; r <= instance.ranks(); ++r) {
      slots.push_back({{"rank", r},
                       {"job", job_at[i][r - 1]},
                       {"p", format_rational(processing_time(i, r))},
                       {"start", format_rational(start[i][r - 1])},
                       {"completion", format_rational(completion(i, r))}});
    }
    machines.push_back(std::move(slots));
  }
  return nlohmann::json{{"instance", instance.to_json()},
                        {"machines", machines},
                        {"makespan", format_rational(makespan(*this))},
                        {"total_flowtime", format_rational(total_flowtime(*this))}};
}

}  // namespace fm
