#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fm/oracle.hpp"

namespace fm {

/// The 3-rank family whose LD-to-optimal makespan ratio is exactly
/// (5m-2)/(4m-1): times m, then m..2m-1, then 2m-2..3m-2 and a zero,
/// sorted nonincreasing. Throws for m < 2.
Instance tight_family(int m);

/// The 3-rank family on which the simplified heuristic that fixes only
/// rank 2 (largest job to the least-loaded machine) reaches its worst
/// ratio 4/3 for m >= 3: m-1 twos, m+2 ones, zeros. Throws for m < 2.
Instance ld0_family(int m);

/// Every integer instance with m machines, exactly k ranks, the rank
/// boundaries tight (mu(r) == lambda(r+1), mu(k) == 0) and lambda(1) <=
/// lmax. Deterministic order (lexicographically decreasing time vectors);
/// each multiset of times appears once. Includes the all-zero instance.
std::vector<Instance> enumerate_instances(int m, int k, const Integer& lmax);

enum class HuntStatus { OK, VIOLATION, UNRESOLVED, FILTERED };

std::string to_string(HuntStatus s);

struct HuntRow {
  std::size_t index = 0;
  Instance instance;
  Rational t_ld_worst;
  Rational t_opt;   // meaningless when UNRESOLVED
  Rational ratio;   // meaningless when UNRESOLVED
  HuntStatus status = HuntStatus::OK;
};

struct HuntReport {
  int m = 0;
  int k = 0;
  Integer lmax;
  Rational bound;
  bool filter_kk1 = false;
  std::vector<HuntRow> rows;
  std::size_t checked = 0;         // rows with a resolved ratio
  Rational max_ratio;              // over OK and VIOLATION rows
  std::vector<std::size_t> argmax;  // indices into rows
  bool violation = false;
  bool unresolved = false;
  // True when the enumeration cannot settle the question for these
  // parameters (m >= 4 with k in remaining_cases(m)); the CSV then carries
  // a coverage disclaimer and a clean hunt still exits 0.
  bool evidence_only = false;

  void write_csv(std::ostream& os) const;
};

/// Runs makespan_ratio on every enumerated instance. A row whose oracle
/// budget runs out is reported UNRESOLVED, never dropped. With filter_kk1,
/// rows with ratio >= k/(k-1) are FILTERED out of the max aggregation
/// (such instances cannot be minimal counterexamples) but still turn into
/// VIOLATION when the ratio exceeds the bound.
HuntReport hunt(int m, int k, const Integer& lmax, const Rational& bound,
                bool filter_kk1 = false, int jobs = 1,
                std::uint64_t budget = kDefaultOracleBudget);

}  // namespace fm
