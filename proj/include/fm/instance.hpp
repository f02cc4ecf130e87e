#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fm/rational.hpp"

namespace fm {

// A problem instance: m identical machines and n = m*k processing times
// sorted nonincreasing. Rank r (1-based) owns the r-th block of m jobs,
// so rank 1 holds the largest jobs. lambda(r)/mu(r) are the largest and
// smallest time in rank r and satisfy
//   lambda(1) >= mu(1) >= lambda(2) >= ... >= mu(k) >= 0
// automatically from sortedness. Instances are immutable.
class Instance {
 public:
  // p must be nonincreasing, nonnegative, with size a positive multiple of m.
  Instance(int machines, std::vector<Rational> sorted_times);

  /// Normalizes a raw job list: sorts nonincreasing (stable, so ties keep
  /// input order) and pads with zero-time jobs until the count is a multiple
  /// of m. Throws std::invalid_argument on negative times, empty input or
  /// m < 1.
  static Instance from_raw(std::vector<Rational> raw, int machines);

  int machines() const { return m_; }
  int ranks() const { return k_; }
  int jobs() const { return static_cast<int>(p_.size()); }
  const std::vector<Rational>& times() const { return p_; }

  /// Largest processing time in rank r (1-based).
  const Rational& lambda(int r) const;
  /// Smallest processing time in rank r (1-based).
  const Rational& mu(int r) const;
  /// i-th largest processing time in rank r (both 1-based).
  const Rational& tau(int i, int r) const;
  /// The m times of rank r, nonincreasing.
  std::vector<Rational> rank_values(int r) const;

  Rational total() const;
  bool all_zero() const;

  /// True iff mu(r) == lambda(r+1) for all r < k and mu(k) == 0.
  bool satisfies_property2() const;

  /// Subtracts a uniform amount from every job of each rank until
  /// mu(r) == lambda(r+1) for r < k and mu(k) == 0. Never increases any
  /// time and preserves m and k.
  Instance property2_normalized() const;

  /// Same jobs plus a full rank of m zero-time jobs at the end.
  Instance with_zero_rank_appended() const;

  /// Every job multiplied by a positive rational factor.
  Instance scaled(const Rational& factor) const;

  bool operator==(const Instance& other) const = default;

  // JSON schema: {"m": <int>, "p": [<int or "a/b" string>, ...]}.
  nlohmann::json to_json() const;
  static Instance from_json(const nlohmann::json& j);

 private:
  int m_;
  int k_;
  std::vector<Rational> p_;
};

}  // namespace fm
