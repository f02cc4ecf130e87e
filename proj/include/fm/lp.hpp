#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fm/rational.hpp"

namespace fm {

/// Linear expression over the owning problem's variables plus a constant.
struct LinExpr {
  std::vector<Rational> coeffs;
  Rational constant = 0;

  explicit LinExpr(std::size_t nvars = 0) : coeffs(nvars, Rational(0)) {}
  Rational eval(const std::vector<Rational>& x) const;
  LinExpr& add(std::size_t var, const Rational& c);
  bool operator==(const LinExpr&) const = default;
};

enum class Relation { LessEq, Eq };

struct Constraint {
  LinExpr lhs;
  Relation rel = Relation::LessEq;
  Rational rhs = 0;
};

// A maximization problem over nonnegative variables. Every variable is
// implicitly constrained >= 0. The label records where the problem came
// from (e.g. which enumerated case it encodes).
struct LpProblem {
  std::vector<std::string> var_names;
  LinExpr objective;
  std::vector<Constraint> constraints;
  std::string label;

  std::size_t add_var(const std::string& name);
  std::size_t num_vars() const { return var_names.size(); }
  LinExpr expr() const { return LinExpr(num_vars()); }
  void add_le(LinExpr lhs, Rational rhs);
  void add_ge(LinExpr lhs, Rational rhs);  // stored as -lhs <= -rhs
  void add_eq(LinExpr lhs, Rational rhs);

  nlohmann::json to_json() const;
  static LpProblem from_json(const nlohmann::json& j);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus s);

// When status is Optimal: primal is a feasible point, dual holds one
// multiplier per constraint (>= 0 for LessEq rows, free for Eq rows) that
// is feasible for the dual problem, and both objectives equal `objective`.
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> primal;
  Rational objective;
  std::vector<Rational> dual;

  nlohmann::json to_json() const;
};

/// Exact two-phase dense simplex with Bland's anti-cycling rule.
/// Infeasible and unbounded are statuses, not errors.
LpSolution solve_lp(const LpProblem& p);

/// Independent certificate check: primal feasible, dual feasible, and the
/// two objective values coincide exactly. Requires status Optimal.
bool verify_certificate(const LpProblem& p, const LpSolution& s);

}  // namespace fm
