#include "fm/lp.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fm {

Rational LinExpr::eval(const std::vector<Rational>& x) const {
  if (x.size() != coeffs.size())
    throw std::invalid_argument("point dimension mismatch");
  Rational v = constant;
  for (std::size_t j = 0; j < coeffs.size(); ++j) v += coeffs[j] * x[j];
  return v;
}

LinExpr& LinExpr::add(std::size_t var, const Rational& c) {
  coeffs.at(var) += c;
  return *this;
}

std::size_t LpProblem::add_var(const std::string& name) {
  var_names.push_back(name);
  objective.coeffs.emplace_back(0);
  for (auto& c : constraints) c.lhs.coeffs.emplace_back(0);
  return var_names.size() - 1;
}

void LpProblem::add_le(LinExpr lhs, Rational rhs) {
  constraints.push_back({std::move(lhs), Relation::LessEq, std::move(rhs)});
}

void LpProblem::add_ge(LinExpr lhs, Rational rhs) {
  for (auto& c : lhs.coeffs) c = -c;
  lhs.constant = -lhs.constant;
  constraints.push_back({std::move(lhs), Relation::LessEq, -rhs});
}

void LpProblem::add_eq(LinExpr lhs, Rational rhs) {
  constraints.push_back({std::move(lhs), Relation::Eq, std::move(rhs)});
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

// Dense simplex tableau. Columns: structural vars, then one slack per
// inequality row, then artificials. Bland's rule everywhere, so the exact
// arithmetic can never cycle.
struct Tableau {
  std::vector<std::vector<Rational>> row;  // [i][j]
  std::vector<Rational> rhs;
  std::vector<int> basis;     // basic column per row
  std::vector<bool> active;   // redundant rows get retired after phase 1
  std::vector<Rational> red;  // reduced costs
  Rational zval = 0;

  void pivot(std::size_t pr, std::size_t pc) {
    Rational inv = 1 / row[pr][pc];
    for (auto& v : row[pr]) v *= inv;
    rhs[pr] *= inv;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == pr || row[i][pc] == 0) continue;
      Rational f = row[i][pc];
      for (std::size_t j = 0; j < row[i].size(); ++j)
        row[i][j] -= f * row[pr][j];
      rhs[i] -= f * rhs[pr];
    }
    if (red[pc] != 0) {
      Rational f = red[pc];
      for (std::size_t j = 0; j < red.size(); ++j) red[j] -= f * row[pr][j];
      zval += f * rhs[pr];
    }
    basis[pr] = static_cast<int>(pc);
  }

  // Maximizes until no allowed column has positive reduced cost.
  // Returns false on unboundedness.
  bool run(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = red.size();
      for (std::size_t j = 0; j < red.size(); ++j)
        if (allowed[j] && red[j] > 0) {
          enter = j;
          break;
        }
      if (enter == red.size()) return true;
      std::size_t leave = row.size();
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (!active[i] || row[i][enter] <= 0) continue;
        if (leave == row.size()) {
          leave = i;
          continue;
        }
        Rational cur = rhs[i] / row[i][enter];
        Rational best = rhs[leave] / row[leave][enter];
        if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
      }
      if (leave == row.size()) return false;
      pivot(leave, enter);
    }
  }

  void reset_objective(const std::vector<Rational>& cost) {
    red = cost;
    zval = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Rational& cb = cost[basis[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < red.size(); ++j) red[j] -= cb * row[i][j];
      zval += cb * rhs[i];
    }
    // zval tracks c_B x_B; stored as the value to add pivot deltas onto.
  }
};

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  const std::size_t n = p.num_vars();
  const std::size_t m = p.constraints.size();
  if (n == 0) throw std::invalid_argument("LP needs at least one variable");

  // Internal rows with nonnegative right-hand sides; sign[i] records
  // whether row i was negated.
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n));
  std::vector<Rational> b(m);
  std::vector<int> sign(m, 1);
  std::vector<bool> is_eq(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    const Constraint& c = p.constraints[i];
    if (c.lhs.coeffs.size() != n)
      throw std::invalid_argument("constraint dimension mismatch");
    a[i] = c.lhs.coeffs;
    b[i] = c.rhs - c.lhs.constant;
    is_eq[i] = (c.rel == Relation::Eq);
    if (b[i] < 0) {
      sign[i] = -1;
      b[i] = -b[i];
      for (auto& v : a[i]) v = -v;
    }
  }

  std::vector<std::size_t> slack_col(m, 0), unit_col(m, 0);
  std::size_t ncols = n;
  for (std::size_t i = 0; i < m; ++i)
    if (!is_eq[i]) slack_col[i] = ncols++;
  std::size_t first_artificial = ncols;
  std::vector<bool> needs_artificial(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    needs_artificial[i] = is_eq[i] || sign[i] < 0;
    if (needs_artificial[i]) unit_col[i] = ncols++;
  }

  Tableau t;
  t.row.assign(m, std::vector<Rational>(ncols, Rational(0)));
  t.rhs = b;
  t.basis.assign(m, -1);
  t.active.assign(m, true);
  for (std::size_t i = 0; i < m; ++i) {
    std::copy(a[i].begin(), a[i].end(), t.row[i].begin());
    if (!is_eq[i]) t.row[i][slack_col[i]] = sign[i] < 0 ? Rational(-1) : Rational(1);
    if (needs_artificial[i]) {
      t.row[i][unit_col[i]] = 1;
      t.basis[i] = static_cast<int>(unit_col[i]);
    } else {
      t.basis[i] = static_cast<int>(slack_col[i]);
      unit_col[i] = slack_col[i];
    }
  }

  std::vector<bool> allow_all(ncols, true);
  if (first_artificial < ncols) {
    std::vector<Rational> phase1_cost(ncols, Rational(0));
    for (std::size_t j = first_artificial; j < ncols; ++j) phase1_cost[j] = -1;
    t.reset_objective(phase1_cost);
    if (!t.run(allow_all))
      throw std::logic_error("phase 1 cannot be unbounded");
    if (t.zval != 0) {
      LpSolution s;
      s.status = LpStatus::Infeasible;
      return s;
    }
    // Drive leftover artificials out of the basis; a row with no usable
    // pivot entry is redundant and gets retired.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] < static_cast<int>(first_artificial)) continue;
      std::size_t pc = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j)
        if (t.row[i][j] != 0) {
          pc = j;
          break;
        }
      if (pc == first_artificial)
        t.active[i] = false;
      else
        t.pivot(i, pc);
    }
  }

  std::vector<Rational> cost(ncols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = p.objective.coeffs[j];
  t.reset_objective(cost);
  std::vector<bool> allowed(ncols, true);
  for (std::size_t j = first_artificial; j < ncols; ++j) allowed[j] = false;
  if (!t.run(allowed)) {
    LpSolution s;
    s.status = LpStatus::Unbounded;
    return s;
  }

  LpSolution s;
  s.status = LpStatus::Optimal;
  s.primal.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (t.active[i] && t.basis[i] >= 0 &&
        t.basis[i] < static_cast<int>(n))
      s.primal[t.basis[i]] = t.rhs[i];
  s.objective = t.zval + p.objective.constant;
  s.dual.assign(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (!t.active[i]) continue;  // redundant row: multiplier 0
    Rational y_internal = -t.red[unit_col[i]];
    s.dual[i] = sign[i] < 0 ? -y_internal : y_internal;
  }
  return s;
}

bool verify_certificate(const LpProblem& p, const LpSolution& s) {
  if (s.status != LpStatus::Optimal) return false;
  const std::size_t n = p.num_vars();
  if (s.primal.size() != n || s.dual.size() != p.constraints.size())
    return false;
  for (const auto& x : s.primal)
    if (x < 0) return false;
  for (const auto& c : p.constraints) {
    Rational v = c.lhs.eval(s.primal);
    if (c.rel == Relation::Eq ? v != c.rhs : v > c.rhs) return false;
  }
  Rational dual_obj = p.objective.constant;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const Constraint& c = p.constraints[i];
    if (c.rel == Relation::LessEq && s.dual[i] < 0) return false;
    dual_obj += s.dual[i] * (c.rhs - c.lhs.constant);
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational reduced = p.objective.coeffs[j];
    for (std::size_t i = 0; i < p.constraints.size(); ++i)
      reduced -= s.dual[i] * p.constraints[i].lhs.coeffs[j];
    if (reduced > 0) return false;  // dual infeasible on variable j
  }
  Rational primal_obj = p.objective.eval(s.primal);
  return primal_obj == s.objective && dual_obj == s.objective;
}

nlohmann::json LpProblem::to_json() const {
  auto expr_json = [](const LinExpr& e) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : e.coeffs) coeffs.push_back(format_rational(c));
    return nlohmann::json{{"coeffs", coeffs},
                          {"constant", format_rational(e.constant)}};
  };
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : constraints)
    cons.push_back({{"lhs", expr_json(c.lhs)},
                    {"rel", c.rel == Relation::Eq ? "=" : "<="},
                    {"rhs", format_rational(c.rhs)}});
  return nlohmann::json{{"label", label},
                        {"variables", var_names},
                        {"objective", expr_json(objective)},
                        {"constraints", cons}};
}

LpProblem LpProblem::from_json(const nlohmann::json& j) {
  LpProblem p;
  p.label = j.value("label", "");
  for (const auto& name : j.at("variables"))
    p.var_names.push_back(name.get<std::string>());
  auto parse_expr = [&](const nlohmann::json& je) {
    LinExpr e(p.num_vars());
    const auto& coeffs = je.at("coeffs");
    if (coeffs.size() != p.num_vars())
      throw std::invalid_argument("expression arity mismatch");
    for (std::size_t v = 0; v < coeffs.size(); ++v)
      e.coeffs[v] = parse_rational(coeffs[v].get<std::string>());
    e.constant = parse_rational(je.at("constant").get<std::string>());
    return e;
  };
  p.objective = parse_expr(j.at("objective"));
  for (const auto& jc : j.at("constraints")) {
    Constraint c;
    c.lhs = parse_expr(jc.at("lhs"));
    c.rel = jc.at("rel").get<std::string>() == "=" ? Relation::Eq
                                                  : Relation::LessEq;
    c.rhs = parse_rational(jc.at("rhs").get<std::string>());
    p.constraints.push_back(std::move(c));
  }
  return p;
}

nlohmann::json LpSolution::to_json() const {
  nlohmann::json jp = nlohmann::json::array();
  for (const auto& v : primal) jp.push_back(format_rational(v));
  nlohmann::json jd = nlohmann::json::array();
  for (const auto& v : dual) jd.push_back(format_rational(v));
  return nlohmann::json{{"status", to_string(status)},
                        {"objective", format_rational(objective)},
                        {"primal", jp},
                        {"dual", jd}};
}

}  // namespace fm
