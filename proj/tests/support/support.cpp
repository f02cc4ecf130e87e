#include "support/support.hpp"

#include <algorithm>
#include <numeric>

namespace fmtest {

using fm::Instance;
using fm::LinExpr;
using fm::LpProblem;
using fm::LpStatus;
using fm::Rational;
using fm::Relation;
using fm::Schedule;

std::vector<Schedule> all_rank_assignments(const Instance& inst) {
  const int m = inst.machines();
  const int k = inst.ranks();
  std::vector<std::vector<int>> perms;
  {
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<Schedule> out;
  std::vector<std::size_t> pick(k, 0);
  for (;;) {
    std::vector<std::vector<int>> job_at(m, std::vector<int>(k, -1));
    for (int r = 1; r <= k; ++r)
      for (int i = 0; i < m; ++i)
        job_at[i][r - 1] = (r - 1) * m + perms[pick[r - 1]][i];
    out.push_back(Schedule::left_justified(inst, std::move(job_at)));
    int r = 0;
    while (r < k && ++pick[r] == perms.size()) pick[r++] = 0;
    if (r == k) break;
  }
  return out;
}

Rational brute_force_optimum(const Instance& inst) {
  Rational best;
  bool have = false;
  for (const Schedule& s : all_rank_assignments(inst)) {
    Rational v = fm::makespan(s);
    if (!have || v < best) {
      best = v;
      have = true;
    }
  }
  return best;
}

namespace {

// Rows in a·x (<=|=) b form with the LinExpr constant folded into b.
struct Rows {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<bool> eq;
};

Rows flatten(const LpProblem& p) {
  Rows r;
  for (const auto& c : p.constraints) {
    r.a.push_back(c.lhs.coeffs);
    r.b.push_back(c.rhs - c.lhs.constant);
    r.eq.push_back(c.rel == Relation::Eq);
  }
  // x_j >= 0 as -x_j <= 0.
  for (std::size_t j = 0; j < p.num_vars(); ++j) {
    std::vector<Rational> row(p.num_vars(), Rational(0));
    row[j] = -1;
    r.a.push_back(std::move(row));
    r.b.emplace_back(0);
    r.eq.push_back(false);
  }
  return r;
}

// Solves the square system formed by the chosen rows; empty on singular.
std::vector<Rational> solve_square(const Rows& rows,
                                   const std::vector<std::size_t>& chosen) {
  const std::size_t n = chosen.size();
  std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) mat[i][j] = rows.a[chosen[i]][j];
    mat[i][n] = rows.b[chosen[i]];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && mat[piv][col] == 0) ++piv;
    if (piv == n) return {};
    std::swap(mat[piv], mat[col]);
    Rational inv = 1 / mat[col][col];
    for (auto& v : mat[col]) v *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || mat[i][col] == 0) continue;
      Rational f = mat[i][col];
      for (std::size_t j = col; j <= n; ++j) mat[i][j] -= f * mat[col][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = mat[i][n];
  return x;
}

bool feasible(const Rows& rows, const std::vector<Rational>& x) {
  for (std::size_t i = 0; i < rows.a.size(); ++i) {
    Rational v = 0;
    for (std::size_t j = 0; j < x.size(); ++j) v += rows.a[i][j] * x[j];
    if (rows.eq[i] ? v != rows.b[i] : v > rows.b[i]) return false;
  }
  return true;
}

// Max of c·x over all vertices; has_vertex reports whether any basic
// feasible point exists at all.
struct VertexScan {
  bool has_vertex = false;
  Rational best;
};

VertexScan scan_vertices(const Rows& rows, const std::vector<Rational>& c) {
  const std::size_t n = c.size();
  VertexScan out;
  std::vector<std::size_t> chosen(n);
  std::vector<bool> mask(rows.a.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n), true);
  // Enumerate all n-subsets via the sorted mask trick.
  std::sort(mask.begin(), mask.end(), std::greater<bool>());
  do {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) chosen[idx++] = i;
    std::vector<Rational> x = solve_square(rows, chosen);
    if (x.empty() || !feasible(rows, x)) continue;
    Rational v = 0;
    for (std::size_t j = 0; j < n; ++j) v += c[j] * x[j];
    if (!out.has_vertex || v > out.best) out.best = v;
    out.has_vertex = true;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

}  // namespace

VertexLpResult lp_by_vertex_enumeration(const LpProblem& p) {
  Rows rows = flatten(p);
  VertexScan primal = scan_vertices(rows, p.objective.coeffs);
  VertexLpResult out;
  if (!primal.has_vertex) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  // Recession cone capped at objective 1: a·d <= 0 (or = 0), d >= 0,
  // c·d <= 1. The cap makes the max attainable at a vertex; reaching 1
  // proves an improving ray.
  Rows cone;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    cone.a.push_back(rows.a[i]);
    cone.b.emplace_back(0);
    cone.eq.push_back(rows.eq[i]);
  }
  for (std::size_t j = 0; j < p.num_vars(); ++j) {
    std::vector<Rational> row(p.num_vars(), Rational(0));
    row[j] = -1;
    cone.a.push_back(std::move(row));
    cone.b.emplace_back(0);
    cone.eq.push_back(false);
  }
  cone.a.push_back(p.objective.coeffs);
  cone.b.emplace_back(1);
  cone.eq.push_back(false);
  VertexScan ray = scan_vertices(cone, p.objective.coeffs);
  if (ray.has_vertex && ray.best == 1) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.objective = primal.best + p.objective.constant;
  return out;
}

LpProblem random_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nvars_d(1, 3), nrows_d(2, 5),
      coeff_d(-3, 3), rhs_d(-4, 6), pct(0, 99);
  LpProblem p;
  const int n = nvars_d(rng);
  for (int j = 0; j < n; ++j) p.add_var("v" + std::to_string(j));
  p.objective = p.expr();
  for (int j = 0; j < n; ++j) p.objective.coeffs[j] = coeff_d(rng);
  const int rows = nrows_d(rng);
  for (int i = 0; i < rows; ++i) {
    LinExpr lhs = p.expr();
    for (int j = 0; j < n; ++j) lhs.coeffs[j] = coeff_d(rng);
    Rational rhs = rhs_d(rng);
    if (pct(rng) < 20)
      p.add_eq(std::move(lhs), std::move(rhs));
    else
      p.add_le(std::move(lhs), std::move(rhs));
  }
  if (pct(rng) < 60) {
    // Box row to keep a good share of the sample bounded.
    LinExpr lhs = p.expr();
    for (int j = 0; j < n; ++j) lhs.coeffs[j] = 1;
    p.add_le(std::move(lhs), Rational(8));
  }
  return p;
}

Instance random_instance(std::mt19937_64& rng, int m, int k, int lmax) {
  std::uniform_int_distribution<int> t(0, lmax);
  std::vector<Rational> p;
  for (int j = 0; j < m * k; ++j) p.emplace_back(t(rng));
  return Instance::from_raw(std::move(p), m);
}

}  // namespace fmtest
