#include "fm/caseanalysis.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

namespace fm {

namespace {

// Symbolic layout shared by every case of (m, k).
struct Layout {
  int m;
  int k;
  LpProblem base;  // variables + ordering chain, no objective yet
  // slots[r-1][i] = expression for the (i+1)-th largest value of rank r.
  std::vector<std::vector<LinExpr>> slots;
};

LinExpr diff(const LinExpr& a, const LinExpr& b) {
  LinExpr d = a;
  for (std::size_t j = 0; j < d.coeffs.size(); ++j) d.coeffs[j] -= b.coeffs[j];
  d.constant -= b.constant;
  return d;
}

LinExpr sum(const LinExpr& a, const LinExpr& b) {
  LinExpr s = a;
  for (std::size_t j = 0; j < s.coeffs.size(); ++j) s.coeffs[j] += b.coeffs[j];
  s.constant += b.constant;
  return s;
}

bool is_zero(const LinExpr& e) {
  if (e.constant != 0) return false;
  return std::all_of(e.coeffs.begin(), e.coeffs.end(),
                     [](const Rational& c) { return c == 0; });
}

Layout make_layout(int m, int k) {
  if (m < 1 || k < 1) throw std::invalid_argument("need m >= 1 and k >= 1");
  Layout lay;
  lay.m = m;
  lay.k = k;
  for (int r = 1; r <= k; ++r) lay.base.add_var("l" + std::to_string(r));
  std::vector<std::vector<std::size_t>> mid(k);
  for (int r = 1; r <= k; ++r)
    for (int i = 2; i <= m - 1; ++i)
      mid[r - 1].push_back(lay.base.add_var("x" + std::to_string(r) + "_" +
                                            std::to_string(i)));
  auto var = [&](std::size_t v) {
    LinExpr e = lay.base.expr();
    e.coeffs[v] = 1;
    return e;
  };
  // Rank r reads lambda_r, middles, then lambda_{r+1} (the smallest value
  // of a rank equals the largest of the next; the last rank ends at 0).
  // With one machine a rank is the single value lambda_r.
  lay.slots.resize(k);
  for (int r = 1; r <= k; ++r) {
    auto& row = lay.slots[r - 1];
    row.push_back(var(r - 1));
    for (std::size_t v : mid[r - 1]) row.push_back(var(v));
    if (m >= 2)
      row.push_back(r < k ? var(r) : lay.base.expr());  // lambda_{k+1} = 0
  }
  // Ordering chain over all slots flattened rank-major.
  const LinExpr* prev = nullptr;
  for (const auto& row : lay.slots)
    for (const auto& e : row) {
      if (prev && *prev != e && !is_zero(e))
        lay.base.add_le(diff(e, *prev), Rational(0));
      prev = &e;
    }
  return lay;
}

std::vector<std::vector<int>> all_permutations(int m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::string perm_tag(const std::vector<int>& p) {
  std::string s;
  for (int v : p) s += static_cast<char>('0' + v);
  return s;
}

// One assumed LD run: per-rank ascending machine orders, the resulting
// final loads, the assumptions as constraints, and the argmax machine.
struct LdBranch {
  std::vector<Constraint> conds;
  LinExpr makespan;
  std::string tag;
};

std::vector<LdBranch> enumerate_ld_branches(const Layout& lay) {
  const int m = lay.m;
  const int k = lay.k;
  auto perms = all_permutations(m);

  struct Node {
    std::vector<Constraint> conds;
    std::vector<LinExpr> loads;
    std::string tag;
  };
  std::vector<Node> frontier;
  {
    Node root;
    for (int i = 0; i < m; ++i) root.loads.push_back(lay.slots[0][i]);
    root.tag = "L";
    frontier.push_back(std::move(root));
  }
  for (int r = 2; r <= k; ++r) {
    std::vector<Node> next;
    for (const Node& node : frontier)
      for (const auto& order : perms) {
        Node child = node;
        // order lists machines by nondecreasing load; position j then
        // receives the (j+1)-th largest value of rank r.
        for (int j = 0; j + 1 < m; ++j)
          child.conds.push_back({diff(node.loads[order[j]],
                                      node.loads[order[j + 1]]),
                                 Relation::LessEq, Rational(0)});
        for (int j = 0; j < m; ++j)
          child.loads[order[j]] = sum(node.loads[order[j]], lay.slots[r - 1][j]);
        child.tag += (r > 2 ? "." : "") + perm_tag(order);
        next.push_back(std::move(child));
      }
    frontier = std::move(next);
  }
  std::vector<LdBranch> out;
  for (const Node& node : frontier)
    for (int a = 0; a < m; ++a) {
      LdBranch b;
      b.conds = node.conds;
      for (int i = 0; i < m; ++i)
        if (i != a)
          b.conds.push_back({diff(node.loads[i], node.loads[a]),
                             Relation::LessEq, Rational(0)});
      b.makespan = node.loads[a];
      b.tag = node.tag + "A" + static_cast<char>('0' + a);
      out.push_back(std::move(b));
    }
  return out;
}

// Candidate assignments: rank 1 is the identity (relabeling the candidate's
// machines is harmless), ranks 2..k range over all permutations.
struct Candidate {
  std::vector<std::vector<int>> assignment;  // [r-1][machine] -> slot index
  std::vector<LinExpr> loads;
  std::string tag;
};

std::vector<Candidate> enumerate_candidates(const Layout& lay) {
  const int m = lay.m;
  const int k = lay.k;
  auto perms = all_permutations(m);
  std::vector<Candidate> frontier;
  {
    Candidate root;
    std::vector<int> identity(m);
    std::iota(identity.begin(), identity.end(), 0);
    root.assignment.push_back(identity);
    for (int i = 0; i < m; ++i) root.loads.push_back(lay.slots[0][i]);
    root.tag = "O";
    frontier.push_back(std::move(root));
  }
  for (int r = 2; r <= k; ++r) {
    std::vector<Candidate> next;
    for (const Candidate& node : frontier)
      for (const auto& pi : perms) {
        Candidate child = node;
        child.assignment.push_back(pi);
        for (int i = 0; i < m; ++i)
          child.loads[i] = sum(node.loads[i], lay.slots[r - 1][pi[i]]);
        child.tag += (r > 2 ? "." : "") + perm_tag(pi);
        next.push_back(std::move(child));
      }
    frontier = std::move(next);
  }
  return frontier;
}

}  // namespace

std::size_t case_var_count(int m, int k) {
  return static_cast<std::size_t>(k) +
         static_cast<std::size_t>(k) * std::max(0, m - 2);
}

std::vector<Rational> symbolic_point(const Instance& inst) {
  const int m = inst.machines();
  const int k = inst.ranks();
  std::vector<Rational> x;
  for (int r = 1; r <= k; ++r) x.push_back(inst.lambda(r));
  for (int r = 1; r <= k; ++r)
    for (int i = 2; i <= m - 1; ++i) x.push_back(inst.tau(i, r));
  return x;
}

bool sign_conditions_hold(const CaseSpec& c, const std::vector<Rational>& x) {
  return std::all_of(c.sign_conditions.begin(), c.sign_conditions.end(),
                     [&](const Constraint& con) {
                       return con.lhs.eval(x) <= con.rhs;
                     });
}

std::vector<CaseSpec> enumerate_cases(int m, int k, std::uint64_t cap) {
  Layout lay = make_layout(m, k);
  std::uint64_t fact = 1;
  for (int i = 2; i <= m; ++i) fact *= static_cast<std::uint64_t>(i);
  // total = m * (m!)^(2(k-1)): LD branches times candidate assignments.
  std::uint64_t total = static_cast<std::uint64_t>(m);
  for (int r = 2; r <= k; ++r)
    for (int side = 0; side < 2; ++side) {
      if (total > cap / fact) throw CaseLimitExceeded("case cap exceeded");
      total *= fact;
    }
  if (total > cap) throw CaseLimitExceeded("case cap exceeded");

  auto branches = enumerate_ld_branches(lay);
  auto candidates = enumerate_candidates(lay);
  std::vector<CaseSpec> out;
  out.reserve(branches.size() * candidates.size());
  for (const auto& b : branches)
    for (const auto& c : candidates) {
      CaseSpec cs;
      cs.m = m;
      cs.k = k;
      cs.id = b.tag + "-" + c.tag;
      cs.sign_conditions = b.conds;
      cs.candidate = c.assignment;
      cs.ld_makespan = b.makespan;
      cs.lp = lay.base;
      cs.lp.label = cs.id;
      cs.lp.objective = b.makespan;
      for (const auto& con : b.conds)
        cs.lp.constraints.push_back(con);
      for (const auto& load : c.loads)
        cs.lp.add_le(load, Rational(1));
      out.push_back(std::move(cs));
    }
  return out;
}

BoundReport verify_bound(int m, int k, const Rational& bound, int threads,
                         std::uint64_t cap) {
  BoundReport rep;
  rep.m = m;
  rep.k = k;
  rep.bound = bound;
  rep.specs = enumerate_cases(m, k, cap);
  rep.cases.resize(rep.specs.size());

  auto solve_one = [&](std::size_t i) {
    CaseResult& res = rep.cases[i];
    res.id = rep.specs[i].id;
    res.solution = solve_lp(rep.specs[i].lp);
    if (res.solution.status == LpStatus::Optimal)
      res.certificate_ok = verify_certificate(rep.specs[i].lp, res.solution);
  };
  if (threads <= 1) {
    for (std::size_t i = 0; i < rep.specs.size(); ++i) solve_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < rep.specs.size();
             i = next.fetch_add(1))
          solve_one(i);
      });
    for (auto& t : pool) t.join();
  }

  bool any_optimal = false;
  for (const auto& res : rep.cases) {
    switch (res.solution.status) {
      case LpStatus::Unbounded:
        rep.any_unbounded = true;
        break;
      case LpStatus::Infeasible:
        break;
      case LpStatus::Optimal:
        if (!res.certificate_ok) rep.any_bad_certificate = true;
        if (!any_optimal || res.solution.objective > rep.max_value) {
          any_optimal = true;
          rep.max_value = res.solution.objective;
          rep.attaining.clear();
        }
        if (res.solution.objective == rep.max_value)
          rep.attaining.push_back(res.id);
        break;
    }
  }
  rep.pass = !rep.any_unbounded && !rep.any_bad_certificate &&
             any_optimal && rep.max_value <= bound;
  return rep;
}

std::set<int> remaining_cases(int m) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  if (m <= 3) return {};
  return {4, 5};
}

namespace {

LpProblem two_var_problem(const std::string& label, const std::string& v0,
                          const std::string& v1) {
  LpProblem p;
  p.label = label;
  p.add_var(v0);
  p.add_var(v1);
  return p;
}

LinExpr combo(const LpProblem& p, std::vector<Rational> coeffs,
              Rational constant = 0) {
  LinExpr e = p.expr();
  e.coeffs = std::move(coeffs);
  e.constant = std::move(constant);
  return e;
}

}  // namespace

std::vector<ReferenceLp> reference_lps_m2k3() {
  std::vector<ReferenceLp> out;

  {
    // Requires the LD makespan to already beat 8/7 while the first machine
    // holds at least twice the second rank; the system is contradictory.
    LpProblem p;
    p.label = "case1";
    p.add_var("l1");
    p.add_var("l2");
    p.add_var("l3");
    p.objective = combo(p, {1, 0, 1});
    p.add_le(combo(p, {-1, 1, 0}), 0);             // l2 <= l1
    p.add_le(combo(p, {0, -1, 1}), 0);             // l3 <= l2
    p.add_le(combo(p, {-1, 2, 0}), 0);             // 2 l2 <= l1
    p.add_eq(combo(p, {1, 1, 0}), 1);              // l1 + l2 = 1
    p.add_ge(combo(p, {1, 0, 1}), Rational(8) / 7);
    out.push_back({std::move(p), LpStatus::Infeasible, 0, {}, false});
  }
  {
    LpProblem p = two_var_problem("case2A", "l2", "l3");
    p.objective = combo(p, {2, 1});
    p.add_le(combo(p, {2, -3}), 0);  // 2 l2 <= 3 l3
    p.add_eq(combo(p, {1, 2}), 1);
    out.push_back({std::move(p), LpStatus::Optimal, Rational(8) / 7,
                   {Rational(3) / 7, Rational(2) / 7}, true});
  }
  {
    LpProblem p = two_var_problem("case2B", "l2", "l3");
    p.objective = combo(p, {2, 1});
    p.add_ge(combo(p, {1, 0}), Rational(1) / 3);
    p.add_le(combo(p, {1, 2}), 1);
    p.add_le(combo(p, {3, -1}), 1);  // 3 l2 <= 1 + l3
    out.push_back({std::move(p), LpStatus::Optimal, Rational(8) / 7,
                   {Rational(3) / 7, Rational(2) / 7}, true});
  }
  {
    LpProblem p = two_var_problem("case3A", "l1", "l3");
    p.objective = combo(p, {1, 2});
    p.add_le(combo(p, {1, 5}), 2);
    p.add_ge(combo(p, {1, 6}), 2);
    p.add_le(combo(p, {1, -2}), 0);  // l1 <= 2 l3
    out.push_back({std::move(p), LpStatus::Optimal, Rational(8) / 7,
                   {Rational(4) / 7, Rational(2) / 7}, true});
  }
  {
    LpProblem p = two_var_problem("case3B", "l1", "l3");
    p.objective = combo(p, {1, 2});
    p.add_ge(combo(p, {1, -2}), 0);  // l1 >= 2 l3
    p.add_le(combo(p, {3, 1}), 2);
    p.add_ge(combo(p, {3, 2}), 2);
    out.push_back({std::move(p), LpStatus::Optimal, Rational(8) / 7,
                   {Rational(4) / 7, Rational(2) / 7}, true});
  }
  {
    LpProblem p;
    p.label = "case4A";
    p.add_var("l1");
    p.add_var("l2");
    p.add_var("l3");
    p.objective = combo(p, {0, 2, 0});
    p.add_le(combo(p, {-1, 1, 0}), 0);   // l2 <= l1
    p.add_le(combo(p, {0, -1, 1}), 0);   // l3 <= l2
    p.add_le(combo(p, {1, 0, -2}), 0);   // l1 <= 2 l3
    p.add_eq(combo(p, {0, 1, 2}), 1);
    p.add_ge(combo(p, {-1, 2, -2}), 0);  // 2 l2 >= l1 + 2 l3
    out.push_back({std::move(p), LpStatus::Optimal, Rational(1),
                   {Rational(1) / 2, Rational(1) / 2, Rational(1) / 4}, true});
  }
  {
    LpProblem p;
    p.label = "case4B";
    p.add_var("l1");
    p.add_var("l2");
    p.add_var("l3");
    p.objective = combo(p, {0, 2, 0});
    p.add_le(combo(p, {-1, 1, 0}), 0);
    p.add_le(combo(p, {0, -1, 1}), 0);
    p.add_eq(combo(p, {1, 1, 0}), 1);
    p.add_ge(combo(p, {1, 0, -2}), 0);   // l1 >= 2 l3
    p.add_le(combo(p, {1, -2, 2}), 0);   // l1 + 2 l3 <= 2 l2
    out.push_back({std::move(p), LpStatus::Optimal, Rational(1), {}, false});
  }
  return out;
}

ReferenceLp reference_lp_m3k3_grid() {
  LpProblem p;
  p.label = "grid-3x3";
  p.add_var("l1");
  p.add_var("l2");
  p.add_var("l3");
  p.add_var("a1");
  p.add_var("a2");
  auto c = [&](Rational l1, Rational l2, Rational l3, Rational a1,
               Rational a2) {
    return combo(p, {std::move(l1), std::move(l2), std::move(l3),
                     std::move(a1), std::move(a2)});
  };
  p.objective = c(0, 0, 1, 1, 1);
  p.add_le(c(-1, 0, 0, 1, 0), 0);       // a1 <= l1
  p.add_le(c(0, 1, 0, -1, 0), 0);       // l2 <= a1
  p.add_le(c(0, -1, 0, 0, 1), 0);       // a2 <= l2
  p.add_le(c(0, 0, 1, 0, -1), 0);       // l3 <= a2
  p.add_le(c(-1, 0, -1, 1, 1), 0);      // a1 + a2 <= l1 + l3
  p.add_le(c(0, 2, 0, -1, -1), 0);      // 2 l2 <= a1 + a2
  p.add_le(c(-1, 0, 2, 1, -1), 0);      // 2 l3 + a1 <= l1 + a2
  p.add_le(c(-1, 2, 1, 0, -1), 0);      // 2 l2 + l3 <= l1 + a2
  p.add_le(c(1, 0, 0, 0, 1), 1);        // l1 + a2 <= 1
  return {std::move(p),
          LpStatus::Optimal,
          Rational(9) / 8,
          {Rational(5) / 8, Rational(3) / 8, Rational(2) / 8, Rational(4) / 8,
           Rational(3) / 8},
          false};
}

namespace {

nlohmann::json expr_json(const LinExpr& e) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : e.coeffs) coeffs.push_back(format_rational(c));
  return {{"coeffs", coeffs}, {"constant", format_rational(e.constant)}};
}

}  // namespace

nlohmann::json CaseSpec::to_json() const {
  nlohmann::json conds = nlohmann::json::array();
  for (const auto& con : sign_conditions)
    conds.push_back({{"lhs", expr_json(con.lhs)},
                     {"rel", con.rel == Relation::Eq ? "=" : "<="},
                     {"rhs", format_rational(con.rhs)}});
  return {{"id", id},
          {"m", m},
          {"k", k},
          {"sign_conditions", conds},
          {"candidate", candidate},
          {"ld_makespan", expr_json(ld_makespan)},
          {"lp", lp.to_json()}};
}

nlohmann::json BoundReport::to_json() const {
  nlohmann::json jcases = nlohmann::json::array();
  for (std::size_t i = 0; i < cases.size(); ++i)
    jcases.push_back({{"spec", specs[i].to_json()},
                      {"solution", cases[i].solution.to_json()},
                      {"certificate_ok", cases[i].certificate_ok}});
  return {{"m", m},
          {"k", k},
          {"bound", format_rational(bound)},
          {"max_value", format_rational(max_value)},
          {"attaining", attaining},
          {"any_unbounded", any_unbounded},
          {"any_bad_certificate", any_bad_certificate},
          {"pass", pass},
          {"cases", jcases}};
}

}  // namespace fm
