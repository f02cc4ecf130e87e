#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "fm/caseanalysis.hpp"
#include "fm/lp.hpp"
#include "support/support.hpp"

using namespace fm;

namespace {

LpProblem simple_max() {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6 -> optimum 14/5 at (8/5, 6/5).
  LpProblem p;
  p.add_var("x");
  p.add_var("y");
  p.objective.coeffs = {1, 1};
  LinExpr a = p.expr();
  a.coeffs = {1, 2};
  p.add_le(a, 4);
  LinExpr b = p.expr();
  b.coeffs = {3, 1};
  p.add_le(b, 6);
  return p;
}

}  // namespace

TEST_CASE("basic simplex outcomes") {
  LpProblem p = simple_max();
  LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == Rational(14) / 5);
  CHECK(s.primal == std::vector<Rational>{Rational(8) / 5, Rational(6) / 5});
  CHECK(verify_certificate(p, s));
}

TEST_CASE("unbounded and infeasible detection") {
  LpProblem unb;
  unb.add_var("x");
  unb.objective.coeffs = {1};
  CHECK(solve_lp(unb).status == LpStatus::Unbounded);

  LpProblem inf;
  inf.add_var("x");
  inf.objective.coeffs = {1};
  LinExpr a = inf.expr();
  a.coeffs = {1};
  inf.add_le(a, -1);  // x <= -1 contradicts x >= 0
  CHECK(solve_lp(inf).status == LpStatus::Infeasible);
}

TEST_CASE("equalities, negative rhs and redundant rows") {
  LpProblem p;
  p.add_var("x");
  p.add_var("y");
  p.objective.coeffs = {2, 3};
  LinExpr a = p.expr();
  a.coeffs = {1, 1};
  p.add_eq(a, 3);
  LinExpr b = p.expr();
  b.coeffs = {-1, -1};
  p.add_le(b, -3);  // redundant with the equality
  LinExpr c = p.expr();
  c.coeffs = {2, 2};
  p.add_eq(c, 6);  // redundant duplicate
  LinExpr d = p.expr();
  d.coeffs = {1, 0};
  p.add_ge(d, 1);  // x >= 1
  LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == 8);  // x=1, y=2
  CHECK(verify_certificate(p, s));
}

TEST_CASE("expression constants fold into the right-hand side") {
  LpProblem p;
  p.add_var("x");
  p.objective.coeffs = {1};
  p.objective.constant = 5;
  LinExpr a = p.expr();
  a.coeffs = {1};
  a.constant = 2;
  p.add_le(a, 3);  // x <= 1
  LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == 6);
  CHECK(verify_certificate(p, s));
}

TEST_CASE("golden two-machine reference problems") {
  for (const ReferenceLp& ref : reference_lps_m2k3()) {
    CAPTURE(ref.lp.label);
    LpSolution s = solve_lp(ref.lp);
    CHECK(s.status == ref.expected_status);
    if (ref.expected_status != LpStatus::Optimal) continue;
    CHECK(s.objective == ref.expected_value);
    CHECK(verify_certificate(ref.lp, s));
    if (ref.point_is_unique) CHECK(s.primal == ref.expected_point);
  }
}

TEST_CASE("golden three-machine grid problem") {
  ReferenceLp ref = reference_lp_m3k3_grid();
  LpSolution s = solve_lp(ref.lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == Rational(9) / 8);
  CHECK(verify_certificate(ref.lp, s));
  // The quoted optimal point is feasible and attains the optimum.
  for (const auto& c : ref.lp.constraints) {
    Rational v = c.lhs.eval(ref.expected_point);
    if (c.rel == Relation::Eq)
      CHECK(v == c.rhs);
    else
      CHECK(v <= c.rhs);
  }
  CHECK(ref.lp.objective.eval(ref.expected_point) == Rational(9) / 8);
}

TEST_CASE("certificate verifier rejects tampering") {
  LpProblem p = simple_max();
  LpSolution good = solve_lp(p);
  REQUIRE(verify_certificate(p, good));

  LpSolution bad = good;
  bad.primal[0] += 1;
  CHECK_FALSE(verify_certificate(p, bad));

  bad = good;
  bad.dual[0] -= Rational(1) / 7;
  CHECK_FALSE(verify_certificate(p, bad));

  bad = good;
  bad.objective += 1;
  CHECK_FALSE(verify_certificate(p, bad));

  bad = good;
  bad.status = LpStatus::Infeasible;
  CHECK_FALSE(verify_certificate(p, bad));

  // Negative multiplier on an inequality row.
  bad = good;
  bad.dual[0] = -1;
  CHECK_FALSE(verify_certificate(p, bad));
}

TEST_CASE("simplex agrees with vertex enumeration on random problems") {
  std::mt19937_64 rng(41);
  int optimal_seen = 0, infeasible_seen = 0, unbounded_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LpProblem p = fmtest::random_lp(rng);
    LpSolution s = solve_lp(p);
    fmtest::VertexLpResult v = fmtest::lp_by_vertex_enumeration(p);
    CAPTURE(trial);
    CHECK(s.status == v.status);
    if (s.status == LpStatus::Optimal && v.status == LpStatus::Optimal) {
      CHECK(s.objective == v.objective);
      CHECK(verify_certificate(p, s));
      ++optimal_seen;
    }
    infeasible_seen += s.status == LpStatus::Infeasible;
    unbounded_seen += s.status == LpStatus::Unbounded;
  }
  // The sample must exercise all three outcomes.
  CHECK(optimal_seen > 50);
  CHECK(infeasible_seen > 10);
  CHECK(unbounded_seen > 10);
}

TEST_CASE("lp json round trip") {
  LpProblem p = reference_lps_m2k3()[1].lp;
  nlohmann::json j = p.to_json();
  LpProblem back = LpProblem::from_json(j);
  CHECK(back.label == p.label);
  CHECK(back.var_names == p.var_names);
  CHECK(back.objective == p.objective);
  REQUIRE(back.constraints.size() == p.constraints.size());
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    CHECK(back.constraints[i].lhs == p.constraints[i].lhs);
    CHECK(back.constraints[i].rel == p.constraints[i].rel);
    CHECK(back.constraints[i].rhs == p.constraints[i].rhs);
  }
  LpSolution s = solve_lp(back);
  nlohmann::json js = s.to_json();
  CHECK(js["status"] == "optimal");
  CHECK(js["objective"] == "8/7");
}
