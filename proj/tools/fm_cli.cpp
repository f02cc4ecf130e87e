#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fm/algorithms.hpp"
#include "fm/caseanalysis.hpp"
#include "fm/oracle.hpp"
#include "fm/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

fm::Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return fm::Instance::from_json(j);
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

nlohmann::json schedule_json(const fm::Schedule& s) {
  nlohmann::json j = s.to_json();
  j["makespan"] = fm::format_rational(fm::makespan(s));
  j["total_flowtime"] = fm::format_rational(fm::total_flowtime(s));
  return j;
}

int run_schedule(const std::string& path, const std::string& algo,
                 bool enumerate_ties) {
  fm::Instance inst = load_instance(path);
  std::vector<fm::Schedule> schedules;
  if (algo == "ld") {
    if (enumerate_ties)
      schedules = fm::ld_schedules(inst);
    else
      schedules.push_back(fm::ld_schedule(inst));
  } else if (algo == "li") {
    schedules.push_back(fm::li_schedule(inst));
  } else {  // ld0worst
    schedules.push_back(fm::ld0_worst_schedule(inst));
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : schedules) arr.push_back(schedule_json(s));
  emit({{"algo", algo}, {"count", schedules.size()}, {"schedules", arr}});
  return kExitOk;
}

int run_oracle(const std::string& path, std::uint64_t budget) {
  fm::Instance inst = load_instance(path);
  fm::OracleResult r = fm::optimal_fm_makespan(inst, budget);
  if (!r.resolved) {
    emit({{"status", "budget-exhausted"},
          {"nodes", r.nodes},
          {"lower_bound", fm::format_rational(r.lower_bound)},
          {"upper_bound", fm::format_rational(r.upper_bound)}});
    return kExitBudget;
  }
  emit({{"status", "optimal"},
        {"t_opt", fm::format_rational(r.optimum)},
        {"nodes", r.nodes},
        {"witness", schedule_json(*r.witness)}});
  return kExitOk;
}

int run_ratio(const std::string& path, std::uint64_t budget) {
  fm::Instance inst = load_instance(path);
  try {
    fm::RatioResult r = fm::makespan_ratio(inst, budget);
    emit({{"t_LD_worst", fm::format_rational(r.t_ld_worst)},
          {"t_opt", fm::format_rational(r.t_opt)},
          {"ratio", fm::format_rational(r.ratio)}});
    return kExitOk;
  } catch (const fm::OracleBudgetExceeded& e) {
    emit({{"status", "budget-exhausted"},
          {"lower_bound", fm::format_rational(e.lower_bound)},
          {"upper_bound", fm::format_rational(e.upper_bound)}});
    return kExitBudget;
  }
}

int run_family(const std::string& kind, int m) {
  fm::Instance inst =
      kind == "tight" ? fm::tight_family(m) : fm::ld0_family(m);
  emit(inst.to_json());
  return kExitOk;
}

int run_hunt(int m, int k, long long lmax, const std::string& bound_str,
             bool filter_kk1, int jobs, std::uint64_t budget,
             const std::string& out_path) {
  fm::Rational bound = bound_str.empty()
                           ? fm::Rational(5 * m - 2) / fm::Rational(4 * m - 1)
                           : fm::parse_rational(bound_str);
  fm::HuntReport rep =
      fm::hunt(m, k, fm::Integer(lmax), bound, filter_kk1, jobs, budget);
  if (out_path.empty()) {
    rep.write_csv(std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    rep.write_csv(out);
  }
  nlohmann::json summary{
      {"checked", rep.checked},
      {"instances", rep.rows.size()},
      {"max_ratio", fm::format_rational(rep.max_ratio)},
      {"bound", fm::format_rational(rep.bound)},
      {"violation", rep.violation},
      {"unresolved", rep.unresolved},
      {"evidence_only", rep.evidence_only}};
  std::cerr << summary.dump(2) << "\n";
  if (rep.violation) return kExitViolation;
  if (rep.unresolved) return kExitBudget;
  return kExitOk;
}

int run_cases(int m, int k, const std::string& bound_str, int jobs,
              const std::string& out_path) {
  fm::Rational bound = fm::parse_rational(bound_str);
  fm::BoundReport rep = fm::verify_bound(m, k, bound, jobs);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << rep.to_json().dump(2) << "\n";
  }
  std::cout << (rep.pass ? "PASS" : "FAIL") << " max="
            << fm::format_rational(rep.max_value)
            << " bound=" << fm::format_rational(rep.bound)
            << " cases=" << rep.cases.size() << "\n";
  return rep.pass ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tools for makespan minimization over flowtime-optimal "
               "schedules on identical machines"};
  app.require_subcommand(1);

  std::string in_path, algo = "ld", ties, kind, bound_str, out_path;
  int m = 2, k = 3, jobs = 1;
  long long lmax = 4;
  std::uint64_t budget = fm::kDefaultOracleBudget;

  auto* sched = app.add_subcommand("schedule", "Run a list heuristic");
  sched->add_option("--in", in_path, "instance JSON file")->required();
  sched->add_option("--algo", algo, "ld|li|ld0worst")
      ->check(CLI::IsMember({"ld", "li", "ld0worst"}));
  sched->add_option("--ties", ties, "'enumerate' to list every tie-break")
      ->check(CLI::IsMember({"enumerate"}));

  auto* oracle = app.add_subcommand("oracle", "Exact optimal makespan");
  oracle->add_option("--in", in_path, "instance JSON file")->required();
  oracle->add_option("--budget", budget, "node budget");

  auto* ratio = app.add_subcommand("ratio", "Worst LD makespan vs optimum");
  ratio->add_option("--in", in_path, "instance JSON file")->required();
  ratio->add_option("--budget", budget, "node budget");

  auto* family = app.add_subcommand("family", "Emit a named instance family");
  family->add_option("--kind", kind, "tight|ld0")
      ->required()
      ->check(CLI::IsMember({"tight", "ld0"}));
  family->add_option("--m", m, "machine count")->required();

  auto* hunt = app.add_subcommand("hunt", "Exhaustive ratio search");
  hunt->add_option("--m", m, "machine count")->required();
  hunt->add_option("--k", k, "rank count")->required();
  hunt->add_option("--lmax", lmax, "largest processing time")->required();
  hunt->add_option("--bound", bound_str, "ratio bound a/b (default (5m-2)/(4m-1))");
  hunt->add_flag("--filter-kk1", "drop ratios >= k/(k-1) from the max");
  hunt->add_option("--jobs", jobs, "worker threads");
  hunt->add_option("--budget", budget, "per-instance oracle node budget");
  hunt->add_option("--out", out_path, "CSV report path (default stdout)");

  auto* cases = app.add_subcommand("cases", "Symbolic case-analysis verdict");
  cases->add_option("--m", m, "machine count")->required();
  cases->add_option("--k", k, "rank count")->required();
  cases->add_option("--bound", bound_str, "ratio bound a/b")->required();
  cases->add_option("--jobs", jobs, "worker threads");
  cases->add_option("--out", out_path, "JSON bundle path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sched->parsed()) return run_schedule(in_path, algo, ties == "enumerate");
    if (oracle->parsed()) return run_oracle(in_path, budget);
    if (ratio->parsed()) return run_ratio(in_path, budget);
    if (family->parsed()) return run_family(kind, m);
    if (hunt->parsed())
      return run_hunt(m, k, lmax, bound_str,
                      hunt->count("--filter-kk1") > 0, jobs, budget, out_path);
    if (cases->parsed()) return run_cases(m, k, bound_str, jobs, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
