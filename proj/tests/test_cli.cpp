#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fm/instance.hpp"

namespace {

const std::string kCli = FM_CLI_PATH;

std::string work_dir() {
  static std::string dir = [] {
    std::string d = "/tmp/fm-cli-test-XXXXXX";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s", d.c_str());
    REQUIRE(mkdtemp(buf) != nullptr);
    return std::string(buf);
  }();
  return dir;
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string out_path = work_dir() + "/stdout.txt";
  std::string cmd = kCli + " " + args + " > " + out_path + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(status), ss.str()};
}

std::string write_file(const std::string& name, const std::string& content) {
  std::string path = work_dir() + "/" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("family and ratio round trip") {
  RunResult fam = run("family --kind tight --m 2");
  REQUIRE(fam.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(fam.out);
  fm::Instance inst = fm::Instance::from_json(j);
  CHECK(inst.times() == std::vector<fm::Rational>{4, 3, 3, 2, 2, 0});

  std::string path = write_file("tight2.json", fam.out);
  RunResult ratio = run("ratio --in " + path);
  REQUIRE(ratio.exit_code == 0);
  nlohmann::json r = nlohmann::json::parse(ratio.out);
  CHECK(r["ratio"] == "8/7");
  CHECK(r["t_LD_worst"] == "8");
  CHECK(r["t_opt"] == "7");
}

TEST_CASE("schedule subcommand") {
  std::string zeros =
      write_file("zeros.json", R"({"m": 2, "p": [0, 0, 0, 0]})");
  RunResult r = run("schedule --algo ld --in " + zeros);
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["schedules"][0]["makespan"] == "0");

  std::string inst = write_file(
      "inst.json", R"({"m": 2, "p": [4, 3, 3, 2, 2, 0]})");
  for (std::string algo : {"ld", "li", "ld0worst"}) {
    RunResult rr = run("schedule --algo " + algo + " --in " + inst);
    REQUIRE(rr.exit_code == 0);
    nlohmann::json jj = nlohmann::json::parse(rr.out);
    CHECK(jj["count"] == 1);
  }
  RunResult all = run("schedule --algo ld --ties enumerate --in " + inst);
  REQUIRE(all.exit_code == 0);
  nlohmann::json ja = nlohmann::json::parse(all.out);
  // Every tie-break branch shares one makespan.
  for (const auto& s : ja["schedules"]) CHECK(s["makespan"] == "8");
}

TEST_CASE("oracle subcommand and budget exit code") {
  std::string inst = write_file(
      "inst2.json", R"({"m": 2, "p": [4, 3, 3, 2, 2, 0]})");
  RunResult ok = run("oracle --in " + inst);
  REQUIRE(ok.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(ok.out);
  CHECK(j["t_opt"] == "7");

  RunResult starved = run("oracle --budget 1 --in " + inst);
  CHECK(starved.exit_code == 3);
  nlohmann::json js = nlohmann::json::parse(starved.out);
  CHECK(js["status"] == "budget-exhausted");

  RunResult ratio_starved = run("ratio --budget 1 --in " + inst);
  CHECK(ratio_starved.exit_code == 3);
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("ratio").exit_code == 2);  // missing --in
  CHECK(run("ratio --in /nonexistent/path.json").exit_code == 2);
  std::string bad = write_file("bad.json", R"({"m": 2, "p": [1, "x"]})");
  CHECK(run("ratio --in " + bad).exit_code == 2);
  std::string neg = write_file("neg.json", R"({"m": 2, "p": [1, -1]})");
  CHECK(run("ratio --in " + neg).exit_code == 2);
}

TEST_CASE("cases subcommand") {
  RunResult pass = run("cases --m 2 --k 3 --bound 8/7 --out " + work_dir() +
                       "/bundle.json");
  CHECK(pass.exit_code == 0);
  CHECK(pass.out.rfind("PASS", 0) == 0);
  std::ifstream bundle(work_dir() + "/bundle.json");
  nlohmann::json jb = nlohmann::json::parse(bundle);
  CHECK(jb["pass"] == true);
  CHECK(jb["max_value"] == "8/7");
  CHECK(jb["cases"].size() == 32);

  RunResult fail = run("cases --m 2 --k 3 --bound 9/8");
  CHECK(fail.exit_code == 1);
  CHECK(fail.out.rfind("FAIL", 0) == 0);
}

TEST_CASE("hunt subcommand") {
  std::string csv = work_dir() + "/hunt.csv";
  RunResult ok = run("hunt --m 2 --k 3 --lmax 4 --bound 8/7 --out " + csv);
  CHECK(ok.exit_code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "instance-id,m,k,p,t_LD_worst,t_opt,ratio_num,ratio_den,status");

  RunResult viol = run("hunt --m 2 --k 3 --lmax 4 --bound 1");
  CHECK(viol.exit_code == 1);

  RunResult starved =
      run("hunt --m 3 --k 3 --lmax 1 --bound 2 --budget 1");
  CHECK(starved.exit_code == 3);

  // Open parameter range: evidence only, still exit 0, disclaimer first.
  RunResult open = run("hunt --m 4 --k 4 --lmax 1 --bound 6/5");
  CHECK(open.exit_code == 0);
  CHECK(open.out.rfind("# evidence only", 0) == 0);
}
