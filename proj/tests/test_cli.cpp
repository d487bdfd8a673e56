#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(SQFLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("verify --suite nonsense").code == 2);
  CHECK(run("scan --kind variance").code == 2);
  CHECK(run("scan --kind bogus --x 1000 --q 7").code == 2);
  CHECK(run("verify --suite identities --format xml").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("identities suite passes and is deterministic") {
  const auto a = run("verify --suite identities --seed 5");
  CHECK(a.code == 0);
  CHECK(a.out.rfind("check_id,params,lhs,rhs,tol,mode,pass\n", 0) == 0);
  CHECK(line_count(a.out) >= 201);
  const auto b = run("verify --suite identities --seed 5");
  CHECK(a.out == b.out);
}

TEST_CASE("expsums suite contains the zero block") {
  const auto a = run("verify --suite expsums --seed 1 --format json");
  CHECK(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  REQUIRE(j.is_array());
  bool zero = false;
  for (const auto& rec : j) {
    if (rec.at("check_id") == "s1_vanishes_at_d0") zero = true;
    CHECK(rec.at("pass").get<bool>());
  }
  CHECK(zero);
}

TEST_CASE("scans write files") {
  const auto dir = std::filesystem::temp_directory_path() / "sqflab_cli_test";
  std::filesystem::create_directories(dir);
  const auto csv = dir / "var.csv";
  const auto r = run("scan --kind variance --x 100000 --q 7,97,1009,200000 --threads 2 --out " + csv.string());
  CHECK(r.code == 0);
  const auto text = slurp(csv);
  CHECK(line_count(text) == 4);
  CHECK(text.rfind("X,q,m,statistic", 0) == 0);

  const auto corr = run("scan --kind correlation --m -1 --x 100000 --q 97,1009 --format json");
  CHECK(corr.code == 0);
  const auto j = nlohmann::json::parse(corr.out);
  REQUIRE(j.size() == 2);
  for (const auto& row : j) CHECK(std::stod(row.at("main_term").get<std::string>()) < 0);

  const auto one = run("scan --kind croft --x 100000 --q-exp 0.3:0.6:3 --threads 1");
  const auto two = run("scan --kind croft --x 100000 --q-exp 0.3:0.6:3 --threads 3");
  CHECK(one.code == 0);
  CHECK(one.out == two.out);
  CHECK(run("scan --kind hooley --x 100000 --q 101").code == 0);
  std::filesystem::remove_all(dir);
}
