#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gegenorm/cli.hpp"

using namespace gegenorm;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix + " " + GEGENORM_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<std::string>> csv_cells(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) break;  // stop at a block separator
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    cells.push_back(cur);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("table command, exact mode") {
  RunResult r = run_cli("table --lambda 1 --max-n 3");
  REQUIRE(r.code == 0);
  std::vector<TableRow> rows = table_from_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[3].lambda == Rational(1));
  CHECK(rows[3].n == 3);
  CHECK(rows[3].norm == Cell::exact(Rational(176, 105)));
  CHECK(rows[3].weighted == Cell::exact(Rational(32, 63)));
  CHECK(rows[3].endpoint == Cell::exact(Rational(4)));
  CHECK(rows[3].source == "oracle");
  CHECK(rows[0].norm == Cell::exact(Rational(1)));
}

TEST_CASE("table command, degree zero") {
  RunResult r = run_cli("table --lambda 2 --max-n 0");
  REQUIRE(r.code == 0);
  std::vector<TableRow> rows = table_from_csv(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].norm == Cell::exact(Rational(1)));
  CHECK(rows[0].weighted == Cell::exact(Rational(2, 3)));
  CHECK(rows[0].endpoint == Cell::exact(Rational(1)));
}

TEST_CASE("table command rejects bad indices") {
  CHECK(run_cli("table --lambda 0 --max-n 3").code == 2);
  CHECK(run_cli("table --lambda -1/2 --max-n 3").code == 2);
  CHECK(run_cli("table --lambda bogus --max-n 3").code == 2);
  CHECK(run_cli("table --max-n 3").code == 2);  // no index given
}

TEST_CASE("csv round-trip is exact") {
  RunResult r = run_cli("table --lambda 1/2,3/2 --max-n 5");
  REQUIRE(r.code == 0);
  std::vector<TableRow> rows = table_from_csv(r.out);
  CHECK(rows.size() == 12);
  CHECK(table_to_csv(rows) == r.out);
}

TEST_CASE("json matches csv content") {
  RunResult csv = run_cli("table --lambda 1/2,3/2 --max-n 4");
  RunResult js = run_cli("table --lambda 1/2,3/2 --max-n 4 --format json");
  REQUIRE(csv.code == 0);
  REQUIRE(js.code == 0);
  std::vector<TableRow> a = table_from_csv(csv.out);
  std::vector<TableRow> b = table_from_json(js.out);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  nlohmann::json doc = nlohmann::json::parse(js.out);
  CHECK(doc.contains("config"));
  CHECK(doc.contains("summary"));
  CHECK(doc.at("config").at("command") == "table");
}

TEST_CASE("float mode routes sources and round-trips bit-identically") {
  RunResult r = run_cli("table --mode float --lambda 3/2 --max-n 6");
  REQUIRE(r.code == 0);
  std::vector<TableRow> rows = table_from_csv(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0].source == "recursion");
  CHECK_FALSE(rows[0].norm.is_exact());
  CHECK(table_to_csv(rows) == r.out);  // re-emission reproduces every bit

  RunResult r2 = run_cli("table --mode float --lambda 2 --max-n 4");
  std::vector<TableRow> rows2 = table_from_csv(r2.out);
  CHECK(rows2[0].source == "closed_form");
  CHECK(rows2[0].norm.dbl() == 1.0);

  RunResult r3 = run_cli("table --mode float --lambda 1/2 --max-n 4");
  std::vector<TableRow> rows3 = table_from_csv(r3.out);
  CHECK(rows3[0].source == "oracle");

  RunResult r4 = run_cli("table --mode float --lambda 1/2,3/2 --max-n 4 --format json");
  REQUIRE(r4.code == 0);
  std::vector<TableRow> rows4 = table_from_json(r4.out);
  CHECK(rows4.size() == 10);
  CHECK_FALSE(rows4[0].norm.is_exact());
}

TEST_CASE("verify command passes on a correct build") {
  RunResult r = run_cli("verify --lambda 1 --max-n 6");
  REQUIRE(r.code == 0);
  auto rows = csv_cells(r.out);
  REQUIRE(rows.size() > 5);
  CHECK(rows[0] == std::vector<std::string>{"identity", "checks", "pass", "fail", "seconds"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].size() == 5);
    CHECK(rows[i][3] == "0");
    CHECK(rows[i][1] == rows[i][2]);  // checks == pass
  }
}

TEST_CASE("verify command rejections") {
  CHECK(run_cli("verify --max-n 1").code == 2);
  CHECK(run_cli("verify --lambda 1 --max-n 6 --mode float").code == 2);
}

TEST_CASE("verify fault injection is caught") {
  RunResult r = run_cli("verify --lambda 1 --max-n 6 --inject-fault");
  CHECK(r.code == 1);
  // the report still lists identities, with at least one failure
  auto rows = csv_cells(r.out);
  bool some_fail = false;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].size() == 5 && rows[i][3] != "0") some_fail = true;
  CHECK(some_fail);
}

TEST_CASE("verify fault injection counterexample in json") {
  RunResult r = run_cli("verify --lambda 1 --max-n 6 --inject-fault --format json");
  CHECK(r.code == 1);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  const auto& ce = doc.at("summary").at("counterexample");
  REQUIRE_FALSE(ce.is_null());
  CHECK(ce.at("identity") == "endpoint_product");
  CHECK(ce.at("n") == 2);
}

TEST_CASE("verify verdicts are deterministic for a fixed seed") {
  auto strip_seconds = [](const std::string& text) {
    auto rows = csv_cells(text);
    std::string acc;
    for (const auto& row : rows)
      for (std::size_t i = 0; i + 1 < row.size(); ++i) acc += row[i] + "|";
    return acc;
  };
  RunResult a = run_cli("verify --lambda 1/2 --max-n 5 --seed 7");
  RunResult b = run_cli("verify --lambda 1/2 --max-n 5 --seed 7");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(strip_seconds(a.out) == strip_seconds(b.out));
}

TEST_CASE("degree budget guards exact requests") {
  CHECK(run_cli("table --lambda 1 --max-n 20", "GEGENORM_DEGREE_BUDGET=10").code == 2);
  CHECK(run_cli("table --lambda 1 --max-n 10", "GEGENORM_DEGREE_BUDGET=10").code == 0);
  CHECK(run_cli("verify --lambda 1 --max-n 12", "GEGENORM_DEGREE_BUDGET=10").code == 2);
  CHECK(run_cli("table --lambda 1 --max-n 3", "GEGENORM_DEGREE_BUDGET=oops").code == 2);
}

TEST_CASE("output file handling") {
  std::string path = "/tmp/gegenorm_cli_test_table.csv";
  std::remove(path.c_str());
  RunResult r = run_cli("table --lambda 1 --max-n 2 --out " + path);
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::vector<TableRow> rows = table_from_csv(buffer.str());
  CHECK(rows.size() == 3);
  std::remove(path.c_str());

  CHECK(run_cli("table --lambda 1 --max-n 2 --out /nonexistent-dir/x.csv").code == 3);
}

TEST_CASE("asymptote command emits ratios converging to one") {
  RunResult r = run_cli("asymptote --lambda 2 --n 8,16,32,64");
  REQUIRE(r.code == 0);
  auto rows = csv_cells(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0][0] == "lambda");
  double prev_gap = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 8);
    double ratio = std::strtod(rows[i][6].c_str(), nullptr);
    double gap = std::fabs(ratio - 1.0);
    CHECK(gap < prev_gap);  // each doubling of n tightens the ratio
    prev_gap = gap;
    CHECK(rows[i][7].empty());  // no bound column above index 1
  }
  CHECK(prev_gap < 0.02);  // and by n = 64 it is within 2%
}

TEST_CASE("asymptote bound column at index 1/2") {
  RunResult r = run_cli("asymptote --lambda 1/2 --n 8,16,32,64 --format json");
  REQUIRE(r.code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  for (const auto& row : doc.at("rows")) {
    double n = row.at("n").get<double>();
    CHECK(row.at("norm_bound").get<double>() == doctest::Approx(1.0 / n).epsilon(1e-12));
    CHECK(row.at("two_term").is_null());
  }
}

TEST_CASE("asymptote at index 1 reports the closed-form route") {
  RunResult r = run_cli("asymptote --lambda 1 --n 8,16,32,64 --format json");
  REQUIRE(r.code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  const auto& summary = doc.at("summary");
  REQUIRE(summary.size() == 1);
  std::string note = summary[0].at("note").get<std::string>();
  CHECK(note.find("closed form") != std::string::npos);
}

TEST_CASE("asymptote argument rejections") {
  CHECK(run_cli("asymptote --lambda 0 --n 8,16,32,64").code == 2);
  CHECK(run_cli("asymptote --lambda -1/4 --n 8,16,32,64").code == 2);
  CHECK(run_cli("asymptote --lambda 2 --n 16,8").code == 2);
  CHECK(run_cli("asymptote --lambda 2 --n 2,8,16,32").code == 2);
  CHECK(run_cli("asymptote --lambda 2 --n 8,what").code == 2);
}

TEST_CASE("bench exact mode confirms identical tables") {
  RunResult r = run_cli("bench --lambda 1 --max-n 16");
  REQUIRE(r.code == 0);
  auto rows = csv_cells(r.out);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[1].size() == 7);
  CHECK(rows[1][5] == "true");
  CHECK_FALSE(rows[1][3].empty());
  CHECK_FALSE(rows[1][4].empty());

  CHECK(run_cli("bench --max-n 2").code == 0);  // degenerate but still equal
  CHECK(run_cli("bench --max-n 1").code == 2);
}

TEST_CASE("bench float mode reports tiny deviation") {
  RunResult r = run_cli("bench --mode float --lambda 1 --max-n 64");
  REQUIRE(r.code == 0);
  auto rows = csv_cells(r.out);
  REQUIRE(rows.size() == 2);
  double dev = std::strtod(rows[1][6].c_str(), nullptr);
  CHECK(dev <= 1e-9);
  CHECK(rows[1][5] == "true");
}

TEST_CASE("top-level argument handling") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("table --lambda 1 --max-n 3 --format yaml").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("table --lambda 1 --frobnicate").code == 2);
}
