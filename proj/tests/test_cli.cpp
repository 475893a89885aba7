#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "oddfield/cli.hpp"

using namespace oddfield;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "oddfield");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

fs::path scratch() {
  const fs::path p = fs::temp_directory_path() / "oddfield_cli_test";
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("constant") {
  const Run r5 = run({"constant", "--dim", "5"});
  REQUIRE(r5.code == 0);
  const auto j = nlohmann::json::parse(r5.out);
  CHECK(j["n"] == 1);
  CHECK(j["C"]["value"].get<double>() == doctest::Approx(1.0 / (2.0 * j["omega"].get<double>())));
  CHECK(j["fp_sinh_integral"]["value"].get<double>() == doctest::Approx(-1.0));
  CHECK(j["field_prefactor"]["confirmed"] == "2nC");

  const Run r7 = run({"constant", "--dim", "7"});
  REQUIRE(r7.code == 0);
  CHECK(nlohmann::json::parse(r7.out)["n"] == 2);

  const Run bad = run({"constant", "--dim", "4"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("dimension must be odd and ≥ 5") != std::string::npos);

  const Run omega = run({"constant", "--dim", "5", "--omega", "2"});
  CHECK(nlohmann::json::parse(omega.out)["C"]["value"].get<double>() == doctest::Approx(0.25));
  CHECK(run({"constant", "--dim", "5", "--omega", "-1"}).code == 2);
}

TEST_CASE("argument errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"constant", "--dim", "five"}).code == 2);
  CHECK(run({"constant", "--help"}).code == 0);
  CHECK(run({"fieldmap", "--grid", "x=0:1"}).code == 2);
  CHECK(run({"fieldmap", "--grid", "x=0:1:0"}).code == 2);
  CHECK(run({"fieldmap", "--format", "xml"}).code == 2);
  CHECK(run({"fieldmap", "--worldline", "circular"}).code == 2);
  CHECK(run({"fieldmap", "--beta", "0.9,0.9"}).code == 2);
  CHECK(run({"fieldmap", "--grid", "7=0:1:2"}).code == 2);
  CHECK(run({"fieldmap", "--rel-tol", "0"}).code == 2);
}

TEST_CASE("fieldmap csv") {
  const fs::path dir = scratch();
  const std::vector<std::string> args{"fieldmap", "--dim", "5", "--beta", "0.3", "--grid", "x=-2:2:11",
                                      "--grid", "y=-2:2:11", "--t", "2"};
  auto with_out = [&](const fs::path& p) {
    auto a = args;
    a.push_back("--out");
    a.push_back(p.string());
    return a;
  };
  REQUIRE(run(with_out(dir / "a.csv")).code == 0);
  REQUIRE(run(with_out(dir / "b.csv")).code == 0);
  const std::string a = slurp(dir / "a.csv");
  CHECK(a == slurp(dir / "b.csv"));
  CHECK(a.find('\r') == std::string::npos);

  const auto lines = split(a, '\n');
  REQUIRE(lines.size() == 123);  // header, 121 rows, trailing empty
  CHECK(lines.back().empty());
  const auto header = split(lines[0], ',');
  CHECK(header.size() == 5 + 5 + 10 + 2);
  CHECK(header[0] == "x0");
  CHECK(header[10] == "F0_1");
  CHECK(header.back() == "est_error");

  double fmax = 0.0;
  for (std::size_t i = 1; i < 122; ++i) {
    const auto cells = split(lines[i], ',');
    REQUIRE(cells.size() == header.size());
    CHECK(cells[0] == "2");
    if (cells.back() == "skipped") continue;
    for (std::size_t k = 10; k < 20; ++k) fmax = std::max(fmax, std::abs(std::stod(cells[k])));
  }
  CHECK(fmax > 0.0);
  // Lexicographic grid order, first axis slowest.
  CHECK(split(lines[1], ',')[1] == "-2");
  CHECK(split(lines[2], ',')[2] == "-1.6");
  CHECK(split(lines[12], ',')[1] == "-1.6");

  setenv("ODDFIELD_THREADS", "1", 1);
  REQUIRE(run(with_out(dir / "c.csv")).code == 0);
  unsetenv("ODDFIELD_THREADS");
  CHECK(slurp(dir / "c.csv") == a);

  const Run to_stdout = run(args);
  CHECK(to_stdout.out == a);
}

TEST_CASE("fieldmap skipped rows") {
  const Run r = run({"fieldmap", "--dim", "5", "--grid", "x=-1:1:3", "--grid", "y=-1:1:3"});
  REQUIRE(r.code == 0);
  const auto lines = split(r.out, '\n');
  REQUIRE(lines.size() == 11);
  const auto centre = split(lines[5], ',');
  CHECK(centre[1] == "0");
  CHECK(centre[2] == "0");
  CHECK(centre[5].empty());
  CHECK(centre[centre.size() - 2] == "skipped");
  CHECK(centre.back() == "skipped");
  CHECK(r.out.find("nan") == std::string::npos);
  CHECK(split(lines[4], ',').back() != "skipped");
}

TEST_CASE("fieldmap json and hyperbolic") {
  const Run r = run({"fieldmap", "--dim", "5", "--worldline", "hyperbolic", "--g", "1", "--grid", "x=0.5:1.5:3",
                     "--grid", "y=0.4:0.8:2", "--t", "1.5", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["columns"].size() == 22);
  REQUIRE(j["rows"].size() == 6);
  for (const auto& row : j["rows"]) {
    if (row["skipped"]) continue;
    CHECK(row["A"].size() == 5);
    CHECK(row["F"].size() == 10);
    CHECK(std::abs(row["lorenz"].get<double>()) < 1e-4);
  }
}

TEST_CASE("fieldmap io error") {
  const Run r = run({"fieldmap", "--grid", "x=1:2:2", "--out", "/nonexistent/dir/map.csv"});
  CHECK(r.code == 4);
  CHECK(!r.err.empty());
}

TEST_CASE("verify") {
  const Run g = run({"verify", "--suite", "gauge", "--dim", "5"});
  CHECK(g.code == 0);
  const auto j = nlohmann::json::parse(g.out);
  CHECK(j["chosen_sign"] == "plus");
  CHECK(j["gap_samples"].size() > 0);
  CHECK(j["gap_samples"][0].contains("gap_rel"));
  CHECK(j["all_pass"] == true);

  const Run all = run({"verify", "--suite", "all", "--dim", "7"});
  CHECK(all.code == 0);
  CHECK(all.err.empty());
  for (const auto& c : nlohmann::json::parse(all.out)["checks"]) {
    INFO(c.dump());
    CHECK(c["pass"] == true);
  }

  const Run bad = run({"verify", "--suite", "nope"});
  CHECK(bad.code == 2);
}
