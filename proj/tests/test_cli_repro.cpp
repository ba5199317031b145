// Copyright 2026 The magiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "magiclab/cli_repro.hpp"

using namespace magiclab;

#ifndef MAGICLAB_CLI_PATH
#error "MAGICLAB_CLI_PATH must point at the command line binary"
#endif

namespace {

std::filesystem::path fresh_dir(const char* name) {
  const auto dir =
      std::filesystem::temp_directory_path() / "magiclab_cli_test" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + MAGICLAB_CLI_PATH + "\" " +
                          args + " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Data lines of a CSV: everything after the '#' comment and the column
// header.
std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  int skipped = 0;
  while (std::getline(in, line)) {
    if (skipped < 2) {
      ++skipped;
      continue;
    }
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<double> split_csv_row(const std::string& row) {
  std::vector<double> values;
  std::istringstream in(row);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    values.push_back(std::stod(cell));
  }
  return values;
}

}  // namespace

TEST_CASE("parse_value_list handles singles, lists, and ranges") {
  CHECK(parse_value_list("3") == std::vector<double>{3.0});
  CHECK(parse_value_list("0.5,2,3") == std::vector<double>{0.5, 2.0, 3.0});

  const std::vector<double> grid = parse_value_list("0:15:0.05");
  REQUIRE(grid.size() == 301);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(15.0).epsilon(1e-12));

  const std::vector<double> mixed = parse_value_list("1,4:6:1,9");
  CHECK(mixed == std::vector<double>{1.0, 4.0, 5.0, 6.0, 9.0});

  CHECK(parse_value_list("2:2:0.5") == std::vector<double>{2.0});
}

TEST_CASE("parse_value_list rejects malformed input") {
  CHECK_THROWS_AS(parse_value_list(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_value_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_value_list("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_value_list("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_value_list("1:2:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_value_list("1:2:-0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_value_list("2:1:0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_value_list("1.5x"), std::invalid_argument);
}

TEST_CASE("fig1 writes the default 301-row curve") {
  const auto dir = fresh_dir("fig1");
  CHECK(run_cli("fig1-deltam --out " + dir.string()) == 0);
  const std::string text = read_file(dir / "fig1_deltam.csv");
  CHECK(text.rfind("# schema: fig1_deltam v1", 0) == 0);
  const auto rows = data_lines(text);
  REQUIRE(rows.size() == 301);

  const auto first = split_csv_row(rows.front());
  REQUIRE(first.size() == 2);
  CHECK(first[0] == 0.0);
  CHECK(first[1] == doctest::Approx(-0.246860077932).epsilon(1e-9));

  // The curve crosses zero at n = 2: negative before, nonnegative after.
  const auto at = [&](std::size_t i) { return split_csv_row(rows[i]); };
  CHECK(at(20)[1] < 0.0);   // n = 1
  CHECK(at(60)[1] >= -1e-9);  // n = 3
}

TEST_CASE("fig1 honors a custom grid and is deterministic") {
  const auto dir_a = fresh_dir("fig1_a");
  const auto dir_b = fresh_dir("fig1_b");
  const std::string flags = "fig1-deltam --n-grid 0:2:1 --out ";
  CHECK(run_cli(flags + dir_a.string()) == 0);
  CHECK(run_cli(flags + dir_b.string()) == 0);
  const std::string a = read_file(dir_a / "fig1_deltam.csv");
  CHECK(a == read_file(dir_b / "fig1_deltam.csv"));
  CHECK(data_lines(a).size() == 3);
}

TEST_CASE("fig3 emits one row per qubit number with a constant bound") {
  const auto dir = fresh_dir("fig3");
  CHECK(run_cli("fig3-bound --nmax 12 --out " + dir.string()) == 0);
  const auto rows = data_lines(read_file(dir / "fig3_bound.csv"));
  REQUIRE(rows.size() == 12);
  const double bound = 4.0 * std::log(1.25);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto row = split_csv_row(rows[i]);
    REQUIRE(row.size() == 3);
    CHECK(row[0] == static_cast<double>(i + 1));
    CHECK(row[1] > 0.0);
    CHECK(row[2] == doctest::Approx(bound).epsilon(1e-9));
  }
  CHECK(run_cli("fig3-bound --n-grid 0.5 --out " + dir.string()) == 2);
}

TEST_CASE("fig2 runs a small chain and rejects odd sizes") {
  const auto dir = fresh_dir("fig2");
  CHECK(run_cli("fig2-xxz --nmax 6 --chi 8 --samples 300 --delta 0.5 --out " +
                dir.string()) == 0);
  const auto rows = data_lines(read_file(dir / "fig2_xxz.csv"));
  REQUIRE(rows.size() == 1);
  const auto row = split_csv_row(rows.front());
  REQUIRE(row.size() == 4);
  CHECK(row[0] == 0.5);
  CHECK(std::isfinite(row[1]));
  CHECK(row[2] > 0.0);
  CHECK(row[3] > 0.0);  // the XXZ ground state away from delta=1 has magic
  CHECK(run_cli("fig2-xxz --nmax 7 --out " + dir.string()) == 2);
}

TEST_CASE("fig4 writes the sample budgets that fit the reference") {
  const auto dir = fresh_dir("fig4");
  CHECK(run_cli("fig4-sampling-error --nmax 4 --chi 4 --samples 1000 "
                "--restarts 3 --out " +
                dir.string()) == 0);
  const auto rows = data_lines(read_file(dir / "fig4_sampling_error.csv"));
  REQUIRE(rows.size() == 2);  // S = 100 and S = 1000 fit within S_ref = 1000
  CHECK(split_csv_row(rows[0])[0] == 100.0);
  CHECK(split_csv_row(rows[1])[0] == 1000.0);
  CHECK(split_csv_row(rows[0])[1] > 0.0);
  // No grid point satisfies 2S <= 150.
  CHECK(run_cli("fig4-sampling-error --nmax 4 --samples 150 --out " +
                dir.string()) == 2);
}

TEST_CASE("fig6 appends the reference row and tracks fidelity") {
  const auto dir = fresh_dir("fig6");
  CHECK(run_cli("fig6-bond --nmax 4 --chi 2,3 --samples 300 --delta 0.5 "
                "--out " +
                dir.string()) == 0);
  const auto rows = data_lines(read_file(dir / "fig6_bond.csv"));
  REQUIRE(rows.size() == 3);
  const auto ref = split_csv_row(rows.back());
  CHECK(ref[0] == 8.0);  // desk chi_ref
  CHECK(ref[3] == 1.0);
  for (const auto& line : rows) {
    const auto row = split_csv_row(line);
    REQUIRE(row.size() == 4);
    CHECK(row[3] > 0.0);
    CHECK(row[3] <= 1.0 + 1e-12);
  }
  CHECK(run_cli("fig6-bond --nmax 4 --chi 9 --out " + dir.string()) == 2);
}

TEST_CASE("check-inequalities passes on random states") {
  const auto dir_a = fresh_dir("check_a");
  const auto dir_b = fresh_dir("check_b");
  const std::string flags = "check-inequalities --samples 40 --out ";
  CHECK(run_cli(flags + dir_a.string()) == 0);
  CHECK(run_cli(flags + dir_b.string()) == 0);
  const std::string text = read_file(dir_a / "check_inequalities.json");
  CHECK(text == read_file(dir_b / "check_inequalities.json"));

  const nlohmann::json doc = nlohmann::json::parse(text);
  CHECK(doc.at("pass").get<bool>());
  CHECK(doc.at("violations").empty());
  CHECK(doc.at("num_states").get<int>() == 40);
  CHECK(doc.at("qubit_list") == nlohmann::json({1, 2, 3}));
  CHECK(doc.at("min_slacks").at("dmin_le_lr").get<double>() > -1e-8);

  CHECK(run_cli("check-inequalities --samples 10 --nmax 2 --out " +
                dir_a.string()) == 0);
  CHECK(run_cli("check-inequalities --nmax 4 --out " + dir_a.string()) == 2);
}

TEST_CASE("search-violation reports a null result on two qubits") {
  const auto dir = fresh_dir("search");
  CHECK(run_cli("search-violation --nmax 2 --restarts 3 --out " +
                dir.string()) == 0);
  const nlohmann::json doc =
      nlohmann::json::parse(read_file(dir / "search_violation.json"));
  CHECK(doc.at("n_qubits").get<int>() == 2);
  CHECK(doc.at("delta_n").get<double>() > -1e-9);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("no-such-subcommand") == 2);
  CHECK(run_cli("fig1-deltam --profile turbo") == 2);
  CHECK(run_cli("fig1-deltam --n-grid 2:1:1") == 2);
  CHECK(run_cli("fig3-bound --eps -3") == 2);
  CHECK(run_cli("") == 2);  // a subcommand is required
  CHECK(run_cli("--help") == 0);
}
