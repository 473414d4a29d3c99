#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "glopt/dataset.hpp"
#include "glopt/problems.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using Catch::Approx;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("GLOPT_CLI");
  REQUIRE(p != nullptr);
  return p;
}

CliResult run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  REQUIRE(f.good());
  f << text;
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("run: fixed step on the scalar quadratic emits a two-row trace") {
  json cfg;
  cfg["problem"] = {{"type", "quadratic"}, {"A", {{3.0}}}, {"b", {0.0}}};
  cfg["algorithm"] = {{"driver", "gd"}, {"rule", {{"kind", "fixed"}, {"L", 3.0}}}};
  cfg["init"] = {{"kind", "constant"}, {"value", 5.0}};
  cfg["stop"] = {{"gap", 1e-12}, {"max_iters", 10}};
  cfg["output"] = {{"trace", "t1.csv"}, {"summary", "t1.json"}};
  write_text("c1.json", cfg.dump());

  const auto res = run_cli("run c1.json");
  CHECK(res.exit_code == 0);

  const auto rows = lines_of(read_text("t1.csv"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "iter,f,gap,grad_norm,step_size,dist_sq,feval,geval");
  const auto last = split_csv_line(rows[2]);
  CHECK(last[0] == "1");
  CHECK(std::stod(last[2]) == 0.0);  // final gap

  const json summary = json::parse(read_text("t1.json"));
  CHECK(summary["stop_reason"] == "gap-target");
  CHECK(summary["iterations"] == 1);
  CHECK(summary["final_gap"] == 0.0);
}

TEST_CASE("run: polyak trace row matches the worked example") {
  json cfg;
  cfg["problem"] = {{"type", "quadratic"}, {"A", {{1.0, 0.0}, {0.0, 0.05}}}};
  cfg["algorithm"] = {{"driver", "gd"}, {"rule", {{"kind", "polyak"}}}};
  cfg["init"] = {{"kind", "constant"}, {"value", {0.05, 1.0}}};
  cfg["stop"] = {{"gap", 1e-9}, {"max_iters", 50}};
  cfg["output"] = {{"trace", "t2.csv"}, {"summary", "t2.json"}};
  write_text("c2.json", cfg.dump());

  CHECK(run_cli("run c2.json").exit_code == 0);
  const auto rows = lines_of(read_text("t2.csv"));
  REQUIRE(rows.size() >= 3);
  const auto r1 = split_csv_line(rows[2]);
  CHECK(std::stod(r1[4]) == Approx(5.25).margin(1e-12));   // step_size
  CHECK(std::stod(r1[1]) == Approx(0.036176).margin(1e-5));  // f
}

TEST_CASE("run: seeded configs reproduce byte-identical traces") {
  json cfg;
  cfg["problem"] = {{"type", "least_squares"},
                    {"generator", {{"n", 12}, {"d", 3}, {"seed", 9}}}};
  cfg["algorithm"] = {{"driver", "sgd"}, {"eta_max", 2.0}, {"seed", 4}};
  cfg["init"] = {{"kind", "random"}, {"seed", 2}};
  cfg["stop"] = {{"max_iters", 60}};
  cfg["output"] = {{"trace", "t3a.csv"}, {"summary", "s3a.json"}};
  write_text("c3a.json", cfg.dump());
  cfg["output"] = {{"trace", "t3b.csv"}, {"summary", "s3b.json"}};
  write_text("c3b.json", cfg.dump());

  CHECK(run_cli("run c3a.json").exit_code == 0);
  CHECK(run_cli("run c3b.json").exit_code == 0);
  CHECK(read_text("t3a.csv") == read_text("t3b.csv"));

  const json summary = json::parse(read_text("s3a.json"));
  CHECK(summary["seed"] == 4);
}

TEST_CASE("run: config errors exit 1") {
  write_text("c4.json", "{ not json");
  CHECK(run_cli("run c4.json").exit_code == 1);

  json cfg;
  cfg["problem"] = {{"type", "quadratic"}, {"A", {{1.0}}}, {"typo", 1}};
  cfg["algorithm"] = {{"driver", "gd"}, {"rule", {{"kind", "fixed"}, {"L", 1.0}}}};
  cfg["stop"] = {{"max_iters", 5}};
  cfg["output"] = {{"trace", "t4.csv"}, {"summary", "s4.json"}};
  write_text("c5.json", cfg.dump());
  CHECK(run_cli("run c5.json").exit_code == 1);

  CHECK(run_cli("run does_not_exist.json").exit_code == 1);
}

TEST_CASE("run: unbounded line optimization exits 2 with the reason recorded") {
  json cfg;
  cfg["problem"] = {{"type", "logistic"}, {"X", {{1.0}}}, {"y", {1.0}}};
  cfg["algorithm"] = {{"driver", "gd"}, {"rule", {{"kind", "lo"}}}};
  cfg["init"] = {{"kind", "zeros"}};
  cfg["stop"] = {{"grad", 1e-12}, {"max_iters", 10}};
  cfg["output"] = {{"trace", "t5.csv"}, {"summary", "s5.json"}};
  write_text("c6.json", cfg.dump());

  CHECK(run_cli("run c6.json").exit_code == 2);
  const json summary = json::parse(read_text("s5.json"));
  CHECK(summary["stop_reason"] == "unbounded-direction");
}

TEST_CASE("bounds: worked example prints T = 278") {
  const auto res =
      run_cli("bounds glocal-gd-lo --L 100 --mu 1 --Lstar 10 --delta0 1 --delta 0.1 --eps 1e-3");
  CHECK(res.exit_code == 0);
  const json out = json::parse(res.out);
  CHECK(out["T"] == 278);
  CHECK(out["exactness"] == "explicit-constants");
  CHECK(out["inputs"]["L"] == 100.0);
}

TEST_CASE("bounds: greedy coordinate descent passthrough") {
  const auto res =
      run_cli("bounds cd-greedy --L 60 --mu1 2 --Lstar 3 --delta0 4 --delta 0.4 --eps 1e-5");
  CHECK(res.exit_code == 0);
  const json out = json::parse(res.out);
  const auto t1 = static_cast<long long>(std::ceil(30.0 * std::log(10.0)));
  const auto t2 = static_cast<long long>(std::ceil(1.5 * std::log(0.4 / 1e-5)));
  CHECK(out["T"].get<long long>() == t1 + t2);
}

TEST_CASE("bounds: unknown tag and missing inputs exit 1") {
  CHECK(run_cli("bounds not-a-bound --L 1").exit_code == 1);
  CHECK(run_cli("bounds glocal-gd-lo --L 100").exit_code == 1);
}

TEST_CASE("glocal: table over delta values on the identity dataset") {
  write_text("id2.svm", "+1 1:1\n-1 2:1\n");
  const auto res = run_cli("glocal --dataset id2.svm --ell-star 0 --delta 0.01 --delta 0.1");
  CHECK(res.exit_code == 0);
  const auto rows = lines_of(res.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "delta,L,Lstar,T");
  const auto r1 = split_csv_line(rows[1]);
  const auto r2 = split_csv_line(rows[2]);
  CHECK(std::stod(r1[1]) == Approx(0.25).epsilon(1e-9));
  CHECK(std::stod(r2[1]) == Approx(0.25).epsilon(1e-9));
  CHECK(std::stod(r1[2]) == Approx(0.01).epsilon(1e-9));
  CHECK(std::stod(r2[2]) == Approx(0.1).epsilon(1e-9));
}

TEST_CASE("glocal: optimal delta reporting") {
  write_text("id2b.svm", "+1 1:1\n-1 2:1\n");
  auto res = run_cli("glocal --dataset id2b.svm --ell-star 0 --optimal --delta0 10 --eps 1e-3");
  CHECK(res.exit_code == 0);
  json out = json::parse(res.out);
  CHECK(out["case"] == 3);
  CHECK(out["delta_star"].get<double>() == Approx(0.0507).epsilon(2e-3));

  res = run_cli("glocal --dataset id2b.svm --ell-star 0.3 --optimal --delta0 10 --eps 1e-3");
  CHECK(res.exit_code == 0);
  out = json::parse(res.out);
  CHECK(out["case"] == 1);
  CHECK(out["delta_star"].get<double>() == 1e-3);

  CHECK(run_cli("glocal --dataset missing.svm --ell-star 0 --delta 0.1").exit_code == 1);
}

TEST_CASE("compare: line optimization beats fixed-step acceleration on the two-regime problem") {
  glopt::TwoRegimeProblem two(1.0, 400.0, 4.0);
  glopt::Vec w0(1);
  w0 << 1.01;
  const double delta0 = two.value(w0);

  json cfg;
  cfg["problem"] = {{"type", "two_regime"}, {"r", 1.0}, {"L", 400.0}, {"Lstar", 4.0}};
  cfg["init"] = {{"kind", "constant"}, {"value", 1.01}};
  cfg["stop"] = {{"gap", 1e-8}, {"max_iters", 5000}};
  cfg["algorithms"] = json::array({json{{"name", "gdlo"}, {"driver", "gd"}, {"rule", {{"kind", "lo"}}}},
                                   json{{"name", "nag"},
                                        {"driver", "nag"},
                                        {"mu", 4.0},
                                        {"eta_max", 1.0 / 400.0}}});
  cfg["constants"] = {
      {"L", 400.0}, {"Lstar", 4.0}, {"mu", 4.0}, {"delta0", delta0}, {"delta", 0.99 * delta0}};
  cfg["output"] = {{"csv", "cmp1.csv"}, {"verdict", "v1.json"}};
  write_text("cc1.json", cfg.dump());

  CHECK(run_cli("compare cc1.json").exit_code == 0);
  const json verdict = json::parse(read_text("v1.json"));
  const int it_gdlo = verdict["iterations_to_target"]["gdlo"].get<int>();
  const int it_nag = verdict["iterations_to_target"]["nag"].get<int>();
  CHECK(it_gdlo < it_nag);
  CHECK(verdict["analytic"]["gdlo_faster"] == true);

  const auto rows = lines_of(read_text("cmp1.csv"));
  CHECK(rows[0] == "iter,gap:gdlo,gap:nag");
  CHECK(rows.size() >= 3);
}

TEST_CASE("compare: ordering reverses on an ill-conditioned quadratic") {
  json cfg;
  cfg["problem"] = {{"type", "quadratic"}, {"A", {{400.0, 0.0}, {0.0, 4.0}}}};
  cfg["init"] = {{"kind", "constant"}, {"value", {1.0, 1.0}}};
  cfg["stop"] = {{"gap", 1e-8}, {"max_iters", 5000}};
  cfg["algorithms"] = json::array({json{{"name", "gdlo"}, {"driver", "gd"}, {"rule", {{"kind", "lo"}}}},
                                   json{{"name", "nag"},
                                        {"driver", "nag"},
                                        {"mu", 4.0},
                                        {"eta_max", 1.0 / 400.0}}});
  // constant Hessian: the local constant equals the global one
  cfg["constants"] = {
      {"L", 400.0}, {"Lstar", 400.0}, {"mu", 4.0}, {"delta0", 202.0}, {"delta", 200.0}};
  cfg["output"] = {{"csv", "cmp2.csv"}, {"verdict", "v2.json"}};
  write_text("cc2.json", cfg.dump());

  CHECK(run_cli("compare cc2.json").exit_code == 0);
  const json verdict = json::parse(read_text("v2.json"));
  const int it_gdlo = verdict["iterations_to_target"]["gdlo"].get<int>();
  const int it_nag = verdict["iterations_to_target"]["nag"].get<int>();
  CHECK(it_nag < it_gdlo);
  CHECK(verdict["analytic"]["gdlo_faster"] == false);
}

TEST_CASE("compare: a single algorithm is rejected") {
  json cfg;
  cfg["problem"] = {{"type", "two_regime"}, {"r", 1.0}, {"L", 10.0}, {"Lstar", 1.0}};
  cfg["stop"] = {{"gap", 1e-6}, {"max_iters", 100}};
  cfg["algorithms"] = json::array({json{{"driver", "gd"}, {"rule", {{"kind", "lo"}}}}});
  cfg["output"] = {{"csv", "cmp3.csv"}, {"verdict", "v3.json"}};
  write_text("cc3.json", cfg.dump());
  CHECK(run_cli("compare cc3.json").exit_code == 1);
}

TEST_CASE("gen: separable round trip with verified margin") {
  CHECK(run_cli("gen --kind separable --n 4 --d 2 --margin 0.5 --seed 7 --out g1.svm")
            .exit_code == 0);
  const auto ds = glopt::parse_libsvm(read_text("g1.svm"));
  REQUIRE(ds.size() == 4);
  const glopt::Vec u = glopt::separable_plant_direction(2, 7);
  const glopt::Mat x = ds.dense();
  for (int i = 0; i < 4; ++i)
    CHECK(ds.labels[static_cast<std::size_t>(i)] * x.row(i).dot(u) >= 0.5 - 1e-12);

  // same seed, identical bytes; matches the in-process generator exactly
  CHECK(run_cli("gen --kind separable --n 4 --d 2 --margin 0.5 --seed 7 --out g2.svm")
            .exit_code == 0);
  CHECK(read_text("g1.svm") == read_text("g2.svm"));
  CHECK(read_text("g1.svm") == glopt::write_libsvm(glopt::gen_separable_logistic(4, 2, 0.5, 7)));
}

TEST_CASE("gen: realizable targets are interpolated exactly") {
  CHECK(run_cli("gen --kind realizable --n 8 --d 3 --seed 1 --out g3.svm").exit_code == 0);
  const auto ds = glopt::parse_libsvm(read_text("g3.svm"));
  const auto ls = glopt::to_least_squares(ds);
  CHECK(*ls.optimum_value() <= 1e-18);

  CHECK(run_cli("gen --kind separable --n 4 --d 2 --margin 0 --seed 7 --out g4.svm").exit_code ==
        1);
  CHECK(run_cli("gen --kind nonsense --n 4 --d 2 --seed 7 --out g5.svm").exit_code == 1);
}
