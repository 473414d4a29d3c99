// Command-line harness: configured optimizer runs with CSV traces and JSON
// summaries, iteration-bound calculators, glocal-constant tables for
// logistic regression, algorithm comparisons, and dataset generation.

#include <CLI11.hpp>
#include <json.hpp>

#include "glopt/dataset.hpp"
#include "glopt/linesearch.hpp"
#include "glopt/optimizers.hpp"
#include "glopt/problems.hpp"
#include "glopt/theory.hpp"
#include "glopt/trace_io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace glopt;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

// Unknown fields are configuration mistakes, not extensions.
void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& ctx) {
  if (!obj.is_object()) throw ConfigError(ctx + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const auto& a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok) throw ConfigError(ctx + ": unknown field '" + key + "'");
  }
}

double get_num(const json& obj, const std::string& key, const std::string& ctx) {
  if (!obj.contains(key)) throw ConfigError(ctx + ": missing field '" + key + "'");
  if (!obj[key].is_number()) throw ConfigError(ctx + ": field '" + key + "' must be a number");
  return obj[key].get<double>();
}

double get_num_or(const json& obj, const std::string& key, double fallback) {
  return obj.contains(key) ? obj[key].get<double>() : fallback;
}

Mat parse_matrix(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) throw ConfigError(ctx + ": expected a non-empty 2-D array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw ConfigError(ctx + ": ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

Vec parse_vector(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw ConfigError(ctx + ": expected an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

std::unique_ptr<Objective> build_problem(const json& p) {
  const std::string type = p.value("type", "");
  if (type == "quadratic") {
    check_keys(p, {"type", "A", "b", "c"}, "problem");
    Mat a = parse_matrix(p.at("A"), "problem.A");
    Vec b = p.contains("b") ? parse_vector(p["b"], "problem.b") : Vec(Vec::Zero(a.rows()));
    return std::make_unique<QuadraticProblem>(std::move(a), std::move(b), get_num_or(p, "c", 0.0));
  }
  if (type == "logistic") {
    check_keys(p, {"type", "dataset", "X", "y", "lambda"}, "problem");
    const double lambda = get_num_or(p, "lambda", 0.0);
    if (p.contains("dataset"))
      return std::make_unique<LogisticProblem>(
          to_logistic(parse_libsvm(slurp(p["dataset"].get<std::string>())), lambda));
    return std::make_unique<LogisticProblem>(parse_matrix(p.at("X"), "problem.X"),
                                             parse_vector(p.at("y"), "problem.y"), lambda);
  }
  if (type == "least_squares") {
    check_keys(p, {"type", "dataset", "X", "t", "generator"}, "problem");
    if (p.contains("generator")) {
      const json& g = p["generator"];
      check_keys(g, {"n", "d", "seed"}, "problem.generator");
      const auto gen = gen_realizable_ls(static_cast<int>(get_num(g, "n", "generator")),
                                         static_cast<int>(get_num(g, "d", "generator")),
                                         static_cast<std::uint64_t>(get_num(g, "seed", "generator")));
      return std::make_unique<LeastSquaresProblem>(to_least_squares(gen.first));
    }
    if (p.contains("dataset"))
      return std::make_unique<LeastSquaresProblem>(
          to_least_squares(parse_libsvm(slurp(p["dataset"].get<std::string>()))));
    return std::make_unique<LeastSquaresProblem>(parse_matrix(p.at("X"), "problem.X"),
                                                 parse_vector(p.at("t"), "problem.t"));
  }
  if (type == "huber") {
    check_keys(p, {"type", "targets", "tau"}, "problem");
    return std::make_unique<HuberProblem>(parse_vector(p.at("targets"), "problem.targets"),
                                          get_num(p, "tau", "problem"));
  }
  if (type == "two_regime") {
    check_keys(p, {"type", "r", "L", "Lstar"}, "problem");
    return std::make_unique<TwoRegimeProblem>(get_num(p, "r", "problem"),
                                              get_num(p, "L", "problem"),
                                              get_num(p, "Lstar", "problem"));
  }
  throw ConfigError("problem: unknown type '" + type + "'");
}

Vec build_init(const json& j, Eigen::Index dim) {
  const std::string kind = j.value("kind", "zeros");
  if (kind == "zeros") {
    check_keys(j, {"kind"}, "init");
    return Vec::Zero(dim);
  }
  if (kind == "constant") {
    check_keys(j, {"kind", "value"}, "init");
    const json& v = j.at("value");
    if (v.is_array()) {
      Vec w = parse_vector(v, "init.value");
      if (w.size() != dim) throw ConfigError("init.value: length does not match problem dimension");
      return w;
    }
    return Vec::Constant(dim, v.get<double>());
  }
  if (kind == "random") {
    check_keys(j, {"kind", "seed", "scale"}, "init");
    SplitMix64 rng(static_cast<std::uint64_t>(get_num(j, "seed", "init")));
    const double scale = get_num_or(j, "scale", 1.0);
    Vec w(dim);
    for (Eigen::Index i = 0; i < dim; ++i) w[i] = scale * rng.normal();
    return w;
  }
  throw ConfigError("init: unknown kind '" + kind + "'");
}

StopRule build_stop(const json& j) {
  check_keys(j, {"gap", "grad", "dist_sq", "max_iters"}, "stop");
  StopRule s;
  if (j.contains("gap")) s.gap_target = j["gap"].get<double>();
  if (j.contains("grad")) s.grad_target = j["grad"].get<double>();
  if (j.contains("dist_sq")) s.dist_sq_target = j["dist_sq"].get<double>();
  if (!j.contains("max_iters")) throw ConfigError("stop: missing field 'max_iters'");
  s.max_iters = j["max_iters"].get<int>();
  s.validate();
  return s;
}

LOConfig build_lo(const json& j, const std::string& ctx) {
  check_keys(j, {"kind", "initial_step", "growth", "dd_tol_rel", "interval_tol", "max_evals",
                 "allow_closed_form"},
             ctx);
  LOConfig cfg;
  cfg.initial_step = get_num_or(j, "initial_step", cfg.initial_step);
  cfg.growth = get_num_or(j, "growth", cfg.growth);
  cfg.dd_tol_rel = get_num_or(j, "dd_tol_rel", cfg.dd_tol_rel);
  cfg.interval_tol = get_num_or(j, "interval_tol", cfg.interval_tol);
  cfg.max_evals = static_cast<int>(get_num_or(j, "max_evals", cfg.max_evals));
  if (j.contains("allow_closed_form")) cfg.allow_closed_form = j["allow_closed_form"].get<bool>();
  cfg.validate();
  return cfg;
}

ArmijoConfig build_armijo(const json& j) {
  check_keys(j, {"kind", "alpha", "beta", "mode", "eta_init", "warm_start", "max_trials"},
             "algorithm.rule");
  ArmijoConfig cfg;
  cfg.alpha = get_num_or(j, "alpha", cfg.alpha);
  cfg.beta = get_num_or(j, "beta", cfg.beta);
  cfg.eta_init = get_num_or(j, "eta_init", cfg.eta_init);
  cfg.max_trials = static_cast<int>(get_num_or(j, "max_trials", cfg.max_trials));
  if (j.contains("warm_start")) cfg.warm_start = j["warm_start"].get<bool>();
  const std::string mode = j.value("mode", "forward-backtrack");
  if (mode == "backtrack")
    cfg.mode = ArmijoMode::Backtrack;
  else if (mode == "forward-backtrack")
    cfg.mode = ArmijoMode::ForwardBacktrack;
  else if (mode == "reset")
    cfg.mode = ArmijoMode::Reset;
  else
    throw ConfigError("algorithm.rule: unknown mode '" + mode + "'");
  cfg.validate();
  return cfg;
}

GdRule build_gd_rule(const json& j) {
  const std::string kind = j.value("kind", "");
  if (kind == "fixed") {
    check_keys(j, {"kind", "L"}, "algorithm.rule");
    return FixedRule{get_num(j, "L", "algorithm.rule")};
  }
  if (kind == "lo") return LORule{build_lo(j, "algorithm.rule")};
  if (kind == "armijo") return ArmijoRule{build_armijo(j)};
  if (kind == "polyak") {
    check_keys(j, {"kind", "f_star"}, "algorithm.rule");
    PolyakRule r;
    if (j.contains("f_star")) r.f_star = j["f_star"].get<double>();
    return r;
  }
  if (kind == "adgd") {
    check_keys(j, {"kind", "eta0"}, "algorithm.rule");
    AdgdRule r;
    r.eta0 = get_num_or(j, "eta0", r.eta0);
    return r;
  }
  throw ConfigError("algorithm.rule: unknown kind '" + kind + "'");
}

Trace run_algorithm(const json& a, const Objective& obj, const Vec& w0, const StopRule& stop) {
  const std::string driver = a.value("driver", "");
  if (driver == "gd") {
    check_keys(a, {"driver", "name", "rule"}, "algorithm");
    if (!a.contains("rule")) throw ConfigError("algorithm: gd requires a 'rule'");
    return run_gd(obj, build_gd_rule(a["rule"]), w0, stop);
  }
  if (driver == "cd") {
    check_keys(a, {"driver", "name", "selection", "seed", "lo"}, "algorithm");
    const std::string sel = a.value("selection", "greedy");
    const LOConfig lo = a.contains("lo") ? build_lo(a["lo"], "algorithm.lo") : LOConfig{};
    if (sel == "greedy") return run_cd(obj, CdGreedy{}, w0, stop, lo);
    if (sel == "uniform")
      return run_cd(obj, CdUniform{static_cast<std::uint64_t>(get_num(a, "seed", "algorithm"))},
                    w0, stop, lo);
    throw ConfigError("algorithm: unknown selection '" + sel + "'");
  }
  if (driver == "sgd") {
    check_keys(a, {"driver", "name", "eta_max", "seed"}, "algorithm");
    return run_sgd(obj, get_num(a, "eta_max", "algorithm"),
                   static_cast<std::uint64_t>(get_num(a, "seed", "algorithm")), w0, stop);
  }
  if (driver == "nag" || driver == "nag_momentum") {
    check_keys(a, {"driver", "name", "mu", "eta_max"}, "algorithm");
    double mu;
    if (a.contains("mu"))
      mu = a["mu"].get<double>();
    else if (obj.strong_convexity())
      mu = *obj.strong_convexity();
    else
      throw ConfigError("algorithm: nag requires mu (problem reports no strong convexity)");
    const double eta_max = get_num(a, "eta_max", "algorithm");
    if (driver == "nag") return run_nag(obj, mu, eta_max, w0, stop);
    return nag_momentum_form(obj, mu, eta_max, w0, stop);
  }
  if (driver == "nlcg") {
    check_keys(a, {"driver", "name", "reset_period", "lo"}, "algorithm");
    const LOConfig lo = a.contains("lo") ? build_lo(a["lo"], "algorithm.lo") : LOConfig{};
    return run_nlcg(obj, static_cast<int>(get_num_or(a, "reset_period", 0)), w0, stop, lo);
  }
  throw ConfigError("algorithm: unknown driver '" + driver + "'");
}

json summary_json(const Trace& tr, const json& config) {
  json s;
  s["stop_reason"] = to_string(tr.reason);
  s["iterations"] = tr.iterations();
  const double fg = tr.final_gap();
  if (std::isnan(fg))
    s["final_gap"] = nullptr;
  else
    s["final_gap"] = fg;
  s["feval"] = tr.records.empty() ? 0 : tr.records.back().feval;
  s["geval"] = tr.records.empty() ? 0 : tr.records.back().geval;
  if (config.contains("algorithm") && config["algorithm"].contains("seed"))
    s["seed"] = config["algorithm"]["seed"];
  s["config"] = config;
  return s;
}

int cmd_run(const std::string& config_path) {
  json cfg;
  Trace tr;
  std::string trace_path, summary_path;
  try {
    cfg = json::parse(slurp(config_path));
    check_keys(cfg, {"problem", "algorithm", "init", "stop", "output"}, "config");
    for (const char* k : {"problem", "algorithm", "stop", "output"})
      if (!cfg.contains(k)) throw ConfigError(std::string("config: missing section '") + k + "'");
    check_keys(cfg["output"], {"trace", "summary"}, "output");
    trace_path = cfg["output"].value("trace", "");
    summary_path = cfg["output"].value("summary", "");

    const auto obj = build_problem(cfg["problem"]);
    const Vec w0 = build_init(cfg.value("init", json{{"kind", "zeros"}}), obj->dim());
    const StopRule stop = build_stop(cfg["stop"]);
    tr = run_algorithm(cfg["algorithm"], *obj, w0, stop);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (!trace_path.empty()) write_file(trace_path, trace_csv(tr));
    if (!summary_path.empty()) write_file(summary_path, summary_json(tr, cfg).dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const bool failed =
      tr.reason == StopReason::SearchFailure || tr.reason == StopReason::UnboundedDirection;
  return failed ? 2 : 0;
}

int cmd_compare(const std::string& config_path) {
  try {
    const json cfg = json::parse(slurp(config_path));
    check_keys(cfg, {"problem", "init", "stop", "algorithms", "constants", "output"}, "config");
    if (!cfg.contains("algorithms") || !cfg["algorithms"].is_array() ||
        cfg["algorithms"].size() < 2)
      throw ConfigError("compare: need at least 2 algorithm specs");
    check_keys(cfg.at("output"), {"csv", "verdict"}, "output");

    const auto obj = build_problem(cfg.at("problem"));
    const Vec w0 = build_init(cfg.value("init", json{{"kind", "zeros"}}), obj->dim());
    const StopRule stop = build_stop(cfg.at("stop"));
    if (!stop.gap_target) throw ConfigError("compare: stop.gap target is required");

    std::vector<std::string> names;
    std::vector<Trace> traces;
    for (const auto& a : cfg["algorithms"]) {
      std::string name = a.value("name", a.value("driver", "alg"));
      for (const auto& n : names)
        if (n == name) throw ConfigError("compare: duplicate algorithm name '" + name + "'");
      names.push_back(name);
      traces.push_back(run_algorithm(a, *obj, w0, stop));
    }

    std::size_t max_rows = 0;
    for (const auto& t : traces) max_rows = std::max(max_rows, t.records.size());
    std::string csv = "iter";
    for (const auto& n : names) csv += ",gap:" + n;
    csv += '\n';
    for (std::size_t r = 0; r < max_rows; ++r) {
      csv += std::to_string(r);
      for (const auto& t : traces) {
        csv += ',';
        if (r < t.records.size() && t.records[r].gap)
          csv += format_shortest(*t.records[r].gap);
      }
      csv += '\n';
    }

    json verdict;
    verdict["target"] = *stop.gap_target;
    json iters = json::object();
    for (std::size_t i = 0; i < traces.size(); ++i) {
      const auto hit = traces[i].first_gap_below(*stop.gap_target);
      if (hit)
        iters[names[i]] = *hit;
      else
        iters[names[i]] = nullptr;
    }
    verdict["iterations_to_target"] = iters;
    if (cfg.contains("constants")) {
      const json& c = cfg["constants"];
      check_keys(c, {"L", "Lstar", "mu", "delta0", "delta"}, "constants");
      const auto v = gdlo_vs_nag(get_num(c, "L", "constants"), get_num(c, "Lstar", "constants"),
                                 get_num(c, "mu", "constants"), get_num(c, "delta0", "constants"),
                                 get_num(c, "delta", "constants"), *stop.gap_target);
      verdict["analytic"] = {{"lhs", v.lhs}, {"rhs", v.rhs}, {"gdlo_faster", v.gdlo_faster}};
    }
    verdict["config"] = cfg;

    write_file(cfg["output"].value("csv", ""), csv);
    write_file(cfg["output"].value("verdict", ""), verdict.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-order optimization bench: runs, bounds, glocal tables"};
  app.require_subcommand(1);

  // run
  std::string run_config;
  auto* run = app.add_subcommand("run", "execute one configured optimizer run");
  run->add_option("config", run_config, "JSON config path")->required();

  // bounds; unset flags stay NaN and map to missing inputs below
  std::string bounds_tag;
  const double unset = std::nan("");
  double b_l = unset, b_lstar = unset, b_mu = unset, b_mu1 = unset, b_mu_star = unset,
         b_delta0 = unset, b_delta = unset, b_eps = unset, b_dist0 = unset, b_d = unset,
         b_zeta = unset, b_alpha = unset, b_beta = unset, b_lmax = unset, b_lmax_star = unset,
         b_phi3 = unset, b_r2a = unset, b_r2b = unset;
  auto* bounds = app.add_subcommand("bounds", "evaluate an iteration-complexity bound");
  bounds->add_option("tag", bounds_tag, "bound identifier")->required();
  bounds->add_option("--L", b_l);
  bounds->add_option("--Lstar", b_lstar);
  bounds->add_option("--mu", b_mu);
  bounds->add_option("--mu1", b_mu1);
  bounds->add_option("--mu-star", b_mu_star);
  bounds->add_option("--delta0", b_delta0);
  bounds->add_option("--delta", b_delta);
  bounds->add_option("--eps", b_eps);
  bounds->add_option("--dist0-sq", b_dist0);
  bounds->add_option("--d", b_d);
  bounds->add_option("--zeta", b_zeta);
  bounds->add_option("--alpha", b_alpha);
  bounds->add_option("--beta", b_beta);
  bounds->add_option("--Lmax", b_lmax);
  bounds->add_option("--Lmax-star", b_lmax_star);
  bounds->add_option("--phi3", b_phi3);
  bounds->add_option("--r2-rho0", b_r2a);
  bounds->add_option("--r2-delta", b_r2b);

  // glocal
  std::string gl_dataset, gl_separable;
  double gl_ell_star = 0.0, gl_delta0 = 0.0, gl_eps = 0.0, gl_mu = 1.0;
  std::vector<double> gl_deltas;
  bool gl_optimal = false;
  auto* glocal = app.add_subcommand("glocal", "glocal smoothness table for logistic regression");
  glocal->add_option("--dataset", gl_dataset, "LIBSVM file");
  glocal->add_option("--separable", gl_separable, "synthetic spec n,d,margin,seed");
  glocal->add_option("--ell-star", gl_ell_star, "infimum of the loss")->required();
  glocal->add_option("--delta", gl_deltas, "sublevel thresholds to tabulate");
  glocal->add_flag("--optimal", gl_optimal, "report the bound-minimizing threshold");
  glocal->add_option("--delta0", gl_delta0, "initial suboptimality");
  glocal->add_option("--eps", gl_eps, "target accuracy");
  glocal->add_option("--mu", gl_mu, "strong convexity constant (default 1)");

  // compare
  std::string compare_config;
  auto* compare = app.add_subcommand("compare", "run several algorithms on one problem");
  compare->add_option("config", compare_config, "JSON config path")->required();

  // gen
  std::string gen_kind, gen_out;
  int gen_n = 0, gen_d = 0;
  double gen_margin = 0.0;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "generate a synthetic LIBSVM dataset");
  gen->add_option("--kind", gen_kind, "separable | realizable")->required();
  gen->add_option("--n", gen_n, "sample count")->required();
  gen->add_option("--d", gen_d, "dimension")->required();
  gen->add_option("--margin", gen_margin, "separation margin (separable only)");
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--out", gen_out, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_config);
    if (compare->parsed()) return cmd_compare(compare_config);

    if (bounds->parsed()) {
      BoundInputs bi;
      auto set = [](std::optional<double>& slot, double v) {
        if (!std::isnan(v)) slot = v;
      };
      set(bi.l, b_l);
      set(bi.lstar, b_lstar);
      set(bi.mu, b_mu);
      set(bi.mu1, b_mu1);
      set(bi.mu_star, b_mu_star);
      set(bi.delta0, b_delta0);
      set(bi.delta, b_delta);
      set(bi.eps, b_eps);
      set(bi.dist0_sq, b_dist0);
      set(bi.d, b_d);
      set(bi.zeta, b_zeta);
      set(bi.alpha, b_alpha);
      set(bi.beta, b_beta);
      set(bi.lmax, b_lmax);
      set(bi.lmax_star, b_lmax_star);
      set(bi.phi3, b_phi3);
      set(bi.r2_rho0, b_r2a);
      set(bi.r2_delta, b_r2b);
      const ComplexityBound b = complexity_bound(bounds_tag, bi);
      json out;
      out["tag"] = b.tag;
      out["T"] = b.t;
      out["phases"] = b.phases;
      json inputs = json::object();
      for (const auto& [k, v] : b.inputs) inputs[k] = v;
      out["inputs"] = inputs;
      out["exactness"] = b.explicit_constants ? "explicit-constants" : "order-only";
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (glocal->parsed()) {
      Mat x;
      if (!gl_dataset.empty()) {
        x = parse_libsvm(slurp(gl_dataset)).dense();
      } else if (!gl_separable.empty()) {
        int n = 0, d = 0;
        double margin = 0.0;
        unsigned long long seed = 0;
        if (std::sscanf(gl_separable.c_str(), "%d,%d,%lf,%llu", &n, &d, &margin, &seed) != 4)
          throw ConfigError("glocal: --separable expects n,d,margin,seed");
        x = gen_separable_logistic(n, d, margin, seed).dense();
      } else {
        throw ConfigError("glocal: need --dataset or --separable");
      }

      if (gl_optimal) {
        if (!(gl_delta0 > 0.0 && gl_eps > 0.0))
          throw ConfigError("glocal: --optimal requires --delta0 and --eps");
        const auto od = optimal_delta_logistic(gl_delta0, gl_eps, gl_ell_star);
        const auto prof = logistic_glocal(x, gl_ell_star, od.delta_star);
        json out;
        out["delta_star"] = od.delta_star;
        out["case"] = od.case_tag;
        if (od.case_tag == 3) out["omega"] = od.omega;
        out["L"] = prof.l;
        out["Lstar"] = prof.lstar();
        out["h_at_delta_star"] =
            logistic_bound_h(od.delta_star, gl_delta0, gl_eps, gl_ell_star);
        const double xi = 0.25 - gl_ell_star;
        double h_case;
        if (od.case_tag == 1)
          h_case = 0.25 * std::log(gl_delta0 / gl_eps);
        else if (od.case_tag == 2)
          h_case = (gl_ell_star + gl_delta0) * std::log(gl_delta0 / gl_eps);
        else
          h_case = 0.25 * std::log(gl_delta0 / gl_eps) -
                   xi / od.omega * (od.omega - 1.0) * (od.omega - 1.0);
        out["h_case_formula"] = h_case;
        BoundInputs b;
        b.l = prof.l;
        b.lstar = prof.lstar();
        b.mu = gl_mu;
        b.delta0 = gl_delta0;
        b.delta = od.delta_star;
        b.eps = gl_eps;
        try {
          out["T"] = complexity_bound("glocal-gd-lo", b).t;
        } catch (const InputError&) {
          out["T"] = nullptr;  // boundary cases delta* = eps or delta0
        }
        std::cout << out.dump(2) << "\n";
        return 0;
      }

      if (gl_deltas.empty()) throw ConfigError("glocal: need --delta values or --optimal");
      std::cout << "delta,L,Lstar,T\n";
      for (const double d : gl_deltas) {
        const auto prof = logistic_glocal(x, gl_ell_star, d);
        std::cout << format_shortest(d) << ',' << format_shortest(prof.l) << ','
                  << format_shortest(prof.lstar());
        std::cout << ',';
        if (gl_delta0 > 0.0 && gl_eps > 0.0) {
          BoundInputs b;
          b.l = prof.l;
          b.lstar = prof.lstar();
          b.mu = gl_mu;
          b.delta0 = gl_delta0;
          b.delta = d;
          b.eps = gl_eps;
          try {
            std::cout << complexity_bound("glocal-gd-lo", b).t;
          } catch (const InputError&) {
          }
        }
        std::cout << '\n';
      }
      return 0;
    }

    if (gen->parsed()) {
      Dataset ds;
      if (gen_kind == "separable") {
        if (!(gen_margin > 0.0)) throw ConfigError("gen: separable requires --margin > 0");
        ds = gen_separable_logistic(gen_n, gen_d, gen_margin, gen_seed);
      } else if (gen_kind == "realizable") {
        ds = gen_realizable_ls(gen_n, gen_d, gen_seed).first;
      } else {
        throw ConfigError("gen: unknown kind '" + gen_kind + "'");
      }
      write_file(gen_out, write_libsvm(ds));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
