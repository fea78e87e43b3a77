// settr: command-line front end (solve, bench, profile, list-problems, check).
//
// Exit codes: 0 success / converged, 2 iteration limit reached, 1 error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "settr/settr.hpp"

namespace fs = std::filesystem;
using namespace settr;
using io::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solver parameter flags shared by solve and bench. Only flags given on the command
// line override values loaded from a config file.
struct ParamFlags {
  TrustRegionConfig defaults;
  double omega0 = defaults.omega0, omega_max = defaults.omega_max, epsilon = defaults.epsilon;
  double eta1 = defaults.eta1, eta2 = defaults.eta2, gamma1 = defaults.gamma1, gamma2 = defaults.gamma2;
  int max_iter = defaults.max_iter;
  std::vector<std::pair<std::string, CLI::Option*>> opts;

  void attach(CLI::App* app) {
    opts = {{"omega0", app->add_option("--omega0", omega0, "initial trust-region radius")->capture_default_str()},
            {"omega_max", app->add_option("--omega-max", omega_max, "radius cap")->capture_default_str()},
            {"epsilon", app->add_option("--epsilon", epsilon, "stop when |t| < epsilon")->capture_default_str()},
            {"eta1", app->add_option("--eta1", eta1, "unsuccessful-step threshold")->capture_default_str()},
            {"eta2", app->add_option("--eta2", eta2, "very-successful threshold")->capture_default_str()},
            {"gamma1", app->add_option("--gamma1", gamma1, "lower shrink factor")->capture_default_str()},
            {"gamma2", app->add_option("--gamma2", gamma2, "upper shrink factor")->capture_default_str()},
            {"max_iter", app->add_option("--max-iter", max_iter, "iteration limit")->capture_default_str()}};
  }

  void apply(TrustRegionConfig& c) const {
    for (const auto& [key, opt] : opts) {
      if (!opt->count()) continue;
      if (key == "omega0") c.omega0 = omega0;
      if (key == "omega_max") c.omega_max = omega_max;
      if (key == "epsilon") c.epsilon = epsilon;
      if (key == "eta1") c.eta1 = eta1;
      if (key == "eta2") c.eta2 = eta2;
      if (key == "gamma1") c.gamma1 = gamma1;
      if (key == "gamma2") c.gamma2 = gamma2;
      if (key == "max_iter") c.max_iter = max_iter;
    }
    try {
      c.validate();
    } catch (const ContractError& e) {
      throw UsageError(e.what());
    }
  }
};

std::string default_output_dir() {
  const char* env = std::getenv("SETTR_OUTPUT_DIR");
  return env && *env ? env : ".";
}

std::string resolve(const std::string& dir, const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(dir) / path).string();
}

void ensure_parent(const std::string& path) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == '/' || c == ' ' || c == '#') c = '_';
  return s;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

SteepestDescentParams sd_params_from(const TrustRegionConfig& c) {
  SteepestDescentParams p;
  p.epsilon = c.epsilon;
  p.max_iter = c.max_iter;
  p.partition_cap = c.partition_cap;
  p.dedup_tol = c.dedup_tol;
  return p;
}

// Picks a variant when (n, m) are not given; rejects unsupported ones.
ProblemInstance resolve_instance(const std::string& name, int n, int m) {
  const ProblemSpec* spec = nullptr;
  try {
    spec = &find_spec(name);
  } catch (const ContractError& e) {
    throw UsageError(e.what());
  }
  if (n <= 0 && m <= 0) return {spec->name, spec->variants.front().n, spec->variants.front().m};
  for (const auto& v : spec->variants)
    if ((n <= 0 || v.n == n) && (m <= 0 || v.m == m)) return {spec->name, v.n, v.m};
  throw UsageError("problem '" + name + "' has no variant n=" + std::to_string(n) + " m=" + std::to_string(m));
}

// "K1"/"K2"/"K3", a path to a cone JSON file, or an inline JSON object.
PolyhedralCone cone_from_spec(const json& spec, int m) {
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (s == "K1" || s == "K2" || s == "K3") {
      try {
        return named_cone(s, m);
      } catch (const ContractError& e) {
        throw UsageError(e.what());
      }
    }
    return io::cone_from_json(io::read_json_file(s));
  }
  return io::cone_from_json(spec);
}

// ------------------------------------------------------------------- solve

struct SolveOptions {
  std::string config_path;
  std::string problem;
  int n = 0, m = 0;
  std::string cone = "K1";
  std::string solver = "trm";
  std::string x0;
  std::uint64_t seed = 1;
  std::string output_dir;
  std::string trace_jsonl, trace_csv;
  std::string verbosity = "summary";
  bool no_timing = false;
  ParamFlags params;
};

struct SolvePlan {
  ProblemInstance inst;
  json cone = "K1";
  std::string solver = "trm";
  json x0;
  std::uint64_t seed = 1;
  TrustRegionConfig config;
  std::string output_dir;
  std::string trace_jsonl, trace_csv;
  std::string verbosity = "summary";
  bool timing = true;
};

SolvePlan load_plan(const SolveOptions& o, CLI::App* app) {
  SolvePlan plan;
  std::string problem;
  int n = 0, m = 0;
  json file;
  if (!o.config_path.empty()) {
    file = io::read_json_file(o.config_path);
    io::reject_unknown_keys(file,
                            {"problem", "n", "m", "cone", "solver", "x0", "config", "seed", "output_dir",
                             "trace_jsonl", "trace_csv", "verbosity", "timing"},
                            o.config_path);
    auto get = [&](const char* key, auto& out) {
      if (!file.contains(key)) return;
      try {
        file.at(key).get_to(out);
      } catch (const json::exception&) {
        throw io::FormatError(o.config_path + ": key '" + key + "' has the wrong type");
      }
    };
    get("problem", problem);
    get("n", n);
    get("m", m);
    get("solver", plan.solver);
    get("seed", plan.seed);
    get("output_dir", plan.output_dir);
    get("trace_jsonl", plan.trace_jsonl);
    get("trace_csv", plan.trace_csv);
    get("verbosity", plan.verbosity);
    get("timing", plan.timing);
    if (file.contains("cone")) plan.cone = file.at("cone");
    if (file.contains("x0")) plan.x0 = file.at("x0");
    if (file.contains("config")) plan.config = io::config_from_json(file.at("config"));
  }
  if (app->count("--problem")) problem = o.problem;
  if (app->count("--n")) n = o.n;
  if (app->count("--m")) m = o.m;
  if (app->count("--cone")) plan.cone = o.cone;
  if (app->count("--solver")) plan.solver = o.solver;
  if (app->count("--seed")) plan.seed = o.seed;
  if (app->count("--x0")) plan.x0 = o.x0;
  if (app->count("--output-dir")) plan.output_dir = o.output_dir;
  if (app->count("--trace-jsonl")) plan.trace_jsonl = o.trace_jsonl;
  if (app->count("--trace-csv")) plan.trace_csv = o.trace_csv;
  if (app->count("--verbosity")) plan.verbosity = o.verbosity;
  if (o.no_timing) plan.timing = false;
  o.params.apply(plan.config);
  if (problem.empty()) throw UsageError("solve: no problem given (use --problem or the 'problem' key)");
  if (plan.verbosity != "summary" && plan.verbosity != "full")
    throw UsageError("verbosity must be 'summary' or 'full'");
  plan.inst = resolve_instance(problem, n, m);
  if (plan.output_dir.empty()) plan.output_dir = default_output_dir();
  return plan;
}

std::vector<Vector> starting_points(const SolvePlan& plan, const SetMapProblem& P) {
  const json& x0 = plan.x0;
  if (x0.is_null()) return {P.init_box().lower + 0.5 * (P.init_box().upper - P.init_box().lower)};
  if (x0.is_array()) {
    const Vector v = io::vector_from_json(x0, "x0");
    if (v.size() != P.n()) throw UsageError("x0 has " + std::to_string(v.size()) + " entries, problem has n=" +
                                            std::to_string(P.n()));
    return {v};
  }
  if (x0.is_string()) {
    const std::string s = x0.get<std::string>();
    if (s.rfind("random:", 0) == 0) {
      int count = 0;
      try {
        count = std::stoi(s.substr(7));
      } catch (const std::exception&) {
        count = 0;
      }
      if (count < 1) throw UsageError("x0: expected random:<count> with count >= 1, got '" + s + "'");
      std::vector<Vector> out;
      for (int k = 0; k < count; ++k) out.push_back(draw_initial_point(P.init_box(), init_seed(plan.seed, plan.inst.id(), k)));
      return out;
    }
    // Comma-separated coordinates.
    std::vector<double> vals;
    for (const auto& tok : split_list(s)) vals.push_back(io::parse_num(tok));
    SolvePlan explicit_plan = plan;
    explicit_plan.x0 = vals;
    return starting_points(explicit_plan, P);
  }
  throw UsageError("x0 must be an array, \"a,b,...\" or \"random:<count>\"");
}

std::string with_index(const std::string& path, int k, int total) {
  if (total == 1) return path;
  const fs::path p(path);
  std::string ext;
  std::string stem = p.filename().string();
  const auto dot = stem.find('.');
  if (dot != std::string::npos) {
    ext = stem.substr(dot);
    stem = stem.substr(0, dot);
  }
  return (p.parent_path() / (stem + "." + std::to_string(k) + ext)).string();
}

int cmd_solve(const SolveOptions& o, CLI::App* app) {
  const SolvePlan plan = load_plan(o, app);
  const SetMapProblem P = plan.inst.make();
  const PolyhedralCone K = cone_from_spec(plan.cone, P.m());
  if (K.dim() != P.m())
    throw UsageError("cone dimension " + std::to_string(K.dim()) + " differs from problem m=" + std::to_string(P.m()));
  SolverRegistry registry;
  if (!registry.contains(plan.solver)) throw UsageError("unknown solver '" + plan.solver + "'");
  const auto solver = registry.make(plan.solver, plan.config, sd_params_from(plan.config));
  const auto points = starting_points(plan, P);

  const std::string stem = sanitize(plan.inst.id()) + "_" + plan.solver;
  const std::string jsonl_path = resolve(plan.output_dir, plan.trace_jsonl.empty() ? stem + ".trace.jsonl" : plan.trace_jsonl);
  const std::string csv_path = resolve(plan.output_dir, plan.trace_csv.empty() ? stem + ".trace.csv" : plan.trace_csv);

  int code = 0;
  const int total = static_cast<int>(points.size());
  for (int k = 0; k < total; ++k) {
    RunResult res;
    try {
      res = solver->run(P, K, points[static_cast<std::size_t>(k)]);
    } catch (const EvaluationError& e) {
      res.status = RunStatus::Failed;
      res.message = e.what();
    }
    const std::string jp = with_index(jsonl_path, k, total), cp = with_index(csv_path, k, total);
    ensure_parent(jp);
    ensure_parent(cp);
    {
      auto os = io::open_out(jp);
      io::write_trace_jsonl(os, res, plan.timing);
    }
    {
      auto os = io::open_out(cp);
      io::write_trace_csv(os, res, plan.timing);
    }
    if (plan.verbosity == "full")
      for (const auto& r : res.trace)
        std::cout << "  k=" << r.k << " status=" << to_string(r.status) << " t=" << io::num(r.t)
                  << " omega=" << io::num(r.omega) << " step=" << io::num(r.step_length)
                  << " x=(" << io::join_vector(r.x, ',') << ")\n";
    std::cout << "problem=" << plan.inst.id() << " solver=" << plan.solver << " init=" << k
              << " status=" << to_string(res.status) << " iterations=" << res.iterations
              << " theta=" << io::num(res.t_final) << " x=(" << io::join_vector(res.x_final, ',') << ")";
    if (!res.message.empty()) std::cout << " message=\"" << res.message << '"';
    std::cout << "\n";
    if (res.status == RunStatus::Failed) code = 1;
    else if (res.status == RunStatus::MaxIter && code == 0) code = 2;
  }
  return code;
}

// ------------------------------------------------------------------- bench

struct BenchOptions {
  std::string problems = "all";
  std::string solvers = "trm,sd";
  std::string cone = "K1";
  int inits = 100;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string config_path;
  std::string output_dir;
  std::string records, summary;
  bool common_only = false;
  bool no_timing = false;
  ParamFlags params;
};

std::vector<ProblemInstance> select_instances(const std::string& list) {
  if (list == "all") return benchmark_instances();
  std::vector<ProblemInstance> out;
  for (const auto& item : split_list(list)) {
    const auto slash = item.find('/');
    if (slash == std::string::npos) {
      try {
        for (const auto& v : find_spec(item).variants) out.push_back({item, v.n, v.m});
      } catch (const ContractError& e) {
        throw UsageError(e.what());
      }
      continue;
    }
    int n = 0, m = 0;
    if (std::sscanf(item.c_str() + slash + 1, "n%dm%d", &n, &m) != 2)
      throw UsageError("bad instance '" + item + "' (expected NAME or NAME/nNmM)");
    out.push_back(resolve_instance(item.substr(0, slash), n, m));
  }
  return out;
}

int cmd_bench(const BenchOptions& o) {
  TrustRegionConfig cfg;
  if (!o.config_path.empty()) cfg = io::config_from_json(io::read_json_file(o.config_path));
  o.params.apply(cfg);
  const std::string dir = o.output_dir.empty() ? default_output_dir() : o.output_dir;

  SolverRegistry registry;
  std::vector<std::unique_ptr<Solver>> owned;
  std::vector<const Solver*> solvers;
  for (const auto& name : split_list(o.solvers)) {
    if (!registry.contains(name)) throw UsageError("unknown solver '" + name + "'");
    owned.push_back(registry.make(name, cfg, sd_params_from(cfg)));
    solvers.push_back(owned.back().get());
  }
  if (solvers.empty()) throw UsageError("bench: no solvers given");

  std::vector<BenchProblem> problems;
  for (const auto& inst : select_instances(o.problems)) {
    if (o.cone != "K1" && inst.m != 2 && (o.cone == "K2" || o.cone == "K3")) {
      std::cerr << "skipping " << inst.id() << ": cone " << o.cone << " needs m = 2\n";
      continue;
    }
    auto P = std::make_shared<const SetMapProblem>(inst.make());
    auto K = std::make_shared<const PolyhedralCone>(cone_from_spec(json(o.cone), inst.m));
    if (K->dim() != inst.m) throw UsageError("cone dimension differs from m of " + inst.id());
    problems.push_back({inst.id(), std::move(P), std::move(K)});
  }
  if (problems.empty()) throw UsageError("bench: no problems selected");

  BatchOptions opt;
  opt.n_inits = o.inits;
  opt.seed = o.seed;
  opt.threads = o.threads;
  opt.record_timing = !o.no_timing;
  if (opt.n_inits < 1) throw UsageError("--inits must be >= 1");
  const auto records = run_batch(problems, solvers, opt);

  const std::string records_path = resolve(dir, o.records.empty() ? "records.csv" : o.records);
  ensure_parent(records_path);
  {
    auto os = io::open_out(records_path);
    io::write_records_csv(os, records);
  }
  const auto rows = summarize(o.common_only ? common_convergence_filter(records) : records);
  const std::string summary_path = resolve(dir, o.summary.empty() ? "summary.csv" : o.summary);
  ensure_parent(summary_path);
  {
    auto os = io::open_out(summary_path);
    io::write_summary_csv(os, rows);
  }
  for (const auto& r : rows)
    std::cout << r.problem << ' ' << r.solver << " converged=" << r.converged << '/' << r.runs
              << " iter_median=" << io::num(r.iterations.median) << " step_mean=" << io::num(r.avg_step_length.mean)
              << '\n';
  std::cout << "records: " << records_path << "\nsummary: " << summary_path << '\n';
  return 0;
}

// ----------------------------------------------------------------- profile

struct ProfileOptions {
  std::string records;
  std::string metric = "iterations";
  std::string output_dir;
  std::string out;
  std::string gnuplot_dir;
  bool common_only = false;
  int log_points = 64;
};

int cmd_profile(const ProfileOptions& o) {
  const ProfileMetric metric = [&] {
    try {
      return parse_metric(o.metric);
    } catch (const ContractError& e) {
      throw UsageError(e.what());
    }
  }();
  auto is = io::open_in(o.records);
  auto records = io::read_records_csv(is, o.records);
  if (o.common_only) records = common_convergence_filter(records);
  const auto tab = performance_profile(records, metric, o.log_points);
  for (const auto& w : tab.warnings) std::cerr << "warning: " << w << '\n';

  const std::string dir = o.output_dir.empty() ? default_output_dir() : o.output_dir;
  const std::string out = resolve(dir, o.out.empty() ? "profile_" + to_string(metric) + ".json" : o.out);
  ensure_parent(out);
  {
    auto os = io::open_out(out);
    os << io::profile_to_json(tab).dump(2) << '\n';
  }
  if (!o.gnuplot_dir.empty()) {
    const std::string gdir = resolve(dir, o.gnuplot_dir);
    fs::create_directories(gdir);
    for (const auto& c : tab.curves) {
      auto os = io::open_out((fs::path(gdir) / (sanitize(c.solver) + "_" + to_string(metric) + ".dat")).string());
      io::write_gnuplot(os, c, metric);
    }
  }
  std::cout << "instances=" << tab.problems.size() << " metric=" << to_string(metric) << '\n';
  for (std::size_t s = 0; s < tab.solvers.size(); ++s)
    std::cout << tab.solvers[s] << " rho(1)=" << io::num(tab.rho_at(s, 1.0)) << '\n';
  std::cout << "profile: " << out << '\n';
  return 0;
}

// ------------------------------------------------------------ list / check

int cmd_list() {
  for (const auto& s : catalog()) {
    std::string variants;
    for (const auto& v : s.variants)
      variants += (variants.empty() ? "" : " ") + std::string("(") + std::to_string(v.n) + "," + std::to_string(v.m) + ")";
    std::printf("%-22s %-28s %-32s %s\n", s.name.c_str(), variants.c_str(), s.domain.c_str(),
                s.jacobian == DerivativeKind::Analytic ? "analytic" : "finite-difference");
  }
  return 0;
}

struct CheckOptions {
  std::string problem;
  int n = 0, m = 0;
  int points = 100;
  double tol = 1e-5;
  std::uint64_t seed = 7;
};

// Returns true when every checked point passes.
bool check_instance(const ProblemInstance& inst, const CheckOptions& o) {
  const SetMapProblem P = inst.make();
  if (P.jacobian_kind() != DerivativeKind::Analytic) {
    std::cout << inst.id() << " skipped (finite-difference Jacobian)\n";
    return true;
  }
  double worst_j = 0.0, worst_h = 0.0;
  int failures = 0;
  for (int k = 0; k < o.points; ++k) {
    const Vector x = draw_initial_point(P.init_box(), init_seed(o.seed, inst.id(), k));
    for (int i = 0; i < P.p(); ++i) {
      const auto rep = check_derivatives(P, i, x, o.tol);
      worst_j = std::max(worst_j, rep.jacobian_deviation);
      worst_h = std::max(worst_h, rep.hessian_deviation);
      if (!rep.pass) {
        if (failures < 5)
          std::cout << "  fail i=" << i << " x=(" << io::join_vector(x, ',') << ") jac_dev="
                    << io::num(rep.jacobian_deviation) << " hess_dev=" << io::num(rep.hessian_deviation) << '\n';
        ++failures;
      }
    }
  }
  std::cout << inst.id() << " points=" << o.points << " components=" << P.p() << " max_jacobian_dev="
            << io::num(worst_j) << " max_hessian_dev=" << io::num(worst_h) << " tol=" << io::num(o.tol) << ' '
            << (failures ? "FAIL" : "PASS") << '\n';
  return failures == 0;
}

int cmd_check(const CheckOptions& o) {
  if (o.points < 1) throw UsageError("--points must be >= 1");
  std::vector<ProblemInstance> todo;
  if (o.problem == "all") {
    for (const auto& s : catalog())
      for (const auto& v : s.variants) todo.push_back({s.name, v.n, v.m});
  } else if (o.n > 0 || o.m > 0) {
    todo.push_back(resolve_instance(o.problem, o.n, o.m));
  } else {
    try {
      for (const auto& v : find_spec(o.problem).variants) todo.push_back({o.problem, v.n, v.m});
    } catch (const ContractError& e) {
      throw UsageError(e.what());
    }
  }
  bool ok = true;
  for (const auto& inst : todo) ok = check_instance(inst, o) && ok;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"settr: trust-region solver and benchmark harness for set optimization problems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "settr 0.1.0");

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "run one solver on one problem and write traces");
  solve->add_option("--config", so.config_path, "run configuration JSON");
  solve->add_option("--problem", so.problem, "catalog name, e.g. Example5.1");
  solve->add_option("--n", so.n, "decision dimension (selects a variant)");
  solve->add_option("--m", so.m, "image dimension (selects a variant)");
  solve->add_option("--cone", so.cone, "K1, K2, K3 or a cone JSON file")->capture_default_str();
  solve->add_option("--solver", so.solver, "trm or sd")->capture_default_str();
  solve->add_option("--x0", so.x0, "\"a,b,...\" or random:<count> (default: box centre)");
  solve->add_option("--seed", so.seed, "seed for random starting points")->capture_default_str();
  solve->add_option("--output-dir", so.output_dir, "directory for traces (default $SETTR_OUTPUT_DIR or .)");
  solve->add_option("--trace-jsonl", so.trace_jsonl, "JSONL trace path");
  solve->add_option("--trace-csv", so.trace_csv, "CSV trace path");
  solve->add_option("--verbosity", so.verbosity, "summary or full")->capture_default_str();
  solve->add_flag("--no-timing", so.no_timing, "write zero timings for byte-stable output");
  so.params.attach(solve);

  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "run solvers over problem instances from shared random starts");
  bench->add_option("--problems", bo.problems, "all, or a comma list of NAME or NAME/nNmM")->capture_default_str();
  bench->add_option("--solvers", bo.solvers, "comma list of solver names")->capture_default_str();
  bench->add_option("--cone", bo.cone, "K1, K2, K3 or a cone JSON file")->capture_default_str();
  bench->add_option("--inits", bo.inits, "starting points per problem")->capture_default_str();
  bench->add_option("--seed", bo.seed, "batch seed")->capture_default_str();
  bench->add_option("--threads", bo.threads, "worker threads")->capture_default_str();
  bench->add_option("--config", bo.config_path, "solver configuration JSON");
  bench->add_option("--output-dir", bo.output_dir, "output directory (default $SETTR_OUTPUT_DIR or .)");
  bench->add_option("--records", bo.records, "records CSV path (default records.csv)");
  bench->add_option("--summary", bo.summary, "summary CSV path (default summary.csv)");
  bench->add_flag("--common-only", bo.common_only, "summarize only starts where every solver converged");
  bench->add_flag("--no-timing", bo.no_timing, "write zero timings for byte-stable output");
  bo.params.attach(bench);

  ProfileOptions po;
  auto* profile = app.add_subcommand("profile", "performance profiles from a records CSV");
  profile->add_option("records", po.records, "records CSV written by bench")->required();
  profile->add_option("--metric", po.metric, "iterations, wall_seconds or reciprocal_step")->capture_default_str();
  profile->add_option("--output-dir", po.output_dir, "output directory (default $SETTR_OUTPUT_DIR or .)");
  profile->add_option("--out", po.out, "profile JSON path");
  profile->add_option("--gnuplot-dir", po.gnuplot_dir, "also write one two-column file per solver here");
  profile->add_option("--log-points", po.log_points, "log-spaced tau points")->capture_default_str();
  profile->add_flag("--common-only", po.common_only, "drop starts where some solver failed");

  app.add_subcommand("list-problems", "print the problem catalog");

  CheckOptions co;
  auto* check = app.add_subcommand("check", "compare analytic derivatives with finite differences");
  check->add_option("problem", co.problem, "catalog name or 'all'")->required();
  check->add_option("n", co.n, "decision dimension");
  check->add_option("m", co.m, "image dimension");
  check->add_option("--points", co.points, "random points per instance")->capture_default_str();
  check->add_option("--tol", co.tol, "relative tolerance")->capture_default_str();
  check->add_option("--seed", co.seed, "seed for the points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(so, solve);
    if (bench->parsed()) return cmd_bench(bo);
    if (profile->parsed()) return cmd_profile(po);
    if (check->parsed()) return cmd_check(co);
    return cmd_list();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
