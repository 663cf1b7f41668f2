// Command-line front end: decide, eval, export-smt, falsify, recheck.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "prodmod/decision.hpp"
#include "prodmod/errors.hpp"
#include "prodmod/kripke.hpp"
#include "prodmod/report.hpp"

namespace {

using namespace prodmod;

enum Exit { kEntailed = 0, kNotEntailed = 1, kUnknown = 2, kError = 3 };

struct DecideArgs {
  std::string path;
  bool trace = false;
  bool dump = false;
  std::uint64_t branch_limit = 1'000'000;
  std::size_t omega_limit = kDefaultOmegaLimit;
  unsigned truncation_k = 4;
  unsigned jobs = 1;
  std::uint64_t timeout_ms = 0;
};

DecideOptions options(const DecideArgs& a) {
  DecideOptions o;
  o.limits.decisions = a.branch_limit;
  o.limits.wall = std::chrono::milliseconds(a.timeout_ms);
  o.omega_limit = a.omega_limit;
  o.truncation_k = std::max(1u, a.truncation_k);
  o.jobs = a.jobs;
  return o;
}

int cmd_decide(const DecideArgs& a) {
  Problem p = load_problem(a.path);
  if (a.dump) {
    for (const auto& omega : enumerate_omegas(p, a.omega_limit)) std::cerr << reduce(p, omega).instance.listing();
  }
  Decision d = a.trace ? decide_with_trace(p, options(a)) : decide(p, options(a));
  std::cout << decision_json(p, d, a.trace).dump(2) << '\n';
  switch (d.verdict) {
    case Verdict::Entailed: return kEntailed;
    case Verdict::NotEntailed: return kNotEntailed;
    case Verdict::Unknown: return kUnknown;
  }
  return kError;
}

int cmd_eval(const std::string& model, const std::string& world, const std::string& formula) {
  KripkeModel m = load_model(model);
  std::cout << to_fraction(eval(m, world, parse(formula))) << '\n';
  return 0;
}

int cmd_export(const std::string& path, const std::string& dir, std::size_t omega_limit) {
  Problem p = load_problem(path);
  std::filesystem::create_directories(dir);
  std::ofstream manifest(std::filesystem::path(dir) / "manifest.txt");
  std::size_t i = 0;
  for (const auto& omega : enumerate_omegas(p, omega_limit)) {
    ReducedQuery q = reduce(p, omega);
    std::string name = "omega_" + std::to_string(i++) + ".smt2";
    std::ofstream out(std::filesystem::path(dir) / name);
    out << "; omega " << omega.print() << '\n' << export_smtlib(q.premises, q.goal);
    manifest << name << ' ' << omega.print() << '\n';
  }
  std::cout << "wrote " << i << " scripts to " << dir << '\n';
  return 0;
}

struct FalsifyArgs {
  std::string path;
  std::uint64_t budget = 10'000;
  std::uint64_t seed = 1;
  bool grid = false;
  bool classical = false;
  std::size_t max_worlds = 0;
  unsigned max_denominator = 4;
};

int cmd_falsify(const FalsifyArgs& a) {
  Problem p = load_problem(a.path);
  bool crisp = p.logic == Logic::Crisp;
  std::optional<Falsifier> f;
  std::string what;
  if (a.classical) {
    std::size_t n = a.max_worlds ? a.max_worlds : 3;
    f = classical_falsify(p.premises, p.conclusion, n);
    what = "classical search up to " + std::to_string(n) + " worlds";
  } else if (a.grid) {
    std::size_t n = a.max_worlds ? a.max_worlds : 3;
    f = grid_falsify(p.premises, p.conclusion, n, a.max_denominator, crisp);
    what = "grid search up to " + std::to_string(n) + " worlds, denominators up to " + std::to_string(a.max_denominator);
  } else {
    FalsifyOptions o;
    o.budget = a.budget;
    o.crisp = crisp;
    o.seed = a.seed;
    o.max_denominator = a.max_denominator;
    if (a.max_worlds) o.max_worlds = a.max_worlds;
    f = random_falsify(p.premises, p.conclusion, o);
    what = "budget " + std::to_string(a.budget);
  }
  if (!f) {
    std::cout << "no falsifier found (" << what << ")\n";
    return kUnknown;
  }
  std::cout << "# falsified at world " << f->model.name(f->world) << '\n' << f->model.print();
  return kNotEntailed;
}

int cmd_recheck(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json report = nlohmann::json::parse(in);
  RecheckResult r = recheck_report(report);
  bool same = true;
  for (std::size_t i = 0; i < r.ks.size(); ++i) {
    std::cout << "K=" << r.ks[i] << " recorded " << (r.recorded[i] ? "ok" : "failed") << ", recomputed "
              << (r.recomputed[i] ? "ok" : "failed") << '\n';
    same = same && r.recorded[i] == r.recomputed[i];
  }
  return same ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedure for local consequence in crisp and valued modal product logic"};
  app.require_subcommand(1);

  DecideArgs da;
  auto* decide_cmd = app.add_subcommand("decide", "Decide a problem file; exit 0 entailed, 1 not entailed, 2 unknown");
  decide_cmd->add_option("file", da.path, "problem file")->required();
  decide_cmd->add_flag("--trace", da.trace, "include the per-omega transcript");
  decide_cmd->add_flag("--dump-reduction", da.dump, "print every reduced theory to stderr");
  decide_cmd->add_option("--branch-limit", da.branch_limit, "solver decisions per omega")->envname("PRODMOD_BRANCH_LIMIT");
  decide_cmd->add_option("--omega-limit", da.omega_limit, "cap on enumerated omega sets")->envname("PRODMOD_OMEGA_LIMIT");
  decide_cmd->add_option("--truncation-k", da.truncation_k, "parameter bound of the reported countermodel")
      ->envname("PRODMOD_TRUNCATION_K");
  decide_cmd->add_option("--timeout-ms", da.timeout_ms, "wall clock per omega, 0 for none");
  decide_cmd->add_option("--jobs", da.jobs, "worker threads");

  std::string model, world, formula;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula on a model file");
  eval_cmd->add_option("--model", model, "model file")->required();
  eval_cmd->add_option("--world", world, "world name")->required();
  eval_cmd->add_option("--formula", formula, "formula")->required();

  std::string export_path, export_dir = "smt";
  std::size_t export_limit = kDefaultOmegaLimit;
  auto* export_cmd = app.add_subcommand("export-smt", "Write one SMT-LIB script per omega plus a manifest");
  export_cmd->add_option("file", export_path, "problem file")->required();
  export_cmd->add_option("--out", export_dir, "output directory");
  export_cmd->add_option("--omega-limit", export_limit, "cap on enumerated omega sets")->envname("PRODMOD_OMEGA_LIMIT");

  FalsifyArgs fa;
  auto* falsify_cmd = app.add_subcommand("falsify", "Search small finite models for a falsifier");
  falsify_cmd->add_option("file", fa.path, "problem file")->required();
  falsify_cmd->add_option("--budget", fa.budget, "random models to try");
  falsify_cmd->add_option("--seed", fa.seed, "random seed");
  falsify_cmd->add_flag("--grid", fa.grid, "exhaustive search on the value grid");
  falsify_cmd->add_flag("--classical", fa.classical, "exhaustive search over two-valued crisp models");
  falsify_cmd->add_option("--max-worlds", fa.max_worlds, "largest model size");
  falsify_cmd->add_option("--max-denominator", fa.max_denominator, "grid denominators");

  std::string report_path;
  auto* recheck_cmd = app.add_subcommand("recheck", "Re-verify the countermodel of a decision report");
  recheck_cmd->add_option("report", report_path, "JSON report")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*decide_cmd) return cmd_decide(da);
    if (*eval_cmd) return cmd_eval(model, world, formula);
    if (*export_cmd) return cmd_export(export_path, export_dir, export_limit);
    if (*falsify_cmd) return cmd_falsify(fa);
    if (*recheck_cmd) return cmd_recheck(report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
