// Command-line front end: solve, round, curve, gen, verify.

#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bgr/features.hpp"
#include "bgr/gadget.hpp"
#include "bgr/generator.hpp"
#include "bgr/instance.hpp"
#include "bgr/io.hpp"
#include "bgr/multipin.hpp"
#include "bgr/rounding.hpp"
#include "bgr/solver.hpp"
#include "bgr/tradeoff.hpp"
#include "bgr/verify.hpp"

using namespace bgr;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kInput = 1, kInfeasible = 2, kInternal = 3 };

// Bad user input (files, flags); exits with kInput.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverFlags {
  std::string mode = "practical";
  double epsilon = 0.3;
  double epsilon0 = 0.5;
  double gamma = 1.0;
  int phases = 64;
  std::string d;  // number, INF, search or empty (instance value)
  std::string update = "mult";
  int pool_k = 5;
  int lb_interval = 1;
  std::string decompose;
  std::string features = "all";
};

void add_solver_flags(CLI::App* app, SolverFlags& f) {
  app->add_option("--mode", f.mode, "practical (fixed phase cap) or theory (approximation guarantee)")
      ->check(CLI::IsMember({"practical", "theory"}));
  app->add_option("--epsilon", f.epsilon, "step size in practical mode");
  app->add_option("--epsilon0", f.epsilon0, "approximation target in theory mode");
  app->add_option("--gamma", f.gamma, "stale-path slack factor");
  app->add_option("--phases", f.phases, "phase cap in practical mode");
  app->add_option("--d", f.d, "area budget: a number, INF, or search for the smallest feasible one");
  app->add_option("--update", f.update, "dual update rule")->check(CLI::IsMember({"mult", "exp"}));
  app->add_option("--pool-k", f.pool_k, "paths kept per net for rounding");
  app->add_option("--lb-interval", f.lb_interval, "phases between dual lower bound evaluations");
  app->add_option("--decompose", f.decompose, "multipin decomposition")
      ->check(CLI::IsMember({"star", "mst", "fixed", "flexible", "half-flex"}));
  app->add_option("--features", f.features, "enabled extensions, e.g. pin,pol,bsize,wsize,delay");
}

SolverConfig make_config(const SolverFlags& f) {
  SolverConfig c = f.mode == "theory" ? SolverConfig::theory(f.epsilon0, f.gamma)
                                      : SolverConfig::practical(f.epsilon, f.phases);
  c.gamma = f.gamma;
  c.update = f.update == "exp" ? UpdateRule::exponential : UpdateRule::multiplicative;
  c.pool_size = f.pool_k;
  c.lower_bound_interval = f.lb_interval;
  if (!f.d.empty() && f.d != "search") {
    if (f.d == "INF" || f.d == "inf") {
      c.area_budget = kInfiniteArea;
    } else {
      try {
        c.area_budget = std::stod(f.d);
      } catch (const std::exception&) {
        throw InputError("--d expects a number, INF or search");
      }
    }
  }
  return c;
}

std::optional<Decomposition> decomposition(const std::string& name) {
  if (name.empty()) return std::nullopt;
  return parse_decomposition(name);
}

FeatureSet features(const std::string& list) {
  try {
    return parse_features(list);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Instance load_prepared(const std::string& path, const std::string& decompose, const std::string& feats) {
  const Instance inst = load_instance(path);
  try {
    return prepare_instance(inst, decomposition(decompose), features(feats));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

ordered_json number_or_inf(double v) {
  if (std::isinf(v)) return "INF";
  return v;
}

ordered_json config_echo(const SolverFlags& f, const SolverConfig& c) {
  ordered_json j;
  j["mode"] = f.mode;
  j["epsilon"] = c.step();
  if (f.mode == "theory") j["epsilon0"] = f.epsilon0;
  j["gamma"] = c.gamma;
  j["phase_cap"] = c.phase_cap == std::numeric_limits<int>::max() ? ordered_json("none") : ordered_json(c.phase_cap);
  j["update"] = f.update;
  j["d"] = f.d.empty() ? "instance" : f.d;
  j["pool_k"] = c.pool_size;
  j["lb_interval"] = c.lower_bound_interval;
  j["decompose"] = f.decompose.empty() ? "none" : f.decompose;
  j["features"] = features_string(features(f.features));
  return j;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else write_file(path, text);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CommonOut {
  std::string report;
  bool timing = false;
};

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string instance;
  SolverFlags solver;
  std::string csv, dump;
  CommonOut out;
};

int cmd_solve(const SolveArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance raw = load_instance(a.instance);
  const Instance inst = load_prepared(a.instance, a.solver.decompose, a.solver.features);
  const SolverConfig cfg = make_config(a.solver);
  const GadgetGraph h = GadgetGraph::build(inst);

  ordered_json rep;
  rep["command"] = "solve";
  rep["instance"] = instance_digest(raw);
  rep["prepared_instance"] = instance_digest(inst);
  rep["config"] = config_echo(a.solver, cfg);
  rep["nets"] = inst.nets.size();

  FractionalSolution sol;
  int code = kOk;
  ordered_json res;
  if (a.solver.d == "search") {
    SearchResult sr = min_area_search(h, inst, cfg);
    res["feasible"] = sr.feasible;
    res["d_star"] = sr.area_budget;
    res["witness_budget"] = number_or_inf(sr.witness_budget);
    res["d_min"] = sr.d_min;
    res["d_max"] = sr.d_max;
    res["probes"] = sr.probes;
    if (!sr.unroutable.empty()) res["unroutable"] = sr.unroutable;
    if (!sr.certificate.empty()) {
      ordered_json cert = ordered_json::array();
      for (const auto& g : sr.certificate) {
        const char* kind = g.kind == GroupKind::buffer ? "buffer" : g.kind == GroupKind::wire ? "wire" : "window";
        cert.push_back({{"kind", kind}, {"index", g.index}, {"ratio", g.ratio}});
      }
      res["overloaded"] = cert;
    }
    if (!sr.feasible) code = kInfeasible;
    if (!sr.unroutable.empty()) {
      rep["result"] = res;
      emit(a.out.report, rep.dump(2) + "\n");
      return kInfeasible;
    }
    sol = std::move(sr.solution);
  } else {
    try {
      sol = run_phases(h, inst, cfg);
    } catch (const UnroutableNet& e) {
      res["feasible"] = false;
      res["unroutable"] = ordered_json::array({e.net()});
      rep["result"] = res;
      emit(a.out.report, rep.dump(2) + "\n");
      return kInfeasible;
    }
  }
  res["area_budget"] = number_or_inf(sol.area_budget);
  res["lambda"] = sol.lambda;
  res["lambda_lb"] = sol.lambda_lb;
  res["ratio"] = sol.lambda_lb > 0 ? ordered_json(sol.lambda / sol.lambda_lb) : ordered_json(nullptr);
  res["phases"] = sol.phases;
  res["stopped_by_guard"] = sol.stopped_by_guard;
  res["mu"] = sol.mu;
  res["nu"] = sol.nu;
  res["area"] = sol.area;
  res["buffers"] = sol.buffers;
  res["wirelength"] = sol.wirelength;
  res["nets_routed"] = sol.flows.size();
  res["path_computations"] = sol.path_computations;
  rep["result"] = res;
  if (a.out.timing) rep["wall_seconds"] = seconds_since(t0);

  if (!a.csv.empty()) write_file(a.csv, phase_csv(sol.stats, a.out.timing));
  if (!a.dump.empty()) {
    FractionalDump d;
    d.instance_digest = instance_digest(inst);
    d.decompose = a.solver.decompose;
    d.features = a.solver.features;
    d.lambda = sol.lambda;
    d.lambda_lb = sol.lambda_lb;
    d.phases = sol.phases;
    d.flows = sol.flows;
    d.pool = sol.pool;
    write_file(a.dump, fractional_to_json(d));
  }
  emit(a.out.report, rep.dump(2) + "\n");
  return code;
}

// ---------------------------------------------------------------- round

struct RoundArgs {
  std::string instance, dump, output;
  int trials = 10000;
  std::uint64_t seed = 1;
  std::string objective = "congestion";
  int pool_k = 0;  // 0: the whole stored pool
  CommonOut out;
};

int cmd_round(const RoundArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  FractionalDump d;
  try {
    d = fractional_from_json(read_file(a.dump));
  } catch (const FormatError& e) {
    throw InputError(a.dump + ": " + e.what());
  }
  const Instance inst = load_prepared(a.instance, d.decompose, d.features);
  if (instance_digest(inst) != d.instance_digest) {
    throw InputError("stale fractional dump: it was produced for a different instance");
  }
  const GadgetGraph h = GadgetGraph::build(inst);
  if (d.pool.size() != static_cast<std::size_t>(h.net_count())) throw InputError("dump does not match the net count");
  auto pool = d.pool;
  if (a.pool_k > 0) {
    for (auto& p : pool) {
      if (p.size() > static_cast<std::size_t>(a.pool_k)) p.erase(p.begin(), p.end() - a.pool_k);
    }
  }
  RoundingConfig cfg;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.objective = a.objective == "area" ? RoundingObjective::min_area : RoundingObjective::min_congestion;
  const RoundingResult r = round_pool(h, inst, pool, cfg);
  const VerifyReport v = verify_routings(inst, r.routings);

  ordered_json rep;
  rep["command"] = "round";
  rep["prepared_instance"] = d.instance_digest;
  rep["seed"] = a.seed;
  rep["config"] = {{"trials", a.trials}, {"objective", a.objective}, {"pool_k", a.pool_k > 0 ? a.pool_k : 0}};
  rep["result"] = {{"mu", r.stats.mu},
                   {"nu", r.stats.nu},
                   {"area", r.stats.area},
                   {"wirelength", r.stats.wirelength},
                   {"buffers", r.stats.buffers},
                   {"trial", r.stats.trial},
                   {"fractional_lambda", d.lambda},
                   {"verified", v.ok()}};
  if (a.out.timing) rep["wall_seconds"] = seconds_since(t0);
  if (!a.output.empty()) write_file(a.output, routings_to_json(inst, r.routings));
  emit(a.out.report, rep.dump(2) + "\n");
  if (!v.ok()) {
    for (const auto& s : v.violations) std::cerr << "bgr: rounded routing rejected: " << s << '\n';
    return kInternal;
  }
  return kOk;
}

// ---------------------------------------------------------------- curve

struct CurveArgs {
  std::string instance;
  SolverFlags solver;
  std::vector<double> mu{0.5, 2.0}, nu{0.5, 2.0};
  int steps = 5;
  int region = 0;
  std::string csv, region_csv;
  CommonOut out;
};

int cmd_curve(const CurveArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance inst = load_prepared(a.instance, a.solver.decompose, a.solver.features);
  const SolverConfig cfg = make_config(a.solver);
  const auto grid = sweep_grid(a.mu[0], a.mu[1], a.nu[0], a.nu[1], a.steps);
  const auto samples = tradeoff_curve(inst, grid, cfg);
  const double eps0 = a.solver.mode == "theory" ? a.solver.epsilon0 : a.solver.epsilon;
  const double slack = tradeoff_slack(samples, eps0);
  const auto conv = convexity_check(samples, slack);
  const auto mono = monotonicity_check(samples, slack);

  ordered_json rep;
  rep["command"] = "curve";
  rep["prepared_instance"] = instance_digest(inst);
  rep["config"] = config_echo(a.solver, cfg);
  rep["grid"] = {{"mu", a.mu}, {"nu", a.nu}, {"steps", a.steps}};
  int feasible = 0, boundary = 0;
  for (const auto& s : samples) {
    feasible += s.feasible;
    boundary += s.boundary;
  }
  rep["result"] = {{"samples", samples.size()},
                   {"feasible", feasible},
                   {"boundary", boundary},
                   {"slack", slack},
                   {"convexity_violations", conv.size()},
                   {"monotonicity_violations", mono.size()}};
  if (a.region > 0) {
    const auto pts = feasible_region(inst, cfg, a.region);
    if (!a.region_csv.empty()) write_file(a.region_csv, region_csv(pts));
    rep["result"]["region_points"] = pts.size();
  }
  if (a.out.timing) rep["wall_seconds"] = seconds_since(t0);
  if (!a.csv.empty()) write_file(a.csv, tradeoff_csv(samples));
  emit(a.out.report, rep.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------- gen

int cmd_gen(const GeneratorParams& p, const std::string& output) {
  Instance inst;
  try {
    inst = generate_instance(p);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  emit(output, emit_instance(inst));
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string instance, routing, decompose, features = "all";
  CommonOut out;
};

int cmd_verify(const VerifyArgs& a) {
  const Instance inst = load_prepared(a.instance, a.decompose, a.features);
  RoutingFile f;
  try {
    f = routings_from_json(inst, read_file(a.routing));
  } catch (const FormatError& e) {
    throw InputError(a.routing + ": " + e.what());
  }
  VerifyReport v = verify_routings(inst, f.routings);
  if (!f.instance_digest.empty() && f.instance_digest != instance_digest(inst)) {
    v.violations.insert(v.violations.begin(), "routing file was produced for a different instance");
  }
  ordered_json rep;
  rep["command"] = "verify";
  rep["prepared_instance"] = instance_digest(inst);
  rep["ok"] = v.ok();
  rep["violations"] = v.violations;
  rep["mu"] = v.mu;
  rep["nu"] = v.nu;
  rep["window_ratio"] = v.window_ratio;
  rep["area"] = v.area;
  rep["wirelength"] = v.wirelength;
  rep["buffers"] = v.buffers;
  emit(a.out.report, rep.dump(2) + "\n");
  return v.ok() ? kOk : kInfeasible;
}

void add_common(CLI::App* app, CommonOut& o) {
  app->add_option("--report", o.report, "report file (default: stdout)");
  app->add_flag("--timing", o.timing, "include wall-clock times (reports stop being reproducible)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Buffered global router"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "fractional routing by the phase algorithm");
  s->add_option("instance", solve.instance, "instance file")->required()->check(CLI::ExistingFile);
  add_solver_flags(s, solve.solver);
  s->add_option("--csv", solve.csv, "per-phase CSV");
  s->add_option("--dump", solve.dump, "fractional dump for `round`");
  add_common(s, solve.out);

  RoundArgs round;
  auto* r = app.add_subcommand("round", "integral routing from a fractional dump");
  r->add_option("instance", round.instance, "instance file")->required()->check(CLI::ExistingFile);
  r->add_option("dump", round.dump, "fractional dump")->required()->check(CLI::ExistingFile);
  r->add_option("-o,--output", round.output, "routing JSON");
  r->add_option("--trials", round.trials, "random samplings");
  r->add_option("--seed", round.seed, "random seed");
  r->add_option("--objective", round.objective, "ranking of samplings")->check(CLI::IsMember({"congestion", "area"}));
  r->add_option("--pool-k", round.pool_k, "use only the last K pooled paths per net");
  add_common(r, round.out);

  CurveArgs curve;
  auto* c = app.add_subcommand("curve", "area/congestion tradeoff sweep");
  c->add_option("instance", curve.instance, "instance file")->required()->check(CLI::ExistingFile);
  add_solver_flags(c, curve.solver);
  c->add_option("--mu", curve.mu, "mu0 range LO HI")->expected(2);
  c->add_option("--nu", curve.nu, "nu0 range LO HI")->expected(2);
  c->add_option("--steps", curve.steps, "grid points per axis")->check(CLI::PositiveNumber);
  c->add_option("--region", curve.region, "also sample the feasible region along this many rays");
  c->add_option("--csv", curve.csv, "sample CSV");
  c->add_option("--region-csv", curve.region_csv, "feasible region CSV");
  add_common(c, curve.out);

  GeneratorParams gen;
  std::string gen_out;
  auto* g = app.add_subcommand("gen", "random instance");
  g->add_option("--width", gen.width);
  g->add_option("--height", gen.height);
  g->add_option("--nets", gen.nets);
  g->add_option("--wireload", gen.wireload, "U");
  g->add_option("--bufcap-min", gen.buffer_cap_min);
  g->add_option("--bufcap-max", gen.buffer_cap_max);
  g->add_option("--wirecap-min", gen.wire_cap_min);
  g->add_option("--wirecap-max", gen.wire_cap_max);
  g->add_option("--seed", gen.seed);
  g->add_option("--pin-tiles", gen.pin_tiles, "candidate tiles per pin");
  g->add_option("--max-distance", gen.max_distance);
  g->add_option("--three-pin", gen.three_pin_fraction, "fraction of 3-pin nets");
  g->add_flag("--inverting", gen.inverting);
  g->add_option("--polarity", gen.polarity_fraction, "fraction of nets with a polarity");
  g->add_flag("--buffer-sizing", gen.buffer_sizing);
  g->add_flag("--wire-sizing", gen.wire_sizing);
  g->add_option("--delay", gen.delay_fraction, "fraction of nets with a delay bound");
  g->add_option("--windows", gen.windows);
  g->add_option("-o,--output", gen_out, "instance file (default: stdout)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "independent check of a routing file");
  v->add_option("instance", verify.instance, "instance file")->required()->check(CLI::ExistingFile);
  v->add_option("routing", verify.routing, "routing JSON")->required()->check(CLI::ExistingFile);
  v->add_option("--decompose", verify.decompose, "multipin decomposition used for the routing");
  v->add_option("--features", verify.features, "features used for the routing");
  add_common(v, verify.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*r) return cmd_round(round);
    if (*c) return cmd_curve(curve);
    if (*g) return cmd_gen(gen, gen_out);
    if (*v) return cmd_verify(verify);
  } catch (const ParseError& e) {
    std::cerr << "bgr: " << e.what() << '\n';
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "bgr: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "bgr: internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
