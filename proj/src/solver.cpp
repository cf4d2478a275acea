#include "bgr/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

namespace bgr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_budget(double d) { return std::isfinite(d); }

}  // namespace

SolverConfig SolverConfig::theory(double epsilon0, double gamma) {
  SolverConfig c;
  c.mode = SolverMode::theory;
  c.epsilon0 = epsilon0;
  c.gamma = gamma;
  c.phase_cap = std::numeric_limits<int>::max();
  return c;
}

SolverConfig SolverConfig::practical(double epsilon, int phases) {
  SolverConfig c;
  c.mode = SolverMode::practical;
  c.epsilon = epsilon;
  c.phase_cap = phases;
  return c;
}

double SolverConfig::step() const {
  return mode == SolverMode::theory ? compute_epsilon(epsilon0, gamma) : epsilon;
}

double compute_epsilon(double epsilon0, double gamma) {
  if (!(epsilon0 > 0.0) || !(gamma > 0.0)) throw std::domain_error("epsilon0 and gamma must be positive");
  const double a = 1.0 / gamma;
  const double b = (std::sqrt(1.0 + epsilon0) - 1.0) / gamma;
  const double c = 0.25 * (1.0 - std::pow(1.0 / (1.0 + epsilon0), 1.0 / 6.0));
  return std::min({a, b, c});
}

double delta_from_prime(double epsilon_prime, std::size_t rows) {
  if (!(epsilon_prime > 0.0) || epsilon_prime >= 1.0) {
    throw std::domain_error("epsilon too large: eps*(1+eps)*(1+eps*gamma) must be below 1");
  }
  if (rows == 0) throw std::domain_error("no packing rows");
  return std::pow((1.0 - epsilon_prime) / static_cast<double>(rows), 1.0 / epsilon_prime);
}

double compute_delta(double epsilon, double gamma, std::size_t rows) {
  return delta_from_prime(epsilon * (1.0 + epsilon) * (1.0 + epsilon * gamma), rows);
}

DualState DualState::initial(const GadgetGraph& h, const Instance& inst, double delta, double area_budget) {
  DualState d;
  d.delta = delta;
  d.area_budget = area_budget;
  d.alpha = inst.alpha;
  d.beta = inst.beta;
  d.y.assign(h.groups().size(), 0.0);
  for (std::size_t g = 0; g < h.groups().size(); ++g) {
    if (h.groups()[g].active()) d.y[g] = delta / h.groups()[g].scaled;
  }
  d.u = finite_budget(area_budget) ? delta / area_budget : 0.0;
  return d;
}

double DualState::guard(const GadgetGraph& h) const {
  double sum = 0.0;
  for (std::size_t g = 0; g < y.size(); ++g) {
    if (h.groups()[g].active()) sum += h.groups()[g].scaled * y[g];
  }
  if (finite_budget(area_budget)) sum += area_budget * u;
  return sum;
}

std::vector<double> arc_weights(const GadgetGraph& h, const DualState& duals) {
  const auto& groups = h.groups();
  std::vector<double> w(groups.size() + 1, 0.0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    switch (groups[g].kind) {
      case GroupKind::buffer: {
        double v = duals.y[g];
        for (GroupId win : h.tile_windows(groups[g].index)) v += duals.y[win];
        w[g + 1] = v + duals.alpha * duals.u;
        break;
      }
      case GroupKind::wire:
        w[g + 1] = duals.y[g] + duals.beta * duals.u;
        break;
      case GroupKind::window:
        w[g + 1] = duals.y[g];
        break;
    }
  }
  return w;
}

std::vector<double> area_weights(const GadgetGraph& h, double alpha, double beta) {
  const auto& groups = h.groups();
  std::vector<double> w(groups.size() + 1, 0.0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].kind == GroupKind::buffer) w[g + 1] = alpha;
    else if (groups[g].kind == GroupKind::wire) w[g + 1] = beta;
  }
  return w;
}

double path_weight(const GadgetGraph& h, std::span<const ArcId> path, std::span<const double> weights) {
  double sum = 0.0;
  for (ArcId a : path) sum += weights[h.arc_group(a) + 1];
  return sum;
}

double route_weight(const GadgetGraph& h, const GadgetRoute& route, std::span<const double> weights) {
  double sum = 0.0;
  for (const auto& seg : route.segments) sum += path_weight(h, seg, weights);
  return sum;
}

// ---------------------------------------------------------------------------
// Shortest paths

void PathFinder::Labels::reset(std::size_t n) {
  if (dist.size() != n) {
    dist.assign(n, kInf);
    arc.assign(n, -1);
    stamp.assign(n, 0);
    generation = 0;
  }
  if (++generation == 0) {
    std::fill(stamp.begin(), stamp.end(), 0);
    generation = 1;
  }
}

double PathFinder::Labels::at(VertexId v) const { return stamp[v] == generation ? dist[v] : kInf; }

PathFinder::PathFinder(const GadgetGraph& h) : h_(h) {}

void PathFinder::dijkstra(int net, VertexId start, VertexId target, bool backward,
                          std::span<const double> weights, Labels& lab) {
  (void)net;
  lab.reset(h_.vertex_count());
  auto relax = [&](VertexId v, double d, ArcId a) {
    if (lab.stamp[v] != lab.generation) {
      lab.stamp[v] = lab.generation;
      lab.dist[v] = kInf;
    }
    if (d < lab.dist[v]) {
      lab.dist[v] = d;
      lab.arc[v] = a;
      heap_.emplace_back(d, v);
      std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
    }
  };
  heap_.clear();
  relax(start, 0.0, -1);
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
    const auto [d, v] = heap_.back();
    heap_.pop_back();
    if (d > lab.dist[v]) continue;
    if (v == target) break;
    if (backward) {
      for (ArcId a : h_.in_arcs(v)) {
        const VertexId w = h_.tail(a);
        if (!h_.is_copy(w)) continue;
        relax(w, d + weights[h_.arc_group(a) + 1], a);
      }
    } else {
      for (ArcId a : h_.out_arcs(v)) {
        const VertexId w = h_.head(a);
        if (!h_.is_copy(w) && w != target) continue;
        relax(w, d + weights[h_.arc_group(a) + 1], a);
      }
    }
  }
}

void PathFinder::topological(int net, std::span<const double> weights, Labels& lab) {
  lab.reset(h_.vertex_count());
  const VertexId source = h_.source_vertex(net);
  const VertexId target = h_.sink_vertex(net, 0);
  lab.stamp[source] = lab.generation;
  lab.dist[source] = 0.0;
  lab.arc[source] = -1;
  for (VertexId v : h_.topological_order()) {
    if (lab.stamp[v] != lab.generation) continue;
    const double d = lab.dist[v];
    for (ArcId a : h_.out_arcs(v)) {
      const VertexId w = h_.head(a);
      if (!h_.is_copy(w) && w != target) continue;
      const double nd = d + weights[h_.arc_group(a) + 1];
      if (lab.stamp[w] != lab.generation) {
        lab.stamp[w] = lab.generation;
        lab.dist[w] = kInf;
      }
      if (nd < lab.dist[w]) {
        lab.dist[w] = nd;
        lab.arc[w] = a;
      }
    }
  }
}

std::vector<ArcId> PathFinder::trace_forward(const Labels& lab, VertexId from, VertexId to) const {
  std::vector<ArcId> path;
  for (VertexId v = to; v != from;) {
    const ArcId a = lab.arc[v];
    path.push_back(a);
    v = h_.tail(a);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<ArcId> PathFinder::trace_backward(const Labels& lab, VertexId from, VertexId to) const {
  std::vector<ArcId> path;
  for (VertexId v = from; v != to;) {
    const ArcId a = lab.arc[v];
    path.push_back(a);
    v = h_.head(a);
  }
  return path;
}

std::optional<ShortestRoute> PathFinder::route(int net, std::span<const double> weights, SearchMethod method) {
  if (h_.sink_groups(net) == 2) return three_pin(net, weights);
  if (method == SearchMethod::automatic) {
    method = h_.delay_mode() ? SearchMethod::topological : SearchMethod::dijkstra;
  }
  const VertexId s = h_.source_vertex(net);
  const VertexId t = h_.sink_vertex(net, 0);
  if (method == SearchMethod::topological) {
    if (!h_.acyclic()) throw std::logic_error("topological search on a cyclic gadget graph");
    topological(net, weights, forward_);
  } else {
    dijkstra(net, s, t, false, weights, forward_);
  }
  const double d = forward_.at(t);
  if (!std::isfinite(d)) return std::nullopt;
  ShortestRoute r;
  r.route.segments.push_back(trace_forward(forward_, s, t));
  r.weight = d;
  return r;
}

std::optional<ShortestRoute> PathFinder::three_pin(int net, std::span<const double> weights) {
  if (h_.sink_groups(net) != 2) throw std::invalid_argument("three_pin needs a net with two sink groups");
  if (h_.polarity_mode() || h_.delay_mode()) {
    throw std::invalid_argument("3-pin nets are not supported with polarity or delay constraints");
  }
  const VertexId s = h_.source_vertex(net);
  dijkstra(net, s, -1, false, weights, forward_);
  dijkstra(net, h_.sink_vertex(net, 0), -1, true, weights, branch_[0]);
  dijkstra(net, h_.sink_vertex(net, 1), -1, true, weights, branch_[1]);

  const int U = h_.wireload();
  double best = kInf;
  VertexId best_trunk = -1, best_b0 = -1, best_b1 = -1;
  std::vector<double> suffix(U + 2);
  std::vector<int> suffix_arg(U + 2);
  for (TileId v = 0; v < h_.grid().tile_count(); ++v) {
    // Cheapest arrival at v with remaining budget >= j, smallest budget on ties.
    suffix[U + 1] = kInf;
    suffix_arg[U + 1] = -1;
    for (int a = U; a >= 0; --a) {
      const double d = forward_.at(h_.copy_vertex(v, a));
      if (d <= suffix[a + 1]) {
        suffix[a] = d;
        suffix_arg[a] = a;
      } else {
        suffix[a] = suffix[a + 1];
        suffix_arg[a] = suffix_arg[a + 1];
      }
    }
    if (!std::isfinite(suffix[0])) continue;
    for (int j = 0; j <= U; ++j) {
      const double w1 = branch_[0].at(h_.copy_vertex(v, j));
      if (!std::isfinite(w1)) continue;
      for (int k = 0; j + k <= U; ++k) {
        const double w2 = branch_[1].at(h_.copy_vertex(v, k));
        const double w0 = suffix[j + k];
        const double total = w0 + w1 + w2;
        if (total < best) {
          best = total;
          best_trunk = h_.copy_vertex(v, suffix_arg[j + k]);
          best_b0 = h_.copy_vertex(v, j);
          best_b1 = h_.copy_vertex(v, k);
        }
      }
    }
  }
  if (!std::isfinite(best)) return std::nullopt;
  ShortestRoute r;
  r.weight = best;
  r.route.segments.push_back(trace_forward(forward_, s, best_trunk));
  r.route.segments.push_back(trace_backward(branch_[0], best_b0, h_.sink_vertex(net, 0)));
  r.route.segments.push_back(trace_backward(branch_[1], best_b1, h_.sink_vertex(net, 1)));
  return r;
}

std::optional<ShortestRoute> shortest_path(const GadgetGraph& h, int net, std::span<const double> weights,
                                           SearchMethod method) {
  PathFinder pf(h);
  return pf.route(net, weights, method);
}

std::optional<ShortestRoute> solve_3pin(const GadgetGraph& h, int net, std::span<const double> weights) {
  PathFinder pf(h);
  return pf.three_pin(net, weights);
}

// ---------------------------------------------------------------------------
// Phase algorithm

double FractionalSolution::phase_bound() const {
  if (!(lambda_lb > 0.0)) return kInf;
  return 1.0 + std::log(1.0 / delta) / std::log1p(epsilon) / lambda_lb;
}

namespace {

// Resources one route consumes: per-group counts (windows included) and
// buffer/wire arc counts for the area row.
struct RouteUsage {
  std::vector<std::pair<GroupId, int>> groups;
  int buffers = 0;
  int wires = 0;
};

RouteUsage usage_of(const GadgetGraph& h, const GadgetRoute& route) {
  RouteUsage u;
  std::vector<GroupId> hits;
  for (const auto& seg : route.segments) {
    for (ArcId a : seg) {
      const GroupId g = h.arc_group(a);
      if (g < 0) continue;
      hits.push_back(g);
      if (h.arc_class(a) == ArcClass::wire) {
        ++u.wires;
      } else {
        ++u.buffers;
        const auto wins = h.tile_windows(h.groups()[g].index);
        hits.insert(hits.end(), wins.begin(), wins.end());
      }
    }
  }
  std::sort(hits.begin(), hits.end());
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    u.groups.emplace_back(hits[i], static_cast<int>(j - i));
    i = j;
  }
  return u;
}

double usage_weight(const RouteUsage& u, const DualState& d) {
  double w = 0.0;
  for (const auto& [g, c] : u.groups) w += c * d.y[g];
  return w + (d.alpha * u.buffers + d.beta * u.wires) * d.u;
}

struct NetState {
  std::map<GadgetRoute, int> index;
  std::vector<GadgetRoute> routes;
  std::vector<RouteUsage> usage;
  std::vector<long long> count;
  int cached = -1;
  double recorded = 0.0;
  std::vector<GadgetRoute> pool;

  int intern(const GadgetGraph& h, GadgetRoute r) {
    auto [it, inserted] = index.try_emplace(r, static_cast<int>(routes.size()));
    if (inserted) {
      usage.push_back(usage_of(h, r));
      routes.push_back(std::move(r));
      count.push_back(0);
    }
    return it->second;
  }
};

}  // namespace

FractionalSolution run_phases(const GadgetGraph& h, const Instance& inst, const SolverConfig& config,
                              const SolverObserver& observer) {
  const auto started = std::chrono::steady_clock::now();
  if (!(config.gamma > 0.0)) throw std::domain_error("gamma must be positive");
  if (config.phase_cap < 1) throw std::domain_error("phase cap must be at least 1");
  const double eps = config.step();
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("epsilon must lie in (0, 1)");
  const double D = config.area_budget.value_or(inst.area_budget);
  if (!(D > 0.0)) throw std::domain_error("area budget must be positive");

  FractionalSolution sol;
  sol.epsilon = eps;
  sol.area_budget = D;
  sol.delta = compute_delta(eps, config.gamma, static_cast<std::size_t>(h.active_group_count()) + 1);
  sol.duals = DualState::initial(h, inst, sol.delta, D);
  const int k = h.net_count();
  sol.flows.resize(k);
  sol.pool.resize(k);
  sol.group_usage.assign(h.groups().size(), 0.0);
  if (k == 0) return sol;

  DualState& duals = sol.duals;
  const auto& groups = h.groups();
  const double slack = 1.0 + config.gamma * eps;
  const int interval = std::max(1, config.lower_bound_interval);
  const std::size_t pool_size = static_cast<std::size_t>(std::max(1, config.pool_size));
  PathFinder finder(h);
  std::vector<NetState> nets(k);
  std::vector<double> usage(groups.size(), 0.0);
  double total_buffers = 0.0, total_wires = 0.0;

  auto compute = [&](int i) -> ShortestRoute {
    const auto w = arc_weights(h, duals);
    ++sol.path_computations;
    auto r = finder.route(i, w);
    if (!r) throw UnroutableNet(h.net_id(i));
    return std::move(*r);
  };

  auto bump = [&](double& value, double amount, double capacity) {
    if (config.update == UpdateRule::multiplicative) value *= 1.0 + eps * amount / capacity;
    else value *= std::exp(eps * amount / capacity);
    if (!std::isfinite(value)) throw std::overflow_error("dual variable overflow");
  };

  int t = 0;
  double guard = duals.guard(h);
  while (guard < 1.0 && t < config.phase_cap) {
    ++t;
    for (int i = 0; i < k; ++i) {
      NetState& ns = nets[i];
      bool reused = ns.cached >= 0;
      double current = reused ? usage_weight(ns.usage[ns.cached], duals) : 0.0;
      if (!reused || current > slack * ns.recorded) {
        ShortestRoute r = compute(i);
        ns.cached = ns.intern(h, std::move(r.route));
        ns.recorded = r.weight;
        current = usage_weight(ns.usage[ns.cached], duals);
        reused = false;
      }
      const int idx = ns.cached;
      if (observer.on_route) observer.on_route(t, i, ns.routes[idx], reused, current, ns.recorded);
      ++ns.count[idx];
      ns.pool.push_back(ns.routes[idx]);
      if (ns.pool.size() > pool_size) ns.pool.erase(ns.pool.begin());

      const RouteUsage& ru = ns.usage[idx];
      for (const auto& [g, c] : ru.groups) {
        usage[g] += c;
        bump(duals.y[g], c, groups[g].scaled);
      }
      total_buffers += ru.buffers;
      total_wires += ru.wires;
      const double area = inst.alpha * ru.buffers + inst.beta * ru.wires;
      if (finite_budget(D) && area > 0.0) bump(duals.u, area, D);
    }

    guard = duals.guard(h);
    PhaseStats st;
    st.phase = t;
    const double area_total = inst.alpha * total_buffers + inst.beta * total_wires;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (!groups[g].active()) continue;
      const double avg = usage[g] / t;
      st.lambda = std::max(st.lambda, avg / groups[g].scaled);
      if (groups[g].kind == GroupKind::buffer) st.mu = std::max(st.mu, avg / groups[g].raw_capacity);
      if (groups[g].kind == GroupKind::wire) st.nu = std::max(st.nu, avg / groups[g].raw_capacity);
    }
    if (finite_budget(D)) st.lambda = std::max(st.lambda, area_total / t / D);
    st.area = area_total / t;
    st.buffers = total_buffers / t;
    st.wirelength = total_wires / t;

    const bool last = guard >= 1.0 || t >= config.phase_cap;
    if (last || t % interval == 0) {
      // Dual bound with end-of-phase duals; the fresh paths also refresh the cache.
      double lengths = 0.0;
      for (int i = 0; i < k; ++i) {
        ShortestRoute r = compute(i);
        lengths += r.weight;
        nets[i].cached = nets[i].intern(h, std::move(r.route));
        nets[i].recorded = r.weight;
      }
      sol.lambda_lb = std::max(sol.lambda_lb, lengths / guard);
    }
    st.lambda_lb = sol.lambda_lb;
    st.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    sol.stats.push_back(st);
    if (observer.on_phase) observer.on_phase(st, duals);
  }

  sol.phases = t;
  sol.stopped_by_guard = guard >= 1.0;
  const PhaseStats& final_stats = sol.stats.back();
  sol.lambda = final_stats.lambda;
  sol.mu = final_stats.mu;
  sol.nu = final_stats.nu;
  sol.area = final_stats.area;
  sol.buffers = final_stats.buffers;
  sol.wirelength = final_stats.wirelength;
  for (std::size_t g = 0; g < groups.size(); ++g) sol.group_usage[g] = usage[g] / t;
  for (int i = 0; i < k; ++i) {
    NetState& ns = nets[i];
    for (std::size_t r = 0; r < ns.routes.size(); ++r) {
      if (ns.count[r] == 0) continue;
      sol.flows[i].push_back({ns.routes[r], static_cast<double>(ns.count[r]) / t});
    }
    sol.pool[i] = std::move(ns.pool);
  }
  return sol;
}

FlowMetrics evaluate_flows(const GadgetGraph& h, const Instance& inst,
                           const std::vector<std::vector<RouteFlow>>& flows, double area_budget) {
  FlowMetrics m;
  const auto& groups = h.groups();
  m.group_usage.assign(groups.size(), 0.0);
  for (const auto& net : flows) {
    for (const auto& rf : net) {
      for (const auto& seg : rf.route.segments) {
        for (ArcId a : seg) {
          const GroupId g = h.arc_group(a);
          if (g < 0) continue;
          m.group_usage[g] += rf.flow;
          if (h.arc_class(a) == ArcClass::wire) {
            m.area += inst.beta * rf.flow;
          } else {
            m.area += inst.alpha * rf.flow;
            for (GroupId w : h.tile_windows(groups[g].index)) m.group_usage[w] += rf.flow;
          }
        }
      }
    }
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (!groups[g].active()) continue;
    m.lambda = std::max(m.lambda, m.group_usage[g] / groups[g].scaled);
    if (groups[g].kind == GroupKind::buffer) m.mu = std::max(m.mu, m.group_usage[g] / groups[g].raw_capacity);
    if (groups[g].kind == GroupKind::wire) m.nu = std::max(m.nu, m.group_usage[g] / groups[g].raw_capacity);
  }
  if (finite_budget(area_budget)) m.lambda = std::max(m.lambda, m.area / area_budget);
  return m;
}

// ---------------------------------------------------------------------------
// Area bounds and search

double area_lower_bound(const GadgetGraph& h, const Instance& inst) {
  const auto w = area_weights(h, inst.alpha, inst.beta);
  PathFinder pf(h);
  double sum = 0.0;
  for (int i = 0; i < h.net_count(); ++i) {
    auto r = pf.route(i, w);
    if (!r) throw UnroutableNet(h.net_id(i));
    sum += r->weight;
  }
  return sum;
}

double area_upper_bound(const Instance& inst) {
  double b = 0.0, w = 0.0;
  for (TileId v = 0; v < inst.grid.tile_count(); ++v) b += inst.grid.buffer_capacity(v);
  for (EdgeId e = 0; e < inst.grid.edge_count(); ++e) w += inst.grid.wire_capacity(e);
  return inst.alpha * inst.mu0 * b + inst.beta * inst.nu0 * w;
}

namespace {

std::vector<GroupLoad> overloaded_groups(const GadgetGraph& h, const FractionalSolution& sol) {
  std::vector<GroupLoad> out;
  const auto& groups = h.groups();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (!groups[g].active()) continue;
    const double ratio = sol.group_usage[g] / groups[g].scaled;
    if (ratio > 1.0) {
      out.push_back({static_cast<GroupId>(g), groups[g].kind, groups[g].index, ratio});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const GroupLoad& a, const GroupLoad& b) { return a.ratio > b.ratio; });
  return out;
}

}  // namespace

SearchResult min_area_search(const GadgetGraph& h, const Instance& inst, const SolverConfig& config,
                             double relative_tolerance) {
  // lambda only over-estimates the optimum, so a budget counts as feasible
  // unless the dual bound proves the optimum above 1.
  auto fits = [](const FractionalSolution& s) { return s.lambda_lb <= 1.0 + 1e-9; };
  SearchResult res;
  try {
    res.d_min = area_lower_bound(h, inst);
  } catch (const UnroutableNet&) {
    const auto w = area_weights(h, inst.alpha, inst.beta);
    PathFinder pf(h);
    for (int i = 0; i < h.net_count(); ++i) {
      if (!pf.route(i, w)) res.unroutable.push_back(h.net_id(i));
    }
    return res;
  }
  res.d_max = area_upper_bound(inst);

  auto probe = [&](double d) {
    SolverConfig c = config;
    c.area_budget = d;
    ++res.probes;
    return run_phases(h, inst, c);
  };

  if (!(res.d_max > 0.0) || !(res.d_min < kInf)) {
    // Area is free (alpha = beta = 0 or no capacity at all): congestion alone decides.
    SolverConfig c = config;
    c.area_budget = kInfiniteArea;
    ++res.probes;
    res.solution = run_phases(h, inst, c);
    res.feasible = fits(res.solution);
    res.area_budget = res.d_min;
    res.witness_budget = kInfiniteArea;
    if (!res.feasible) res.certificate = overloaded_groups(h, res.solution);
    return res;
  }

  FractionalSolution at_max = probe(res.d_max);
  if (!fits(at_max)) {
    res.certificate = overloaded_groups(h, at_max);
    res.area_budget = res.d_max;
    res.witness_budget = res.d_max;
    res.solution = std::move(at_max);
    return res;
  }
  res.feasible = true;
  double lo = res.d_min;
  double hi = res.d_max;
  res.solution = std::move(at_max);
  if (lo > 0.0 && lo < hi) {
    FractionalSolution at_min = probe(lo);
    if (fits(at_min)) {
      res.area_budget = lo;
      res.witness_budget = lo;
      res.solution = std::move(at_min);
      return res;
    }
  } else if (lo >= hi) {
    res.area_budget = hi;
    res.witness_budget = hi;
    return res;
  }
  for (int iter = 0; iter < 60 && hi - lo > relative_tolerance * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    FractionalSolution s = probe(mid);
    if (fits(s)) {
      hi = mid;
      res.solution = std::move(s);
    } else {
      lo = mid;
    }
  }
  // lo is proven infeasible, so it bounds the fractional optimum from below;
  // the solution belongs to hi.
  res.area_budget = lo;
  res.witness_budget = hi;
  return res;
}

}  // namespace bgr
