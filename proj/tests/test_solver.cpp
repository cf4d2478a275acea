#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bgr/gadget.hpp"
#include "bgr/generator.hpp"
#include "bgr/oracle.hpp"
#include "bgr/random.hpp"
#include "bgr/solver.hpp"
#include "util.hpp"

using namespace bgr;

namespace {

// Weight of a brute-force routing under per-group gadget weights.
double routing_weight(const Instance& inst, const GadgetGraph& h, const BufferedRouting& r,
                      const std::vector<double>& w) {
  double sum = 0.0;
  for (const auto& b : r.buffers) sum += w[h.buffer_group(r.path[b.position]) + 1];
  for (std::size_t i = 0; i + 1 < r.path.size(); ++i) {
    sum += w[h.wire_group(*inst.grid.edge_between(r.path[i], r.path[i + 1])) + 1];
  }
  for (const auto& br : r.branches) sum += routing_weight(inst, h, br, w);
  return sum;
}

// Remaining wireload budget at the end of a routing path.
int remaining_budget(const Instance& inst, const BufferedRouting& r, int level) {
  int budget = level;
  std::size_t next = 0;
  for (std::size_t pos = 0; pos < r.path.size(); ++pos) {
    while (next < r.buffers.size() && r.buffers[next].position == static_cast<int>(pos)) {
      const auto& b = r.buffers[next++];
      budget = b.kind == BufferKind::polarity_fix ? inst.wireload : inst.buffer_types[b.type];
    }
    if (pos + 1 < r.path.size()) budget -= inst.wire_loads[r.widths[pos]];
  }
  return budget;
}

Instance with_single_net(const Instance& inst, Net net) {
  Instance out = inst;
  out.nets = {std::move(net)};
  return out;
}

// Exhaustive minimum over (branch tile, trunk routing, branch budgets).
double brute_force_3pin(const Instance& inst, const GadgetGraph& h, int net_index, const std::vector<double>& w) {
  const Net& net = inst.nets[net_index];
  double best = std::numeric_limits<double>::infinity();
  for (TileId v = 0; v < inst.grid.tile_count(); ++v) {
    Net trunk_net{net.id, net.sources, {{v}}, Polarity::unconstrained, std::nullopt, net.source_level};
    const Instance ti = with_single_net(inst, trunk_net);
    std::vector<double> branch_best[2];
    for (int g = 0; g < 2; ++g) {
      branch_best[g].assign(inst.wireload + 1, std::numeric_limits<double>::infinity());
      for (int j = 0; j <= inst.wireload; ++j) {
        Net b{net.id, {v}, {net.sinks[g]}, Polarity::unconstrained, std::nullopt, j};
        const Instance bi = with_single_net(inst, b);
        for (const auto& r : enumerate_routings(bi, 0)) {
          branch_best[g][j] = std::min(branch_best[g][j], routing_weight(inst, h, r, w));
        }
      }
    }
    for (const auto& r : enumerate_routings(ti, 0)) {
      const int a = remaining_budget(inst, r, inst.level_of(net));
      const double w0 = routing_weight(inst, h, r, w);
      for (int j = 0; j <= a; ++j) {
        for (int k = 0; j + k <= a; ++k) best = std::min(best, w0 + branch_best[0][j] + branch_best[1][k]);
      }
    }
  }
  return best;
}

std::vector<double> random_weights(const GadgetGraph& h, Rng& rng) {
  std::vector<double> w(h.groups().size() + 1, 0.0);
  for (std::size_t g = 1; g < w.size(); ++g) w[g] = 0.1 + rng.unit();
  return w;
}

Instance small_corpus_instance(std::uint64_t seed, int nets = 6) {
  GeneratorParams p;
  p.width = 4;
  p.height = 4;
  p.nets = nets;
  p.wireload = 2 + static_cast<int>(seed % 2);
  p.buffer_cap_min = 1;
  p.buffer_cap_max = 2;
  p.wire_cap_min = 1;
  p.wire_cap_max = 2;
  p.seed = seed;
  return generate_instance(p);
}

}  // namespace

TEST_CASE("compute_epsilon matches high-precision evaluation") {
  CHECK(compute_epsilon(0.21, 1.0) == doctest::Approx(0.0078176734621339).epsilon(1e-12));
  CHECK(compute_epsilon(3.0, 10.0) == doctest::Approx(0.051574868503975).epsilon(1e-12));
  CHECK(compute_epsilon(0.5, 1.0) == doctest::Approx(0.016336183703983).epsilon(1e-12));
  CHECK(compute_epsilon(1e-9, 1.0) < 1e-9);
  CHECK(compute_epsilon(1e-9, 1.0) > 0.0);
  CHECK_THROWS_AS(compute_epsilon(0.0, 1.0), std::domain_error);
}

TEST_CASE("compute_delta") {
  CHECK(compute_delta(0.1, 1.0, 10) == doctest::Approx(1.87342077167e-9).epsilon(1e-9));
  CHECK(delta_from_prime(0.5, 2) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(compute_delta(0.3, 1.0, 97) == doctest::Approx(2.98877664965e-5).epsilon(1e-9));
  CHECK_THROWS_AS(compute_delta(0.5, 1.0, 10), std::domain_error);
  CHECK_THROWS_AS(delta_from_prime(1.0, 10), std::domain_error);
}

TEST_CASE("path_weight") {
  const Instance inst = testutil::parse(
      "GRID 2 2\nU 2\nD 10\nWINDOW 3 (1,0) (1,1)\nNET a SRC (0,0) SINK (0,0)\nNET b SRC (0,0) SINK (1,1)\n");
  const GadgetGraph h = GadgetGraph::build(inst);

  DualState d = DualState::initial(h, inst, 0.01, inst.area_budget);
  const auto w = arc_weights(h, d);
  const auto single = shortest_path(h, 0, w);
  REQUIRE(single);
  CHECK(single->weight == 0.0);
  CHECK(path_weight(h, single->route.segments[0], w) == 0.0);

  // Uniform duals and no area dual: 2 buffer arcs and 3 wire arcs weigh 5 units.
  DualState uniform = d;
  std::fill(uniform.y.begin(), uniform.y.end(), 0.25);
  uniform.u = 0.0;
  for (std::size_t g = 0; g < uniform.y.size(); ++g) {
    if (h.groups()[g].kind == GroupKind::window) uniform.y[g] = 0.0;
  }
  const auto uw = arc_weights(h, uniform);
  std::vector<ArcId> arcs;
  for (ArcId a = 0; a < h.arc_count() && arcs.size() < 5; ++a) {
    const auto c = h.arc_class(a);
    const long nb = std::count_if(arcs.begin(), arcs.end(), [&](ArcId x) { return h.arc_class(x) == ArcClass::buffer; });
    if (c == ArcClass::buffer && nb < 2) arcs.push_back(a);
    else if (c == ArcClass::wire && static_cast<long>(arcs.size()) - nb < 3) arcs.push_back(a);
  }
  CHECK(path_weight(h, arcs, uw) == doctest::Approx(5 * 0.25));

  // A buffer arc in a window tile adds the window dual and alpha * u.
  DualState dw = d;
  dw.y[h.buffer_group(1)] = 0.5;
  dw.y[h.window_group(0)] = 0.125;
  dw.u = 0.0625;
  dw.alpha = 2.0;
  const auto ww = arc_weights(h, dw);
  CHECK(ww[h.buffer_group(1) + 1] == 0.5 + 0.125 + 2.0 * 0.0625);
  CHECK(ww[h.buffer_group(0) + 1] == dw.y[h.buffer_group(0)] + 2.0 * 0.0625);
  CHECK(ww[h.wire_group(0) + 1] == dw.y[h.wire_group(0)] + 1.0 * 0.0625);
}

TEST_CASE("initial duals and guard") {
  const Instance inst = testutil::parse("GRID 2 2\nU 2\nD 8\nNET a SRC (0,0) SINK (1,1)\n", 2, 3);
  const GadgetGraph h = GadgetGraph::build(inst);
  const DualState d = DualState::initial(h, inst, 1e-3, 8.0);
  CHECK(d.y[h.buffer_group(0)] == doctest::Approx(1e-3 / 2));
  CHECK(d.y[h.wire_group(0)] == doctest::Approx(1e-3 / 3));
  CHECK(d.u == doctest::Approx(1e-3 / 8));
  CHECK(d.guard(h) == doctest::Approx(9 * 1e-3));
  const DualState inf = DualState::initial(h, inst, 1e-3, kInfiniteArea);
  CHECK(inf.u == 0.0);
}

TEST_CASE("shortest path examples") {
  {
    const Instance inst = testutil::parse("GRID 1 2\nU 1\nNET a SRC (0,0) SINK (0,1)\n");
    const GadgetGraph h = GadgetGraph::build(inst);
    DualState d = DualState::initial(h, inst, 0.1, kInfiniteArea);
    const auto w = arc_weights(h, d);
    const auto r = shortest_path(h, 0, w);
    REQUIRE(r);
    CHECK(r->weight == doctest::Approx(0.1));
    const BufferedRouting br = decode_route(h, r->route);
    CHECK(br.path == std::vector<TileId>{0, 1});
    CHECK(br.buffers.empty());
  }
  {
    const Instance inst = testutil::parse("GRID 3 1\nU 1\nNET a SRC (0,0) SINK (2,0)\n");
    const GadgetGraph h = GadgetGraph::build(inst);
    const auto w = arc_weights(h, DualState::initial(h, inst, 0.1, kInfiniteArea));
    const auto r = shortest_path(h, 0, w);
    REQUIRE(r);
    const BufferedRouting br = decode_route(h, r->route);
    REQUIRE(br.buffers.size() == 1);
    CHECK(br.path[br.buffers[0].position] == 1);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : enumerate_routings(inst, 0)) best = std::min(best, routing_weight(inst, h, e, w));
    CHECK(r->weight == doctest::Approx(best));
  }
  {
    const Instance inst = testutil::parse("GRID 3 1\nU 1\nNET a SRC (0,0) SINK (2,0) DELAY 0\n");
    const GadgetGraph h = GadgetGraph::build(inst);
    const auto w = arc_weights(h, DualState::initial(h, inst, 0.1, kInfiniteArea));
    CHECK_FALSE(shortest_path(h, 0, w));
    CHECK_THROWS_AS(run_phases(h, inst, SolverConfig::practical()), UnroutableNet);
  }
}

TEST_CASE("shortest path agrees with brute force") {
  Rng rng(99);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GeneratorParams p;
    p.width = 3;
    p.height = 3;
    p.nets = 2;
    p.wireload = 1 + static_cast<int>(seed % 3);
    p.buffer_cap_min = 0;
    p.buffer_cap_max = 2;
    p.seed = seed;
    p.pin_tiles = seed % 2 ? 2 : 1;
    p.inverting = seed % 4 == 0;
    p.polarity_fraction = 1.0;
    p.buffer_sizing = seed % 5 == 0;
    p.wire_sizing = seed % 3 == 0;
    p.delay_fraction = seed % 7 == 0 ? 1.0 : 0.0;
    const Instance inst = generate_instance(p);
    const GadgetGraph h = GadgetGraph::build(inst);
    const auto area_w = area_weights(h, 0.5 + rng.unit(), 0.5 + rng.unit());
    const auto dual_w = random_weights(h, rng);
    for (int i = 0; i < h.net_count(); ++i) {
      const auto routings = enumerate_routings(inst, i);
      double best_area = std::numeric_limits<double>::infinity();
      double best_dual = std::numeric_limits<double>::infinity();
      for (const auto& r : routings) {
        best_area = std::min(best_area, routing_weight(inst, h, r, area_w));
        best_dual = std::min(best_dual, routing_weight(inst, h, r, dual_w));
      }
      const auto sa = shortest_path(h, i, area_w);
      const auto sd = shortest_path(h, i, dual_w);
      CAPTURE(seed);
      REQUIRE(sa.has_value() == !routings.empty());
      if (!sa) continue;
      CHECK(sa->weight == doctest::Approx(best_area).epsilon(1e-12));
      // Walks that revisit a tile may beat every simple routing under uneven weights.
      CHECK(sd->weight <= best_dual + 1e-12);
      CHECK(route_weight(h, sd->route, dual_w) == doctest::Approx(sd->weight).epsilon(1e-12));
      decode_route(h, sd->route);
    }
  }
}

TEST_CASE("topological search equals Dijkstra in delay mode") {
  Rng rng(5);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorParams p;
    p.width = 5;
    p.height = 5;
    p.nets = 4;
    p.wireload = 2;
    p.delay_fraction = 0.75;
    p.seed = seed;
    const Instance inst = generate_instance(p);
    const GadgetGraph h = GadgetGraph::build(inst);
    REQUIRE(h.acyclic());
    const auto w = random_weights(h, rng);
    for (int i = 0; i < h.net_count(); ++i) {
      const auto a = shortest_path(h, i, w, SearchMethod::dijkstra);
      const auto b = shortest_path(h, i, w, SearchMethod::topological);
      REQUIRE(a.has_value() == b.has_value());
      if (a) CHECK(a->weight == b->weight);
    }
  }
}

TEST_CASE("3-pin examples") {
  {
    const Instance inst = testutil::parse("GRID 1 1\nU 1\nNET a SRC (0,0) SINK (0,0) SINK2 (0,0)\n");
    const GadgetGraph h = GadgetGraph::build(inst);
    const auto r = solve_3pin(h, 0, area_weights(h, 1, 1));
    REQUIRE(r);
    CHECK(r->weight == 0.0);
    REQUIRE(r->route.segments.size() == 3);
    for (const auto& seg : r->route.segments) CHECK(seg.size() == 1);
  }
  {
    const Instance inst = testutil::parse("GRID 3 1\nU 2\nNET a SRC (1,0) SINK (0,0) SINK2 (2,0)\n");
    const GadgetGraph h = GadgetGraph::build(inst);
    const auto r = solve_3pin(h, 0, area_weights(h, 1, 1));
    REQUIRE(r);
    CHECK(r->weight == 2.0);
    const BufferedRouting br = decode_route(h, r->route);
    CHECK(br.path == std::vector<TileId>{1});
    CHECK(br.buffers.empty());
    REQUIRE(br.branches.size() == 2);
    CHECK(br.branches[0].path == std::vector<TileId>{1, 0});
    CHECK(br.branches[1].path == std::vector<TileId>{1, 2});
    CHECK(h.copy_state(h.tail(r->route.segments[1].front())).budget == 1);
    CHECK(h.copy_state(h.tail(r->route.segments[2].front())).budget == 1);
  }
  {
    const Instance inst = testutil::parse("GRID 3 1\nU 1\nNET a SRC (1,0) SINK (0,0) SINK2 (2,0)\n");
    const GadgetGraph h = GadgetGraph::build(inst);
    const auto r = solve_3pin(h, 0, area_weights(h, 1, 1));
    REQUIRE(r);
    CHECK(r->weight == 3.0);
    const BufferedRouting br = decode_route(h, r->route);
    int buffers = static_cast<int>(br.buffers.size());
    for (const auto& b : br.branches) {
      buffers += static_cast<int>(b.buffers.size());
      for (const auto& p : b.buffers) CHECK(b.path[p.position] == 1);
    }
    CHECK(buffers == 1);
  }
  {
    const Instance inst = testutil::parse("GRID 2 1\nU 1\nINVERTING 1\nNET a SRC (0,0) SINK (1,0) SINK2 (0,0)\n");
    const GadgetGraph h = GadgetGraph::build(inst);
    CHECK_THROWS_AS(solve_3pin(h, 0, area_weights(h, 1, 1)), std::invalid_argument);
  }
}

TEST_CASE("3-pin subroutine matches exhaustive search") {
  Rng rng(17);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    GeneratorParams p;
    p.width = 3;
    p.height = 2 + static_cast<int>(seed % 2);
    p.nets = 1;
    p.wireload = 1 + static_cast<int>(seed % 3);
    p.buffer_cap_min = 0;
    p.buffer_cap_max = 1;
    p.three_pin_fraction = 1.0;
    p.buffer_sizing = seed % 4 == 0;
    p.seed = seed;
    const Instance inst = generate_instance(p);
    const GadgetGraph h = GadgetGraph::build(inst);
    const auto w = area_weights(h, 0.5 + rng.unit(), 0.5 + rng.unit());
    const auto r = solve_3pin(h, 0, w);
    const double brute = brute_force_3pin(inst, h, 0, w);
    CAPTURE(seed);
    REQUIRE(r.has_value() == std::isfinite(brute));
    if (!r) continue;
    CHECK(r->weight == doctest::Approx(brute).epsilon(1e-12));
    CHECK(route_weight(h, r->route, w) == doctest::Approx(r->weight).epsilon(1e-12));
    const BufferedRouting br = decode_route(h, r->route);
    // Branch-point load rule.
    const int a = remaining_budget(inst, br, inst.level_of(inst.nets[0]));
    const int j = h.copy_state(h.tail(r->route.segments[1].front())).budget;
    const int k = h.copy_state(h.tail(r->route.segments[2].front())).budget;
    CHECK(j + k <= a);
  }
}

TEST_CASE("single net with ample capacity routes its minimum-area path") {
  const Instance inst = testutil::parse("GRID 4 1\nU 2\nNET a SRC (0,0) SINK (3,0)\n", 100, 100);
  const GadgetGraph h = GadgetGraph::build(inst);
  const FractionalSolution sol = run_phases(h, inst, SolverConfig::practical(0.3, 1));
  REQUIRE(sol.flows[0].size() == 1);
  CHECK(sol.flows[0][0].flow == 1.0);
  const BufferedRouting r = decode_route(h, sol.flows[0][0].route);
  const std::vector<BufferedRouting> rs{r};
  CHECK(area(rs, inst.alpha, inst.beta) == area_lower_bound(h, inst));
  CHECK(sol.lambda == doctest::Approx(1.0 / 100));
  CHECK(sol.lambda_lb > 0.0);
  CHECK(sol.lambda_lb <= sol.lambda);
}

TEST_CASE("forced routings keep flow 1 regardless of epsilon") {
  const Instance inst = testutil::parse(
      "GRID 3 1\nU 2\nDEFAULT BUFCAP 0\nNET a SRC (0,0) SINK (2,0)\nNET b SRC (1,0) SINK (2,0)\nNET c SRC (0,0) SINK (1,0)\n",
      0, 2);
  const GadgetGraph h = GadgetGraph::build(inst);
  for (double eps : {0.05, 0.3, 0.45}) {
    const FractionalSolution sol = run_phases(h, inst, SolverConfig::practical(eps, 20));
    for (int i = 0; i < 3; ++i) {
      REQUIRE(sol.flows[i].size() == 1);
      CHECK(sol.flows[i][0].flow == 1.0);
    }
    CHECK(sol.lambda == 1.0);
  }
}

TEST_CASE("empty netlist returns immediately") {
  const Instance inst = testutil::parse("GRID 2 2\nU 1\n");
  const GadgetGraph h = GadgetGraph::build(inst);
  const FractionalSolution sol = run_phases(h, inst, SolverConfig::practical());
  CHECK(sol.phases == 0);
  CHECK(sol.flows.empty());
  CHECK(sol.lambda == 0.0);
}

TEST_CASE("phase algorithm invariants") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Instance inst = small_corpus_instance(seed, 8);
    if (seed % 2 == 0) inst.area_budget = area_upper_bound(inst);
    const GadgetGraph h = GadgetGraph::build(inst);
    SolverConfig cfg = SolverConfig::practical(0.3, 32);
    cfg.update = seed % 3 == 0 ? UpdateRule::exponential : UpdateRule::multiplicative;
    const double slack = 1.0 + cfg.gamma * cfg.epsilon;

    std::vector<double> previous;
    double previous_u = 0.0;
    bool monotone = true;
    bool fresh_enough = true;
    SolverObserver obs;
    obs.on_phase = [&](const PhaseStats&, const DualState& d) {
      if (!previous.empty()) {
        for (std::size_t g = 0; g < d.y.size(); ++g) monotone = monotone && d.y[g] >= previous[g];
        monotone = monotone && d.u >= previous_u;
      }
      previous = d.y;
      previous_u = d.u;
    };
    obs.on_route = [&](int, int, const GadgetRoute&, bool reused, double weight, double recorded) {
      if (reused) fresh_enough = fresh_enough && weight <= slack * recorded * (1 + 1e-12);
    };
    const FractionalSolution sol = run_phases(h, inst, cfg, obs);
    CAPTURE(seed);
    CHECK(monotone);
    CHECK(fresh_enough);
    CHECK(sol.lambda_lb <= sol.lambda);
    CHECK(sol.lambda_lb > 0.0);
    for (const auto& net : sol.flows) {
      double sum = 0.0;
      for (const auto& rf : net) {
        CHECK(rf.flow > 0.0);
        sum += rf.flow;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
    const FlowMetrics m = evaluate_flows(h, inst, sol.flows, sol.area_budget);
    CHECK(std::abs(m.lambda - sol.lambda) <= 1e-9);
    CHECK(std::abs(m.area - sol.area) <= 1e-9 * std::max(1.0, sol.area));
    CHECK(std::abs(m.mu - sol.mu) <= 1e-9);
    CHECK(std::abs(m.nu - sol.nu) <= 1e-9);
    for (const auto& pool : sol.pool) CHECK(pool.size() == 5);
    CHECK(sol.stats.size() == static_cast<std::size_t>(sol.phases));

    const FractionalSolution again = run_phases(h, inst, cfg);
    CHECK(again.lambda == sol.lambda);
    CHECK(again.lambda_lb == sol.lambda_lb);
    REQUIRE(again.flows.size() == sol.flows.size());
    for (std::size_t i = 0; i < sol.flows.size(); ++i) {
      REQUIRE(again.flows[i].size() == sol.flows[i].size());
      for (std::size_t r = 0; r < sol.flows[i].size(); ++r) {
        CHECK(again.flows[i][r].route == sol.flows[i][r].route);
        CHECK(again.flows[i][r].flow == sol.flows[i][r].flow);
      }
    }
  }
}

TEST_CASE("theory mode certificate and phase bound") {
  const Instance inst = small_corpus_instance(4, 5);
  const GadgetGraph h = GadgetGraph::build(inst);
  const SolverConfig cfg = SolverConfig::theory(0.5);
  const FractionalSolution sol = run_phases(h, inst, cfg);
  CHECK(sol.stopped_by_guard);
  CHECK(sol.epsilon == doctest::Approx(0.016336183703983));
  CHECK(sol.lambda / sol.lambda_lb <= 1.5);
  CHECK(sol.phases <= sol.phase_bound());
}

TEST_CASE("area bounds") {
  {
    Instance inst = testutil::parse("GRID 1 2\nU 1\nALPHA 0\nBETA 1\nNET a SRC (0,0) SINK (0,1)\n");
    CHECK(area_lower_bound(GadgetGraph::build(inst), inst) == 1.0);
  }
  for (int U = 1; U <= 4; ++U) {
    const Instance inst = testutil::parse("GRID " + std::to_string(U + 2) + " 1\nU " + std::to_string(U) +
                                          "\nNET a SRC (0,0) SINK (" + std::to_string(U + 1) + ",0)\n");
    CHECK(area_lower_bound(GadgetGraph::build(inst), inst) == U + 2);
  }
  {
    const Instance inst = testutil::parse("GRID 3 1\nU 1\nALPHA 0\nBETA 0\nNET a SRC (0,0) SINK (2,0)\n");
    CHECK(area_lower_bound(GadgetGraph::build(inst), inst) == 0.0);
  }
  {
    Instance inst = testutil::parse("GRID 2 2\nU 1\n");
    CHECK(area_upper_bound(inst) == 8.0);
    inst.mu0 = 0.5;
    CHECK(area_upper_bound(inst) == 6.0);
  }
  {
    Instance inst = parse_instance("GRID 1 1\nU 1\nALPHA 1\nBETA 0\nBUFCAP 0 0 32780\n");
    CHECK(area_upper_bound(inst) == 32780.0);
  }
}

TEST_CASE("min-area search") {
  SUBCASE("forced routings give D* = D_min") {
    const Instance inst = testutil::parse(
        "GRID 3 1\nU 2\nNET a SRC (0,0) SINK (2,0)\nNET b SRC (1,0) SINK (2,0)\n", 0, 2);
    const GadgetGraph h = GadgetGraph::build(inst);
    const SearchResult r = min_area_search(h, inst, SolverConfig::practical());
    CHECK(r.feasible);
    CHECK(r.d_min == 3.0);
    CHECK(r.area_budget == r.d_min);
  }
  SUBCASE("a zero-capacity cut makes the instance infeasible") {
    const Instance inst = parse_instance(
        "GRID 3 1\nU 2\nDEFAULT BUFCAP 1\nDEFAULT WIRECAP 1\nWIRECAP 1 0 2 0 0\n"
        "NET a SRC (0,0) SINK (1,0)\nNET b SRC (0,0) SINK (2,0)\n");
    const GadgetGraph h = GadgetGraph::build(inst);
    const SearchResult r = min_area_search(h, inst, SolverConfig::practical());
    CHECK_FALSE(r.feasible);
    CHECK(r.unroutable == std::vector<std::string>{"b"});
  }
  SUBCASE("overloaded groups are named") {
    const Instance inst = testutil::parse(
        "GRID 2 1\nU 1\nNET a SRC (0,0) SINK (1,0)\nNET b SRC (0,0) SINK (1,0)\nNET c SRC (0,0) SINK (1,0)\n", 1, 2);
    const GadgetGraph h = GadgetGraph::build(inst);
    const SearchResult r = min_area_search(h, inst, SolverConfig::practical());
    CHECK_FALSE(r.feasible);
    REQUIRE_FALSE(r.certificate.empty());
    CHECK(r.certificate[0].kind == GroupKind::wire);
    CHECK(r.certificate[0].ratio == doctest::Approx(1.5));
  }
  SUBCASE("bisection brackets the smallest feasible budget") {
    const Instance inst = small_corpus_instance(3, 6);
    const GadgetGraph h = GadgetGraph::build(inst);
    const SearchResult r = min_area_search(h, inst, SolverConfig::practical());
    REQUIRE(r.feasible);
    CHECK(r.area_budget >= r.d_min);
    CHECK(r.area_budget <= r.d_max);
    CHECK(r.solution.lambda_lb <= 1.0);
    CHECK(r.witness_budget >= r.area_budget);
    CHECK(r.witness_budget - r.area_budget <= 0.01 * r.witness_budget);
    CHECK(r.solution.area <= r.witness_budget * r.solution.lambda * (1 + 1e-9));
  }
}
