#include <doctest.h>

#include "bgr/gadget.hpp"
#include "bgr/generator.hpp"
#include "bgr/io.hpp"
#include "bgr/oracle.hpp"
#include "bgr/rounding.hpp"
#include "bgr/verify.hpp"
#include "util.hpp"

using namespace bgr;

namespace {

std::vector<BufferedRouting> solve_and_round(const Instance& inst, std::uint64_t seed) {
  const GadgetGraph h = GadgetGraph::build(inst);
  const FractionalSolution sol = run_phases(h, inst, SolverConfig::practical(0.3, 12));
  RoundingConfig cfg;
  cfg.trials = 200;
  cfg.seed = seed;
  return round_pool(h, inst, sol.pool, cfg).routings;
}

bool mentions(const VerifyReport& r, const std::string& what) {
  for (const auto& v : r.violations) {
    if (v.find(what) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("every enumerated routing passes verification") {
  const char* bodies[] = {
      "GRID 3 2\nU 2\nNET a SRC (0,0) SINK (2,1)\n",
      "GRID 3 2\nU 1\nNET a SRC (0,0) SINK (2,0)\n",
      "GRID 3 2\nU 2\nINVERTING 1\nNET a SRC (0,0) SINK (2,1) POL -\n",
      "GRID 3 2\nU 3\nBUFTYPES 3 2\nWIRELOADS 1 2\nNET a SRC (0,0) SINK (2,1) LEVEL 2\n",
      "GRID 3 2\nU 1\nNET a SRC (0,0) SINK (2,0) DELAY 1\n",
  };
  for (const char* body : bodies) {
    const Instance inst = testutil::parse(body);
    const auto routings = enumerate_routings(inst, 0, 0, inst.nets[0].delay_bound);
    REQUIRE_FALSE(routings.empty());
    for (const auto& r : routings) {
      const VerifyReport rep = verify_routings(inst, {r});
      CHECK(rep.ok());
      if (!rep.ok()) MESSAGE(rep.violations.front());
    }
  }
}

TEST_CASE("verification reproduces congestion and area") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    GeneratorParams gp;
    gp.width = 5;
    gp.height = 5;
    gp.nets = 10;
    gp.seed = seed;
    gp.pin_tiles = 3;
    gp.inverting = seed % 2 == 0;
    gp.polarity_fraction = gp.inverting ? 0.5 : 0.0;
    gp.wire_sizing = seed % 3 == 0;
    gp.buffer_sizing = seed % 3 == 1;
    gp.delay_fraction = seed % 2 == 1 ? 0.4 : 0.0;
    gp.windows = 2;
    const Instance inst = generate_instance(gp);
    const auto routings = solve_and_round(inst, seed);
    const VerifyReport rep = verify_routings(inst, routings);
    CHECK(rep.ok());
    const Congestion c = congestion(routings, inst.grid);
    CHECK(rep.mu == c.mu);
    CHECK(rep.nu == c.nu);
    CHECK(rep.area == area(routings, inst.alpha, inst.beta));
    CHECK(rep.wirelength == wirelength(routings));
    CHECK(rep.buffers == buffer_count(routings));
  }
}

TEST_CASE("3-pin routings pass verification") {
  GeneratorParams gp;
  gp.width = 5;
  gp.height = 5;
  gp.nets = 8;
  gp.seed = 11;
  gp.three_pin_fraction = 0.6;
  const Instance inst = generate_instance(gp);
  const auto routings = solve_and_round(inst, 1);
  CHECK(verify_routings(inst, routings).ok());
}

TEST_CASE("corrupted routings are rejected") {
  const Instance inst = testutil::parse(
      "GRID 4 1\nU 1\nINVERTING 1\nNET a SRC (0,0) SINK (3,0) POL -\nNET b SRC (0,0) SINK (1,0) DELAY 0\n");
  const auto as = enumerate_routings(inst, 0, 0, 5);
  REQUIRE_FALSE(as.empty());
  const BufferedRouting a = as.front();
  const BufferedRouting b{"b", {0, 1}, {}, {0}, {}};
  REQUIRE(verify_routings(inst, {a, b}).ok());

  SUBCASE("buffer removed") {
    BufferedRouting x = a;
    x.buffers.erase(x.buffers.begin());
    CHECK(mentions(verify_routings(inst, {x, b}), "wireload"));
  }
  SUBCASE("parity broken") {
    // two more inverters at the sink keep the wireload but not the parity
    BufferedRouting x = a;
    x.buffers.push_back({3, 0, true, BufferKind::buffer});
    CHECK(mentions(verify_routings(inst, {x, b}), "inversions"));
  }
  SUBCASE("delay bound") {
    BufferedRouting x = b;
    x.buffers.push_back({0, 0, true, BufferKind::buffer});
    CHECK(mentions(verify_routings(inst, {a, x}), "delay"));
  }
  SUBCASE("teleport") {
    BufferedRouting x = b;
    x.path = {0, 2};
    CHECK(mentions(verify_routings(inst, {a, x}), "adjacent"));
  }
  SUBCASE("wrong pins") {
    BufferedRouting x = b;
    x.path = {1, 2};
    const auto rep = verify_routings(inst, {a, x});
    CHECK(mentions(rep, "source"));
    CHECK(mentions(rep, "sink"));
  }
  SUBCASE("missing, duplicated and unknown nets") {
    CHECK(mentions(verify_routings(inst, {a}), "no routing"));
    CHECK(mentions(verify_routings(inst, {a, b, b}), "more than once"));
    BufferedRouting x = b;
    x.net = "zz";
    CHECK(mentions(verify_routings(inst, {a, b, x}), "not in the instance"));
  }
  SUBCASE("resources that do not exist") {
    const Instance bare = testutil::parse("GRID 2 1\nU 1\nNET b SRC (0,0) SINK (1,0)\n", 0, 0);
    const auto rep = verify_routings(bare, {BufferedRouting{"b", {0, 1}, {{0, 0, false, BufferKind::buffer}}, {0}, {}}});
    CHECK(mentions(rep, "without buffer sites"));
    CHECK(mentions(rep, "without capacity"));
  }
}

TEST_CASE("3-pin branches share the remaining budget") {
  const Instance inst = testutil::parse("GRID 3 3\nU 2\nNET a SRC (0,1) SINK (2,1) SINK2 (1,2)\n");
  // trunk (0,1)->(1,1) leaves budget 1; each branch needs 1
  const auto& g = inst.grid;
  BufferedRouting r{"a", {g.id(0, 1), g.id(1, 1)}, {}, {0}, {}};
  r.branches.push_back({"a", {g.id(1, 1), g.id(2, 1)}, {}, {0}, {}});
  r.branches.push_back({"a", {g.id(1, 1), g.id(1, 2)}, {}, {0}, {}});
  CHECK(mentions(verify_routings(inst, {r}), "branches exceed"));
  r.branches[1].buffers.push_back({0, 0, false, BufferKind::buffer});
  CHECK(verify_routings(inst, {r}).ok());
}

TEST_CASE("routing JSON round trip") {
  GeneratorParams gp;
  gp.width = 5;
  gp.height = 4;
  gp.nets = 8;
  gp.seed = 5;
  gp.three_pin_fraction = 0.4;
  const Instance inst = generate_instance(gp);
  const auto routings = solve_and_round(inst, 3);
  const std::string text = routings_to_json(inst, routings);
  const RoutingFile f = routings_from_json(inst, text);
  CHECK(f.instance_digest == instance_digest(inst));
  CHECK(f.routings == routings);
  CHECK(routings_to_json(inst, f.routings) == text);
  CHECK_THROWS_AS(routings_from_json(inst, "{"), FormatError);
  CHECK_THROWS_AS(routings_from_json(inst, R"({"routings":[{"net":"a","path":[[9,9]],"widths":[],"buffers":[]}]})"),
                  FormatError);
}

TEST_CASE("fractional dump round trip") {
  GeneratorParams gp;
  gp.seed = 9;
  const Instance inst = generate_instance(gp);
  const GadgetGraph h = GadgetGraph::build(inst);
  const FractionalSolution sol = run_phases(h, inst, SolverConfig::practical(0.3, 9));
  FractionalDump d;
  d.instance_digest = instance_digest(inst);
  d.decompose = "star";
  d.lambda = sol.lambda;
  d.lambda_lb = sol.lambda_lb;
  d.phases = sol.phases;
  d.flows = sol.flows;
  d.pool = sol.pool;
  const std::string text = fractional_to_json(d);
  const FractionalDump back = fractional_from_json(text);
  CHECK(back.lambda == d.lambda);
  CHECK(back.lambda_lb == d.lambda_lb);
  CHECK(back.pool == d.pool);
  REQUIRE(back.flows.size() == d.flows.size());
  for (std::size_t i = 0; i < d.flows.size(); ++i) {
    REQUIRE(back.flows[i].size() == d.flows[i].size());
    for (std::size_t j = 0; j < d.flows[i].size(); ++j) {
      CHECK(back.flows[i][j].flow == d.flows[i][j].flow);
      CHECK(back.flows[i][j].route == d.flows[i][j].route);
    }
  }
  CHECK(fractional_to_json(back) == text);

  std::string old = text;
  old.replace(old.find("\"version\":1"), 11, "\"version\":7");
  CHECK_THROWS_AS(fractional_from_json(old), FormatError);
}

TEST_CASE("CSV tables") {
  PhaseStats s;
  s.phase = 1;
  s.lambda = 0.5;
  s.elapsed = 3.25;
  const std::string plain = phase_csv({s}, false);
  CHECK(plain == "phase,lambda,lambda_lb,mu,nu,area,buffers,wirelength\n1,0.5,0,0,0,0,0,0\n");
  CHECK(phase_csv({s}, true).find(",3.25\n") != std::string::npos);
  TradeoffSample t;
  t.mu0 = 1;
  t.nu0 = 2;
  t.feasible = true;
  CHECK(tradeoff_csv({t}) == "mu0,nu0,feasible,mu,nu,d_star,area,lambda,boundary\n1,2,1,0,0,0,0,0,0\n");
}
