#include <doctest.h>

#include "bgr/generator.hpp"
#include "bgr/tradeoff.hpp"
#include "util.hpp"

using namespace bgr;

namespace {

const char* kForced =
    "GRID 3 1\nU 2\nNET a SRC (0,0) SINK (2,0)\nNET b SRC (1,0) SINK (2,0)\nNET c SRC (0,0) SINK (1,0)\n";

TradeoffSample sample(double mu0, double nu0, double d) {
  TradeoffSample s;
  s.mu0 = mu0;
  s.nu0 = nu0;
  s.feasible = true;
  s.area_budget = d;
  return s;
}

}  // namespace

TEST_CASE("feasible region") {
  SUBCASE("forced routing gives a single point") {
    const Instance inst = testutil::parse(kForced, 0, 2);
    const auto region = feasible_region(inst, SolverConfig::practical(0.3, 16), 5);
    REQUIRE(region.size() == 5);
    for (const auto& p : region) {
      CHECK(p.feasible);
      CHECK(p.mu == 0.0);
      CHECK(p.nu == 1.0);
      CHECK(p.mu0 > 0.0);
      CHECK(p.nu0 > 0.0);
    }
    // doubling every capacity halves the coordinates
    const Instance wide = testutil::parse(kForced, 0, 4);
    for (const auto& p : feasible_region(wide, SolverConfig::practical(0.3, 16), 5)) CHECK(p.nu == 0.5);
  }
  SUBCASE("empty netlist is the origin") {
    const Instance inst = testutil::parse("GRID 2 2\nU 1\n");
    for (const auto& p : feasible_region(inst, SolverConfig::practical(), 3)) {
      CHECK(p.feasible);
      CHECK(p.mu == 0.0);
      CHECK(p.nu == 0.0);
    }
  }
  SUBCASE("unroutable nets are flagged") {
    const Instance inst = testutil::parse("GRID 3 1\nU 1\nNET a SRC (0,0) SINK (2,0)\n", 0, 1);
    for (const auto& p : feasible_region(inst, SolverConfig::practical(), 2)) CHECK_FALSE(p.feasible);
  }
}

TEST_CASE("sweep grid") {
  const auto g = sweep_grid(1.0, 2.0, 0.5, 1.5, 3);
  REQUIRE(g.size() == 9);
  CHECK(g[0].mu0 == 1.0);
  CHECK(g[0].nu0 == 0.5);
  CHECK(g[1].nu0 == 1.0);
  CHECK(g[8].mu0 == 2.0);
  CHECK(g[8].nu0 == 1.5);
}

TEST_CASE("tradeoff curve of a single-routing instance") {
  const Instance inst = testutil::parse(kForced, 0, 2);
  const auto samples = tradeoff_curve(inst, sweep_grid(1.0, 2.0, 1.0, 2.0, 3), SolverConfig::practical(0.3, 16));
  REQUIRE(samples.size() == 9);
  for (const auto& s : samples) {
    CHECK(s.feasible);
    CHECK(s.area_budget == 4.0);
    CHECK(s.area == 4.0);
    CHECK_FALSE(s.boundary);
  }
  CHECK(convexity_check(samples, 0.0).empty());
  CHECK(monotonicity_check(samples, 0.0).empty());

  // tighter than the forced usage
  const auto tight = tradeoff_curve(inst, {{1.0, 0.5}}, SolverConfig::practical(0.3, 16));
  CHECK_FALSE(tight[0].feasible);
}

TEST_CASE("convexity check") {
  SUBCASE("identical samples") {
    std::vector<TradeoffSample> s{sample(1, 1, 5), sample(1, 1, 5), sample(1, 1, 5)};
    CHECK(convexity_check(s, 0.0).empty());
  }
  SUBCASE("collinear samples") {
    std::vector<TradeoffSample> s{sample(1, 1, 9), sample(2, 2, 6), sample(3, 3, 3)};
    CHECK(convexity_check(s, 0.0).empty());
  }
  SUBCASE("concave triple is flagged") {
    std::vector<TradeoffSample> s{sample(1, 1, 2), sample(2, 2, 10), sample(3, 3, 2)};
    const auto v = convexity_check(s, tradeoff_slack(s, 0.5));
    REQUIRE(v.size() == 1);
    CHECK(v[0].first == 0);
    CHECK(v[0].second == 2);
    CHECK(v[0].other == 1);
    CHECK(v[0].excess == doctest::Approx(10 - 2 - 0.51 * 10));
    CHECK(convexity_check(s, 8.0).empty());
  }
}

TEST_CASE("monotonicity check") {
  std::vector<TradeoffSample> s{sample(1, 1, 5), sample(2, 1, 4), sample(2, 2, 6)};
  const auto v = monotonicity_check(s, 0.0);
  REQUIRE(v.size() == 2);
  CHECK(v[0].first == 0);
  CHECK(v[0].second == 2);
  CHECK(v[1].first == 1);
  CHECK(v[1].second == 2);
  CHECK(monotonicity_check(s, 2.0).empty());
  s[2].feasible = false;
  CHECK(monotonicity_check(s, 100.0).size() == 2);
}

TEST_CASE("solver sweep keeps achieved congestion within the bounds") {
  GeneratorParams gp;
  gp.width = 4;
  gp.height = 4;
  gp.nets = 6;
  gp.seed = 3;
  const Instance inst = generate_instance(gp);
  const auto samples = tradeoff_curve(inst, sweep_grid(1.0, 2.0, 1.0, 2.0, 3), SolverConfig::practical(0.3, 32));
  for (const auto& s : samples) {
    REQUIRE(s.feasible);
    CHECK(s.mu <= s.mu0 * s.lambda + 1e-9);
    CHECK(s.nu <= s.nu0 * s.lambda + 1e-9);
    // the solution belongs to a budget at most 1% above D*
    CHECK(s.area <= s.area_budget / 0.99 * s.lambda * (1 + 1e-9));
  }
  const double slack = tradeoff_slack(samples, 0.3);
  CHECK(convexity_check(samples, slack).empty());
  CHECK(monotonicity_check(samples, slack).empty());
}

TEST_CASE("boundary flag marks samples where area binds") {
  // Both nets fit on the direct edge at nu0 = 2 but spread out when area is free.
  const Instance inst = testutil::parse(
      "GRID 3 2\nU 4\nNET a SRC (0,1) SINK (1,1)\nNET b SRC (0,1) SINK (1,1)\n", 0, 1);
  const auto s = tradeoff_curve(inst, {{1.0, 2.0}}, SolverConfig::practical(0.3, 64));
  REQUIRE(s[0].feasible);
  CHECK(s[0].area_budget == doctest::Approx(2.0).epsilon(0.02));
  CHECK(s[0].boundary);
}
