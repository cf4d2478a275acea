#include "bgr/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bgr {

namespace {

Instance with_bounds(const Instance& inst, double mu0, double nu0) {
  Instance x = inst;
  x.mu0 = mu0;
  x.nu0 = nu0;
  return x;
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a) + std::abs(b)); }

}  // namespace

std::vector<RegionPoint> feasible_region(const Instance& inst, const SolverConfig& config, int samples) {
  std::vector<RegionPoint> out;
  SolverConfig c = config;
  c.area_budget = kInfiniteArea;
  for (int i = 0; i < samples; ++i) {
    const double theta = (i + 1.0) / (samples + 1.0) * std::numbers::pi / 2;
    RegionPoint p;
    p.mu0 = std::cos(theta);
    p.nu0 = std::sin(theta);
    const Instance x = with_bounds(inst, p.mu0, p.nu0);
    const GadgetGraph h = GadgetGraph::build(x);
    try {
      const FractionalSolution s = run_phases(h, x, c);
      p.feasible = true;
      p.lambda = s.lambda;
      p.mu = s.mu;
      p.nu = s.nu;
    } catch (const UnroutableNet&) {
      p.feasible = false;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<SweepPoint> sweep_grid(double mu_lo, double mu_hi, double nu_lo, double nu_hi, int steps) {
  std::vector<SweepPoint> grid;
  auto at = [&](double lo, double hi, int i) { return steps > 1 ? lo + (hi - lo) * i / (steps - 1) : lo; };
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) grid.push_back({at(mu_lo, mu_hi, i), at(nu_lo, nu_hi, j)});
  }
  return grid;
}

std::vector<TradeoffSample> tradeoff_curve(const Instance& inst, const std::vector<SweepPoint>& grid,
                                           const SolverConfig& config, double relative_tolerance) {
  std::vector<TradeoffSample> out;
  for (const auto& pt : grid) {
    TradeoffSample s;
    s.mu0 = pt.mu0;
    s.nu0 = pt.nu0;
    const Instance x = with_bounds(inst, pt.mu0, pt.nu0);
    const GadgetGraph h = GadgetGraph::build(x);
    const SearchResult r = min_area_search(h, x, config, relative_tolerance);
    s.feasible = r.feasible;
    s.area_budget = r.area_budget;
    if (r.unroutable.empty()) {
      s.mu = r.solution.mu;
      s.nu = r.solution.nu;
      s.area = r.solution.area;
      s.lambda = r.solution.lambda;
    }
    if (r.feasible && std::isfinite(r.area_budget)) {
      SolverConfig c = config;
      c.area_budget = kInfiniteArea;
      const FractionalSolution free = run_phases(h, x, c);
      const double congestion = std::max(pt.mu0 > 0 ? s.mu / pt.mu0 : 0.0, pt.nu0 > 0 ? s.nu / pt.nu0 : 0.0);
      s.boundary = free.lambda * (1.0 + r.solution.epsilon) < congestion;
    }
    out.push_back(s);
  }
  return out;
}

double tradeoff_slack(const std::vector<TradeoffSample>& samples, double epsilon0, double tolerance) {
  double top = 0.0;
  for (const auto& s : samples) {
    if (s.feasible && std::isfinite(s.area_budget)) top = std::max(top, s.area_budget);
  }
  return (epsilon0 + tolerance) * top;
}

std::vector<TradeoffViolation> convexity_check(const std::vector<TradeoffSample>& samples, double slack) {
  std::vector<TradeoffViolation> out;
  const int n = static_cast<int>(samples.size());
  for (int a = 0; a < n; ++a) {
    if (!samples[a].feasible) continue;
    for (int b = a + 1; b < n; ++b) {
      if (!samples[b].feasible) continue;
      const double mu = 0.5 * (samples[a].mu0 + samples[b].mu0);
      const double nu = 0.5 * (samples[a].nu0 + samples[b].nu0);
      for (int m = 0; m < n; ++m) {
        if (m == a || m == b || !samples[m].feasible) continue;
        if (!same(samples[m].mu0, mu) || !same(samples[m].nu0, nu)) continue;
        const double bound = 0.5 * (samples[a].area_budget + samples[b].area_budget) + slack;
        if (samples[m].area_budget > bound) {
          out.push_back({a, b, m, samples[m].area_budget - bound, "midpoint above the chord"});
        }
      }
    }
  }
  return out;
}

std::vector<TradeoffViolation> monotonicity_check(const std::vector<TradeoffSample>& samples, double slack) {
  std::vector<TradeoffViolation> out;
  const int n = static_cast<int>(samples.size());
  for (int a = 0; a < n; ++a) {
    if (!samples[a].feasible) continue;
    for (int b = 0; b < n; ++b) {
      if (a == b || samples[b].mu0 < samples[a].mu0 || samples[b].nu0 < samples[a].nu0) continue;
      if (!samples[b].feasible) {
        out.push_back({a, b, -1, 0.0, "relaxed bounds became infeasible"});
      } else if (samples[b].area_budget > samples[a].area_budget + slack) {
        out.push_back({a, b, -1, samples[b].area_budget - samples[a].area_budget - slack, "relaxed bounds need more area"});
      }
    }
  }
  return out;
}

}  // namespace bgr
