#pragma once

#include <string>
#include <vector>

#include "bgr/instance.hpp"
#include "bgr/solver.hpp"

namespace bgr {

// Congestion reached when routing along one direction (mu0, nu0) with the
// area constraint dropped.
struct RegionPoint {
  double mu0 = 0.0;
  double nu0 = 0.0;
  bool feasible = false;  // false when some net cannot be routed at all
  double lambda = 0.0;
  double mu = 0.0;  // achieved fractional congestion
  double nu = 0.0;
};

// `samples` directions at angles (i + 1) / (samples + 1) * 90 degrees.
std::vector<RegionPoint> feasible_region(const Instance& inst, const SolverConfig& config, int samples);

struct TradeoffSample {
  double mu0 = 0.0;  // requested bounds
  double nu0 = 0.0;
  bool feasible = false;
  double mu = 0.0;  // achieved by the solution at D*
  double nu = 0.0;
  double area = 0.0;
  double area_budget = 0.0;  // D*
  double lambda = 0.0;
  // A solve without area constraint beats max(mu/mu0, nu/nu0) of this
  // sample by more than the step factor, so the area constraint binds here.
  // Heuristic.
  bool boundary = false;
};

struct SweepPoint {
  double mu0 = 1.0;
  double nu0 = 1.0;
};

// Uniform grid over [mu_lo, mu_hi] x [nu_lo, nu_hi], row-major in nu.
std::vector<SweepPoint> sweep_grid(double mu_lo, double mu_hi, double nu_lo, double nu_hi, int steps);

std::vector<TradeoffSample> tradeoff_curve(const Instance& inst, const std::vector<SweepPoint>& grid,
                                           const SolverConfig& config, double relative_tolerance = 0.01);

struct TradeoffViolation {
  int first = 0;   // sample indices
  int second = 0;
  int other = 0;   // midpoint sample, or -1 for monotonicity violations
  double excess = 0.0;
  std::string what;
};

// Additive slack (eps0 + tolerance) * largest feasible D* among the samples.
double tradeoff_slack(const std::vector<TradeoffSample>& samples, double epsilon0, double tolerance = 0.01);

// For every pair of feasible samples whose requested midpoint is also a
// feasible sample: D*(mid) <= (D*(a) + D*(b)) / 2 + slack.
std::vector<TradeoffViolation> convexity_check(const std::vector<TradeoffSample>& samples, double slack);

// For every pair with requested bounds a <= b componentwise:
// D*(b) <= D*(a) + slack. An infeasible b with a feasible a is a violation.
std::vector<TradeoffViolation> monotonicity_check(const std::vector<TradeoffSample>& samples, double slack);

}  // namespace bgr
