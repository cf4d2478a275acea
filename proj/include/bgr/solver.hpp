#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bgr/gadget.hpp"
#include "bgr/instance.hpp"

namespace bgr {

enum class SolverMode { theory, practical };
enum class UpdateRule { multiplicative, exponential };

struct SolverConfig {
  SolverMode mode = SolverMode::practical;
  double epsilon = 0.3;   // practical mode step size
  double epsilon0 = 0.5;  // theory mode approximation target
  double gamma = 1.0;     // stale-path slack: recompute when weight grows by > (1 + gamma*eps)
  int phase_cap = 64;
  UpdateRule update = UpdateRule::multiplicative;
  std::optional<double> area_budget;  // overrides Instance::area_budget
  int pool_size = 5;                  // paths kept per net for rounding (last K phases)
  // The dual lower bound is evaluated every this many phases and always at
  // the last phase.
  int lower_bound_interval = 1;

  static SolverConfig theory(double epsilon0, double gamma = 1.0);
  static SolverConfig practical(double epsilon = 0.3, int phases = 64);

  // Step size actually used: epsilon, or compute_epsilon(epsilon0, gamma).
  double step() const;
};

// Largest step size for which the phase algorithm is a (1 + eps0)-approximation.
double compute_epsilon(double epsilon0, double gamma);
// Initial dual scale for `rows` packing rows (n + m + 1 for the basic model).
// Throws std::domain_error when eps*(1+eps)*(1+eps*gamma) >= 1.
double compute_delta(double epsilon, double gamma, std::size_t rows);
double delta_from_prime(double epsilon_prime, std::size_t rows);

// Dual variables: one per capacity group (inactive groups stay 0) plus the
// area dual u, which is absent (0) when the area budget is infinite.
struct DualState {
  std::vector<double> y;
  double u = 0.0;
  double delta = 0.0;
  double area_budget = kInfiniteArea;
  double alpha = 1.0;
  double beta = 1.0;

  static DualState initial(const GadgetGraph& h, const Instance& inst, double delta, double area_budget);
  // mu0*sum b*y + nu0*sum w*z + (windows) + D*u.
  double guard(const GadgetGraph& h) const;
};

// Weight of every arc group under the duals, indexed by group + 1 (index 0
// is the weightless source/sink class). Buffer groups fold in the window
// duals covering their tile and alpha*u; wire groups add beta*u.
std::vector<double> arc_weights(const GadgetGraph& h, const DualState& duals);
// Static area weights: alpha on buffer arcs, beta on wire arcs.
std::vector<double> area_weights(const GadgetGraph& h, double alpha, double beta);

double path_weight(const GadgetGraph& h, std::span<const ArcId> path, std::span<const double> weights);
double route_weight(const GadgetGraph& h, const GadgetRoute& route, std::span<const double> weights);

class UnroutableNet : public std::runtime_error {
 public:
  explicit UnroutableNet(std::string net)
      : std::runtime_error("net " + net + " is unroutable"), net_(std::move(net)) {}
  const std::string& net() const { return net_; }

 private:
  std::string net_;
};

enum class SearchMethod { automatic, dijkstra, topological };

struct ShortestRoute {
  GadgetRoute route;
  double weight = 0.0;
};

// Reusable shortest-path engine over a fixed gadget graph. Ties are broken
// by vertex id, which orders tile copies by (tile y, tile x, budget,
// parity, replica).
class PathFinder {
 public:
  explicit PathFinder(const GadgetGraph& h);

  // Minimum-weight route of a net (2-pin: single path; 3-pin: best tree over
  // all branch tiles and branch budgets). nullopt if the sink is unreachable.
  std::optional<ShortestRoute> route(int net, std::span<const double> weights,
                                     SearchMethod method = SearchMethod::automatic);

  // Minimum-weight buffered tree of a 3-pin net.
  std::optional<ShortestRoute> three_pin(int net, std::span<const double> weights);

 private:
  struct Labels {
    std::vector<double> dist;
    std::vector<ArcId> arc;
    std::vector<unsigned> stamp;
    unsigned generation = 0;
    void reset(std::size_t n);
    double at(VertexId v) const;
  };

  void dijkstra(int net, VertexId start, VertexId target, bool backward,
                std::span<const double> weights, Labels& lab);
  void topological(int net, std::span<const double> weights, Labels& lab);
  std::vector<ArcId> trace_forward(const Labels& lab, VertexId from, VertexId to) const;
  std::vector<ArcId> trace_backward(const Labels& lab, VertexId from, VertexId to) const;

  const GadgetGraph& h_;
  Labels forward_, branch_[2];
  std::vector<std::pair<double, VertexId>> heap_;
};

std::optional<ShortestRoute> shortest_path(const GadgetGraph& h, int net, std::span<const double> weights,
                                           SearchMethod method = SearchMethod::automatic);
std::optional<ShortestRoute> solve_3pin(const GadgetGraph& h, int net, std::span<const double> weights);

// One row of the per-phase progress table.
struct PhaseStats {
  int phase = 0;
  double lambda = 0.0;
  double lambda_lb = 0.0;  // best dual bound so far
  double mu = 0.0;         // fractional buffer congestion
  double nu = 0.0;         // fractional wire congestion
  double area = 0.0;
  double buffers = 0.0;
  double wirelength = 0.0;
  double elapsed = 0.0;    // seconds since the run started
};

struct RouteFlow {
  GadgetRoute route;
  double flow = 0.0;
};

struct FractionalSolution {
  std::vector<std::vector<RouteFlow>> flows;  // per net, flows sum to 1
  std::vector<std::vector<GadgetRoute>> pool; // per net, routes of the last K phases
  double lambda = 0.0;
  double lambda_lb = 0.0;
  int phases = 0;
  bool stopped_by_guard = false;
  double epsilon = 0.0;
  double delta = 0.0;
  double area_budget = kInfiniteArea;
  double mu = 0.0;
  double nu = 0.0;
  double area = 0.0;
  double buffers = 0.0;
  double wirelength = 0.0;
  std::vector<double> group_usage;  // average usage per capacity group
  std::vector<PhaseStats> stats;
  long long path_computations = 0;
  DualState duals;

  // 1 + log_{1+eps}(1/delta) / lambda_lb.
  double phase_bound() const;
};

struct SolverObserver {
  // Called for every net in every phase with the route that receives flow.
  std::function<void(int phase, int net, const GadgetRoute& route, bool reused, double weight,
                     double recorded_weight)>
      on_route;
  std::function<void(const PhaseStats&, const DualState&)> on_phase;
};

// Primal-dual phase algorithm for the congestion/area packing LP. Throws
// UnroutableNet when a net has no route.
FractionalSolution run_phases(const GadgetGraph& h, const Instance& inst, const SolverConfig& config,
                              const SolverObserver& observer = {});

// Recomputes lambda, mu, nu and area of the stored flows from scratch.
struct FlowMetrics {
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double area = 0.0;
  std::vector<double> group_usage;
};
FlowMetrics evaluate_flows(const GadgetGraph& h, const Instance& inst,
                           const std::vector<std::vector<RouteFlow>>& flows, double area_budget);

// Sum over nets of the minimum area route ignoring capacities.
double area_lower_bound(const GadgetGraph& h, const Instance& inst);
// alpha*mu0*sum b + beta*nu0*sum w.
double area_upper_bound(const Instance& inst);

struct GroupLoad {
  GroupId group = 0;
  GroupKind kind = GroupKind::buffer;
  int index = 0;
  double ratio = 0.0;  // usage / scaled capacity
};

struct SearchResult {
  bool feasible = false;
  double area_budget = 0.0;     // D*, never above the fractional optimum
  double witness_budget = 0.0;  // budget the returned solution was computed with
  double d_min = 0.0;
  double d_max = 0.0;
  int probes = 0;
  FractionalSolution solution;
  // For infeasible instances: groups whose scaled capacity is exceeded at
  // D = D_max, most loaded first, and nets without any route.
  std::vector<GroupLoad> certificate;
  std::vector<std::string> unroutable;
};

// Bisection on the area budget. A budget passes when the dual bound does not
// prove it infeasible (lambda_lb <= 1). D* is the largest budget proven
// infeasible when the bisection stops (or D_min if that passes), so it lies
// within a factor (1 + epsilon) times the tolerance below the optimum.
SearchResult min_area_search(const GadgetGraph& h, const Instance& inst, const SolverConfig& config,
                             double relative_tolerance = 0.01);

}  // namespace bgr
