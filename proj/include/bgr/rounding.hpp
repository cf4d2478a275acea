#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bgr/gadget.hpp"
#include "bgr/instance.hpp"
#include "bgr/random.hpp"
#include "bgr/routing.hpp"
#include "bgr/solver.hpp"

namespace bgr {

enum class RoundingObjective { min_congestion, min_area };

struct RoundingConfig {
  int trials = 10000;
  std::uint64_t seed = 1;
  RoundingObjective objective = RoundingObjective::min_congestion;
};

struct RoundingStats {
  double mu = 0.0;
  double nu = 0.0;
  double area = 0.0;
  int wirelength = 0;
  int buffers = 0;
  int trial = 0;  // index of the winning sampling
};

struct RoundingResult {
  std::vector<BufferedRouting> routings;  // one per net, in net order
  std::vector<int> picks;                 // chosen pool index per net
  RoundingStats stats;
};

// One uniform pick per pool.
std::vector<int> draw_picks(std::span<const std::size_t> pool_sizes, Rng& rng);

// Samples `trials` selections (one pool entry per net, uniformly) and keeps
// the best. min_congestion orders by (max(mu/mu0, nu/nu0), area, nu, mu),
// min_area by (area, that maximum, nu, mu); remaining ties go to the
// earlier trial. Throws std::invalid_argument if a pool is empty.
RoundingResult round_pool(const GadgetGraph& h, const Instance& inst,
                          const std::vector<std::vector<GadgetRoute>>& pool, const RoundingConfig& config);

// Memory-lean rounding during the phase loop: the route of phase r replaces
// the held one with probability 1/r, so after t phases each phase's route
// is held with probability 1/t.
class InterleavedRounder {
 public:
  InterleavedRounder(int nets, std::uint64_t seed);

  void offer(int phase, int net, const GadgetRoute& route);
  const std::vector<GadgetRoute>& selection() const { return held_; }
  // Observer feeding every routed path into offer().
  SolverObserver observer();

 private:
  Rng rng_;
  std::vector<GadgetRoute> held_;
};

}  // namespace bgr
