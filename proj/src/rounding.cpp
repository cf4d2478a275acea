#include "bgr/rounding.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace bgr {

std::vector<int> draw_picks(std::span<const std::size_t> pool_sizes, Rng& rng) {
  std::vector<int> picks(pool_sizes.size());
  for (std::size_t i = 0; i < pool_sizes.size(); ++i) picks[i] = static_cast<int>(rng.below(pool_sizes[i]));
  return picks;
}

namespace {

struct Candidate {
  std::vector<TileId> buffer_tiles;  // one entry per buffer
  std::vector<EdgeId> edges;         // one entry per crossing
  int wirelength = 0;
  int buffers = 0;
};

void collect(const TileGraph& g, const BufferedRouting& r, Candidate& c) {
  for (const auto& b : r.buffers) c.buffer_tiles.push_back(r.path[b.position]);
  for (std::size_t i = 0; i + 1 < r.path.size(); ++i) c.edges.push_back(*g.edge_between(r.path[i], r.path[i + 1]));
  c.wirelength += static_cast<int>(r.path.size()) - 1;
  c.buffers += static_cast<int>(r.buffers.size());
  for (const auto& br : r.branches) collect(g, br, c);
}

// Objective key; smaller is better, compared lexicographically.
using Score = std::tuple<double, double, double, double>;

}  // namespace

RoundingResult round_pool(const GadgetGraph& h, const Instance& inst,
                          const std::vector<std::vector<GadgetRoute>>& pool, const RoundingConfig& config) {
  const TileGraph& g = inst.grid;
  const std::size_t k = pool.size();
  std::vector<std::vector<BufferedRouting>> decoded(k);
  std::vector<std::vector<Candidate>> cands(k);
  std::vector<std::size_t> sizes(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (pool[i].empty()) throw std::invalid_argument("empty path pool for net " + h.net_id(static_cast<int>(i)));
    for (const auto& route : pool[i]) {
      decoded[i].push_back(decode_route(h, route));
      Candidate c;
      collect(g, decoded[i].back(), c);
      cands[i].push_back(std::move(c));
    }
    sizes[i] = pool[i].size();
  }

  std::vector<int> buf_use(g.tile_count(), 0);
  std::vector<int> wire_use(g.edge_count(), 0);
  std::vector<TileId> touched_tiles;
  std::vector<EdgeId> touched_edges;

  Rng rng(config.seed);
  Score best{};
  std::vector<int> best_picks;
  int best_trial = -1;
  const int trials = std::max(1, config.trials);
  for (int t = 0; t < trials; ++t) {
    const std::vector<int> picks = draw_picks(sizes, rng);
    int buffers = 0, wl = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const Candidate& c = cands[i][picks[i]];
      for (TileId v : c.buffer_tiles) {
        if (buf_use[v]++ == 0) touched_tiles.push_back(v);
      }
      for (EdgeId e : c.edges) {
        if (wire_use[e]++ == 0) touched_edges.push_back(e);
      }
      buffers += c.buffers;
      wl += c.wirelength;
    }
    double mu = 0.0, nu = 0.0;
    for (TileId v : touched_tiles) {
      mu = std::max(mu, static_cast<double>(buf_use[v]) / g.buffer_capacity(v));
      buf_use[v] = 0;
    }
    for (EdgeId e : touched_edges) {
      nu = std::max(nu, static_cast<double>(wire_use[e]) / g.wire_capacity(e));
      wire_use[e] = 0;
    }
    touched_tiles.clear();
    touched_edges.clear();
    const double a = inst.alpha * buffers + inst.beta * wl;
    const double lam = std::max(mu / inst.mu0, nu / inst.nu0);
    const Score s = config.objective == RoundingObjective::min_congestion ? Score{lam, a, nu, mu}
                                                                          : Score{a, lam, nu, mu};
    if (best_trial < 0 || s < best) {
      best = s;
      best_picks = picks;
      best_trial = t;
    }
  }

  RoundingResult res;
  res.picks = best_picks;
  for (std::size_t i = 0; i < k; ++i) res.routings.push_back(decoded[i][best_picks[i]]);
  const Congestion c = congestion(res.routings, g);
  res.stats.mu = c.mu;
  res.stats.nu = c.nu;
  res.stats.area = area(res.routings, inst.alpha, inst.beta);
  res.stats.wirelength = wirelength(res.routings);
  res.stats.buffers = buffer_count(res.routings);
  res.stats.trial = best_trial;
  return res;
}

InterleavedRounder::InterleavedRounder(int nets, std::uint64_t seed) : rng_(seed), held_(nets) {}

void InterleavedRounder::offer(int phase, int net, const GadgetRoute& route) {
  if (phase <= 1 || rng_.below(static_cast<std::uint64_t>(phase)) == 0) held_[net] = route;
}

SolverObserver InterleavedRounder::observer() {
  SolverObserver obs;
  obs.on_route = [this](int phase, int net, const GadgetRoute& route, bool, double, double) {
    offer(phase, net, route);
  };
  return obs;
}

}  // namespace bgr
