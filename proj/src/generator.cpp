#include "bgr/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "bgr/random.hpp"

namespace bgr {

namespace {

std::vector<TileId> candidates(const TileGraph& g, TileId pin, int count) {
  std::vector<TileId> all(g.tile_count());
  for (TileId v = 0; v < g.tile_count(); ++v) all[v] = v;
  const Tile p = g.tile(pin);
  std::stable_sort(all.begin(), all.end(), [&](TileId a, TileId b) {
    return manhattan(g.tile(a), p) < manhattan(g.tile(b), p);
  });
  all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(std::max(1, count))));
  return all;
}

}  // namespace

Instance generate_instance(const GeneratorParams& p) {
  if (p.width < 1 || p.height < 1) throw std::invalid_argument("grid dimensions must be positive");
  if (p.wireload < 1) throw std::invalid_argument("U must be at least 1");
  if (p.nets < 0) throw std::invalid_argument("net count must be nonnegative");
  if (p.buffer_cap_min < 0 || p.buffer_cap_max < p.buffer_cap_min) {
    throw std::invalid_argument("bad buffer capacity range");
  }
  if (p.wire_cap_min < 1 || p.wire_cap_max < p.wire_cap_min) {
    throw std::invalid_argument("wire capacities must be at least 1");
  }
  if (p.three_pin_fraction > 0.0 && (p.inverting || p.delay_fraction > 0.0)) {
    throw std::invalid_argument("3-pin nets cannot be combined with polarity or delay constraints");
  }

  Rng rng(p.seed);
  Instance inst;
  inst.grid = TileGraph(p.width, p.height);
  inst.wireload = p.wireload;
  inst.alpha = p.alpha;
  inst.beta = p.beta;
  inst.mu0 = p.mu0;
  inst.nu0 = p.nu0;
  inst.inverting = p.inverting;
  inst.pin_assignment = p.pin_tiles > 1;
  inst.buffer_types = {p.wireload};
  if (p.buffer_sizing && p.wireload >= 2) inst.buffer_types.push_back(p.wireload - 1);
  inst.wire_loads = {1};
  if (p.wire_sizing && p.wireload >= 2) inst.wire_loads.push_back(2);

  TileGraph& g = inst.grid;
  for (TileId v = 0; v < g.tile_count(); ++v) {
    g.set_buffer_capacity(v, rng.range(p.buffer_cap_min, p.buffer_cap_max));
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    g.set_wire_capacity(e, rng.range(p.wire_cap_min, p.wire_cap_max));
  }

  const int U = p.wireload;
  int reach = p.max_distance > 0 ? p.max_distance : p.width + p.height;
  // Without buffer sites everywhere a net must be drivable by its source alone.
  if (p.buffer_cap_min == 0) reach = std::min(reach, U);
  const int n = g.tile_count();

  auto pick_sink = [&](TileId src) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const TileId t = static_cast<TileId>(rng.below(n));
      const int d = manhattan(g.tile(src), g.tile(t));
      if ((t != src || n == 1) && d <= reach) return t;
    }
    return src;
  };

  for (int i = 0; i < p.nets; ++i) {
    Net net;
    net.id = "n" + std::to_string(i);
    net.source_level = U;
    const TileId src = static_cast<TileId>(rng.below(n));
    const TileId snk = pick_sink(src);
    net.sources = candidates(g, src, p.pin_tiles);
    net.sinks.push_back(candidates(g, snk, p.pin_tiles));
    if (p.three_pin_fraction > 0.0 && rng.unit() < p.three_pin_fraction) {
      net.sinks.push_back(candidates(g, pick_sink(src), p.pin_tiles));
    }

    const int dist = manhattan(g.tile(src), g.tile(snk));
    int needed = p.buffer_cap_min > 0 ? std::max(0, (dist + U - 1) / U - 1) : 0;
    if (p.inverting && p.polarity_fraction > 0.0 && rng.unit() < p.polarity_fraction &&
        g.buffer_capacity(src) > 0) {
      net.polarity = rng.below(2) == 0 ? Polarity::positive : Polarity::negative;
      const int parity = needed % 2;
      const int want = net.polarity == Polarity::negative ? 1 : 0;
      if (parity != want) ++needed;  // one polarity fix at the source tile
    }
    if (p.delay_fraction > 0.0 && rng.unit() < p.delay_fraction) {
      net.delay_bound = needed + rng.range(0, 1);
    }
    inst.nets.push_back(std::move(net));
  }

  for (int w = 0; w < p.windows; ++w) {
    Window win;
    win.bound = rng.range(1, 4);
    const int x = p.width > 1 ? rng.range(0, p.width - 2) : 0;
    const int y = p.height > 1 ? rng.range(0, p.height - 2) : 0;
    for (int dy = 0; dy < std::min(2, p.height); ++dy) {
      for (int dx = 0; dx < std::min(2, p.width); ++dx) win.tiles.push_back(g.id(x + dx, y + dy));
    }
    inst.windows.push_back(std::move(win));
  }
  return inst;
}

}  // namespace bgr
