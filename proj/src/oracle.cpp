#include "bgr/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace bgr {

namespace {

struct Enumerator {
  Enumerator(const Instance& i, const Net& n) : inst(i), net(n) {}

  const Instance& inst;
  const Net& net;
  std::vector<TileId> sinks;
  bool delay_mode = false;
  int max_delay = 0;
  int delay_limit = 0;
  int fix_type = 0;
  std::vector<char> on_path;
  BufferedRouting current;
  std::vector<BufferedRouting> out;

  bool buffer_site(TileId v) const {
    if (inst.grid.buffer_capacity(v) <= 0) return false;
    for (const auto& w : inst.windows) {
      if (w.bound <= 0 && std::find(w.tiles.begin(), w.tiles.end(), v) != w.tiles.end()) return false;
    }
    return true;
  }

  bool parity_ok(int parity) const {
    switch (net.polarity) {
      case Polarity::unconstrained: return true;
      case Polarity::positive: return parity == 0;
      case Polarity::negative: return parity == 1;
    }
    return true;
  }

  // `remaining` is the wireload the current driver may still drive.
  void at_tile(TileId v, int remaining, int parity, int delay,
               std::set<std::tuple<int, int, int>>& seen_here) {
    if (std::find(sinks.begin(), sinks.end(), v) != sinks.end() && parity_ok(parity) &&
        (!delay_mode || delay <= delay_limit)) {
      out.push_back(current);
    }

    // Continue to a neighbouring tile.
    for (const auto& [nb, e] : inst.grid.neighbours(v)) {
      if (on_path[nb] || inst.grid.wire_capacity(e) <= 0) continue;
      for (std::size_t w = 0; w < inst.wire_loads.size(); ++w) {
        const int load = inst.wire_loads[w];
        if (load > remaining) continue;
        on_path[nb] = 1;
        current.path.push_back(nb);
        current.widths.push_back(static_cast<int>(w));
        std::set<std::tuple<int, int, int>> fresh{{remaining - load, parity, delay_mode ? delay : 0}};
        at_tile(nb, remaining - load, parity, delay, fresh);
        current.widths.pop_back();
        current.path.pop_back();
        on_path[nb] = 0;
      }
    }

    // Insert a buffer here.
    if (!buffer_site(v)) return;
    if (delay_mode && delay + 1 > max_delay) return;
    const int next_parity = inst.inverting ? 1 - parity : parity;
    auto insert = [&](int bound, int type, BufferKind kind) {
      const auto key = std::make_tuple(bound, next_parity, delay_mode ? delay + 1 : 0);
      if (seen_here.count(key)) return;
      seen_here.insert(key);
      current.buffers.push_back({static_cast<int>(current.path.size()) - 1, type, inst.inverting, kind});
      at_tile(v, bound, next_parity, delay + 1, seen_here);
      current.buffers.pop_back();
      seen_here.erase(key);
    };
    for (std::size_t t = 0; t < inst.buffer_types.size(); ++t) {
      const int bound = inst.buffer_types[t];
      if (remaining < bound) insert(bound, static_cast<int>(t), BufferKind::buffer);
    }
    if (inst.inverting && remaining == inst.wireload) insert(inst.wireload, fix_type, BufferKind::polarity_fix);
  }
};

}  // namespace

std::vector<BufferedRouting> enumerate_routings(const Instance& inst, int net_index, int group,
                                                std::optional<int> max_delay) {
  if (inst.grid.tile_count() > 12 || inst.wireload > 3) {
    throw std::length_error("instance exceeds the enumeration guard");
  }
  const Net& net = inst.nets.at(net_index);
  Enumerator en(inst, net);
  en.sinks = net.sinks.at(group);
  if (!inst.pin_assignment) en.sinks.resize(1);
  if (!inst.inverting && net.polarity == Polarity::negative) return {};

  int md = max_delay.value_or(0);
  for (const auto& n : inst.nets) {
    if (n.delay_bound) {
      en.delay_mode = true;
      md = std::max(md, *n.delay_bound);
    }
  }
  if (max_delay) en.delay_mode = true;
  en.max_delay = md;
  en.delay_limit = net.delay_bound ? std::min(*net.delay_bound, md) : md;
  en.fix_type = static_cast<int>(std::max_element(inst.buffer_types.begin(), inst.buffer_types.end()) -
                                 inst.buffer_types.begin());
  en.on_path.assign(inst.grid.tile_count(), 0);
  en.current.net = net.id;

  std::vector<TileId> sources = net.sources;
  if (!inst.pin_assignment) sources.resize(1);
  for (TileId s : sources) {
    en.on_path[s] = 1;
    en.current.path = {s};
    const int level = inst.level_of(net);
    std::set<std::tuple<int, int, int>> seen{{level, 0, 0}};
    en.at_tile(s, level, 0, 0, seen);
    en.on_path[s] = 0;
  }
  return en.out;
}

}  // namespace bgr
