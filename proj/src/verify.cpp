#include "bgr/verify.hpp"

#include <algorithm>
#include <map>

namespace bgr {

namespace {

bool contains(const std::vector<TileId>& v, TileId t) { return std::find(v.begin(), v.end(), t) != v.end(); }

class Checker {
 public:
  Checker(const Instance& inst, VerifyReport& rep)
      : inst_(inst), g_(inst.grid), rep_(rep), buf_(g_.tile_count(), 0), wire_(g_.edge_count(), 0) {}

  void check_net(const Net& net, const BufferedRouting& r) {
    what_ = "net " + net.id;
    const auto& sources = inst_.pin_assignment ? net.sources : std::vector<TileId>{net.sources.front()};
    if (r.path.empty()) {
      fail("empty path");
      return;
    }
    if (!contains(sources, r.path.front())) fail("does not start at a source tile");

    Walk trunk = walk(r, inst_.level_of(net));
    if (!trunk.ok) return;
    if (net.sinks.size() == 1) {
      if (!r.branches.empty()) fail("2-pin net with branches");
      check_sink(net, 0, r.path.back());
      check_pins(net, trunk.inverters, trunk.placements);
      return;
    }
    if (r.branches.size() != 2) {
      fail("3-pin net needs two branches");
      return;
    }
    // The branches share the trunk's remaining budget.
    int need = 0;
    Walk br[2];
    for (int k = 0; k < 2; ++k) {
      const BufferedRouting& b = r.branches[k];
      if (b.path.empty() || b.path.front() != r.path.back()) {
        fail("branch does not start at the branch tile");
        return;
      }
      if (!b.branches.empty()) fail("nested branches");
      need += first_segment_load(b);
      br[k] = walk(b, inst_.wireload, false);
      if (!br[k].ok) return;
      check_sink(net, k, b.path.back());
      check_pins(net, trunk.inverters + br[k].inverters, trunk.placements + br[k].placements);
    }
    if (need > trunk.remaining) fail("branches exceed the wireload left at the branch tile");
  }

  void finish() {
    for (TileId v = 0; v < g_.tile_count(); ++v) {
      if (buf_[v] == 0) continue;
      rep_.mu = std::max(rep_.mu, static_cast<double>(buf_[v]) / g_.buffer_capacity(v));
    }
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      if (wire_[e] == 0) continue;
      rep_.nu = std::max(rep_.nu, static_cast<double>(wire_[e]) / g_.wire_capacity(e));
    }
    for (const auto& w : inst_.windows) {
      int used = 0;
      for (TileId v : w.tiles) used += buf_[v];
      if (used > 0) rep_.window_ratio = std::max(rep_.window_ratio, static_cast<double>(used) / w.bound);
    }
    rep_.area = inst_.alpha * rep_.buffers + inst_.beta * rep_.wirelength;
  }

 private:
  struct Walk {
    bool ok = false;
    int remaining = 0;
    int inverters = 0;
    int placements = 0;
  };

  void fail(const std::string& msg) { rep_.violations.push_back(what_ + ": " + msg); }

  // Wire load up to the first buffer of a branch.
  int first_segment_load(const BufferedRouting& b) const {
    const int stop = b.buffers.empty() ? static_cast<int>(b.path.size()) - 1 : b.buffers.front().position;
    int load = 0;
    for (int i = 0; i < stop && i < static_cast<int>(b.widths.size()); ++i) {
      if (b.widths[i] >= 0 && b.widths[i] < static_cast<int>(inst_.wire_loads.size())) load += inst_.wire_loads[b.widths[i]];
    }
    return load;
  }

  // Walks one path, charging resources. With `bounded` false the budget
  // before the first buffer is left to the caller.
  Walk walk(const BufferedRouting& r, int level, bool bounded = true) {
    Walk w;
    const int len = static_cast<int>(r.path.size());
    if (static_cast<int>(r.widths.size()) != len - 1) {
      fail("one wire width per path edge expected");
      return w;
    }
    for (TileId t : r.path) {
      if (t < 0 || t >= g_.tile_count()) {
        fail("tile outside the grid");
        return w;
      }
    }
    int last = -1;
    for (const auto& b : r.buffers) {
      if (b.position < 0 || b.position >= len || b.position < last) {
        fail("buffer positions out of range or out of order");
        return w;
      }
      last = b.position;
      if (b.kind == BufferKind::buffer && (b.type < 0 || b.type >= static_cast<int>(inst_.buffer_types.size()))) {
        fail("unknown buffer type");
        return w;
      }
      if (b.kind == BufferKind::polarity_fix && !inst_.inverting) fail("polarity fix without inverting buffers");
    }

    int budget = bounded ? level : inst_.wireload;
    bool driven = bounded;
    std::size_t next = 0;
    for (int pos = 0; pos < len; ++pos) {
      const TileId v = r.path[pos];
      while (next < r.buffers.size() && r.buffers[next].position == pos) {
        const auto& b = r.buffers[next++];
        budget = b.kind == BufferKind::polarity_fix ? inst_.wireload : inst_.buffer_types[b.type];
        driven = true;
        if (inst_.inverting) ++w.inverters;
        ++w.placements;
        ++rep_.buffers;
        if (g_.buffer_capacity(v) == 0) fail("buffer on a tile without buffer sites");
        ++buf_[v];
      }
      if (pos + 1 == len) break;
      const TileId u = r.path[pos + 1];
      const auto e = g_.edge_between(v, u);
      if (!e) {
        fail("consecutive tiles are not adjacent");
        return w;
      }
      const int width = r.widths[pos];
      if (width < 0 || width >= static_cast<int>(inst_.wire_loads.size())) {
        fail("unknown wire width");
        return w;
      }
      if (g_.wire_capacity(*e) == 0) fail("wire on an edge without capacity");
      ++wire_[*e];
      ++rep_.wirelength;
      if (driven) {
        budget -= inst_.wire_loads[width];
        if (budget < 0) {
          fail("wireload bound exceeded at tile " + std::to_string(u));
          budget = 0;
        }
      }
    }
    w.ok = true;
    w.remaining = budget;
    return w;
  }

  void check_sink(const Net& net, int group, TileId t) {
    const auto& sinks = inst_.pin_assignment ? net.sinks[group] : std::vector<TileId>{net.sinks[group].front()};
    if (!contains(sinks, t)) fail("does not end at a tile of sink group " + std::to_string(group));
  }

  void check_pins(const Net& net, int inverters, int placements) {
    if (net.polarity == Polarity::positive && inverters % 2 != 0) fail("odd number of inversions");
    if (net.polarity == Polarity::negative && inverters % 2 != 1) fail("even number of inversions");
    if (net.delay_bound && placements > *net.delay_bound) fail("more buffers than the delay bound");
  }

  const Instance& inst_;
  const TileGraph& g_;
  VerifyReport& rep_;
  std::vector<int> buf_;
  std::vector<int> wire_;
  std::string what_;
};

}  // namespace

VerifyReport verify_routings(const Instance& inst, const std::vector<BufferedRouting>& routings) {
  VerifyReport rep;
  std::map<std::string, const BufferedRouting*> by_net;
  for (const auto& r : routings) {
    if (!by_net.emplace(r.net, &r).second) rep.violations.push_back("net " + r.net + ": routed more than once");
  }
  std::map<std::string, int> known;
  for (std::size_t i = 0; i < inst.nets.size(); ++i) known.emplace(inst.nets[i].id, static_cast<int>(i));
  for (const auto& [id, r] : by_net) {
    if (!known.count(id)) rep.violations.push_back("net " + id + ": not in the instance");
  }

  Checker check(inst, rep);
  for (const auto& net : inst.nets) {
    auto it = by_net.find(net.id);
    if (it == by_net.end()) {
      rep.violations.push_back("net " + net.id + ": no routing");
      continue;
    }
    check.check_net(net, *it->second);
  }
  check.finish();
  return rep;
}

}  // namespace bgr
