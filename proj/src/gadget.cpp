#include "bgr/gadget.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bgr {

namespace {

const char* class_name(ArcClass c) {
  switch (c) {
    case ArcClass::source: return "src";
    case ArcClass::sink: return "sink";
    case ArcClass::wire: return "wire";
    case ArcClass::buffer: return "buffer";
    case ArcClass::polarity_fix: return "polfix";
  }
  return "?";
}

}  // namespace

GadgetGraph GadgetGraph::build(const Instance& inst, const GadgetOptions& opts) {
  GadgetGraph h;
  const TileGraph& g = inst.grid;
  const int n = g.tile_count();
  const int m = g.edge_count();
  const int U = inst.wireload;
  if (U < 1) throw std::invalid_argument("U must be at least 1");

  h.grid_ = g;
  h.wireload_ = U;
  h.parities_ = inst.inverting ? 2 : 1;
  h.wire_loads_ = inst.wire_loads;
  h.max_bound_type_ = static_cast<int>(
      std::max_element(inst.buffer_types.begin(), inst.buffer_types.end()) - inst.buffer_types.begin());

  int max_delay = opts.max_delay.value_or(0);
  for (const auto& net : inst.nets) {
    if (net.delay_bound) {
      h.delay_mode_ = true;
      max_delay = std::max(max_delay, *net.delay_bound);
    }
  }
  if (opts.max_delay) h.delay_mode_ = true;
  h.replicas_ = h.delay_mode_ ? max_delay + 1 : 1;
  const int P = h.parities_;
  const int R = h.replicas_;
  h.copy_count_ = n * (U + 1) * P * R;

  // Capacity groups: one per tile, one per edge, one per window.
  h.groups_.resize(n + m + inst.windows.size());
  for (TileId v = 0; v < n; ++v) {
    auto& grp = h.groups_[v];
    grp.kind = GroupKind::buffer;
    grp.index = v;
    grp.raw_capacity = g.buffer_capacity(v);
    grp.scaled = inst.mu0 * grp.raw_capacity;
    grp.area_weight = inst.alpha;
  }
  for (EdgeId e = 0; e < m; ++e) {
    auto& grp = h.groups_[n + e];
    grp.kind = GroupKind::wire;
    grp.index = e;
    grp.raw_capacity = g.wire_capacity(e);
    grp.scaled = inst.nu0 * grp.raw_capacity;
    grp.area_weight = inst.beta;
  }
  h.tile_windows_.assign(n, {});
  for (std::size_t w = 0; w < inst.windows.size(); ++w) {
    auto& grp = h.groups_[n + m + w];
    grp.kind = GroupKind::window;
    grp.index = static_cast<int>(w);
    grp.raw_capacity = inst.windows[w].bound;
    grp.scaled = inst.windows[w].bound;
    grp.area_weight = inst.alpha;
    for (TileId v : inst.windows[w].tiles) {
      auto& list = h.tile_windows_[v];
      const GroupId gid = static_cast<GroupId>(n + m + w);
      if (std::find(list.begin(), list.end(), gid) == list.end()) list.push_back(gid);
    }
  }

  // Terminals.
  VertexId next = h.copy_count_;
  for (std::size_t i = 0; i < inst.nets.size(); ++i) {
    const Net& net = inst.nets[i];
    h.net_ids_.push_back(net.id);
    h.sink_count_.push_back(static_cast<int>(net.sinks.size()));
    h.delay_limit_.push_back(net.delay_bound ? std::min(*net.delay_bound, R - 1) : R - 1);
    h.terminal_base_.push_back(next);
    const int terminals = 1 + static_cast<int>(net.sinks.size());
    for (int t = 0; t < terminals; ++t) h.terminal_net_.push_back(static_cast<int>(i));
    next += terminals;
  }
  const int vertex_total = next;

  std::vector<VertexId> tails, heads;
  std::vector<ArcClass> classes;
  std::vector<GroupId> arc_groups;
  std::vector<std::int16_t> params;
  auto add = [&](VertexId t, VertexId hd, ArcClass c, GroupId grp, int param) {
    tails.push_back(t);
    heads.push_back(hd);
    classes.push_back(c);
    arc_groups.push_back(grp);
    params.push_back(static_cast<std::int16_t>(param));
  };

  for (std::size_t i = 0; i < inst.nets.size(); ++i) {
    const Net& net = inst.nets[i];
    const int net_i = static_cast<int>(i);
    const int level = inst.level_of(net);
    const std::size_t src_count = inst.pin_assignment ? net.sources.size() : 1;
    for (std::size_t s = 0; s < src_count; ++s) {
      add(h.source_vertex(net_i), h.copy_vertex(net.sources[s], level, 0, 0), ArcClass::source, -1, 0);
    }
    for (std::size_t grp = 0; grp < net.sinks.size(); ++grp) {
      const auto& sinks = net.sinks[grp];
      const std::size_t sink_count = inst.pin_assignment ? sinks.size() : 1;
      for (std::size_t s = 0; s < sink_count; ++s) {
        for (int r = 0; r <= h.delay_limit_[i]; ++r) {
          for (int p = 0; p < P; ++p) {
            // Non-inverting buffers never change polarity.
            if (P == 1 && net.polarity == Polarity::negative) continue;
            if (P == 2 && net.polarity == Polarity::positive && p != 0) continue;
            if (P == 2 && net.polarity == Polarity::negative && p != 1) continue;
            for (int j = 0; j <= U; ++j) {
              add(h.copy_vertex(sinks[s], j, p, r), h.sink_vertex(net_i, static_cast<int>(grp)),
                  ArcClass::sink, -1, 0);
            }
          }
        }
      }
    }
  }

  for (EdgeId e = 0; e < m; ++e) {
    if (!h.groups_[n + e].active()) continue;
    const auto [a, b] = g.endpoints(e);
    for (int dir = 0; dir < 2; ++dir) {
      const TileId from = dir == 0 ? a : b;
      const TileId to = dir == 0 ? b : a;
      for (std::size_t w = 0; w < inst.wire_loads.size(); ++w) {
        const int d = inst.wire_loads[w];
        for (int r = 0; r < R; ++r) {
          for (int p = 0; p < P; ++p) {
            for (int j = d; j <= U; ++j) {
              add(h.copy_vertex(from, j, p, r), h.copy_vertex(to, j - d, p, r), ArcClass::wire,
                  h.wire_group(e), static_cast<int>(w));
            }
          }
        }
      }
    }
  }

  const int step = h.delay_mode_ ? 1 : 0;
  for (TileId v = 0; v < n; ++v) {
    bool usable = h.groups_[v].active();
    for (GroupId wg : h.tile_windows_[v]) usable = usable && h.groups_[wg].active();
    if (!usable) continue;
    for (int r = 0; r + step < R; ++r) {
      for (int p = 0; p < P; ++p) {
        for (std::size_t t = 0; t < inst.buffer_types.size(); ++t) {
          const int bound = inst.buffer_types[t];
          for (int j = 0; j < bound; ++j) {
            add(h.copy_vertex(v, j, p, r), h.copy_vertex(v, bound, (p + P - 1) % P, r + step),
                ArcClass::buffer, h.buffer_group(v), static_cast<int>(t));
          }
        }
        if (P == 2) {
          add(h.copy_vertex(v, U, p, r), h.copy_vertex(v, U, 1 - p, r + step), ArcClass::polarity_fix,
              h.buffer_group(v), h.max_bound_type_);
        }
      }
    }
  }

  h.out_offset_.assign(vertex_total + 1, 0);
  h.finalize(std::move(tails), std::move(heads), std::move(classes), std::move(arc_groups),
             std::move(params));
  return h;
}

void GadgetGraph::finalize(std::vector<VertexId> tails, std::vector<VertexId> heads,
                           std::vector<ArcClass> classes, std::vector<GroupId> groups,
                           std::vector<std::int16_t> params) {
  const int V = static_cast<int>(out_offset_.size()) - 1;
  const std::size_t A = tails.size();
  // Renumber arcs so that arc ids are sorted by tail (stable).
  std::vector<int> count(V + 1, 0);
  for (VertexId t : tails) ++count[t + 1];
  for (int v = 0; v < V; ++v) count[v + 1] += count[v];
  out_offset_ = count;
  std::vector<ArcId> order(A);
  {
    std::vector<int> pos(count.begin(), count.end() - 1);
    for (std::size_t a = 0; a < A; ++a) order[pos[tails[a]]++] = static_cast<ArcId>(a);
  }
  tail_.resize(A);
  head_.resize(A);
  class_.resize(A);
  group_.resize(A);
  param_.resize(A);
  out_arcs_.resize(A);
  for (std::size_t i = 0; i < A; ++i) {
    const ArcId src = order[i];
    tail_[i] = tails[src];
    head_[i] = heads[src];
    class_[i] = classes[src];
    group_[i] = groups[src];
    param_[i] = params[src];
    out_arcs_[i] = static_cast<ArcId>(i);
  }
  in_offset_.assign(V + 1, 0);
  for (VertexId hd : head_) ++in_offset_[hd + 1];
  for (int v = 0; v < V; ++v) in_offset_[v + 1] += in_offset_[v];
  in_arcs_.resize(A);
  {
    std::vector<int> pos(in_offset_.begin(), in_offset_.end() - 1);
    for (std::size_t a = 0; a < A; ++a) in_arcs_[pos[head_[a]]++] = static_cast<ArcId>(a);
  }

  // Kahn's algorithm; smallest vertex id first for a canonical order.
  std::vector<int> indegree(V, 0);
  for (VertexId hd : head_) ++indegree[hd];
  std::vector<VertexId> ready;
  for (VertexId v = V - 1; v >= 0; --v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::vector<VertexId> order_out;
  order_out.reserve(V);
  // A stack keeps this linear; the order is still a valid topological order.
  while (!ready.empty()) {
    const VertexId v = ready.back();
    ready.pop_back();
    order_out.push_back(v);
    for (ArcId a : out_arcs(v)) {
      if (--indegree[head_[a]] == 0) ready.push_back(head_[a]);
    }
  }
  if (static_cast<int>(order_out.size()) == V) topo_ = std::move(order_out);
}

CopyState GadgetGraph::copy_state(VertexId v) const {
  CopyState s;
  s.replica = v % replicas_;
  v /= replicas_;
  s.parity = v % parities_;
  v /= parities_;
  s.budget = v % (wireload_ + 1);
  s.tile = v / (wireload_ + 1);
  return s;
}

VertexId GadgetGraph::copy_vertex(TileId t, int budget, int parity, int replica) const {
  return ((t * (wireload_ + 1) + budget) * parities_ + parity) * replicas_ + replica;
}

int GadgetGraph::arc_load(ArcId a) const {
  return class_[a] == ArcClass::wire ? wire_loads_[param_[a]] : 0;
}

int GadgetGraph::active_group_count() const {
  return static_cast<int>(std::count_if(groups_.begin(), groups_.end(),
                                        [](const CapacityGroup& g) { return g.active(); }));
}

int GadgetGraph::count_arcs(ArcClass c) const {
  return static_cast<int>(std::count(class_.begin(), class_.end(), c));
}

int GadgetGraph::count_group_arcs(GroupId g) const {
  return static_cast<int>(std::count(group_.begin(), group_.end(), g));
}

std::string GadgetGraph::vertex_label(VertexId v) const {
  std::ostringstream os;
  if (!is_copy(v)) {
    const int net = terminal_net(v);
    const int offset = v - terminal_base_[net];
    if (offset == 0) os << "s[" << net_ids_[net] << "]";
    else os << "t" << offset << "[" << net_ids_[net] << "]";
    return os.str();
  }
  const CopyState s = copy_state(v);
  const Tile t = grid_.tile(s.tile);
  os << "v(" << t.x << "," << t.y << ")^" << s.budget;
  if (polarity_mode()) os << (s.parity == 0 ? "/even" : "/odd");
  if (delay_mode_) os << "@" << s.replica;
  return os.str();
}

std::string GadgetGraph::dump() const {
  std::ostringstream os;
  for (ArcId a = 0; a < arc_count(); ++a) {
    os << vertex_label(tail_[a]) << " -> " << vertex_label(head_[a]) << ' ' << class_name(class_[a]);
    if (class_[a] == ArcClass::wire || class_[a] == ArcClass::buffer) os << '#' << param_[a];
    os << ' ' << group_[a] << '\n';
  }
  return os.str();
}

namespace {

void decode_segment(const GadgetGraph& h, std::span<const ArcId> arcs, BufferedRouting& out,
                    bool must_start_at_source, bool must_end_at_sink) {
  if (arcs.empty()) throw std::invalid_argument("empty gadget path");
  VertexId at = h.tail(arcs.front());
  std::size_t i = 0;
  if (h.arc_class(arcs.front()) == ArcClass::source) {
    out.net = h.net_id(h.terminal_net(at));
    at = h.head(arcs.front());
    ++i;
  } else if (must_start_at_source || !h.is_copy(at)) {
    throw std::invalid_argument("gadget path does not start at a net source");
  }
  out.path.push_back(h.copy_state(at).tile);
  for (; i < arcs.size(); ++i) {
    const ArcId a = arcs[i];
    if (h.tail(a) != at) throw std::invalid_argument("gadget path is not contiguous");
    const CopyState from = h.copy_state(at);
    switch (h.arc_class(a)) {
      case ArcClass::source:
        throw std::invalid_argument("source arc inside gadget path");
      case ArcClass::sink:
        if (i + 1 != arcs.size()) throw std::invalid_argument("sink arc before end of gadget path");
        if (out.net.empty()) out.net = h.net_id(h.terminal_net(h.head(a)));
        return;
      case ArcClass::wire: {
        const CopyState to = h.copy_state(h.head(a));
        if (to.budget != from.budget - h.arc_load(a)) throw std::logic_error("wire arc breaks budget");
        out.path.push_back(to.tile);
        out.widths.push_back(h.arc_param(a));
        break;
      }
      case ArcClass::buffer:
      case ArcClass::polarity_fix: {
        BufferPlacement b;
        b.position = static_cast<int>(out.path.size()) - 1;
        b.type = h.arc_param(a);
        b.inverting = h.polarity_mode();
        b.kind = h.arc_class(a) == ArcClass::buffer ? BufferKind::buffer : BufferKind::polarity_fix;
        out.buffers.push_back(b);
        break;
      }
    }
    at = h.head(a);
  }
  if (must_end_at_sink) throw std::invalid_argument("gadget path does not end at a net sink");
}

}  // namespace

BufferedRouting decode_path(const GadgetGraph& h, std::span<const ArcId> path) {
  BufferedRouting r;
  decode_segment(h, path, r, true, true);
  return r;
}

BufferedRouting decode_route(const GadgetGraph& h, const GadgetRoute& route) {
  if (route.segments.size() == 1) return decode_path(h, route.segments.front());
  if (route.segments.size() != 3) throw std::invalid_argument("gadget route needs 1 or 3 segments");
  BufferedRouting trunk;
  decode_segment(h, route.segments[0], trunk, true, false);
  const VertexId branch_point = h.head(route.segments[0].back());
  for (int b = 1; b <= 2; ++b) {
    const auto& seg = route.segments[b];
    if (seg.empty() || h.copy_state(h.tail(seg.front())).tile != h.copy_state(branch_point).tile) {
      throw std::invalid_argument("branch does not start at the branch tile");
    }
    BufferedRouting branch;
    decode_segment(h, seg, branch, false, true);
    branch.net = trunk.net;
    trunk.branches.push_back(std::move(branch));
  }
  return trunk;
}

namespace {

void check_guard(const GadgetGraph& h, const EnumerationGuard& guard) {
  if (h.grid().tile_count() > guard.max_tiles || h.wireload() > guard.max_wireload) {
    throw std::length_error("instance exceeds the enumeration guard");
  }
}

struct PathWalker {
  const GadgetGraph& h;
  VertexId target;
  std::vector<char> on_vertex;
  std::vector<char> on_tile;
  std::vector<ArcId> stack;
  std::uint64_t count = 0;
  std::vector<std::vector<ArcId>>* sink = nullptr;

  void walk(VertexId v) {
    for (ArcId a : h.out_arcs(v)) {
      const VertexId w = h.head(a);
      if (w == target) {
        ++count;
        if (sink) {
          stack.push_back(a);
          sink->push_back(stack);
          stack.pop_back();
        }
        continue;
      }
      if (!h.is_copy(w) || on_vertex[w]) continue;
      const TileId t = h.copy_state(w).tile;
      const bool new_tile = h.arc_class(a) == ArcClass::wire || h.arc_class(a) == ArcClass::source;
      if (new_tile && on_tile[t]) continue;
      on_vertex[w] = 1;
      if (new_tile) on_tile[t] = 1;
      stack.push_back(a);
      walk(w);
      stack.pop_back();
      if (new_tile) on_tile[t] = 0;
      on_vertex[w] = 0;
    }
  }
};

std::uint64_t walk_paths(const GadgetGraph& h, int net, int group, const EnumerationGuard& guard,
                         std::vector<std::vector<ArcId>>* out) {
  check_guard(h, guard);
  PathWalker w{h, h.sink_vertex(net, group), std::vector<char>(h.vertex_count(), 0),
               std::vector<char>(h.grid().tile_count(), 0), {}, 0, out};
  w.walk(h.source_vertex(net));
  return w.count;
}

}  // namespace

std::uint64_t count_paths(const GadgetGraph& h, int net, int group, const EnumerationGuard& guard) {
  return walk_paths(h, net, group, guard, nullptr);
}

std::vector<std::vector<ArcId>> enumerate_paths(const GadgetGraph& h, int net, int group,
                                                const EnumerationGuard& guard) {
  std::vector<std::vector<ArcId>> out;
  walk_paths(h, net, group, guard, &out);
  return out;
}

std::uint64_t count_dag_paths(const GadgetGraph& h, int net, int group) {
  if (!h.acyclic()) throw std::logic_error("gadget graph has a cycle");
  std::vector<std::uint64_t> ways(h.vertex_count(), 0);
  ways[h.source_vertex(net)] = 1;
  for (VertexId v : h.topological_order()) {
    if (ways[v] == 0) continue;
    for (ArcId a : h.out_arcs(v)) ways[h.head(a)] += ways[v];
  }
  return ways[h.sink_vertex(net, group)];
}

}  // namespace bgr
