#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bgr/instance.hpp"
#include "bgr/routing.hpp"

namespace bgr {

using VertexId = std::int32_t;
using ArcId = std::int32_t;
using GroupId = std::int32_t;

enum class ArcClass : std::uint8_t { source, sink, wire, buffer, polarity_fix };

enum class GroupKind : std::uint8_t { buffer, wire, window };

// One capacity row of the packing LP: all buffer arcs of a tile, all
// crossings of a tile edge, or all buffer arcs inside a window.
struct CapacityGroup {
  GroupKind kind = GroupKind::buffer;
  int index = 0;          // tile, edge or window index
  int raw_capacity = 0;   // b(v), w(e) or window bound
  double scaled = 0.0;    // mu0*b(v), nu0*w(e) or window bound
  double area_weight = 0; // alpha for buffer/window rows, beta for wire rows
  bool active() const { return scaled > 0.0; }
};

// State of a tile copy: remaining wireload budget, inverter parity and
// delay replica.
struct CopyState {
  TileId tile = 0;
  int budget = 0;
  int parity = 0;
  int replica = 0;
};

struct GadgetOptions {
  // Replica count in delay mode is max(bounded delays, max_delay) + 1;
  // nets without a delay bound may use every replica.
  std::optional<int> max_delay;
};

// A source-to-sink walk through the gadget. `segments` has one entry for a
// 2-pin net, or three (trunk, branch to sink group 0, branch to sink group 1)
// for a 3-pin net.
struct GadgetRoute {
  std::vector<std::vector<ArcId>> segments;
  friend auto operator<=>(const GadgetRoute&, const GadgetRoute&) = default;
};

// Layered directed graph whose terminal-to-terminal paths are exactly the
// feasible buffered routings. Immutable once built.
class GadgetGraph {
 public:
  static GadgetGraph build(const Instance& inst, const GadgetOptions& opts = {});

  int wireload() const { return wireload_; }
  bool polarity_mode() const { return parities_ == 2; }
  bool delay_mode() const { return delay_mode_; }
  int replicas() const { return replicas_; }
  int net_count() const { return static_cast<int>(net_ids_.size()); }
  const std::string& net_id(int net) const { return net_ids_[net]; }
  int sink_groups(int net) const { return sink_count_[net]; }
  int delay_limit(int net) const { return delay_limit_[net]; }
  const TileGraph& grid() const { return grid_; }

  int vertex_count() const { return static_cast<int>(out_offset_.size()) - 1; }
  int tile_copy_count() const { return copy_count_; }
  int arc_count() const { return static_cast<int>(tail_.size()); }

  bool is_copy(VertexId v) const { return v < copy_count_; }
  CopyState copy_state(VertexId v) const;
  VertexId copy_vertex(TileId t, int budget, int parity = 0, int replica = 0) const;
  VertexId source_vertex(int net) const { return terminal_base_[net]; }
  VertexId sink_vertex(int net, int group = 0) const { return terminal_base_[net] + 1 + group; }
  // Net owning a terminal vertex, or -1 for tile copies.
  int terminal_net(VertexId v) const { return is_copy(v) ? -1 : terminal_net_[v - copy_count_]; }

  VertexId tail(ArcId a) const { return tail_[a]; }
  VertexId head(ArcId a) const { return head_[a]; }
  ArcClass arc_class(ArcId a) const { return class_[a]; }
  GroupId arc_group(ArcId a) const { return group_[a]; }
  // Buffer type index for buffer arcs, wire width index for wire arcs.
  int arc_param(ArcId a) const { return param_[a]; }
  int arc_load(ArcId a) const;  // budget decrease of a wire arc

  std::span<const ArcId> out_arcs(VertexId v) const {
    return {out_arcs_.data() + out_offset_[v], out_arcs_.data() + out_offset_[v + 1]};
  }
  std::span<const ArcId> in_arcs(VertexId v) const {
    return {in_arcs_.data() + in_offset_[v], in_arcs_.data() + in_offset_[v + 1]};
  }

  const std::vector<CapacityGroup>& groups() const { return groups_; }
  GroupId buffer_group(TileId t) const { return t; }
  GroupId wire_group(EdgeId e) const { return grid_.tile_count() + e; }
  GroupId window_group(int w) const { return grid_.tile_count() + grid_.edge_count() + w; }
  // Window groups covering a tile.
  std::span<const GroupId> tile_windows(TileId t) const { return tile_windows_[t]; }
  int active_group_count() const;

  // Count of arcs of a class, and arcs in a given group.
  int count_arcs(ArcClass c) const;
  int count_group_arcs(GroupId g) const;

  // Kahn order over all vertices; empty when the graph has a cycle.
  const std::vector<VertexId>& topological_order() const { return topo_; }
  bool acyclic() const { return !topo_.empty() || vertex_count() == 0; }

  std::string vertex_label(VertexId v) const;
  // Text edge list: "tail -> head class group" per arc.
  std::string dump() const;

 private:
  void finalize(std::vector<VertexId> tails, std::vector<VertexId> heads,
                std::vector<ArcClass> classes, std::vector<GroupId> groups,
                std::vector<std::int16_t> params);

  TileGraph grid_;
  int wireload_ = 0;
  int parities_ = 1;
  int replicas_ = 1;
  bool delay_mode_ = false;
  int copy_count_ = 0;
  int max_bound_type_ = 0;
  std::vector<int> wire_loads_;

  std::vector<std::string> net_ids_;
  std::vector<int> sink_count_;
  std::vector<int> delay_limit_;
  std::vector<VertexId> terminal_base_;
  std::vector<int> terminal_net_;

  std::vector<VertexId> tail_, head_;
  std::vector<ArcClass> class_;
  std::vector<GroupId> group_;
  std::vector<std::int16_t> param_;
  std::vector<int> out_offset_, in_offset_;
  std::vector<ArcId> out_arcs_, in_arcs_;

  std::vector<CapacityGroup> groups_;
  std::vector<std::vector<GroupId>> tile_windows_;
  std::vector<VertexId> topo_;
};

// Converts one gadget walk (terminal to terminal for 2-pin nets) into a
// buffered routing. Throws std::invalid_argument on a broken walk.
BufferedRouting decode_path(const GadgetGraph& h, std::span<const ArcId> path);
BufferedRouting decode_route(const GadgetGraph& h, const GadgetRoute& route);

// Guard for the exhaustive instruments below.
struct EnumerationGuard {
  int max_tiles = 12;
  int max_wireload = 3;
};

// Number of source-to-sink paths of a net's sink group that revisit
// neither a gadget vertex nor a tile. Throws std::length_error past the guard.
std::uint64_t count_paths(const GadgetGraph& h, int net, int group = 0,
                          const EnumerationGuard& guard = {});
// The same paths, materialised.
std::vector<std::vector<ArcId>> enumerate_paths(const GadgetGraph& h, int net, int group = 0,
                                                const EnumerationGuard& guard = {});
// Number of all source-to-sink paths of an acyclic gadget (dynamic program).
std::uint64_t count_dag_paths(const GadgetGraph& h, int net, int group = 0);

}  // namespace bgr
