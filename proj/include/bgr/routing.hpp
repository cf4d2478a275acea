#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "bgr/tile_graph.hpp"

namespace bgr {

enum class BufferKind { buffer, polarity_fix };

struct BufferPlacement {
  int position = 0;  // index into the owning path
  int type = 0;      // index into Instance::buffer_types
  bool inverting = false;
  BufferKind kind = BufferKind::buffer;
  friend auto operator<=>(const BufferPlacement&, const BufferPlacement&) = default;
};

// A buffered routing of one net. For a 3-pin net `path` is the trunk from
// the source pin to the branch tile and `branches` holds the two branch
// routings, each starting at path.back(). Buffers are listed in the order
// they are passed along the path.
struct BufferedRouting {
  std::string net;
  std::vector<TileId> path;
  std::vector<BufferPlacement> buffers;
  std::vector<int> widths;  // per path edge, index into Instance::wire_loads
  std::vector<BufferedRouting> branches;

  bool operator==(const BufferedRouting& o) const;
  std::strong_ordering operator<=>(const BufferedRouting& o) const;
};

struct Congestion {
  double mu = 0.0;  // max buffers(v) / b(v)
  double nu = 0.0;  // max crossings(e) / w(e)
  bool zero_capacity_used = false;
};

// Per-tile buffer counts and per-edge crossing counts over all routings,
// branches included.
struct ResourceUsage {
  std::vector<int> buffers;
  std::vector<int> wires;
};

ResourceUsage resource_usage(std::span<const BufferedRouting> routings, const TileGraph& g);
Congestion congestion(std::span<const BufferedRouting> routings, const TileGraph& g);
Congestion congestion(const ResourceUsage& usage, const TileGraph& g);

int buffer_count(std::span<const BufferedRouting> routings);
int wirelength(std::span<const BufferedRouting> routings);  // path edges

// alpha * buffers + beta * wirelength. Wire width does not change area.
double area(std::span<const BufferedRouting> routings, double alpha, double beta);

}  // namespace bgr
