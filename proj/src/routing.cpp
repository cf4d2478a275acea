#include "bgr/routing.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace bgr {

bool BufferedRouting::operator==(const BufferedRouting& o) const {
  return net == o.net && path == o.path && buffers == o.buffers && widths == o.widths &&
         branches == o.branches;
}

std::strong_ordering BufferedRouting::operator<=>(const BufferedRouting& o) const {
  if (auto c = net <=> o.net; c != 0) return c;
  if (auto c = path <=> o.path; c != 0) return c;
  if (auto c = buffers <=> o.buffers; c != 0) return c;
  if (auto c = widths <=> o.widths; c != 0) return c;
  return std::lexicographical_compare_three_way(branches.begin(), branches.end(),
                                                o.branches.begin(), o.branches.end());
}

namespace {

void accumulate(const BufferedRouting& r, const TileGraph& g, ResourceUsage& u) {
  for (const auto& b : r.buffers) {
    if (b.position >= 0 && b.position < static_cast<int>(r.path.size())) ++u.buffers[r.path[b.position]];
  }
  for (std::size_t i = 0; i + 1 < r.path.size(); ++i) {
    if (auto e = g.edge_between(r.path[i], r.path[i + 1])) ++u.wires[*e];
  }
  for (const auto& br : r.branches) accumulate(br, g, u);
}

int count_buffers(const BufferedRouting& r) {
  int c = static_cast<int>(r.buffers.size());
  for (const auto& br : r.branches) c += count_buffers(br);
  return c;
}

int count_edges(const BufferedRouting& r) {
  int c = r.path.empty() ? 0 : static_cast<int>(r.path.size()) - 1;
  for (const auto& br : r.branches) c += count_edges(br);
  return c;
}

}  // namespace

ResourceUsage resource_usage(std::span<const BufferedRouting> routings, const TileGraph& g) {
  ResourceUsage u;
  u.buffers.assign(g.tile_count(), 0);
  u.wires.assign(g.edge_count(), 0);
  for (const auto& r : routings) accumulate(r, g, u);
  return u;
}

Congestion congestion(const ResourceUsage& usage, const TileGraph& g) {
  Congestion c;
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (TileId v = 0; v < g.tile_count(); ++v) {
    const int used = usage.buffers[v];
    if (used == 0) continue;
    const int cap = g.buffer_capacity(v);
    if (cap <= 0) {
      c.mu = inf;
      c.zero_capacity_used = true;
    } else {
      c.mu = std::max(c.mu, static_cast<double>(used) / cap);
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const int used = usage.wires[e];
    if (used == 0) continue;
    const int cap = g.wire_capacity(e);
    if (cap <= 0) {
      c.nu = inf;
      c.zero_capacity_used = true;
    } else {
      c.nu = std::max(c.nu, static_cast<double>(used) / cap);
    }
  }
  return c;
}

Congestion congestion(std::span<const BufferedRouting> routings, const TileGraph& g) {
  return congestion(resource_usage(routings, g), g);
}

int buffer_count(std::span<const BufferedRouting> routings) {
  int c = 0;
  for (const auto& r : routings) c += count_buffers(r);
  return c;
}

int wirelength(std::span<const BufferedRouting> routings) {
  int c = 0;
  for (const auto& r : routings) c += count_edges(r);
  return c;
}

double area(std::span<const BufferedRouting> routings, double alpha, double beta) {
  return alpha * buffer_count(routings) + beta * wirelength(routings);
}

}  // namespace bgr
