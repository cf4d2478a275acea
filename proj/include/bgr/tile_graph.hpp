#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace bgr {

using TileId = std::int32_t;
using EdgeId = std::int32_t;

struct Tile {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Tile&, const Tile&) = default;
};

// Rectangular grid of tiles with 4-neighbour adjacency. Tile ids are
// row-major (id = y * width + x). Horizontal edges are numbered first,
// then vertical ones.
class TileGraph {
 public:
  TileGraph() = default;
  TileGraph(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  int tile_count() const { return width_ * height_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  bool contains(Tile t) const {
    return t.x >= 0 && t.y >= 0 && t.x < width_ && t.y < height_;
  }
  TileId id(Tile t) const { return t.y * width_ + t.x; }
  TileId id(int x, int y) const { return y * width_ + x; }
  Tile tile(TileId v) const { return {v % width_, v / width_}; }

  std::pair<TileId, TileId> endpoints(EdgeId e) const { return edges_[e]; }
  std::optional<EdgeId> edge_between(TileId a, TileId b) const;
  // (neighbour, edge) pairs in a fixed order: -x, +x, -y, +y.
  const std::vector<std::pair<TileId, EdgeId>>& neighbours(TileId v) const {
    return adjacency_[v];
  }

  int buffer_capacity(TileId v) const { return buffer_capacity_[v]; }
  int wire_capacity(EdgeId e) const { return wire_capacity_[e]; }
  void set_buffer_capacity(TileId v, int c) { buffer_capacity_[v] = c; }
  void set_wire_capacity(EdgeId e, int c) { wire_capacity_[e] = c; }
  const std::vector<int>& buffer_capacities() const { return buffer_capacity_; }
  const std::vector<int>& wire_capacities() const { return wire_capacity_; }

  friend bool operator==(const TileGraph& a, const TileGraph& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.buffer_capacity_ == b.buffer_capacity_ &&
           a.wire_capacity_ == b.wire_capacity_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::pair<TileId, TileId>> edges_;
  std::vector<std::vector<std::pair<TileId, EdgeId>>> adjacency_;
  std::vector<int> buffer_capacity_;
  std::vector<int> wire_capacity_;
};

inline int manhattan(Tile a, Tile b) {
  return (a.x > b.x ? a.x - b.x : b.x - a.x) + (a.y > b.y ? a.y - b.y : b.y - a.y);
}

}  // namespace bgr
