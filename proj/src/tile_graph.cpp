#include "bgr/tile_graph.hpp"

#include <stdexcept>

namespace bgr {

TileGraph::TileGraph(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x + 1 < width; ++x) edges_.emplace_back(id(x, y), id(x + 1, y));
  }
  for (int y = 0; y + 1 < height; ++y) {
    for (int x = 0; x < width; ++x) edges_.emplace_back(id(x, y), id(x, y + 1));
  }
  adjacency_.resize(tile_count());
  // Insert in direction order -x, +x, -y, +y for every tile.
  for (TileId v = 0; v < tile_count(); ++v) {
    const Tile t = tile(v);
    const int hpr = width_ - 1;  // horizontal edges per row
    const int horizontal = hpr * height_;
    if (t.x > 0) adjacency_[v].emplace_back(v - 1, t.y * hpr + t.x - 1);
    if (t.x + 1 < width_) adjacency_[v].emplace_back(v + 1, t.y * hpr + t.x);
    if (t.y > 0) adjacency_[v].emplace_back(v - width_, horizontal + (t.y - 1) * width_ + t.x);
    if (t.y + 1 < height_) adjacency_[v].emplace_back(v + width_, horizontal + t.y * width_ + t.x);
  }
  buffer_capacity_.assign(tile_count(), 0);
  wire_capacity_.assign(edges_.size(), 0);
}

std::optional<EdgeId> TileGraph::edge_between(TileId a, TileId b) const {
  if (a < 0 || a >= tile_count()) return std::nullopt;
  for (const auto& [nb, e] : adjacency_[a]) {
    if (nb == b) return e;
  }
  return std::nullopt;
}

}  // namespace bgr
