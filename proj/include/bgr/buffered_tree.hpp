#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bgr/tile_graph.hpp"

namespace bgr {

enum class TreeVertexKind { source, sink, buffer, steiner };

struct TreeVertex {
  std::string name;
  TreeVertexKind kind = TreeVertexKind::sink;
  TileId tile = 0;
  // Wireload already committed at this vertex when it drives its children
  // (e.g. sibling branches or downstream sink loads).
  int committed_load = 0;
  friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
};

// A buffered routing tree of a multipin net, supplied as input.
struct BufferedTree {
  std::string net;
  std::vector<TreeVertex> vertices;
  std::vector<std::pair<int, int>> edges;  // undirected, vertex indices
  friend bool operator==(const BufferedTree&, const BufferedTree&) = default;
};

}  // namespace bgr
