#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "bgr/buffered_tree.hpp"
#include "bgr/instance.hpp"
#include "bgr/tile_graph.hpp"

namespace bgr {

enum class Decomposition { star, mst, fixed, flexible, half_flexible };

std::optional<Decomposition> parse_decomposition(std::string_view name);
std::string_view decomposition_name(Decomposition d);

// k terminals (source included), p Steiner points, b buffers.
struct TreeCounts {
  int terminals = 0;
  int steiner = 0;
  int buffers = 0;
};
TreeCounts tree_counts(const BufferedTree& t);

// Structural problems of a tree: not a tree, not exactly one source,
// sinks/buffers/Steiner points of the wrong degree. Empty means valid.
std::vector<std::string> check_tree(const BufferedTree& t);

// A subnet cut from a buffered tree. `vertices` lists the tree vertices it
// connects, driver first.
struct Subnet {
  Net net;
  std::vector<int> vertices;
};

// One 2-pin net per sink; every subnet keeps the source candidates and
// level. A 1-sink net is returned unchanged.
std::vector<Net> decompose_star(const MultipinNet& net);

// Kruskal over the pins (source first, then sinks) with the Manhattan
// distance of their first candidate tiles; ties by (lower pin index,
// higher pin index). One subnet per tree edge, driven from the end nearer
// the source.
std::vector<Net> decompose_mst(const MultipinNet& net, const TileGraph& g);

// The tree's source level defaults to the wireload bound. Every subnet is
// driven at (driver level - committed load of the driver), where buffers
// and Steiner points start from `wireload`; std::invalid_argument if that is
// negative or the tree is malformed.

// One subnet per tree edge (k + p + b - 1).
std::vector<Subnet> split_fixed_fixed(const BufferedTree& t, int wireload,
                                      std::optional<int> source_level = std::nullopt);
// One subnet per edge of the tree with buffers removed (k + p - 1).
std::vector<Subnet> split_fixed_flexible(const BufferedTree& t, int wireload,
                                         std::optional<int> source_level = std::nullopt);
// Two-colours the unbuffered tree by depth parity from the source, fixes
// the colour with fewer Steiner points (ties: the colour without the
// source) and turns every free Steiner point into one 3-pin subnet.
// Rejects Steiner points of degree 4.
std::vector<Subnet> split_half_flexible(const BufferedTree& t, int wireload,
                                        std::optional<int> source_level = std::nullopt);

// Replaces every multinet by its subnets, appended to the 2-pin nets. Tree
// modes need a TREE for each multinet. Multinets and trees are dropped from
// the result.
Instance expand_multinets(const Instance& inst, Decomposition mode);

}  // namespace bgr
