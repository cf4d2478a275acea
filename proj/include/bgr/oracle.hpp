#pragma once

#include <optional>
#include <vector>

#include "bgr/instance.hpp"
#include "bgr/routing.hpp"

namespace bgr {

// Brute-force enumeration of every feasible buffered routing of one sink
// group of a net, by recursion over the tile graph with explicit wireload
// bookkeeping (no gadget involved). Tile paths are simple. A buffer of bound
// B is only placed where the remaining budget is below B, so each routing
// has a unique canonical form. Limited to tiny instances: at most 12 tiles
// and U <= 3; throws std::length_error otherwise.
std::vector<BufferedRouting> enumerate_routings(const Instance& inst, int net, int group = 0,
                                                std::optional<int> max_delay = std::nullopt);

}  // namespace bgr
