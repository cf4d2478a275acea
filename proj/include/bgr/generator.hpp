#pragma once

#include <cstdint>

#include "bgr/instance.hpp"

namespace bgr {

// Synthetic instance parameters. Capacities are drawn uniformly from the
// inclusive ranges; pins are placed uniformly at random.
struct GeneratorParams {
  int width = 4;
  int height = 4;
  int nets = 5;
  int wireload = 2;  // U
  int buffer_cap_min = 1;
  int buffer_cap_max = 3;
  int wire_cap_min = 1;
  int wire_cap_max = 3;
  std::uint64_t seed = 1;

  // Candidate tiles per pin: the pin tile and its nearest neighbours
  // (Manhattan distance, then tile id). 1 disables pin assignment.
  int pin_tiles = 1;
  // Upper bound on the source-sink distance; 0 means the whole grid.
  int max_distance = 0;
  double three_pin_fraction = 0.0;

  bool inverting = false;
  double polarity_fraction = 0.0;  // nets given a required polarity
  bool buffer_sizing = false;      // adds a second, weaker buffer type
  bool wire_sizing = false;        // adds a double-load wire width
  double delay_fraction = 0.0;     // nets given a buffer-count delay bound
  int windows = 0;                 // random 2x2 windows

  double alpha = 1.0;
  double beta = 1.0;
  double mu0 = 1.0;
  double nu0 = 1.0;
};

// Deterministic for fixed parameters. Throws std::invalid_argument for
// parameters that cannot yield routable nets (U < 1, empty grid, zero wire
// capacity, ...).
Instance generate_instance(const GeneratorParams& params);

}  // namespace bgr
