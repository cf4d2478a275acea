#pragma once

#include <string>
#include <vector>

#include "bgr/instance.hpp"
#include "bgr/routing.hpp"

namespace bgr {

struct VerifyReport {
  std::vector<std::string> violations;
  double mu = 0.0;
  double nu = 0.0;
  double window_ratio = 0.0;  // max buffers in a window / its bound
  double area = 0.0;
  int wirelength = 0;
  int buffers = 0;
  bool ok() const { return violations.empty(); }
};

// Checks routings against the instance from first principles: exactly one
// routing per net, pin tiles, tile adjacency, buffer sites and wire
// capacity present, the wireload never exceeded, polarity parity and the
// buffer-count delay bound. Congestion and area are recomputed from raw
// counts.
VerifyReport verify_routings(const Instance& inst, const std::vector<BufferedRouting>& routings);

}  // namespace bgr
