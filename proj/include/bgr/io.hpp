#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bgr/gadget.hpp"
#include "bgr/instance.hpp"
#include "bgr/routing.hpp"
#include "bgr/solver.hpp"
#include "bgr/tradeoff.hpp"

namespace bgr {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Routing file: JSON with the instance digest and one entry per net; tiles
// are written as [x, y].
std::string routings_to_json(const Instance& inst, const std::vector<BufferedRouting>& routings);

struct RoutingFile {
  std::string instance_digest;  // empty when the file carries none
  std::vector<BufferedRouting> routings;
};
RoutingFile routings_from_json(const Instance& inst, std::string_view text);

inline constexpr int kFractionalVersion = 1;

// What cmd_round needs from a solve: the flows and path pools as gadget arc
// ids, plus the instance transformations that produced the gadget.
struct FractionalDump {
  int version = kFractionalVersion;
  std::string instance_digest;  // digest of the transformed instance
  std::string decompose;        // empty: no multinet expansion
  std::string features;         // empty: all features as given
  double lambda = 0.0;
  double lambda_lb = 0.0;
  int phases = 0;
  std::vector<std::vector<RouteFlow>> flows;
  std::vector<std::vector<GadgetRoute>> pool;
};

std::string fractional_to_json(const FractionalDump& dump);
// Throws FormatError on malformed input or an unsupported version.
FractionalDump fractional_from_json(std::string_view text);

// Per-phase table; the elapsed column only with `timing`.
std::string phase_csv(const std::vector<PhaseStats>& stats, bool timing);
std::string tradeoff_csv(const std::vector<TradeoffSample>& samples);
std::string region_csv(const std::vector<RegionPoint>& points);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

}  // namespace bgr
