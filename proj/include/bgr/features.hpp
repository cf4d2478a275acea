#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bgr/instance.hpp"
#include "bgr/multipin.hpp"

namespace bgr {

// Model extensions that can be switched off for a run.
struct FeatureSet {
  bool pin = true;    // pin assignment over candidate tiles
  bool pol = true;    // inverting buffers and polarity constraints
  bool bsize = true;  // buffer types beyond the U-bound one
  bool wsize = true;  // wire widths beyond the unit one
  bool delay = true;  // buffer-count delay bounds

  static FeatureSet all() { return {}; }
  static FeatureSet none() { return {false, false, false, false, false}; }
  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;
};

// Comma-separated subset of pin,pol,bsize,wsize,delay; "all" and "none"
// are accepted too. Throws std::invalid_argument on unknown names.
FeatureSet parse_features(std::string_view list);
std::string features_string(const FeatureSet& f);

// Drops the switched-off extensions from an instance.
Instance apply_features(const Instance& inst, const FeatureSet& f);

// Multinet expansion (star unless told otherwise) followed by the feature
// mask.
Instance prepare_instance(const Instance& inst, std::optional<Decomposition> decompose, const FeatureSet& f);

}  // namespace bgr
