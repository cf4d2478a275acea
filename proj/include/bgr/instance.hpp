#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bgr/buffered_tree.hpp"
#include "bgr/tile_graph.hpp"

namespace bgr {

enum class Polarity { unconstrained, positive, negative };

// A 2-pin net (one sink group) or a 3-pin net (two sink groups). Pins are
// given as candidate tile sets.
struct Net {
  std::string id;
  std::vector<TileId> sources;
  std::vector<std::vector<TileId>> sinks;
  Polarity polarity = Polarity::unconstrained;
  std::optional<int> delay_bound;   // max number of inserted buffers
  std::optional<int> source_level;  // unset means U
  friend bool operator==(const Net&, const Net&) = default;
};

// Net with an arbitrary number of sinks; must be decomposed before routing.
struct MultipinNet {
  std::string id;
  std::vector<TileId> sources;
  std::vector<std::vector<TileId>> sinks;
  std::optional<int> source_level;
  friend bool operator==(const MultipinNet&, const MultipinNet&) = default;
};

struct Window {
  int bound = 0;
  std::vector<TileId> tiles;
  friend bool operator==(const Window&, const Window&) = default;
};

inline constexpr double kInfiniteArea = std::numeric_limits<double>::infinity();

struct Instance {
  TileGraph grid;
  std::vector<Net> nets;
  int wireload = 0;  // U
  double alpha = 1.0;
  double beta = 1.0;
  double mu0 = 1.0;
  double nu0 = 1.0;
  double area_budget = kInfiniteArea;  // D
  std::vector<int> buffer_types;       // wireload bound of every buffer type
  std::vector<int> wire_loads;         // per-unit load of every wire width
  bool inverting = false;
  bool pin_assignment = true;
  std::vector<Window> windows;
  std::vector<MultipinNet> multinets;
  std::vector<BufferedTree> trees;

  int level_of(const Net& n) const { return n.source_level.value_or(wireload); }
  int max_buffer_bound() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Parses the line-oriented instance format, applies defaults and validates.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

// Canonical text form; parse_instance(emit_instance(i)) == i for any
// instance whose defaults are applied.
std::string emit_instance(const Instance& inst);

// Collects every invariant violation; empty means valid.
std::vector<std::string> validate(const Instance& inst);

// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string instance_digest(const Instance& inst);

}  // namespace bgr
