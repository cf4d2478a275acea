#include "bgr/features.hpp"

#include <stdexcept>

namespace bgr {

FeatureSet parse_features(std::string_view list) {
  if (list == "all") return FeatureSet::all();
  FeatureSet f = FeatureSet::none();
  if (list == "none" || list.empty()) return f;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    const std::string_view name = list.substr(start, comma - start);
    if (name == "pin") f.pin = true;
    else if (name == "pol") f.pol = true;
    else if (name == "bsize") f.bsize = true;
    else if (name == "wsize") f.wsize = true;
    else if (name == "delay") f.delay = true;
    else throw std::invalid_argument("unknown feature '" + std::string(name) + "'");
    start = comma + 1;
  }
  return f;
}

std::string features_string(const FeatureSet& f) {
  std::string s;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!s.empty()) s += ',';
    s += name;
  };
  add(f.pin, "pin");
  add(f.pol, "pol");
  add(f.bsize, "bsize");
  add(f.wsize, "wsize");
  add(f.delay, "delay");
  return s.empty() ? "none" : s;
}

Instance apply_features(const Instance& inst, const FeatureSet& f) {
  Instance x = inst;
  if (!f.pin) x.pin_assignment = false;
  if (!f.pol) {
    x.inverting = false;
    for (auto& n : x.nets) n.polarity = Polarity::unconstrained;
  }
  if (!f.bsize) x.buffer_types = {x.wireload};
  if (!f.wsize) x.wire_loads = {1};
  if (!f.delay) {
    for (auto& n : x.nets) n.delay_bound.reset();
  }
  return x;
}

Instance prepare_instance(const Instance& inst, std::optional<Decomposition> decompose, const FeatureSet& f) {
  if (inst.multinets.empty() && !decompose) return apply_features(inst, f);
  return apply_features(expand_multinets(inst, decompose.value_or(Decomposition::star)), f);
}

}  // namespace bgr
