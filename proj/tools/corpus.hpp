#pragma once

#include <vector>

#include "bgr/generator.hpp"
#include "bgr/solver.hpp"

namespace bgr {

struct CorpusEntry {
  int index = 0;
  Instance instance;
  bool budgeted = false;  // D = D_max instead of INF
};

// Seeded desk-scale corpus: grids 4x4..6x6, 6..20 nets, U in {2, 3}; odd
// entries carry the area budget D_max.
inline std::vector<CorpusEntry> make_corpus(int count = 30) {
  std::vector<CorpusEntry> out;
  for (int i = 1; i <= count; ++i) {
    GeneratorParams p;
    p.width = 4 + i % 3;
    p.height = 4 + (i / 3) % 3;
    p.nets = 6 + (i * 7) % 15;
    p.wireload = 2 + i % 2;
    p.pin_tiles = i % 4 == 0 ? 3 : 1;
    p.buffer_cap_min = 1;
    p.buffer_cap_max = 3;
    p.wire_cap_min = 1;
    p.wire_cap_max = 3;
    p.seed = 1000 + static_cast<std::uint64_t>(i);
    CorpusEntry e;
    e.index = i;
    e.instance = generate_instance(p);
    e.budgeted = i % 2 == 1;
    if (e.budgeted) e.instance.area_budget = area_upper_bound(e.instance);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace bgr
