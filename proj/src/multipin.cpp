#include "bgr/multipin.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace bgr {

std::optional<Decomposition> parse_decomposition(std::string_view name) {
  if (name == "star") return Decomposition::star;
  if (name == "mst") return Decomposition::mst;
  if (name == "fixed") return Decomposition::fixed;
  if (name == "flexible") return Decomposition::flexible;
  if (name == "half-flex") return Decomposition::half_flexible;
  return std::nullopt;
}

std::string_view decomposition_name(Decomposition d) {
  switch (d) {
    case Decomposition::star: return "star";
    case Decomposition::mst: return "mst";
    case Decomposition::fixed: return "fixed";
    case Decomposition::flexible: return "flexible";
    case Decomposition::half_flexible: return "half-flex";
  }
  return "?";
}

TreeCounts tree_counts(const BufferedTree& t) {
  TreeCounts c;
  for (const auto& v : t.vertices) {
    switch (v.kind) {
      case TreeVertexKind::source:
      case TreeVertexKind::sink: ++c.terminals; break;
      case TreeVertexKind::steiner: ++c.steiner; break;
      case TreeVertexKind::buffer: ++c.buffers; break;
    }
  }
  return c;
}

namespace {

std::vector<std::vector<int>> adjacency(const BufferedTree& t) {
  std::vector<std::vector<int>> adj(t.vertices.size());
  for (const auto& [a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

int find_source(const BufferedTree& t) {
  for (std::size_t i = 0; i < t.vertices.size(); ++i) {
    if (t.vertices[i].kind == TreeVertexKind::source) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

std::vector<std::string> check_tree(const BufferedTree& t) {
  std::vector<std::string> errors;
  const int n = static_cast<int>(t.vertices.size());
  const std::string what = "tree " + t.net;
  for (const auto& [a, b] : t.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
      errors.push_back(what + " has a bad edge");
      return errors;
    }
  }
  int sources = 0, sinks = 0;
  for (const auto& v : t.vertices) {
    sources += v.kind == TreeVertexKind::source;
    sinks += v.kind == TreeVertexKind::sink;
  }
  if (sources != 1) errors.push_back(what + " needs exactly one source");
  if (sinks == 0) errors.push_back(what + " has no sink");
  if (static_cast<int>(t.edges.size()) != n - 1) errors.push_back(what + " is not a tree (edge count)");

  const auto adj = adjacency(t);
  if (n > 0) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != n) errors.push_back(what + " is not connected");
  }
  for (int v = 0; v < n; ++v) {
    const int d = static_cast<int>(adj[v].size());
    const auto& tv = t.vertices[v];
    switch (tv.kind) {
      case TreeVertexKind::source:
        if (d < 1) errors.push_back(what + ": source " + tv.name + " is isolated");
        break;
      case TreeVertexKind::sink:
        if (d != 1) errors.push_back(what + ": sink " + tv.name + " must have degree 1");
        break;
      case TreeVertexKind::buffer:
        if (d != 2) errors.push_back(what + ": buffer " + tv.name + " must have degree 2");
        break;
      case TreeVertexKind::steiner:
        if (d != 3 && d != 4) errors.push_back(what + ": Steiner point " + tv.name + " must have degree 3 or 4");
        break;
    }
    if (tv.committed_load < 0) errors.push_back(what + ": negative committed load at " + tv.name);
  }
  return errors;
}

std::vector<Net> decompose_star(const MultipinNet& net) {
  std::vector<Net> out;
  for (std::size_t i = 0; i < net.sinks.size(); ++i) {
    Net n;
    n.id = net.sinks.size() == 1 ? net.id : net.id + "." + std::to_string(i);
    n.sources = net.sources;
    n.sinks = {net.sinks[i]};
    n.source_level = net.source_level;
    out.push_back(std::move(n));
  }
  return out;
}

std::vector<Net> decompose_mst(const MultipinNet& net, const TileGraph& g) {
  // pin 0 is the source, pin i > 0 is sink group i - 1
  const int k = static_cast<int>(net.sinks.size()) + 1;
  auto pins = [&](int i) -> const std::vector<TileId>& { return i == 0 ? net.sources : net.sinks[i - 1]; };
  if (k == 2) {
    Net n{net.id, net.sources, net.sinks, Polarity::unconstrained, std::nullopt, net.source_level};
    return {n};
  }

  std::vector<std::tuple<int, int, int>> cand;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) cand.emplace_back(manhattan(g.tile(pins(a)[0]), g.tile(pins(b)[0])), a, b);
  }
  std::sort(cand.begin(), cand.end());
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<int>> adj(k);
  for (const auto& [d, a, b] : cand) {
    const int ra = find(a), rb = find(b);
    if (ra == rb) continue;
    parent[ra] = rb;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  std::vector<Net> out;
  std::vector<char> seen(k, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (seen[w]) continue;
      seen[w] = 1;
      Net n;
      n.id = net.id + "." + std::to_string(out.size());
      n.sources = pins(v);
      n.sinks = {pins(w)};
      n.source_level = net.source_level;
      out.push_back(std::move(n));
      stack.push_back(w);
    }
  }
  return out;
}

namespace {

// The tree rooted at its source, optionally with buffer chains contracted.
struct RootedTree {
  int root = -1;
  std::vector<std::vector<int>> children;
  std::vector<int> depth;
  std::vector<int> order;  // preorder
};

RootedTree root_tree(const BufferedTree& t, bool drop_buffers) {
  const auto problems = check_tree(t);
  if (!problems.empty()) throw std::invalid_argument(problems.front());
  const auto adj = adjacency(t);
  const int n = static_cast<int>(t.vertices.size());
  RootedTree r;
  r.root = find_source(t);
  r.children.assign(n, {});
  r.depth.assign(n, 0);

  // Depth-first in edge-list order; `from` is the nearest kept ancestor.
  struct Item { int v, up, from; };
  std::vector<Item> stack{{r.root, -1, -1}};
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    const bool skip = drop_buffers && t.vertices[it.v].kind == TreeVertexKind::buffer;
    int from = it.from;
    if (!skip) {
      if (it.from >= 0) {
        r.children[it.from].push_back(it.v);
        r.depth[it.v] = r.depth[it.from] + 1;
      }
      r.order.push_back(it.v);
      from = it.v;
    }
    const auto& nb = adj[it.v];
    for (auto w = nb.rbegin(); w != nb.rend(); ++w) {
      if (*w != it.up) stack.push_back({*w, it.v, from});
    }
  }
  return r;
}

int driving_level(const BufferedTree& t, int v, int wireload, std::optional<int> source_level) {
  const TreeVertex& tv = t.vertices[v];
  const int base = tv.kind == TreeVertexKind::source ? source_level.value_or(wireload) : wireload;
  const int level = base - tv.committed_load;
  if (level < 0) {
    throw std::invalid_argument("tree " + t.net + ": committed load at " + tv.name + " exceeds the wireload bound");
  }
  return level;
}

Subnet make_subnet(const BufferedTree& t, std::size_t index, int driver, const std::vector<int>& sinks,
                   int level) {
  Subnet s;
  s.net.id = t.net + "." + std::to_string(index);
  s.net.sources = {t.vertices[driver].tile};
  for (int v : sinks) s.net.sinks.push_back({t.vertices[v].tile});
  s.net.source_level = level;
  s.vertices.push_back(driver);
  s.vertices.insert(s.vertices.end(), sinks.begin(), sinks.end());
  return s;
}

std::vector<Subnet> split_edges(const BufferedTree& t, int wireload, std::optional<int> source_level,
                                bool drop_buffers) {
  const RootedTree r = root_tree(t, drop_buffers);
  std::vector<Subnet> out;
  for (int v : r.order) {
    if (r.children[v].empty()) continue;
    const int level = driving_level(t, v, wireload, source_level);
    for (int w : r.children[v]) out.push_back(make_subnet(t, out.size(), v, {w}, level));
  }
  return out;
}

}  // namespace

std::vector<Subnet> split_fixed_fixed(const BufferedTree& t, int wireload, std::optional<int> source_level) {
  return split_edges(t, wireload, source_level, false);
}

std::vector<Subnet> split_fixed_flexible(const BufferedTree& t, int wireload, std::optional<int> source_level) {
  return split_edges(t, wireload, source_level, true);
}

std::vector<Subnet> split_half_flexible(const BufferedTree& t, int wireload, std::optional<int> source_level) {
  const RootedTree r = root_tree(t, true);
  const int n = static_cast<int>(t.vertices.size());
  int steiner[2] = {0, 0};
  for (int v : r.order) {
    if (t.vertices[v].kind != TreeVertexKind::steiner) continue;
    if (r.children[v].size() != 2) {
      throw std::invalid_argument("tree " + t.net + ": half-flexible splitting needs degree-3 Steiner points");
    }
    ++steiner[r.depth[v] % 2];
  }
  // the source has colour 0
  const int fixed_colour = steiner[0] < steiner[1] ? 0 : 1;
  std::vector<char> free_point(n, 0);
  for (int v : r.order) {
    free_point[v] = t.vertices[v].kind == TreeVertexKind::steiner && r.depth[v] % 2 != fixed_colour;
  }

  std::vector<Subnet> out;
  for (int v : r.order) {
    if (r.children[v].empty() || free_point[v]) continue;
    const int level = driving_level(t, v, wireload, source_level);
    for (int w : r.children[v]) {
      if (free_point[w]) out.push_back(make_subnet(t, out.size(), v, r.children[w], level));
      else out.push_back(make_subnet(t, out.size(), v, {w}, level));
    }
  }
  return out;
}

Instance expand_multinets(const Instance& inst, Decomposition mode) {
  Instance out = inst;
  out.multinets.clear();
  out.trees.clear();
  for (const auto& m : inst.multinets) {
    std::vector<Net> nets;
    if (mode == Decomposition::star) {
      nets = decompose_star(m);
    } else if (mode == Decomposition::mst) {
      nets = decompose_mst(m, inst.grid);
    } else {
      auto it = std::find_if(inst.trees.begin(), inst.trees.end(), [&](const BufferedTree& t) { return t.net == m.id; });
      if (it == inst.trees.end()) throw std::invalid_argument("multinet " + m.id + " has no TREE section");
      std::vector<Subnet> subs;
      if (mode == Decomposition::fixed) subs = split_fixed_fixed(*it, inst.wireload, m.source_level);
      else if (mode == Decomposition::flexible) subs = split_fixed_flexible(*it, inst.wireload, m.source_level);
      else subs = split_half_flexible(*it, inst.wireload, m.source_level);
      for (auto& s : subs) nets.push_back(std::move(s.net));
    }
    for (auto& n : nets) out.nets.push_back(std::move(n));
  }
  return out;
}

}  // namespace bgr
