#include "bgr/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bgr {

int Instance::max_buffer_bound() const {
  if (buffer_types.empty()) return wireload;
  return *std::max_element(buffer_types.begin(), buffer_types.end());
}

namespace {

std::string format_double(double v) {
  if (std::isinf(v)) return "INF";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Splits a line into tokens; whitespace inside parentheses is dropped so
// that "( 1, 2 )" and "(1,2)" tokenize identically.
std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : line) {
    if (c == '#' && depth == 0) break;
    if (c == '(') ++depth;
    if (c == ')') depth = std::max(0, depth - 1);
    const bool space = c == ' ' || c == '\t' || c == '\r';
    if (space) {
      if (depth > 0) continue;
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

class LineParser {
 public:
  LineParser(int line, std::vector<std::string> tokens)
      : line_(line), tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const std::string& peek() const { return tokens_[pos_]; }
  int line() const { return line_; }

  std::string next(const char* what) {
    if (done()) fail(std::string("missing ") + what);
    return tokens_[pos_++];
  }

  long long integer(const char* what) {
    const std::string tok = next(what);
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
      fail(std::string("expected integer ") + what + ", got '" + tok + "'");
    }
    return v;
  }

  double real(const char* what, bool allow_inf = false) {
    const std::string tok = next(what);
    if (allow_inf && (tok == "INF" || tok == "inf")) return kInfiniteArea;
    double v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size() || !std::isfinite(v)) {
      fail(std::string("expected number ") + what + ", got '" + tok + "'");
    }
    return v;
  }

  static bool is_coordinate(const std::string& tok) {
    return tok.size() >= 5 && tok.front() == '(' && tok.back() == ')';
  }

  Tile coordinate(const std::string& tok) const {
    const auto comma = tok.find(',');
    if (!is_coordinate(tok) || comma == std::string::npos) {
      fail("malformed coordinate '" + tok + "'");
    }
    Tile t;
    const char* b = tok.data() + 1;
    const char* m = tok.data() + comma;
    const char* e = tok.data() + tok.size() - 1;
    auto r1 = std::from_chars(b, m, t.x);
    auto r2 = std::from_chars(m + 1, e, t.y);
    if (r1.ec != std::errc() || r1.ptr != m || r2.ec != std::errc() || r2.ptr != e) {
      fail("malformed coordinate '" + tok + "'");
    }
    return t;
  }

  // Consumes consecutive coordinate tokens.
  std::vector<Tile> coordinates() {
    std::vector<Tile> out;
    while (!done() && is_coordinate(peek())) out.push_back(coordinate(next("coordinate")));
    return out;
  }

  void expect_end() const {
    if (!done()) fail("unexpected token '" + tokens_[pos_] + "'");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

 private:
  int line_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

struct PendingCaps {
  std::optional<int> default_buffer;
  std::optional<int> default_wire;
  std::map<TileId, int> buffers;
  std::map<EdgeId, int> wires;
};

int checked_capacity(LineParser& p) {
  const long long c = p.integer("capacity");
  if (c < 0) p.fail("capacity < 0");
  if (c > std::numeric_limits<int>::max()) p.fail("capacity too large");
  return static_cast<int>(c);
}

class InstanceReader {
 public:
  Instance read(std::string_view text) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      auto tokens = tokenize(text.substr(start, end - start));
      if (!tokens.empty()) handle(LineParser(line_no, std::move(tokens)));
      start = end + 1;
    }
    if (tree_) throw ParseError(line_no, "unterminated TREE section");
    if (!have_grid_) throw ParseError(0, "missing GRID line");
    if (!have_u_) throw ParseError(0, "missing U line");
    finish();
    auto errors = validate(inst_);
    if (!errors.empty()) {
      std::string msg = "invalid instance: " + errors.front();
      for (std::size_t i = 1; i < errors.size(); ++i) msg += "; " + errors[i];
      throw ParseError(0, msg);
    }
    return std::move(inst_);
  }

 private:
  TileId tile_id(const LineParser& p, Tile t) const {
    if (!have_grid_) p.fail("tile coordinate before GRID");
    if (!inst_.grid.contains(t)) {
      p.fail("unknown tile coordinate (" + std::to_string(t.x) + "," + std::to_string(t.y) + ")");
    }
    return inst_.grid.id(t);
  }

  std::vector<TileId> tile_ids(const LineParser& p, const std::vector<Tile>& ts) const {
    std::vector<TileId> out;
    for (Tile t : ts) out.push_back(tile_id(p, t));
    return out;
  }

  void handle(LineParser p) {
    const std::string kw = p.next("keyword");
    if (tree_) {
      read_tree_line(p, kw);
      return;
    }
    if (kw == "GRID") {
      if (have_grid_) p.fail("duplicate GRID");
      const long long w = p.integer("width");
      const long long h = p.integer("height");
      if (w <= 0 || h <= 0 || w * h > 50'000'000) p.fail("invalid grid size");
      inst_.grid = TileGraph(static_cast<int>(w), static_cast<int>(h));
      have_grid_ = true;
    } else if (kw == "U") {
      const long long u = p.integer("U");
      if (u < 0 || u > 1'000'000) p.fail("invalid U");
      inst_.wireload = static_cast<int>(u);
      have_u_ = true;
    } else if (kw == "ALPHA") {
      inst_.alpha = p.real("alpha");
    } else if (kw == "BETA") {
      inst_.beta = p.real("beta");
    } else if (kw == "MU0" || kw == "NU0") {
      const double v = p.real(kw.c_str());
      if (!(v > 0.0 && v <= 1.0)) p.fail(kw + " must lie in (0, 1]");
      (kw == "MU0" ? inst_.mu0 : inst_.nu0) = v;
    } else if (kw == "D") {
      const double d = p.real("D", true);
      if (!(d > 0.0)) p.fail("D must be positive");
      inst_.area_budget = d;
    } else if (kw == "DEFAULT") {
      const std::string what = p.next("BUFCAP|WIRECAP");
      const int c = checked_capacity(p);
      if (what == "BUFCAP") caps_.default_buffer = c;
      else if (what == "WIRECAP") caps_.default_wire = c;
      else p.fail("unknown DEFAULT target '" + what + "'");
    } else if (kw == "BUFCAP") {
      Tile t;
      t.x = static_cast<int>(p.integer("x"));
      t.y = static_cast<int>(p.integer("y"));
      const TileId v = tile_id(p, t);
      caps_.buffers[v] = checked_capacity(p);
    } else if (kw == "WIRECAP") {
      Tile a, b;
      a.x = static_cast<int>(p.integer("x1"));
      a.y = static_cast<int>(p.integer("y1"));
      b.x = static_cast<int>(p.integer("x2"));
      b.y = static_cast<int>(p.integer("y2"));
      const auto e = inst_.grid.edge_between(tile_id(p, a), tile_id(p, b));
      if (!e) p.fail("WIRECAP tiles are not grid-adjacent");
      caps_.wires[*e] = checked_capacity(p);
    } else if (kw == "BUFTYPES") {
      inst_.buffer_types.clear();
      while (!p.done()) inst_.buffer_types.push_back(static_cast<int>(p.integer("buffer bound")));
      if (inst_.buffer_types.empty()) p.fail("BUFTYPES needs at least one bound");
    } else if (kw == "WIRELOADS") {
      inst_.wire_loads.clear();
      while (!p.done()) inst_.wire_loads.push_back(static_cast<int>(p.integer("wire load")));
      if (inst_.wire_loads.empty()) p.fail("WIRELOADS needs at least one load");
    } else if (kw == "INVERTING" || kw == "PINASSIGN") {
      const long long f = p.integer("flag");
      if (f != 0 && f != 1) p.fail(kw + " expects 0 or 1");
      (kw == "INVERTING" ? inst_.inverting : inst_.pin_assignment) = f == 1;
    } else if (kw == "NET") {
      read_net(p);
    } else if (kw == "MULTINET") {
      read_multinet(p);
    } else if (kw == "WINDOW") {
      Window w;
      const long long b = p.integer("window bound");
      if (b < 0) p.fail("window bound < 0");
      w.bound = static_cast<int>(b);
      w.tiles = tile_ids(p, p.coordinates());
      if (w.tiles.empty()) p.fail("WINDOW needs at least one tile");
      inst_.windows.push_back(std::move(w));
    } else if (kw == "TREE") {
      tree_.emplace();
      tree_->net = p.next("tree net id");
      tree_names_.clear();
    } else {
      p.fail("unknown keyword '" + kw + "'");
    }
    p.expect_end();
  }

  void read_net(LineParser& p) {
    Net n;
    n.id = p.next("net id");
    bool have_src = false;
    while (!p.done()) {
      const std::string kw = p.next("net field");
      if (kw == "SRC") {
        n.sources = tile_ids(p, p.coordinates());
        have_src = true;
      } else if (kw == "SINK" || kw == "SINK2") {
        const std::size_t want = kw == "SINK" ? 0 : 1;
        if (n.sinks.size() != want) p.fail(kw + " out of order");
        n.sinks.push_back(tile_ids(p, p.coordinates()));
      } else if (kw == "POL") {
        const std::string s = p.next("polarity");
        if (s == "+") n.polarity = Polarity::positive;
        else if (s == "-") n.polarity = Polarity::negative;
        else p.fail("POL expects + or -");
      } else if (kw == "DELAY") {
        const long long d = p.integer("delay bound");
        if (d < 0) p.fail("DELAY must be >= 0");
        n.delay_bound = static_cast<int>(d);
      } else if (kw == "LEVEL") {
        n.source_level = static_cast<int>(p.integer("level"));
      } else {
        p.fail("unknown net field '" + kw + "'");
      }
    }
    if (!have_src) p.fail("NET without SRC");
    if (n.sinks.empty()) p.fail("NET without SINK");
    inst_.nets.push_back(std::move(n));
  }

  void read_multinet(LineParser& p) {
    MultipinNet n;
    n.id = p.next("net id");
    while (!p.done()) {
      const std::string kw = p.next("net field");
      if (kw == "SRC") n.sources = tile_ids(p, p.coordinates());
      else if (kw == "SINK") n.sinks.push_back(tile_ids(p, p.coordinates()));
      else if (kw == "LEVEL") n.source_level = static_cast<int>(p.integer("level"));
      else p.fail("unknown multinet field '" + kw + "'");
    }
    if (n.sources.empty() || n.sinks.empty()) p.fail("MULTINET needs SRC and SINK");
    inst_.multinets.push_back(std::move(n));
  }

  void read_tree_line(LineParser& p, const std::string& kw) {
    if (kw == "END") {
      inst_.trees.push_back(std::move(*tree_));
      tree_.reset();
    } else if (kw == "TV") {
      TreeVertex v;
      v.name = p.next("vertex name");
      const std::string kind = p.next("vertex kind");
      if (kind == "source") v.kind = TreeVertexKind::source;
      else if (kind == "sink") v.kind = TreeVertexKind::sink;
      else if (kind == "buffer") v.kind = TreeVertexKind::buffer;
      else if (kind == "steiner") v.kind = TreeVertexKind::steiner;
      else p.fail("unknown tree vertex kind '" + kind + "'");
      v.tile = tile_id(p, p.coordinate(p.next("vertex tile")));
      if (!p.done()) {
        if (p.next("COMMIT") != "COMMIT") p.fail("expected COMMIT");
        v.committed_load = static_cast<int>(p.integer("committed load"));
      }
      if (!tree_names_.emplace(v.name, static_cast<int>(tree_->vertices.size())).second) {
        p.fail("duplicate tree vertex '" + v.name + "'");
      }
      tree_->vertices.push_back(std::move(v));
    } else if (kw == "TE") {
      const std::string a = p.next("edge endpoint");
      const std::string b = p.next("edge endpoint");
      auto ia = tree_names_.find(a);
      auto ib = tree_names_.find(b);
      if (ia == tree_names_.end() || ib == tree_names_.end()) p.fail("unknown tree vertex in TE");
      tree_->edges.emplace_back(ia->second, ib->second);
    } else {
      p.fail("unexpected '" + kw + "' inside TREE section");
    }
    p.expect_end();
  }

  void finish() {
    auto& g = inst_.grid;
    for (TileId v = 0; v < g.tile_count(); ++v) {
      auto it = caps_.buffers.find(v);
      g.set_buffer_capacity(v, it != caps_.buffers.end() ? it->second : caps_.default_buffer.value_or(0));
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      auto it = caps_.wires.find(e);
      g.set_wire_capacity(e, it != caps_.wires.end() ? it->second : caps_.default_wire.value_or(0));
    }
    if (inst_.buffer_types.empty()) inst_.buffer_types = {inst_.wireload};
    if (inst_.wire_loads.empty()) inst_.wire_loads = {1};
    for (auto& n : inst_.nets) {
      if (!n.source_level) n.source_level = inst_.wireload;
    }
    for (auto& n : inst_.multinets) {
      if (!n.source_level) n.source_level = inst_.wireload;
    }
  }

  Instance inst_;
  bool have_grid_ = false;
  bool have_u_ = false;
  PendingCaps caps_;
  std::optional<BufferedTree> tree_;
  std::map<std::string, int> tree_names_;
};

std::string coord(const TileGraph& g, TileId v) {
  const Tile t = g.tile(v);
  return "(" + std::to_string(t.x) + "," + std::to_string(t.y) + ")";
}

void emit_tiles(std::ostringstream& os, const TileGraph& g, const std::vector<TileId>& tiles) {
  for (TileId v : tiles) os << ' ' << coord(g, v);
}

int most_common(const std::vector<int>& values) {
  std::map<int, int> freq;
  for (int v : values) ++freq[v];
  int best = 0, count = -1;
  for (const auto& [v, c] : freq) {
    if (c > count) best = v, count = c;
  }
  return best;
}

const char* kind_name(TreeVertexKind k) {
  switch (k) {
    case TreeVertexKind::source: return "source";
    case TreeVertexKind::sink: return "sink";
    case TreeVertexKind::buffer: return "buffer";
    case TreeVertexKind::steiner: return "steiner";
  }
  return "sink";
}

}  // namespace

Instance parse_instance(std::string_view text) { return InstanceReader().read(text); }

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string emit_instance(const Instance& inst) {
  const TileGraph& g = inst.grid;
  std::ostringstream os;
  os << "GRID " << g.width() << ' ' << g.height() << '\n';
  os << "U " << inst.wireload << '\n';
  os << "ALPHA " << format_double(inst.alpha) << '\n';
  os << "BETA " << format_double(inst.beta) << '\n';
  os << "MU0 " << format_double(inst.mu0) << '\n';
  os << "NU0 " << format_double(inst.nu0) << '\n';
  os << "D " << format_double(inst.area_budget) << '\n';
  if (!inst.buffer_types.empty()) {
    os << "BUFTYPES";
    for (int b : inst.buffer_types) os << ' ' << b;
    os << '\n';
  }
  if (!inst.wire_loads.empty()) {
    os << "WIRELOADS";
    for (int d : inst.wire_loads) os << ' ' << d;
    os << '\n';
  }
  os << "INVERTING " << (inst.inverting ? 1 : 0) << '\n';
  os << "PINASSIGN " << (inst.pin_assignment ? 1 : 0) << '\n';

  const int dbuf = most_common(g.buffer_capacities());
  const int dwire = g.edge_count() > 0 ? most_common(g.wire_capacities()) : 0;
  os << "DEFAULT BUFCAP " << dbuf << '\n';
  os << "DEFAULT WIRECAP " << dwire << '\n';
  for (TileId v = 0; v < g.tile_count(); ++v) {
    if (g.buffer_capacity(v) == dbuf) continue;
    const Tile t = g.tile(v);
    os << "BUFCAP " << t.x << ' ' << t.y << ' ' << g.buffer_capacity(v) << '\n';
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.wire_capacity(e) == dwire) continue;
    const auto [a, b] = g.endpoints(e);
    const Tile ta = g.tile(a), tb = g.tile(b);
    os << "WIRECAP " << ta.x << ' ' << ta.y << ' ' << tb.x << ' ' << tb.y << ' '
       << g.wire_capacity(e) << '\n';
  }
  for (const auto& w : inst.windows) {
    os << "WINDOW " << w.bound;
    emit_tiles(os, g, w.tiles);
    os << '\n';
  }
  for (const auto& n : inst.nets) {
    os << "NET " << n.id << " SRC";
    emit_tiles(os, g, n.sources);
    for (std::size_t s = 0; s < n.sinks.size(); ++s) {
      os << (s == 0 ? " SINK" : " SINK2");
      emit_tiles(os, g, n.sinks[s]);
    }
    if (n.polarity == Polarity::positive) os << " POL +";
    if (n.polarity == Polarity::negative) os << " POL -";
    if (n.delay_bound) os << " DELAY " << *n.delay_bound;
    if (n.source_level) os << " LEVEL " << *n.source_level;
    os << '\n';
  }
  for (const auto& n : inst.multinets) {
    os << "MULTINET " << n.id << " SRC";
    emit_tiles(os, g, n.sources);
    for (const auto& s : n.sinks) {
      os << " SINK";
      emit_tiles(os, g, s);
    }
    if (n.source_level) os << " LEVEL " << *n.source_level;
    os << '\n';
  }
  for (const auto& t : inst.trees) {
    os << "TREE " << t.net << '\n';
    for (const auto& v : t.vertices) {
      os << "TV " << v.name << ' ' << kind_name(v.kind) << ' ' << coord(g, v.tile);
      if (v.committed_load != 0) os << " COMMIT " << v.committed_load;
      os << '\n';
    }
    for (const auto& [a, b] : t.edges) {
      os << "TE " << t.vertices[a].name << ' ' << t.vertices[b].name << '\n';
    }
    os << "END\n";
  }
  return os.str();
}

std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> errors;
  const TileGraph& g = inst.grid;
  const int n = g.tile_count();
  auto tile_ok = [&](TileId v) { return v >= 0 && v < n; };
  auto check_tiles = [&](const std::vector<TileId>& ts, const std::string& what) {
    if (ts.empty()) errors.push_back(what + " has an empty tile set");
    for (TileId v : ts) {
      if (!tile_ok(v)) {
        errors.push_back(what + " references a tile outside the grid");
        break;
      }
    }
  };

  if (n <= 0) errors.push_back("grid has no tiles");
  if (inst.wireload < 1) errors.push_back("U must be at least 1");
  if (!(inst.alpha >= 0.0) || !(inst.beta >= 0.0)) errors.push_back("alpha and beta must be >= 0");
  if (!(inst.mu0 > 0.0 && inst.mu0 <= 1.0)) errors.push_back("mu0 must lie in (0, 1]");
  if (!(inst.nu0 > 0.0 && inst.nu0 <= 1.0)) errors.push_back("nu0 must lie in (0, 1]");
  if (!(inst.area_budget > 0.0)) errors.push_back("D must be positive");
  for (int c : g.buffer_capacities()) {
    if (c < 0) {
      errors.push_back("buffer capacity < 0");
      break;
    }
  }
  for (int c : g.wire_capacities()) {
    if (c < 0) {
      errors.push_back("wire capacity < 0");
      break;
    }
  }
  if (inst.buffer_types.empty()) {
    errors.push_back("no buffer types");
  } else {
    if (inst.max_buffer_bound() != inst.wireload) errors.push_back("max buffer type bound must equal U");
    for (int b : inst.buffer_types) {
      if (b < 1) errors.push_back("buffer type bound must be >= 1");
    }
    std::set<int> distinct(inst.buffer_types.begin(), inst.buffer_types.end());
    if (distinct.size() != inst.buffer_types.size()) errors.push_back("duplicate buffer type bound");
  }
  if (inst.wire_loads.empty()) errors.push_back("no wire widths");
  for (int d : inst.wire_loads) {
    if (d < 1) errors.push_back("wire load multiplier must be >= 1");
  }
  {
    std::set<int> distinct(inst.wire_loads.begin(), inst.wire_loads.end());
    if (distinct.size() != inst.wire_loads.size()) errors.push_back("duplicate wire load multiplier");
  }
  for (std::size_t i = 0; i < inst.windows.size(); ++i) {
    const auto& w = inst.windows[i];
    if (w.bound < 0) errors.push_back("window bound < 0");
    check_tiles(w.tiles, "window " + std::to_string(i));
  }
  std::set<std::string> ids;
  for (const auto& net : inst.nets) {
    const std::string what = "net " + net.id;
    if (!ids.insert(net.id).second) errors.push_back("duplicate net id " + net.id);
    check_tiles(net.sources, what + " source");
    if (net.sinks.empty() || net.sinks.size() > 2) errors.push_back(what + " must have 1 or 2 sink groups");
    for (const auto& s : net.sinks) check_tiles(s, what + " sink");
    const int level = inst.level_of(net);
    if (level > inst.wireload) errors.push_back(what + ": sourceLevel exceeds U");
    if (level < 0) errors.push_back(what + ": sourceLevel is negative");
    if (net.delay_bound && *net.delay_bound < 0) errors.push_back(what + ": negative delay bound");
  }
  for (const auto& net : inst.multinets) {
    const std::string what = "multinet " + net.id;
    if (!ids.insert(net.id).second) errors.push_back("duplicate net id " + net.id);
    check_tiles(net.sources, what + " source");
    if (net.sinks.empty()) errors.push_back(what + " has no sinks");
    for (const auto& s : net.sinks) check_tiles(s, what + " sink");
    const int level = net.source_level.value_or(inst.wireload);
    if (level > inst.wireload || level < 0) errors.push_back(what + ": sourceLevel exceeds U");
  }
  for (const auto& t : inst.trees) {
    for (const auto& v : t.vertices) {
      if (!tile_ok(v.tile)) errors.push_back("tree " + t.net + " references a tile outside the grid");
    }
    for (const auto& [a, b] : t.edges) {
      const int nv = static_cast<int>(t.vertices.size());
      if (a < 0 || b < 0 || a >= nv || b >= nv) errors.push_back("tree " + t.net + " has a dangling edge");
    }
  }
  return errors;
}

std::string instance_digest(const Instance& inst) {
  const std::string text = emit_instance(inst);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bgr
