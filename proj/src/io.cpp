#include "bgr/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace bgr {

using nlohmann::json;

namespace {

json tile_json(const TileGraph& g, TileId t) {
  const Tile c = g.tile(t);
  return json::array({c.x, c.y});
}

TileId tile_from(const TileGraph& g, const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw FormatError("tile must be [x, y]");
  }
  const Tile t{j[0].get<int>(), j[1].get<int>()};
  if (!g.contains(t)) throw FormatError("tile outside the grid");
  return g.id(t);
}

json routing_json(const TileGraph& g, const BufferedRouting& r) {
  json j;
  j["net"] = r.net;
  json path = json::array();
  for (TileId t : r.path) path.push_back(tile_json(g, t));
  j["path"] = std::move(path);
  j["widths"] = r.widths;
  json bufs = json::array();
  for (const auto& b : r.buffers) {
    bufs.push_back({{"at", b.position},
                    {"type", b.type},
                    {"inverting", b.inverting},
                    {"kind", b.kind == BufferKind::buffer ? "buffer" : "polarity_fix"}});
  }
  j["buffers"] = std::move(bufs);
  if (!r.branches.empty()) {
    json br = json::array();
    for (const auto& b : r.branches) br.push_back(routing_json(g, b));
    j["branches"] = std::move(br);
  }
  return j;
}

BufferedRouting routing_from(const TileGraph& g, const json& j) {
  BufferedRouting r;
  r.net = j.at("net").get<std::string>();
  for (const auto& t : j.at("path")) r.path.push_back(tile_from(g, t));
  r.widths = j.at("widths").get<std::vector<int>>();
  for (const auto& b : j.at("buffers")) {
    BufferPlacement p;
    p.position = b.at("at").get<int>();
    p.type = b.at("type").get<int>();
    p.inverting = b.value("inverting", false);
    const std::string kind = b.value("kind", std::string("buffer"));
    if (kind == "buffer") p.kind = BufferKind::buffer;
    else if (kind == "polarity_fix") p.kind = BufferKind::polarity_fix;
    else throw FormatError("unknown buffer kind '" + kind + "'");
    r.buffers.push_back(p);
  }
  if (j.contains("branches")) {
    for (const auto& b : j.at("branches")) r.branches.push_back(routing_from(g, b));
  }
  return r;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(e.what());
  }
}

json route_json(const GadgetRoute& r) { return r.segments; }

GadgetRoute route_from(const json& j) {
  GadgetRoute r;
  r.segments = j.get<std::vector<std::vector<ArcId>>>();
  return r;
}

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string routings_to_json(const Instance& inst, const std::vector<BufferedRouting>& routings) {
  json j;
  j["format"] = "bgr-routing";
  j["instance"] = instance_digest(inst);
  json rs = json::array();
  for (const auto& r : routings) rs.push_back(routing_json(inst.grid, r));
  j["routings"] = std::move(rs);
  return j.dump(1) + "\n";
}

RoutingFile routings_from_json(const Instance& inst, std::string_view text) {
  const json j = parse_json(text);
  RoutingFile f;
  try {
    f.instance_digest = j.value("instance", std::string());
    for (const auto& r : j.at("routings")) f.routings.push_back(routing_from(inst.grid, r));
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
  return f;
}

std::string fractional_to_json(const FractionalDump& d) {
  json j;
  j["format"] = "bgr-fractional";
  j["version"] = d.version;
  j["instance"] = d.instance_digest;
  j["decompose"] = d.decompose;
  j["features"] = d.features;
  j["lambda"] = d.lambda;
  j["lambda_lb"] = d.lambda_lb;
  j["phases"] = d.phases;
  json flows = json::array();
  for (const auto& net : d.flows) {
    json row = json::array();
    for (const auto& f : net) row.push_back({{"flow", f.flow}, {"route", route_json(f.route)}});
    flows.push_back(std::move(row));
  }
  j["flows"] = std::move(flows);
  json pool = json::array();
  for (const auto& net : d.pool) {
    json row = json::array();
    for (const auto& r : net) row.push_back(route_json(r));
    pool.push_back(std::move(row));
  }
  j["pool"] = std::move(pool);
  return j.dump() + "\n";
}

FractionalDump fractional_from_json(std::string_view text) {
  const json j = parse_json(text);
  FractionalDump d;
  try {
    if (j.at("format").get<std::string>() != "bgr-fractional") throw FormatError("not a fractional dump");
    d.version = j.at("version").get<int>();
    if (d.version != kFractionalVersion) {
      throw FormatError("unsupported fractional dump version " + std::to_string(d.version));
    }
    d.instance_digest = j.at("instance").get<std::string>();
    d.decompose = j.at("decompose").get<std::string>();
    d.features = j.at("features").get<std::string>();
    d.lambda = j.at("lambda").get<double>();
    d.lambda_lb = j.at("lambda_lb").get<double>();
    d.phases = j.at("phases").get<int>();
    for (const auto& net : j.at("flows")) {
      std::vector<RouteFlow> row;
      for (const auto& f : net) row.push_back({route_from(f.at("route")), f.at("flow").get<double>()});
      d.flows.push_back(std::move(row));
    }
    for (const auto& net : j.at("pool")) {
      std::vector<GadgetRoute> row;
      for (const auto& r : net) row.push_back(route_from(r));
      d.pool.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
  return d;
}

std::string phase_csv(const std::vector<PhaseStats>& stats, bool timing) {
  std::ostringstream os;
  os << "phase,lambda,lambda_lb,mu,nu,area,buffers,wirelength" << (timing ? ",elapsed" : "") << '\n';
  for (const auto& s : stats) {
    os << s.phase << ',' << number(s.lambda) << ',' << number(s.lambda_lb) << ',' << number(s.mu) << ','
       << number(s.nu) << ',' << number(s.area) << ',' << number(s.buffers) << ',' << number(s.wirelength);
    if (timing) os << ',' << number(s.elapsed);
    os << '\n';
  }
  return os.str();
}

std::string tradeoff_csv(const std::vector<TradeoffSample>& samples) {
  std::ostringstream os;
  os << "mu0,nu0,feasible,mu,nu,d_star,area,lambda,boundary\n";
  for (const auto& s : samples) {
    os << number(s.mu0) << ',' << number(s.nu0) << ',' << s.feasible << ',' << number(s.mu) << ','
       << number(s.nu) << ',' << number(s.area_budget) << ',' << number(s.area) << ',' << number(s.lambda) << ','
       << s.boundary << '\n';
  }
  return os.str();
}

std::string region_csv(const std::vector<RegionPoint>& points) {
  std::ostringstream os;
  os << "mu0,nu0,feasible,lambda,mu,nu\n";
  for (const auto& p : points) {
    os << number(p.mu0) << ',' << number(p.nu0) << ',' << p.feasible << ',' << number(p.lambda) << ','
       << number(p.mu) << ',' << number(p.nu) << '\n';
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace bgr
