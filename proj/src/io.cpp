#include "metamap/io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unordered_map>

namespace metamap {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

ordered_json parse(std::string_view text, std::string_view expected_format) {
  ordered_json j;
  try {
    j = ordered_json::parse(text.begin(), text.end());
  } catch (const ordered_json::parse_error& e) {
    throw FormatError(std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("top level must be an object");
  if (j.value("format", std::string()) != expected_format) {
    throw FormatError("format: expected \"" + std::string(expected_format) + "\"");
  }
  if (!j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<int>() != kFormatVersion) {
    throw FormatError("version: expected " + std::to_string(kFormatVersion));
  }
  return j;
}

template <typename T>
T field(const ordered_json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw FormatError(where + ": missing field \"" + key + "\"");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const ordered_json::exception&) {
    throw FormatError(where + ": field \"" + key + "\" has the wrong type");
  }
}

std::vector<int> id_list(const ordered_json& arr, const std::string& where) {
  if (!arr.is_array()) throw FormatError(where + ": expected an array");
  std::vector<int> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw FormatError(where + ": ids must be integers");
    out.push_back(v.get<int>());
  }
  return out;
}

// nlohmann's own float printer is round-trip safe but not always shortest;
// emit numbers through to_chars instead.
struct Writer {
  std::string out;
  void num(double v) { out += format_double(v); }
  void num(int v) { out += std::to_string(v); }
  void str(std::string_view s) { out += ordered_json(std::string(s)).dump(); }
};

}  // namespace

std::string graph_to_text(const WeightedPlaneGraph& g) {
  Writer w;
  w.out += "{\n  \"format\": ";
  w.str(kGraphFormat);
  w.out += ",\n  \"version\": ";
  w.num(kFormatVersion);
  w.out += ",\n  \"vertices\": [";
  for (int i = 0; i < g.vertex_count(); ++i) {
    const auto& v = g.vertex(i);
    w.out += i ? ",\n    " : "\n    ";
    w.out += "{\"id\": ";
    w.num(v.id);
    w.out += ", \"weight\": ";
    w.num(v.weight);
    w.out += ", \"x\": ";
    w.num(v.position.x());
    w.out += ", \"y\": ";
    w.num(v.position.y());
    w.out += "}";
  }
  w.out += "\n  ],\n  \"edges\": [";
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.edges()[e];
    w.out += e ? ", [" : "\n    [";
    w.num(g.vertex(a).id);
    w.out += ", ";
    w.num(g.vertex(b).id);
    w.out += "]";
  }
  w.out += "\n  ],\n  \"outer_face\": [";
  const auto& outer = g.outer_face();
  for (std::size_t i = 0; i < outer.size(); ++i) {
    if (i) w.out += ", ";
    w.num(g.vertex(outer[i]).id);
  }
  w.out += "]\n}\n";
  return w.out;
}

WeightedPlaneGraph graph_from_text(std::string_view text) {
  const ordered_json j = parse(text, kGraphFormat);
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    throw FormatError("vertices: expected an array");
  }
  std::vector<GraphVertex> vs;
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    const auto& v = j["vertices"][i];
    const std::string where = "vertices[" + std::to_string(i) + "]";
    GraphVertex gv;
    gv.id = field<int>(v, "id", where);
    gv.weight = field<double>(v, "weight", where);
    gv.position = Point2d(field<double>(v, "x", where), field<double>(v, "y", where));
    vs.push_back(gv);
  }
  if (!j.contains("edges") || !j["edges"].is_array()) throw FormatError("edges: expected an array");
  std::vector<std::pair<int, int>> edges;
  for (std::size_t e = 0; e < j["edges"].size(); ++e) {
    const auto ids = id_list(j["edges"][e], "edges[" + std::to_string(e) + "]");
    if (ids.size() != 2) throw FormatError("edges[" + std::to_string(e) + "]: expected [id, id]");
    edges.emplace_back(ids[0], ids[1]);
  }
  std::vector<int> outer;
  if (j.contains("outer_face")) outer = id_list(j["outer_face"], "outer_face");
  return WeightedPlaneGraph::from_drawing(std::move(vs), edges, std::move(outer));
}

std::string map_to_text(const MetaphoricalMap& m) {
  Writer w;
  w.out += "{\n  \"format\": ";
  w.str(kMapFormat);
  w.out += ",\n  \"version\": ";
  w.num(kFormatVersion);
  w.out += ",\n  \"points\": {";
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    w.out += i ? ",\n    \"" : "\n    \"";
    w.out += std::to_string(i);
    w.out += "\": [";
    w.num(m.points[i].x());
    w.out += ", ";
    w.num(m.points[i].y());
    w.out += "]";
  }
  w.out += "\n  },\n  \"regions\": [";
  for (std::size_t r = 0; r < m.regions.size(); ++r) {
    const Region& g = m.regions[r];
    w.out += r ? ",\n    " : "\n    ";
    w.out += "{\"id\": ";
    w.num(g.id);
    w.out += ", \"kind\": ";
    w.str(g.is_hole() ? "hole" : "internal");
    if (g.source_vertex) {
      w.out += ", \"source_vertex\": ";
      w.num(*g.source_vertex);
    }
    w.out += ", \"target_weight\": ";
    w.num(g.target_weight);
    w.out += ", \"boundary\": [";
    for (std::size_t k = 0; k < g.boundary.size(); ++k) {
      if (k) w.out += ", ";
      w.num(g.boundary[k]);
    }
    w.out += "]}";
  }
  w.out += "\n  ]\n}\n";
  return w.out;
}

MetaphoricalMap map_from_text(std::string_view text) {
  const ordered_json j = parse(text, kMapFormat);
  if (!j.contains("points") || !j["points"].is_object()) {
    throw FormatError("points: expected an object of id -> [x, y]");
  }
  MetaphoricalMap m;
  std::unordered_map<int, int> index;
  for (const auto& [key, val] : j["points"].items()) {
    const std::string where = "points[\"" + key + "\"]";
    int id = 0;
    const auto res = std::from_chars(key.data(), key.data() + key.size(), id);
    if (res.ec != std::errc() || res.ptr != key.data() + key.size()) {
      throw FormatError(where + ": id must be an integer");
    }
    if (!val.is_array() || val.size() != 2 || !val[0].is_number() || !val[1].is_number()) {
      throw FormatError(where + ": expected [x, y]");
    }
    if (!index.emplace(id, static_cast<int>(m.points.size())).second) {
      throw FormatError(where + ": duplicate point id");
    }
    m.points.emplace_back(val[0].get<double>(), val[1].get<double>());
  }
  if (!j.contains("regions") || !j["regions"].is_array()) {
    throw FormatError("regions: expected an array");
  }
  for (std::size_t r = 0; r < j["regions"].size(); ++r) {
    const auto& obj = j["regions"][r];
    const std::string where = "regions[" + std::to_string(r) + "]";
    Region g;
    g.id = field<int>(obj, "id", where);
    const auto kind = field<std::string>(obj, "kind", where);
    if (kind == "hole") {
      g.kind = RegionKind::hole;
    } else if (kind != "internal") {
      throw FormatError(where + ": kind must be \"internal\" or \"hole\"");
    }
    if (obj.contains("source_vertex")) g.source_vertex = field<int>(obj, "source_vertex", where);
    g.target_weight = field<double>(obj, "target_weight", where);
    if (!obj.contains("boundary")) throw FormatError(where + ": missing field \"boundary\"");
    for (int id : id_list(obj["boundary"], where + ".boundary")) {
      const auto it = index.find(id);
      if (it == index.end()) throw FormatError(where + ": unknown point id " + std::to_string(id));
      g.boundary.push_back(it->second);
    }
    m.regions.push_back(std::move(g));
  }
  const auto problems = validate_map(m);
  if (!problems.empty()) throw MapError(problems.front());
  return m;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

WeightedPlaneGraph load_graph(const std::filesystem::path& path) {
  return graph_from_text(read_file(path));
}

void save_graph(const std::filesystem::path& path, const WeightedPlaneGraph& g) {
  write_file(path, graph_to_text(g));
}

MetaphoricalMap load_map(const std::filesystem::path& path) {
  return map_from_text(read_file(path));
}

void save_map(const std::filesystem::path& path, const MetaphoricalMap& m) {
  write_file(path, map_to_text(m));
}

std::string report_to_text(const QualityReport& report) {
  std::string out = "region,normalized_area,error,signed_error,complexity\n";
  for (const auto& q : report.per_region) {
    out += std::to_string(q.region_id) + "," + format_double(q.normalized_area) + "," +
           format_double(q.error) + "," + format_double(q.signed_error) + "," +
           format_double(q.complexity) + "\n";
  }
  out += "avg_error," + format_double(report.avg_error) + "\n";
  out += "max_error," + format_double(report.max_error) + "\n";
  out += "avg_complexity," + format_double(report.avg_complexity) + "\n";
  out += "max_complexity," + format_double(report.max_complexity) + "\n";
  return out;
}

}  // namespace metamap
