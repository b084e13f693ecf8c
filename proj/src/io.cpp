#include "freebound/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "freebound/errors.hpp"

namespace freebound::io {

using geometry::EdgeLabel;
using geometry::Point;
using geometry::Ring;

namespace {

Json points_to_json(const std::vector<Point>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back({p.x, p.y});
  return out;
}

Json labels_to_json(const std::vector<EdgeLabel>& labels) {
  Json out = Json::array();
  for (auto l : labels) out.push_back(std::string(geometry::to_string(l)));
  return out;
}

std::vector<Point> points_from_json(const Json& json, const char* what) {
  if (!json.is_array()) throw ValidationError(std::string(what) + " must be an array of [x, y] pairs");
  std::vector<Point> points;
  for (const auto& item : json) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw ValidationError(std::string(what) + " entries must be [x, y] number pairs");
    }
    points.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  return points;
}

std::vector<EdgeLabel> labels_from_json(const Json& json) {
  if (!json.is_array()) throw ValidationError("labels must be an array of strings");
  std::vector<EdgeLabel> labels;
  for (const auto& item : json) {
    if (!item.is_string()) throw ValidationError("labels must be strings");
    labels.push_back(geometry::parse_label(item.get<std::string>()));
  }
  return labels;
}

template <typename T>
void write_raw(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw ValidationError("truncated grid dump");
  return value;
}

}  // namespace

Json domain_to_json(const geometry::LabeledDomain& domain) {
  Json out;
  out["vertices"] = points_to_json(domain.outer().vertices);
  out["labels"] = labels_to_json(domain.outer().labels);
  Json holes = Json::array();
  bool free_hole = false;
  for (const auto& hole : domain.holes()) {
    holes.push_back(points_to_json(hole.vertices));
    for (auto l : hole.labels) free_hole = free_hole || l == EdgeLabel::kFree;
  }
  out["holes"] = holes;
  if (free_hole) {
    Json hole_labels = Json::array();
    for (const auto& hole : domain.holes()) hole_labels.push_back(labels_to_json(hole.labels));
    out["hole_labels"] = hole_labels;
  }
  return out;
}

geometry::LabeledDomain domain_from_json(const Json& json) {
  if (!json.is_object()) throw ValidationError("domain JSON must be an object");
  if (!json.contains("vertices") || !json.contains("labels")) {
    throw ValidationError("domain JSON needs \"vertices\" and \"labels\"");
  }
  Ring outer{points_from_json(json["vertices"], "vertices"), labels_from_json(json["labels"])};
  std::vector<Ring> holes;
  if (json.contains("holes")) {
    if (!json["holes"].is_array()) throw ValidationError("holes must be an array of rings");
    for (const auto& h : json["holes"]) {
      auto pts = points_from_json(h, "hole");
      holes.push_back({pts, std::vector<EdgeLabel>(pts.size(), EdgeLabel::kFixed)});
    }
  }
  if (json.contains("hole_labels")) {
    const auto& hl = json["hole_labels"];
    if (!hl.is_array() || hl.size() != holes.size()) {
      throw ValidationError("hole_labels must have one entry per hole");
    }
    for (std::size_t k = 0; k < holes.size(); ++k) holes[k].labels = labels_from_json(hl[k]);
  }
  return geometry::LabeledDomain(std::move(outer), std::move(holes));
}

geometry::LabeledDomain read_domain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open domain file '" + path + "'");
  Json json;
  try {
    json = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("cannot parse domain file '" + path + "': " + e.what());
  }
  return domain_from_json(json);
}

void write_domain_file(const geometry::LabeledDomain& domain, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << domain_to_json(domain).dump(2) << '\n';
}

void write_field_csv(const field::ScalarField& f, std::ostream& out) {
  const auto old = out.precision(17);
  out << "x,y,value\n";
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Point c = f.grid().center(k);
    out << c.x << ',' << c.y << ',' << f[k] << '\n';
  }
  out.precision(old);
}

void write_field_binary(const field::ScalarField& f, std::ostream& out) {
  const auto& g = f.grid();
  write_raw<std::int64_t>(out, g.nx);
  write_raw<std::int64_t>(out, g.ny);
  write_raw(out, g.h);
  write_raw(out, g.origin.x);
  write_raw(out, g.origin.y);
  for (std::size_t s = 0; s < g.index.size(); ++s) {
    const int k = g.index[s];
    write_raw(out, k >= 0 ? f[static_cast<std::size_t>(k)] : std::numeric_limits<double>::quiet_NaN());
  }
}

GridDump read_field_binary(std::istream& in) {
  GridDump dump;
  dump.nx = read_raw<std::int64_t>(in);
  dump.ny = read_raw<std::int64_t>(in);
  if (dump.nx <= 0 || dump.ny <= 0 || dump.nx > (1 << 20) || dump.ny > (1 << 20)) {
    throw ValidationError("grid dump has an invalid size");
  }
  dump.h = read_raw<double>(in);
  dump.origin.x = read_raw<double>(in);
  dump.origin.y = read_raw<double>(in);
  dump.values.resize(static_cast<std::size_t>(dump.nx * dump.ny));
  for (auto& v : dump.values) v = read_raw<double>(in);
  return dump;
}

std::string rows_to_csv(const Json& rows) {
  std::ostringstream out;
  if (!rows.is_array() || rows.empty()) return {};
  std::vector<std::string> keys;
  for (const auto& [key, value] : rows.front().items()) keys.push_back(key);
  const auto cell = [](const Json& v) {
    std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  };
  for (std::size_t k = 0; k < keys.size(); ++k) out << (k ? "," : "") << keys[k];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < keys.size(); ++k) {
      out << (k ? "," : "");
      if (row.contains(keys[k])) out << cell(row[keys[k]]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace freebound::io
