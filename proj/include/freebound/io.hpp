#pragma once

// Domain JSON, field CSV / binary dumps and report serialization.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "freebound/field.hpp"
#include "freebound/geometry.hpp"

namespace freebound::io {

using Json = nlohmann::ordered_json;

// {"vertices": [[x, y], ...], "labels": ["fixed" | "free", ...],
//  "holes": [[[x, y], ...], ...]} plus "hole_labels" when a hole carries a
// free edge. Missing hole labels mean all fixed.
Json domain_to_json(const geometry::LabeledDomain& domain);
// ValidationError on malformed input.
geometry::LabeledDomain domain_from_json(const Json& json);
geometry::LabeledDomain read_domain_file(const std::string& path);
void write_domain_file(const geometry::LabeledDomain& domain, const std::string& path);

// Header "x,y,value", one row per active cell.
void write_field_csv(const field::ScalarField& f, std::ostream& out);

// Little-endian: int64 nx, int64 ny, double h, double origin_x, double
// origin_y, then nx * ny row-major doubles with NaN outside the mask.
void write_field_binary(const field::ScalarField& f, std::ostream& out);

struct GridDump {
  std::int64_t nx = 0;
  std::int64_t ny = 0;
  double h = 0.0;
  geometry::Point origin;
  std::vector<double> values;
};

GridDump read_field_binary(std::istream& in);

// CSV with the keys of the first row as header; nested values are dumped as
// JSON text.
std::string rows_to_csv(const Json& rows);

}  // namespace freebound::io
