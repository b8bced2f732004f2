#pragma once

#include "lfc/cohomology.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace lfc {

using json = nlohmann::ordered_json;

/// {"p":int,"f":int,"eis_poly":[[int,...],...],"precision":int}
struct FieldSpec {
  std::int64_t p = 2;
  int f = 1;
  std::vector<std::vector<std::int64_t>> eis_poly;
  int precision = 0;

  int e() const { return static_cast<int>(eis_poly.size()); }
  int degree() const { return e() * f; }
};

FieldSpec field_spec_from_json(const json &j);
json to_json(const FieldSpec &s);
FieldSpec read_field_spec(const std::string &path);
LocalFieldPtr make_field(const FieldSpec &s);

struct CatalogEntry {
  std::string name;
  std::string group;  // C2, C4, V4, S3, ...
  FieldSpec field;
};
std::vector<CatalogEntry> read_catalog(const std::string &path);
json to_json(const std::vector<CatalogEntry> &catalog);

/// Unit digits plus valuation and absolute precision.
json element_json(const FieldElement &x);

/// Group legend, pair table, metadata. No timestamp: the caller adds one.
json cocycle_dump(const LfcResult &r, const FieldSpec &spec);

/// A dump read back: the field descriptor, k and the raw table.
struct CocycleDump {
  FieldSpec field;
  int k = 0;
  json group;
  std::vector<std::vector<FieldElement>> values;  // filled by load_cocycle_table
};
bool is_cocycle_dump(const json &j);
CocycleDump cocycle_dump_from_json(const json &j);
/// Rebuilds the table over L; the group legend must match G position by position.
std::vector<std::vector<FieldElement>> load_cocycle_table(const json &dump, const GaloisGroup &G);

json read_json(const std::string &path);

void write_json(const std::string &path, const json &j);

} // namespace lfc
