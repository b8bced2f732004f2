#include "lfc/io.hpp"

#include "lfc/error.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace lfc {

FieldSpec field_spec_from_json(const json &j) {
  FieldSpec s;
  try {
    s.p = j.at("p").get<std::int64_t>();
    s.f = j.at("f").get<int>();
    s.eis_poly = j.at("eis_poly").get<std::vector<std::vector<std::int64_t>>>();
    s.precision = j.at("precision").get<int>();
  } catch (const json::exception &e) {
    raise(ErrorKind::InvalidInput, std::string("bad field descriptor: ") + e.what());
  }
  if (s.eis_poly.empty())
    raise(ErrorKind::InvalidInput, "bad field descriptor: empty eis_poly");
  return s;
}

json to_json(const FieldSpec &s) {
  return json{{"p", s.p}, {"f", s.f}, {"eis_poly", s.eis_poly}, {"precision", s.precision}};
}

json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    raise(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    raise(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

FieldSpec read_field_spec(const std::string &path) { return field_spec_from_json(read_json(path)); }

LocalFieldPtr make_field(const FieldSpec &s) { return LocalField::make(s.p, s.f, s.eis_poly, s.precision); }

std::vector<CatalogEntry> read_catalog(const std::string &path) {
  json j = read_json(path);
  std::vector<CatalogEntry> out;
  try {
    for (const auto &e : j.at("fields"))
      out.push_back({e.at("name").get<std::string>(), e.at("group").get<std::string>(),
                     field_spec_from_json(e.at("field"))});
  } catch (const json::exception &e) {
    raise(ErrorKind::InvalidInput, path + ": " + e.what());
  }
  return out;
}

json to_json(const std::vector<CatalogEntry> &catalog) {
  json arr = json::array();
  for (const auto &e : catalog)
    arr.push_back(json{{"name", e.name}, {"group", e.group}, {"field", to_json(e.field)}});
  return json{{"fields", arr}};
}

json element_json(const FieldElement &x) {
  if (x.is_zero())
    return json{{"zero", true}, {"prec_abs", x.prec_abs()}};
  return json{{"valuation", x.valuation()}, {"digits", x.unit()}, {"prec_abs", x.prec_abs()}};
}

namespace {

json legend_json(const GaloisGroup &G) {
  json legend = json::array();
  for (int s = 0; s < G.size(); ++s)
    legend.push_back(json{{"index", s}, {"frob_power", G[s].frob_power}, {"pi_image", G[s].pi_image.unit()}});
  return legend;
}

} // namespace

json cocycle_dump(const LfcResult &r, const FieldSpec &spec) {
  const auto &G = *r.ctx.group;
  const auto &L = G.field();
  const int n = G.size();
  const int k = r.cocycle.k;
  auto M = uq_build(L, k);

  json legend = legend_json(G);

  json pairs = json::array();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const FieldElement &x = r.cocycle(s, t);
      pairs.push_back(json{{"s", s},
                           {"t", t},
                           {"valuation", x.valuation()},
                           {"units_quotient", M->dlog(x)},
                           {"digits", x.unit()},
                           {"prec_abs", x.prec_abs()}});
    }

  json meta{{"p", L->p()},
            {"f", L->f()},
            {"e", L->e()},
            {"k", k},
            {"base_degree", L->degree() / n},
            {"units_quotient_moduli", M->moduli()},
            {"pi_L", L->pi().unit()},
            {"pi", element_json(r.pi)},
            {"algorithm_version", kAlgorithmVersion},
            {"field", to_json(spec)}};
  return json{{"metadata", meta}, {"group", legend}, {"cocycle", pairs}};
}

bool is_cocycle_dump(const json &j) { return j.is_object() && j.contains("metadata") && j.contains("cocycle"); }

CocycleDump cocycle_dump_from_json(const json &j) {
  CocycleDump d;
  try {
    d.field = field_spec_from_json(j.at("metadata").at("field"));
    d.k = j.at("metadata").at("k").get<int>();
    d.group = j.at("group");
  } catch (const json::exception &e) {
    raise(ErrorKind::InvalidInput, std::string("bad cocycle dump: ") + e.what());
  }
  return d;
}

std::vector<std::vector<FieldElement>> load_cocycle_table(const json &dump, const GaloisGroup &G) {
  const int n = G.size();
  const auto &L = G.field();
  if (dump.at("group") != legend_json(G))
    raise(ErrorKind::InvalidInput, "cocycle dump: group legend does not match the recomputed group");
  std::vector<std::vector<FieldElement>> out(n, std::vector<FieldElement>(n));
  std::vector<std::vector<int>> seen(n, std::vector<int>(n, 0));
  try {
    for (const auto &row : dump.at("cocycle")) {
      const int s = row.at("s").get<int>(), t = row.at("t").get<int>();
      if (s < 0 || t < 0 || s >= n || t >= n)
        raise(ErrorKind::InvalidInput, "cocycle dump: index out of range");
      out[s][t] = L->from_parts(row.at("valuation").get<int>(), row.at("digits").get<Coords>(),
                                row.at("prec_abs").get<int>());
      seen[s][t] = 1;
    }
  } catch (const json::exception &e) {
    raise(ErrorKind::InvalidInput, std::string("bad cocycle dump: ") + e.what());
  }
  for (const auto &r : seen)
    for (int x : r)
      if (!x)
        raise(ErrorKind::InvalidInput, "cocycle dump: missing entries");
  return out;
}

void write_json(const std::string &path, const json &j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out)
      raise(ErrorKind::InvalidInput, "cannot write " + path);
    out << j.dump(2) << "\n";
    if (!out)
      raise(ErrorKind::InvalidInput, "cannot write " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    raise(ErrorKind::InvalidInput, "cannot write " + path + ": " + ec.message());
}

} // namespace lfc
