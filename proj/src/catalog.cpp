#include "mbm/catalog.hpp"

#include "mbm/errors.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#ifndef MBM_CATALOG_DEFAULT
#define MBM_CATALOG_DEFAULT "catalog/catalog.json"
#endif

namespace mbm {

namespace {

using nlohmann::json;

Int read_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) == 0) return v;
  }
  throw CatalogError(where + ": expected an integer");
}

std::string bound_string(const json& j, const std::string& where) {
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (!parse_square_bound(s) && s != "unknown") throw CatalogError(where + ": malformed mbm_square_bound '" + s + "'");
    return s;
  }
  throw CatalogError(where + ": mbm_square_bound must be an integer or a string");
}

CatalogEntry read_entry(const json& j, std::size_t index) {
  std::string where = "catalog entry " + std::to_string(index);
  if (!j.is_object()) throw CatalogError(where + ": expected an object");
  for (const char* key : {"name", "gram", "signature", "discriminant", "fujiki_constant", "mbm_square_bound", "notes"})
    if (!j.contains(key)) throw CatalogError(where + ": missing field '" + key + "'");
  CatalogEntry e;
  if (!j["name"].is_string()) throw CatalogError(where + ": name must be a string");
  e.name = j["name"].get<std::string>();
  where = "catalog entry '" + e.name + "'";

  const json& g = j["gram"];
  if (!g.is_array()) throw CatalogError(where + ": gram must be an array of rows");
  IntMatrix gram;
  for (const auto& row : g) {
    if (!row.is_array()) throw CatalogError(where + ": gram must be an array of rows");
    LatticeVector r;
    for (const auto& x : row) r.push_back(read_int(x, where + " gram"));
    gram.push_back(std::move(r));
  }
  try {
    e.lattice = make_lattice(gram, e.name);
  } catch (const ValidationError& err) {
    throw CatalogError(where + ": " + err.what());
  }

  const json& sig = j["signature"];
  if (!sig.is_array() || sig.size() != 2) throw CatalogError(where + ": signature must be [p, m]");
  Signature recorded{sig[0].get<int>(), sig[1].get<int>()};
  if (!(recorded == e.lattice.signature()))
    throw CatalogError(where + ": recorded signature (" + std::to_string(recorded.positive) + "," +
                       std::to_string(recorded.negative) + ") differs from recomputed (" +
                       std::to_string(e.lattice.signature().positive) + "," +
                       std::to_string(e.lattice.signature().negative) + ")");
  Int disc = read_int(j["discriminant"], where + " discriminant");
  if (disc != e.lattice.discriminant())
    throw CatalogError(where + ": recorded discriminant " + disc.get_str() + " differs from recomputed " +
                       e.lattice.discriminant().get_str());

  const json& f = j["fujiki_constant"];
  if (f.is_string() && f.get<std::string>() == "unknown") {
    e.fujiki_constant = std::nullopt;
  } else {
    Int c = read_int(f, where + " fujiki_constant");
    if (c <= 0) throw CatalogError(where + ": fujiki_constant must be positive");
    e.fujiki_constant = c;
  }
  e.mbm_square_bound = bound_string(j["mbm_square_bound"], where);
  const json& notes = j["notes"];
  if (notes.is_string()) {
    e.notes.push_back(notes.get<std::string>());
  } else if (notes.is_array()) {
    for (const auto& n : notes) {
      if (!n.is_string()) throw CatalogError(where + ": notes must be strings");
      e.notes.push_back(n.get<std::string>());
    }
  } else {
    throw CatalogError(where + ": notes must be a string or a list of strings");
  }
  return e;
}

}  // namespace

std::optional<std::pair<Rat, bool>> parse_square_bound(const std::string& recorded) {
  if (recorded == "unknown") return std::nullopt;
  static const std::string prefix = "conjectural:";
  bool conjectural = recorded.rfind(prefix, 0) == 0;
  std::string body = conjectural ? recorded.substr(prefix.size()) : recorded;
  try {
    return std::make_pair(parse_rational(body), conjectural);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<CatalogEntry> parse_catalog(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw CatalogError("catalog must be a JSON array of entries");
  std::vector<CatalogEntry> out;
  std::set<std::string> names;
  try {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      out.push_back(read_entry(doc[i], i));
      if (!names.insert(out.back().name).second) throw CatalogError("duplicate catalog entry '" + out.back().name + "'");
    }
  } catch (const json::exception& e) {
    throw CatalogError(std::string("malformed catalog entry: ") + e.what());
  }
  return out;
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

std::string default_catalog_path() {
  if (const char* env = std::getenv("MBM_CATALOG_PATH"); env && *env) return env;
  return MBM_CATALOG_DEFAULT;
}

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& entries, const std::string& name) {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw CatalogError("no catalog entry named '" + name + "'");
}

}  // namespace mbm
