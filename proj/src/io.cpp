#include "mbm/io.hpp"

#include "mbm/errors.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace mbm::io {

Json to_json(const Int& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

Json to_json(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  if (c.get_den() == 1) return to_json(Int(c.get_num()));
  return c.get_str();
}

Json to_json(const LatticeVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(to_json(row));
  return out;
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) == 0) return v;
  }
  throw ParseError("expected an integer, got " + j.dump());
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(int_from_json(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational, got " + j.dump());
}

LatticeVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a vector, got " + j.dump());
  LatticeVector v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a matrix, got " + j.dump());
  IntMatrix m;
  for (const auto& row : j) m.push_back(vector_from_json(row));
  return m;
}

Json to_json(const Lattice& l) {
  Json j;
  j["name"] = l.name();
  j["rank"] = l.rank();
  j["signature"] = Json::array({l.signature().positive, l.signature().negative});
  j["discriminant"] = to_json(l.discriminant());
  j["kernel_dimension"] = l.kernel_dimension();
  j["gram"] = to_json(l.gram());
  return j;
}

Json to_json(const Wall& w) {
  Json j;
  j["vector"] = to_json(w.vector);
  j["square"] = to_json(w.square);
  return j;
}

namespace {

Json walls(const std::vector<Wall>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(to_json(w));
  return out;
}

}  // namespace

Json to_json(const Chamber& c) {
  Json j;
  j["witness"] = to_json(c.witness);
  j["base"] = to_json(c.base_witness);
  j["key"] = key_hash(c.key_string());
  j["crossing_set"] = walls(c.crossing_set);
  return j;
}

Json to_json(const Reduction& r) {
  Json j;
  j["length"] = r.word.size();
  j["word"] = walls(r.word);
  j["image"] = to_json(r.image);
  j["separating_counts"] = r.separating_counts;
  return j;
}

Json to_json(const Face& f) {
  Json j;
  j["wall"] = to_json(f.supporting_wall.vector);
  j["square"] = to_json(f.supporting_wall.square);
  j["orientation"] = f.orientation;
  j["point"] = to_json(f.witness_on_wall);
  return j;
}

Json to_json(const FacetSearch& f) {
  Json j;
  j["certified"] = f.certified;
  Json faces = Json::array();
  for (const auto& face : f.faces) faces.push_back(to_json(face));
  j["facets"] = faces;
  j["candidates_examined"] = f.candidates.size();
  return j;
}

Json to_json(const Flag& f) {
  Json entries = Json::array();
  for (const auto& e : f.entries) {
    Json j;
    j["projected"] = to_json(e.projected);
    j["square"] = to_json(e.square);
    j["unscaled"] = to_json(e.unscaled);
    j["unscaled_square"] = to_json(e.unscaled_square);
    j["orientation"] = e.orientation;
    entries.push_back(j);
  }
  Json j;
  j["depth"] = f.depth();
  j["entries"] = entries;
  return j;
}

Json to_json(const Tessellation& t) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    Json j;
    j["id"] = i;
    j["depth"] = n.depth;
    j["key"] = key_hash(n.chamber.key_string());
    j["witness"] = to_json(n.chamber.witness);
    j["crossing_set"] = walls(n.chamber.crossing_set);
    Json facets = Json::array();
    for (const auto& f : n.facets) facets.push_back(to_json(f.supporting_wall.vector));
    j["facets"] = facets;
    j["certified"] = n.certified;
    nodes.push_back(j);
  }
  Json edges = Json::array();
  for (const auto& e : t.edges) {
    Json j;
    j["from"] = e.from;
    j["to"] = e.to;
    j["wall"] = to_json(e.wall.vector);
    edges.push_back(j);
  }
  Json j;
  j["certified"] = t.certified;
  j["chambers"] = t.nodes.size();
  j["nodes"] = nodes;
  j["edges"] = edges;
  return j;
}

Json to_json(const Census& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows) {
    Json j;
    j["codim"] = r.codim;
    j["depth"] = r.depth;
    j["chambers"] = r.chambers;
    j["faces"] = r.faces;
    j["new_orbits"] = r.new_orbits;
    rows.push_back(j);
  }
  auto tuples = [](const std::vector<ClassTuple>& ts) {
    Json out = Json::array();
    for (const auto& t : ts) {
      Json x = Json::array();
      for (const auto& v : t) x.push_back(to_json(v));
      out.push_back(x);
    }
    return out;
  };
  Json j;
  j["rows"] = rows;
  j["total_orbits"] = c.total_orbits;
  j["codim2_flags"] = c.codim2_flags;
  j["codim2_unscaled_square_range"] =
      c.codim2_min_square ? Json::array({to_json(*c.codim2_min_square), to_json(*c.codim2_max_square)}) : Json();
  j["tessellation_certified"] = c.tessellation_certified;
  j["representatives"] = {{"codim1", tuples(c.representatives_codim1)}, {"codim2", tuples(c.representatives_codim2)}};
  return j;
}

Lattice lattice_from_json(const Json& j, const std::string& fallback_name) {
  if (j.is_array()) return make_lattice(matrix_from_json(j), fallback_name);
  if (!j.is_object() || !j.contains("gram")) throw ParseError("lattice JSON needs a \"gram\" field");
  std::string name = fallback_name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("lattice name must be a string");
    name = j["name"].get<std::string>();
  }
  return make_lattice(matrix_from_json(j["gram"]), name);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

Json parse(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": malformed JSON: " + e.what());
  }
}

}  // namespace

Lattice load_lattice_file(const std::string& path) { return lattice_from_json(parse(read_file(path), path), path); }

std::vector<Isometry> load_generators(const Lattice& l, const std::string& path) {
  Json j = parse(read_file(path), path);
  if (!j.is_array()) throw ParseError(path + ": expected a list of matrices");
  std::vector<Isometry> out;
  for (const auto& m : j) out.push_back(make_isometry(l, matrix_from_json(m)));
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string tessellation_dot(const Tessellation& t) {
  std::ostringstream out;
  out << "graph tessellation {\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    out << "  c" << i << " [label=\"" << key_hash(n.chamber.key_string()) << "\\ndepth " << n.depth << "\"];\n";
  }
  for (const auto& e : t.edges)
    out << "  c" << e.from << " -- c" << e.to << " [label=\"" << to_string(e.wall.vector) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string census_table(const Census& c) {
  std::ostringstream out;
  out << std::left << std::setw(7) << "codim" << std::setw(7) << "depth" << std::setw(10) << "chambers"
      << std::setw(8) << "faces" << "new_orbits\n";
  for (const auto& r : c.rows)
    out << std::setw(7) << r.codim << std::setw(7) << r.depth << std::setw(10) << r.chambers << std::setw(8)
        << r.faces << r.new_orbits << "\n";
  for (std::size_t k = 0; k < c.total_orbits.size(); ++k)
    out << "total codim " << (k + 1) << " orbits: " << c.total_orbits[k] << "\n";
  if (c.codim2_min_square)
    out << "codim 2 unscaled squares in [" << c.codim2_min_square->get_str() << ", "
        << c.codim2_max_square->get_str() << "]\n";
  if (!c.tessellation_certified) out << "warning: some facet lists are not certified\n";
  return out.str();
}

}  // namespace mbm::io
