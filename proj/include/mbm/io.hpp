#pragma once

#include "mbm/chambers.hpp"
#include "mbm/lattice.hpp"
#include "mbm/orbits.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace mbm::io {

/// Keys keep insertion order so output bytes are stable.
using Json = nlohmann::ordered_json;

// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
// Rationals are numbers when integral and "p/q" strings otherwise.
Json to_json(const Int& x);
Json to_json(const Rat& x);
Json to_json(const LatticeVector& v);
Json to_json(const RationalVector& v);
Json to_json(const IntMatrix& m);

Int int_from_json(const Json& j);
Rat rat_from_json(const Json& j);
LatticeVector vector_from_json(const Json& j);
IntMatrix matrix_from_json(const Json& j);

Json to_json(const Lattice& l);
Json to_json(const Wall& w);
Json to_json(const Chamber& c);
Json to_json(const Reduction& r);
Json to_json(const Face& f);
Json to_json(const FacetSearch& f);
Json to_json(const Flag& f);
Json to_json(const Tessellation& t);
Json to_json(const Census& c);

/// {"name": ..., "gram": [[...]]} or a bare Gram matrix.
Lattice lattice_from_json(const Json& j, const std::string& fallback_name = "");
Lattice load_lattice_file(const std::string& path);
/// A JSON list of integral matrices, each validated as an isometry of l.
std::vector<Isometry> load_generators(const Lattice& l, const std::string& path);

std::string read_file(const std::string& path);
/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

std::string tessellation_dot(const Tessellation& t);
std::string census_table(const Census& c);

}  // namespace mbm::io
