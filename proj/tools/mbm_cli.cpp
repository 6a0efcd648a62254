// mbm: command-line front end for the lattice, wall and chamber toolkit.

#include "mbm/catalog.hpp"
#include "mbm/chambers.hpp"
#include "mbm/enumeration.hpp"
#include "mbm/errors.hpp"
#include "mbm/io.hpp"
#include "mbm/orbits.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace {

using mbm::io::Json;
using mbm::io::to_json;

struct Common {
  std::string lattice;
  std::string format = "json";
  std::uint64_t seed = 1;
  int threads = 0;
};

struct Params {
  std::string squares = "-2";
  bool reflective = false;
  std::string v0, v1, v, w, base, witness;
  std::vector<std::string> walls, reps;
  std::string generators;
  long square = 0;
  long box = 0;
  long short_bound = 0;
  long r = 0;
  long depth = 2;
  long search_bound = 8;
  long budget = 0;
  long samples = 0;
  std::string catalog;
};

mbm::Lattice resolve_lattice(const std::string& source) {
  if (source.empty()) throw mbm::ValidationError("--lattice is required");
  if (std::filesystem::exists(source)) return mbm::io::load_lattice_file(source);
  auto entries = mbm::load_catalog(mbm::default_catalog_path());
  return mbm::find_entry(entries, source).lattice;
}

mbm::WallSpec make_spec(const Params& p) {
  mbm::WallSpec spec;
  for (const auto& x : mbm::parse_integer_list(p.squares)) spec.squares.insert(x);
  spec.require_reflective = p.reflective;
  spec.validate();
  return spec;
}

mbm::RationalVector rational(const std::string& text, const char* flag) {
  if (text.empty()) throw mbm::ValidationError(std::string(flag) + " is required");
  return mbm::parse_rational_list(text);
}

mbm::LatticeVector integral(const std::string& text, const char* flag) {
  if (text.empty()) throw mbm::ValidationError(std::string(flag) + " is required");
  return mbm::parse_integer_list(text);
}

// A base on a wall is moved into an adjacent chamber.
mbm::RationalVector off_walls(const mbm::Lattice& l, const mbm::RationalVector& v, const mbm::WallSpec& spec,
                              Json& notes) {
  mbm::require_rank(l, v.size(), "base");
  mbm::RationalVector moved = mbm::nudge_off_walls(l, v, spec);
  if (moved != v) notes["nudged_base"] = to_json(moved);
  return moved;
}

std::vector<mbm::Isometry> generators(const mbm::Lattice& l, const Params& p, const mbm::WallSpec& spec,
                                      const mbm::RationalVector& base) {
  if (!p.generators.empty()) return mbm::io::load_generators(l, p.generators);
  return mbm::facet_reflections(l, base, spec, p.search_bound);
}

void emit(const Common& c, const Json& j, const std::string& text) {
  if (c.format == "json")
    std::cout << mbm::io::dump(j);
  else
    std::cout << text;
}

std::string vector_lines(const Json& list) {
  std::ostringstream out;
  for (const auto& v : list) out << v.dump() << "\n";
  return out.str();
}

int run_info(const Common& c) {
  mbm::Lattice l = resolve_lattice(c.lattice);
  Json j;
  j["name"] = l.name();
  j["rank"] = l.rank();
  j["signature"] = Json::array({l.signature().positive, l.signature().negative});
  j["discriminant"] = to_json(l.discriminant());
  j["kernel_dimension"] = l.kernel_dimension();
  std::ostringstream t;
  t << "name: " << l.name() << "\nrank: " << l.rank() << "\nsignature: (" << l.signature().positive << ","
    << l.signature().negative << ")\ndiscriminant: " << l.discriminant().get_str()
    << "\nkernel dimension: " << l.kernel_dimension() << "\n";
  emit(c, j, t.str());
  return 0;
}

int run_enumerate(const Common& c, const Params& p) {
  mbm::Lattice l = resolve_lattice(c.lattice);
  std::vector<mbm::LatticeVector> found;
  if (p.short_bound != 0)
    found = mbm::definite_short_vectors(l, p.short_bound);
  else
    found = mbm::vectors_of_square(l, p.square, p.box == 0 ? 3 : p.box);
  Json list = Json::array();
  for (const auto& v : found) list.push_back(to_json(v));
  emit(c, list, vector_lines(list));
  return 0;
}

int run_separate(const Common& c, const Params& p) {
  mbm::Lattice l = resolve_lattice(c.lattice);
  auto walls = mbm::separating_walls(l, rational(p.v0, "--v0"), rational(p.v1, "--v1"), make_spec(p));
  Json list = Json::array();
  for (const auto& w : walls) list.push_back(to_json(w.vector));
  emit(c, list, vector_lines(list));
  return 0;
}

int run_reduce(const Common& c, const Params& p) {
  mbm::Lattice l = resolve_lattice(c.lattice);
  auto r = mbm::reduce_to_base(l, rational(p.v, "--v"), rational(p.base, "--base"), make_spec(p));
  std::ostringstream t;
  t << "length: " << r.word.size() << "\n";
  for (const auto& w : r.word) t << "reflect " << mbm::to_string(w.vector) << "\n";
  t << "image: " << mbm::to_string(r.image) << "\n";
  emit(c, to_json(r), t.str());
  return 0;
}

int run_facets(const Common& c, const Params& p) {
  mbm::Lattice l = resolve_lattice(c.lattice);
  mbm::WallSpec spec = make_spec(p);
  Json notes;
  mbm::RationalVector base = off_walls(l, rational(p.base, "--base"), spec, notes);
  mbm::RationalVector witness = p.witness.empty() ? base : rational(p.witness, "--witness");
  mbm::Chamber ch = mbm::make_chamber(l, witness, base, spec);
  auto f = mbm::facet_walls(l, ch, spec, p.search_bound);
  Json j = to_json(f);
  if (!notes.is_null()) j["notes"] = notes;
  std::ostringstream t;
  for (const auto& face : f.faces)
    t << mbm::to_string(face.supporting_wall.vector) << " square " << face.supporting_wall.square.get_str() << "\n";
  t << (f.certified ? "certified\n" : "not certified\n");
  emit(c, j, t.str());
  return 0;
}

int run_flag(const Common& c, const Params& p) {
  mbm::Lattice l = resolve_lattice(c.lattice);
  std::vector<mbm::LatticeVector> chain;
  for (const auto& w : p.walls) chain.push_back(mbm::parse_integer_list(w));
  if (chain.empty()) throw mbm::ValidationError("at least one --wall is required");
  auto f = mbm::encode_flag(l, chain, make_spec(p));
  std::ostringstream t;
  for (const auto& e : f.entries)
    t << mbm::to_string(e.projected) << " square " << e.square.get_str() << " unscaled square "
      << e.unscaled_square.get_str() << "\n";
  emit(c, to_json(f), t.str());
  return 0;
}

int run_explore(const Common& c, const Params& p) {
  mbm::Lattice l = resolve_lattice(c.lattice);
  mbm::WallSpec spec = make_spec(p);
  Json notes;
  mbm::RationalVector base = off_walls(l, rational(p.base, "--base"), spec, notes);
  mbm::ExploreOptions opts;
  opts.search_bound = p.search_bound;
  auto t = mbm::explore_tessellation(l, base, spec, static_cast<std::size_t>(p.depth), opts);
  if (c.format == "dot") {
    std::cout << mbm::io::tessellation_dot(t);
    return 0;
  }
  Json j = to_json(t);
  if (!notes.is_null()) j["notes"] = notes;
  std::ostringstream text;
  text << "chambers: " << t.nodes.size() << "\nedges: " << t.edges.size() << "\n";
  for (const auto& n : t.nodes)
    text << "depth " << n.depth << " " << mbm::key_hash(n.chamber.key_string()) << " facets " << n.facets.size()
         << "\n";
  emit(c, j, text.str());
  return 0;
}

int run_orbits(const Common& c, const Params& p) {
  mbm::Lattice l = resolve_lattice(c.lattice);
  std::vector<mbm::Isometry> gens;
  if (!p.generators.empty()) {
    gens = mbm::io::load_generators(l, p.generators);
  } else {
    mbm::WallSpec spec = make_spec(p);
    Json unused;
    gens = mbm::facet_reflections(l, off_walls(l, rational(p.base, "--base"), spec, unused), spec, p.search_bound);
  }
  const std::size_t budget = p.budget == 0 ? 8 : static_cast<std::size_t>(p.budget);
  mbm::LatticeVector v = integral(p.v, "--v");
  Json j;
  std::ostringstream t;
  j["generators"] = gens.size();
  if (!p.w.empty()) {
    auto rel = mbm::same_orbit(l, v, integral(p.w, "--w"), gens, budget, p.box);
    j["relation"] = mbm::to_string(rel);
    t << mbm::to_string(rel) << "\n";
  } else {
    auto rep = mbm::canonical_orbit_rep(l, v, gens, budget, p.box);
    j["representative"] = to_json(rep.rep);
    j["complete"] = rep.complete;
    j["explored"] = rep.explored;
    t << mbm::to_string(rep.rep) << (rep.complete ? "" : " (orbit not closed)") << "\n";
  }
  emit(c, j, t.str());
  return 0;
}

int run_kneser(const Common& c, const Params& p) {
  mbm::Lattice l = resolve_lattice(c.lattice);
  std::vector<mbm::LatticeVector> reps;
  for (const auto& r : p.reps) reps.push_back(mbm::parse_integer_list(r));
  auto out = mbm::kneser_degenerate_reps(l, p.r, reps);
  Json list = Json::array();
  for (const auto& v : out) list.push_back(to_json(v));
  emit(c, list, vector_lines(list));
  return 0;
}

int run_census(const Common& c, const Params& p) {
  mbm::Lattice l = resolve_lattice(c.lattice);
  mbm::WallSpec spec = make_spec(p);
  Json notes;
  mbm::RationalVector base = off_walls(l, rational(p.base, "--base"), spec, notes);
  auto gens = generators(l, p, spec, base);
  mbm::CensusOptions opts;
  opts.word_budget = static_cast<std::size_t>(p.budget);
  opts.search_bound = p.search_bound;
  opts.box = p.box;
  auto census = mbm::face_orbit_census(l, base, spec, gens, static_cast<std::size_t>(p.depth), opts);
  Json j = to_json(census);
  if (!notes.is_null()) j["notes"] = notes;
  emit(c, j, mbm::io::census_table(census));
  return 0;
}

int run_validate_catalog(const Common& c, const Params& p) {
  const std::string path = p.catalog.empty() ? mbm::default_catalog_path() : p.catalog;
  auto entries = mbm::load_catalog(path);
  Json list = Json::array();
  std::ostringstream t;
  for (const auto& e : entries) {
    Json j;
    j["name"] = e.name;
    j["signature"] = Json::array({e.lattice.signature().positive, e.lattice.signature().negative});
    j["discriminant"] = to_json(e.lattice.discriminant());
    j["fujiki_constant"] = e.fujiki_constant ? to_json(*e.fujiki_constant) : Json("unknown");
    j["mbm_square_bound"] = e.mbm_square_bound;
    t << e.name << ": signature (" << e.lattice.signature().positive << "," << e.lattice.signature().negative
      << "), discriminant " << e.lattice.discriminant().get_str();
    if (p.samples > 0) {
      auto s = mbm::survey_reflections(e.lattice, static_cast<std::size_t>(p.samples), c.seed);
      Json sq = Json::array();
      for (const auto& x : s.integral_squares) sq.push_back(to_json(x));
      Json violations = Json::array();
      for (const auto& v : s.violations) violations.push_back(to_json(v));
      j["reflection_survey"] = {{"samples", s.samples},
                                {"candidates", s.candidates},
                                {"integral", s.integral},
                                {"integral_squares", sq},
                                {"violations", violations}};
      t << ", " << s.integral << " integral reflections, " << s.violations.size() << " bound violations";
    }
    t << "\n";
    list.push_back(j);
  }
  emit(c, list, t.str());
  return 0;
}

void add_common(CLI::App* sub, Common& c, bool needs_lattice = true) {
  if (needs_lattice) sub->add_option("--lattice", c.lattice, "Catalog entry name or lattice JSON file")->required();
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));
  sub->add_option("--seed", c.seed, "Seed for randomized checks");
  sub->add_option("--threads", c.threads, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
}

void add_spec(CLI::App* sub, Params& p) {
  sub->add_option("--squares", p.squares, "Comma-separated negative wall squares")->allow_extra_args(false);
  sub->add_flag("--reflective", p.reflective, "Keep only walls with integral reflection");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walls, chambers and flag orbits in integral hyperbolic lattices"};
  app.require_subcommand(1);
  Common c;
  Params p;

  auto* info = app.add_subcommand("info", "Signature and discriminant of a lattice");
  add_common(info, c);

  auto* enumerate = app.add_subcommand("enumerate", "Vectors of a given square");
  add_common(enumerate, c);
  enumerate->add_option("--square", p.square, "Target square (indefinite lattices, brute force in a box)");
  enumerate->add_option("--box", p.box, "Coordinate box (default 3)");
  enumerate->add_option("--short", p.short_bound, "Negative-definite lattices: all v with q(v,v) >= this bound");

  auto* separate = app.add_subcommand("separate", "Walls separating two positive vectors");
  add_common(separate, c);
  add_spec(separate, p);
  separate->add_option("--v0", p.v0)->required();
  separate->add_option("--v1", p.v1)->required();

  auto* reduce = app.add_subcommand("reduce", "Reflection word moving v into the chamber of base");
  add_common(reduce, c);
  add_spec(reduce, p);
  reduce->add_option("--v", p.v)->required();
  reduce->add_option("--base", p.base)->required();

  auto* facets = app.add_subcommand("facets", "Facets of a chamber");
  add_common(facets, c);
  add_spec(facets, p);
  facets->add_option("--base", p.base)->required();
  facets->add_option("--witness", p.witness, "Chamber point (default: the base)");
  facets->add_option("--search-bound", p.search_bound);

  auto* flag = app.add_subcommand("flag", "Oriented flag of a face chain");
  add_common(flag, c);
  add_spec(flag, p);
  flag->add_option("--wall", p.walls, "Chain element, outermost first (repeatable)")->required();

  auto* explore = app.add_subcommand("explore", "Breadth-first chamber exploration");
  add_common(explore, c);
  add_spec(explore, p);
  explore->add_option("--base", p.base)->required();
  explore->add_option("--depth", p.depth);
  explore->add_option("--search-bound", p.search_bound);

  auto* orbits = app.add_subcommand("orbits", "Orbit representative or orbit comparison");
  add_common(orbits, c);
  add_spec(orbits, p);
  orbits->add_option("--v", p.v)->required();
  orbits->add_option("--w", p.w, "Compare with this vector");
  orbits->add_option("--generators", p.generators, "JSON file with a list of isometry matrices");
  orbits->add_option("--base", p.base, "Use reflections in the facets of this chamber as generators");
  orbits->add_option("--budget", p.budget, "Word length budget (default 8)");
  orbits->add_option("--box", p.box, "Coordinate box (0 = auto)");
  orbits->add_option("--search-bound", p.search_bound);

  auto* kneser = app.add_subcommand("kneser", "Orbit representatives in a lattice with one-dimensional kernel");
  add_common(kneser, c);
  kneser->add_option("--r", p.r, "Square")->required();
  kneser->add_option("--rep", p.reps, "Representative of the non-degenerate quotient (repeatable)");

  auto* census = app.add_subcommand("census", "Facet and codimension-2 flag orbit census");
  add_common(census, c);
  add_spec(census, p);
  census->add_option("--base", p.base)->required();
  census->add_option("--depth", p.depth);
  census->add_option("--generators", p.generators, "JSON file with a list of isometry matrices");
  census->add_option("--budget", p.budget, "Word length budget (0 = 2 * depth + 2)");
  census->add_option("--box", p.box, "Coordinate box (0 = auto)");
  census->add_option("--search-bound", p.search_bound);

  auto* validate = app.add_subcommand("validate-catalog", "Load and check the lattice catalog");
  add_common(validate, c, false);
  validate->add_option("--catalog", p.catalog, "Catalog file (default: $MBM_CATALOG_PATH or the shipped catalog)");
  validate->add_option("--samples", p.samples, "Random reflection candidates per entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (c.threads > 0) omp_set_num_threads(c.threads);
  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "info") return run_info(c);
    if (name == "enumerate") return run_enumerate(c, p);
    if (name == "separate") return run_separate(c, p);
    if (name == "reduce") return run_reduce(c, p);
    if (name == "facets") return run_facets(c, p);
    if (name == "flag") return run_flag(c, p);
    if (name == "explore") return run_explore(c, p);
    if (name == "orbits") return run_orbits(c, p);
    if (name == "kneser") return run_kneser(c, p);
    if (name == "census") return run_census(c, p);
    if (name == "validate-catalog") return run_validate_catalog(c, p);
  } catch (const mbm::Error& e) {
    Json j;
    j["error"] = e.kind();
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return 1;
  }
  return 2;
}
