#include "mbm/orbits.hpp"

#include "mbm/errors.hpp"
#include "mbm/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace mbm {

LatticeVector Isometry::apply(const LatticeVector& v) const { return linalg::apply(matrix, v); }
RationalVector Isometry::apply(const RationalVector& v) const { return linalg::apply(matrix, v); }

bool is_isometry(const Lattice& l, const IntMatrix& m) {
  if (m.size() != l.rank()) return false;
  for (const auto& row : m)
    if (row.size() != l.rank()) return false;
  IntMatrix pulled = linalg::multiply(linalg::transpose(m), linalg::multiply(l.gram(), m));
  if (pulled != l.gram()) return false;
  Int det = linalg::determinant(m);
  return det == 1 || det == -1;
}

Isometry make_isometry(const Lattice& l, IntMatrix matrix) {
  if (!is_isometry(l, matrix)) throw ValidationError("matrix is not an integral isometry of " + l.name());
  return Isometry{std::move(matrix)};
}

Isometry compose(const Isometry& a, const Isometry& b) { return Isometry{linalg::multiply(a.matrix, b.matrix)}; }

Isometry inverse(const Isometry& g) { return Isometry{linalg::unimodular_inverse(g.matrix)}; }

Isometry reflection(const Lattice& l, const LatticeVector& s) {
  require_rank(l, s.size(), "reflection");
  const Int ss = square(l, s);
  if (ss == 0) throw IsotropicVector("reflection in isotropic vector " + to_string(s));
  const LatticeVector gs = l.gram_times(s);
  const std::size_t n = l.rank();
  IntMatrix m = linalg::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rat f(2 * gs[j], ss);
    f.canonicalize();
    for (std::size_t i = 0; i < n; ++i) {
      Rat entry = Rat(m[i][j]) - f * s[i];
      if (entry.get_den() != 1)
        throw NonIntegralReflection("reflection in " + to_string(s) + " is not integral on basis vector e" +
                                        std::to_string(j),
                                    j);
      m[i][j] = entry.get_num();
    }
  }
  return Isometry{std::move(m)};
}

bool check_square_bound_reflective(const Lattice& l, const LatticeVector& s) {
  bool integral = true;
  try {
    reflection(l, s);
  } catch (const NonIntegralReflection&) {
    integral = false;
  }
  if (integral && !l.degenerate() && content(s) == 1) {
    const Int ss = abs(square(l, s));
    if (ss > 2 * l.discriminant())
      throw InternalError("integral reflection in " + to_string(s) + " with |q(s,s)| = " + ss.get_str() +
                          " > 2 * discriminant = " + Int(2 * l.discriminant()).get_str());
  }
  return integral;
}

ReflectionSurvey survey_reflections(const Lattice& l, std::size_t samples, std::uint64_t seed, int box) {
  ReflectionSurvey out;
  out.samples = samples;
  const std::size_t n = l.rank();
  if (n == 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> support(1, std::min<std::size_t>(3, n));
  std::uniform_int_distribution<std::size_t> index(0, n - 1);
  std::uniform_int_distribution<int> value(-box, box);
  for (std::size_t k = 0; k < samples; ++k) {
    LatticeVector s(n, 0);
    const std::size_t m = support(rng);
    for (std::size_t j = 0; j < m; ++j) s[index(rng)] = value(rng);
    if (is_zero(s) || content(s) != 1 || square(l, s) >= 0) continue;
    ++out.candidates;
    try {
      if (check_square_bound_reflective(l, s)) {
        ++out.integral;
        out.integral_squares.insert(square(l, s));
      }
    } catch (const InternalError&) {
      ++out.integral;
      out.integral_squares.insert(square(l, s));
      out.violations.push_back(s);
    }
  }
  return out;
}

std::pair<Int, LatticeVector> DegenerateSplit::decompose(const LatticeVector& v) const {
  LatticeVector y = linalg::apply(linalg::unimodular_inverse(change_of_basis), v);
  return {y[0], LatticeVector(y.begin() + 1, y.end())};
}

LatticeVector DegenerateSplit::compose(const Int& k, const LatticeVector& a0) const {
  LatticeVector y;
  y.push_back(k);
  y.insert(y.end(), a0.begin(), a0.end());
  return linalg::apply(change_of_basis, y);
}

DegenerateSplit degenerate_split(const Lattice& l) {
  if (l.kernel_dimension() != 1)
    throw ValidationError("degenerate split requires a one-dimensional kernel; lattice " + l.name() + " has kernel of dimension " +
                          std::to_string(l.kernel_dimension()));
  auto ker = linalg::rational_kernel(l.gram(), l.rank());
  DegenerateSplit s;
  s.kernel_gen = canonical_class(ker.at(0));
  s.change_of_basis = linalg::complete_to_basis(s.kernel_gen);
  const std::size_t n = l.rank();
  s.complement_basis = int_matrix(n, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) s.complement_basis[i][j - 1] = s.change_of_basis[i][j];
  IntMatrix g0 = linalg::multiply(linalg::transpose(s.complement_basis), linalg::multiply(l.gram(), s.complement_basis));
  s.induced = make_lattice(g0, l.name() + "/ker");
  return s;
}

std::vector<LatticeVector> kneser_degenerate_reps(const Lattice& l, const Int& r,
                                                  const std::vector<LatticeVector>& base_reps) {
  DegenerateSplit split = degenerate_split(l);
  std::vector<LatticeVector> out;
  for (const auto& a : base_reps) {
    require_rank(l, a.size(), "kneser_degenerate_reps");
    if (square(l, a) != r)
      throw ValidationError("base representative " + to_string(a) + " has square " + square(l, a).get_str() +
                            ", expected " + r.get_str());
    auto [k, a0] = split.decompose(a);
    if (is_zero(a0)) continue;
    // Hom(Lambda0, Z) . a0 = content(a0) Z.
    const Int d = content(a0);
    for (Int j = 0; j < d; ++j) out.push_back(split.compose(j, a0));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Isometry> kernel_transvections(const Lattice& l, const DegenerateSplit& split) {
  const std::size_t n = l.rank();
  const IntMatrix& w = split.change_of_basis;
  const IntMatrix winv = linalg::unimodular_inverse(w);
  std::vector<Isometry> out;
  for (std::size_t i = 1; i < n; ++i) {
    IntMatrix t = linalg::identity(n);
    t[0][i] = 1;
    out.push_back(make_isometry(l, linalg::multiply(w, linalg::multiply(t, winv))));
  }
  return out;
}

Isometry lift_isometry(const Lattice& l, const DegenerateSplit& split, const IntMatrix& complement_matrix) {
  const std::size_t n = l.rank();
  if (complement_matrix.size() != n - 1) throw RankMismatch("lift_isometry: complement matrix has wrong size");
  IntMatrix t = int_matrix(n, n);
  t[0][0] = 1;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) t[i + 1][j + 1] = complement_matrix[i][j];
  const IntMatrix& w = split.change_of_basis;
  return make_isometry(l, linalg::multiply(w, linalg::multiply(t, linalg::unimodular_inverse(w))));
}

namespace {

Int auto_box(const ClassTuple& t) {
  Int m = 0;
  for (const auto& v : t)
    for (const auto& x : v)
      if (abs(x) > m) m = abs(x);
  return 10 * (m + 1);
}

bool inside(const ClassTuple& t, const Int& box) {
  for (const auto& v : t)
    for (const auto& x : v)
      if (abs(x) > box) return false;
  return true;
}

}  // namespace

TupleOrbit explore_orbit(const ClassTuple& seed, const std::vector<Isometry>& generators, std::size_t word_budget,
                         const Int& box_in, bool projective) {
  const Int box = box_in == 0 ? auto_box(seed) : box_in;
  auto normalize = [&](ClassTuple t) {
    if (projective)
      for (auto& v : t) v = canonical_class(v);
    return t;
  };
  std::set<ClassTuple> seen;
  std::vector<ClassTuple> frontier{normalize(seed)};
  seen.insert(frontier.front());
  bool pruned = false;
  for (std::size_t step = 0; step < word_budget && !frontier.empty(); ++step) {
    std::vector<ClassTuple> next;
    for (const auto& t : frontier)
      for (const auto& g : generators) {
        ClassTuple img;
        img.reserve(t.size());
        for (const auto& v : t) img.push_back(g.apply(v));
        img = normalize(std::move(img));
        if (!inside(img, box)) {
          pruned = true;
          continue;
        }
        if (seen.insert(img).second) next.push_back(std::move(img));
      }
    frontier = std::move(next);
  }
  TupleOrbit out;
  // Closed only if one more layer adds nothing.
  bool closed = !pruned;
  if (closed && !frontier.empty()) {
    for (const auto& t : frontier) {
      for (const auto& g : generators) {
        ClassTuple img;
        for (const auto& v : t) img.push_back(g.apply(v));
        img = normalize(std::move(img));
        if (!seen.count(img)) {
          closed = false;
          break;
        }
      }
      if (!closed) break;
    }
  }
  out.complete = closed;
  out.elements.assign(seen.begin(), seen.end());
  return out;
}

OrbitRep canonical_orbit_rep(const Lattice& l, const LatticeVector& v, const std::vector<Isometry>& generators,
                             std::size_t word_budget, const Int& box) {
  require_rank(l, v.size(), "canonical_orbit_rep");
  for (const auto& g : generators)
    if (!is_isometry(l, g.matrix)) throw ValidationError("canonical_orbit_rep: invalid generator");
  TupleOrbit orbit = explore_orbit({v}, generators, word_budget, box, false);
  OrbitRep rep;
  rep.rep = orbit.elements.front().front();
  rep.complete = orbit.complete;
  rep.explored = orbit.elements.size();
  return rep;
}

const char* to_string(OrbitRelation r) {
  switch (r) {
    case OrbitRelation::same:
      return "same";
    case OrbitRelation::different:
      return "different";
    default:
      return "inconclusive";
  }
}

OrbitRelation same_orbit(const Lattice& l, const LatticeVector& v, const LatticeVector& w,
                         const std::vector<Isometry>& generators, std::size_t word_budget, const Int& box) {
  require_rank(l, v.size(), "same_orbit");
  require_rank(l, w.size(), "same_orbit");
  if (square(l, v) != square(l, w)) return OrbitRelation::different;
  Int b = box == 0 ? std::max(auto_box({v}), auto_box({w})) : box;
  TupleOrbit orbit = explore_orbit({v}, generators, word_budget, b, false);
  if (std::binary_search(orbit.elements.begin(), orbit.elements.end(), ClassTuple{w})) return OrbitRelation::same;
  return orbit.complete ? OrbitRelation::different : OrbitRelation::inconclusive;
}

std::vector<Isometry> facet_reflections(const Lattice& l, const RationalVector& base, const WallSpec& spec,
                                        const Int& search_bound) {
  Chamber c = make_chamber(l, base, base, spec);
  std::vector<Isometry> out;
  for (const auto& f : facet_walls(l, c, spec, search_bound).faces)
    if (reflection_is_integral(l, f.supporting_wall.vector)) out.push_back(reflection(l, f.supporting_wall.vector));
  return out;
}

namespace {

class OrbitTable {
 public:
  OrbitTable(const std::vector<Isometry>& gens, std::size_t budget, const Int& box)
      : gens_(gens), budget_(budget), box_(box) {}

  void add(const ClassTuple& t, std::size_t depth) {
    if (member_.count(t)) return;
    const std::size_t id = parent_.size();
    parent_.push_back(id);
    first_depth_.push_back(depth);
    seeds_.push_back(t);
    TupleOrbit orbit = explore_orbit(t, gens_, budget_, box_, true);
    for (const auto& e : orbit.elements) {
      auto it = member_.find(e);
      if (it == member_.end())
        member_.emplace(e, id);
      else
        unite(id, it->second);
    }
  }

  // New orbits per depth and representatives (lexicographically least seed of each orbit).
  std::vector<std::size_t> profile(std::size_t depth, std::vector<ClassTuple>& reps) {
    std::map<std::size_t, std::pair<std::size_t, ClassTuple>> roots;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      std::size_t r = find(i);
      auto it = roots.find(r);
      if (it == roots.end())
        roots.emplace(r, std::make_pair(first_depth_[i], seeds_[i]));
      else {
        it->second.first = std::min(it->second.first, first_depth_[i]);
        it->second.second = std::min(it->second.second, seeds_[i]);
      }
    }
    std::vector<std::size_t> out(depth + 1, 0);
    reps.clear();
    for (auto& [r, info] : roots) {
      ++out[info.first];
      reps.push_back(info.second);
    }
    std::sort(reps.begin(), reps.end());
    return out;
  }

 private:
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  const std::vector<Isometry>& gens_;
  std::size_t budget_;
  Int box_;
  std::map<ClassTuple, std::size_t> member_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> first_depth_;
  std::vector<ClassTuple> seeds_;
};

LatticeVector oriented(const Face& f) {
  LatticeVector v = f.supporting_wall.vector;
  if (f.orientation < 0)
    for (auto& x : v) x = -x;
  return v;
}

}  // namespace

Census face_orbit_census(const Lattice& l, const RationalVector& base, const WallSpec& spec,
                         const std::vector<Isometry>& generators, std::size_t depth, const CensusOptions& options) {
  for (const auto& g : generators)
    if (!is_isometry(l, g.matrix)) throw ValidationError("face_orbit_census: invalid generator");
  ExploreOptions eo;
  eo.search_bound = options.search_bound;
  eo.facets_of_last_layer = true;
  Tessellation tess = explore_tessellation(l, base, spec, depth, eo);
  const std::size_t budget = options.word_budget == 0 ? 2 * depth + 2 : options.word_budget;

  // Codimension-2 chains per chamber (independent per node).
  struct NodeFlags {
    std::vector<ClassTuple> codim1;
    std::vector<ClassTuple> codim2;
    std::vector<Int> squares;
  };
  std::vector<NodeFlags> per_node(tess.nodes.size());
  const long count = static_cast<long>(tess.nodes.size());
#pragma omp parallel for schedule(dynamic) if (count > 1)
  for (long k = 0; k < count; ++k) {
    const auto& node = tess.nodes[k];
    const auto& facets = node.facets;
    NodeFlags& nf = per_node[k];
    for (const auto& f : facets) nf.codim1.push_back({f.supporting_wall.vector});
    for (std::size_t i = 0; i < facets.size(); ++i)
      for (std::size_t j = i + 1; j < facets.size(); ++j) {
        std::vector<Wall> constraints;
        for (std::size_t m = 0; m < facets.size(); ++m)
          if (m != i && m != j) constraints.push_back({oriented(facets[m]), facets[m].supporting_wall.square});
        FacePoint fp;
        while (true) {
          fp = face_point(l, node.chamber.witness, {facets[i].supporting_wall.vector, facets[j].supporting_wall.vector},
                          constraints, spec);
          if (fp.missing.empty()) break;
          constraints.insert(constraints.end(), fp.missing.begin(), fp.missing.end());
        }
        if (!fp.point) continue;
        for (auto [a, b] : {std::make_pair(i, j), std::make_pair(j, i)}) {
          Flag flag = encode_flag(l, {facets[a].supporting_wall.vector, facets[b].supporting_wall.vector}, spec);
          nf.codim2.push_back({flag.entries[0].projected, flag.entries[1].projected});
          nf.squares.push_back(flag.entries[1].unscaled_square);
        }
      }
  }

  Census census;
  census.tessellation_certified = tess.certified;
  OrbitTable t1(generators, budget, options.box), t2(generators, budget, options.box);
  std::vector<CensusRow> rows1(depth + 1), rows2(depth + 1);
  for (std::size_t d = 0; d <= depth; ++d) {
    rows1[d] = {1, d, 0, 0, 0};
    rows2[d] = {2, d, 0, 0, 0};
  }
  for (std::size_t k = 0; k < tess.nodes.size(); ++k) {
    const std::size_t d = tess.nodes[k].depth;
    ++rows1[d].chambers;
    ++rows2[d].chambers;
    rows1[d].faces += per_node[k].codim1.size();
    rows2[d].faces += per_node[k].codim2.size();
    for (const auto& t : per_node[k].codim1) t1.add(t, d);
    for (const auto& t : per_node[k].codim2) t2.add(t, d);
    for (const auto& s : per_node[k].squares) {
      if (!census.codim2_min_square || s < *census.codim2_min_square) census.codim2_min_square = s;
      if (!census.codim2_max_square || s > *census.codim2_max_square) census.codim2_max_square = s;
      ++census.codim2_flags;
    }
  }
  auto p1 = t1.profile(depth, census.representatives_codim1);
  auto p2 = t2.profile(depth, census.representatives_codim2);
  for (std::size_t d = 0; d <= depth; ++d) {
    rows1[d].new_orbits = p1[d];
    rows2[d].new_orbits = p2[d];
  }
  census.rows = rows1;
  census.rows.insert(census.rows.end(), rows2.begin(), rows2.end());
  census.saturation = {p1, p2};
  census.total_orbits = {census.representatives_codim1.size(), census.representatives_codim2.size()};
  return census;
}

}  // namespace mbm
