#include "mbm/chambers.hpp"

#include "mbm/errors.hpp"
#include "mbm/linalg.hpp"
#include "mbm/simplex.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace mbm {

namespace {

const Int kUnusedBound = 1;
const int kMaxWidenings = 6;

std::vector<Wall> canonical_walls(const std::vector<Wall>& walls) {
  std::vector<Wall> out;
  out.reserve(walls.size());
  for (const auto& w : walls) out.push_back({w.canonical(), w.square});
  sort_walls(out);
  return out;
}

void require_wall_free(const Lattice& l, const RationalVector& v, const WallSpec& spec, const char* what) {
  auto on = walls_containing(l, v, spec, kUnusedBound);
  if (!on.walls.empty())
    throw PointOnWall(std::string(what) + " " + to_string(v) + " lies on wall " + to_string(on.walls.front().vector));
}

// Rank over Q of a set of integer vectors.
std::size_t span_rank(const std::vector<LatticeVector>& vs) {
  if (vs.empty()) return 0;
  RatMatrix m;
  for (const auto& v : vs) m.push_back(to_rational(v));
  return linalg::rank(m);
}

}  // namespace

std::vector<LatticeVector> Chamber::key() const {
  std::vector<LatticeVector> out;
  for (const auto& w : crossing_set) out.push_back(w.vector);
  return out;
}

std::string Chamber::key_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < crossing_set.size(); ++i) os << (i ? ";" : "") << to_string(crossing_set[i].vector);
  os << ']';
  return os.str();
}

std::string key_hash(const std::string& key) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Chamber make_chamber(const Lattice& l, const RationalVector& witness, const RationalVector& base,
                     const WallSpec& spec) {
  spec.validate();
  if (!is_positive(l, witness, base)) throw NotPositive("chamber witness " + to_string(witness) + " is not positive");
  require_wall_free(l, base, spec, "base witness");
  require_wall_free(l, witness, spec, "chamber witness");
  Chamber c;
  c.witness = witness;
  c.base_witness = base;
  c.crossing_set = canonical_walls(separating_walls(l, base, witness, spec));
  return c;
}

bool same_chamber(const Lattice& l, const RationalVector& v, const RationalVector& w, const WallSpec& spec) {
  return separating_walls(l, v, w, spec).empty();
}

Reduction reduce_to_base(const Lattice& l, const RationalVector& v, const RationalVector& base,
                         const WallSpec& spec) {
  if (!is_positive(l, v, base)) throw NotPositive("reduce_to_base: " + to_string(v) + " is not positive");
  Reduction r;
  r.image = v;
  std::vector<Wall> sep = separating_walls(l, base, r.image, spec);
  r.separating_counts.push_back(sep.size());
  while (!sep.empty()) {
    std::vector<Wall> canon = canonical_walls(sep);
    const Wall& step = canon.front();
    r.word.push_back(step);
    r.image = reflect(l, r.image, step.vector);
    std::vector<Wall> next = separating_walls(l, base, r.image, spec);
    if (next.size() >= sep.size())
      throw InternalError("reduce_to_base: reflection in " + to_string(step.vector) +
                          " did not decrease the separating count (" + std::to_string(sep.size()) + " -> " +
                          std::to_string(next.size()) + ")");
    r.separating_counts.push_back(next.size());
    sep = std::move(next);
  }
  return r;
}

FacePoint face_point(const Lattice& l, const RationalVector& witness, const std::vector<LatticeVector>& equalities,
                     const std::vector<Wall>& constraints, const WallSpec& spec) {
  const std::size_t n = l.rank();
  FacePoint result;
  // Rational basis of the subspace cut out by the equalities.
  IntMatrix rows;
  for (const auto& e : equalities) rows.push_back(l.gram_times(e));
  std::vector<LatticeVector> basis = linalg::rational_kernel(rows, n);
  const std::size_t k = basis.size();
  const std::size_t eq_rank = span_rank(equalities);
  if (k == 0) return result;

  // Closed-region positive point: the q-projection of the witness onto
  // (equalities + active constraints)^perp for some active set.
  std::optional<RationalVector> anchor;
  std::vector<std::size_t> active;
  const std::size_t m = constraints.size();
  auto try_active = [&]() -> bool {
    std::vector<LatticeVector> span = equalities;
    for (auto i : active) span.push_back(constraints[i].vector);
    const std::size_t s = span.size();
    RatMatrix gram = rat_matrix(s, s);
    RationalVector rhs(s);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) gram[i][j] = pairing(l, span[i], span[j]);
      rhs[i] = pairing(l, span[i], witness);
    }
    auto lambda = linalg::solve(gram, rhs);
    if (!lambda) return false;
    RationalVector p = witness;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t c = 0; c < n; ++c) p[c] -= (*lambda)[i] * span[i][c];
    if (square(l, p) <= 0) return false;
    for (std::size_t i = 0; i < m; ++i)
      if (pairing(l, constraints[i].vector, p) < 0) return false;
    anchor = std::move(p);
    return true;
  };
  for (std::size_t size = 0; size < k && !anchor; ++size) {
    if (size > m) break;
    // Lexicographic combinations of `size` constraints.
    active.resize(size);
    for (std::size_t i = 0; i < size; ++i) active[i] = i;
    while (true) {
      if (try_active()) break;
      std::size_t i = size;
      while (i > 0 && active[i - 1] == m - size + i - 1) --i;
      if (i == 0) break;
      ++active[i - 1];
      for (std::size_t j = i; j < size; ++j) active[j] = active[j - 1] + 1;
    }
  }
  if (!anchor) return result;

  // A one-dimensional face is a single ray: no interior to move into.
  if (k == 1) {
    auto sep = separating_walls(l, witness, *anchor, spec);
    if (!sep.empty())
      result.missing = std::move(sep);
    else
      result.point = std::move(*anchor);
    return result;
  }

  // Strictly feasible direction inside the subspace.
  RatMatrix lp_rows;
  auto add_row = [&](const LatticeVector& normal) {
    LatticeVector g = l.gram_times(normal);
    std::vector<Rat> row(k, 0);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t c = 0; c < n; ++c) row[j] += g[c] * basis[j][c];
    // Constraints vanishing on the whole subspace hold there with equality.
    if (std::all_of(row.begin(), row.end(), [](const Rat& x) { return x == 0; })) return;
    lp_rows.push_back(std::move(row));
  };
  for (const auto& c : constraints) add_row(c.vector);
  {
    LatticeVector wdir = clear_denominators(witness);
    add_row(wdir);
  }
  auto u = lp::strict_solution(lp_rows, k);
  if (!u) return result;
  RationalVector interior(n, 0);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t c = 0; c < n; ++c) interior[c] += (*u)[j] * basis[j][c];

  Rat lambda = 1;
  for (int it = 0; it < 256; ++it, lambda /= 2) {
    RationalVector y = *anchor;
    for (std::size_t c = 0; c < n; ++c) y[c] += lambda * interior[c];
    if (square(l, y) <= 0) continue;
    auto through = walls_containing(l, y, spec, kUnusedBound);
    bool generic = true;
    for (const auto& s : through.walls) {
      std::vector<LatticeVector> test = equalities;
      test.push_back(s.vector);
      if (span_rank(test) == eq_rank) continue;
      generic = false;
      // A wall through the whole segment direction: make it a constraint.
      if (pairing(l, s.vector, interior) == 0 && pairing(l, s.vector, *anchor) == 0) {
        LatticeVector o = s.vector;
        if (pairing(l, o, witness) < 0)
          for (auto& x : o) x = -x;
        result.missing.push_back({o, s.square});
        return result;
      }
    }
    if (!generic) continue;
    auto sep = separating_walls(l, witness, y, spec);
    if (!sep.empty()) {
      result.missing = std::move(sep);
      return result;
    }
    result.point = std::move(y);
    return result;
  }
  throw InternalError("face_point: no generic point found on the face");
}

namespace {

bool contains_wall(const std::vector<Wall>& walls, const LatticeVector& canonical) {
  for (const auto& w : walls)
    if (w.canonical() == canonical) return true;
  return false;
}

// Rank 2: the chamber is an angle bounded by facet rays or by rational
// isotropic rays of the positive cone.
std::vector<LatticeVector> plane_rays(const Lattice& l, const std::vector<Wall>& facets, const RationalVector& w,
                                      bool& ok) {
  std::vector<LatticeVector> candidates;
  for (const auto& f : facets) {
    LatticeVector g = l.gram_times(f.vector);
    candidates.push_back(primitive_part(LatticeVector{-g[1], g[0]}));
  }
  const Int& a = l.gram()[0][0];
  const Int& b = l.gram()[0][1];
  const Int& c = l.gram()[1][1];
  const Int disc = b * b - a * c;
  if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
    const Int r = isqrt(disc);
    // Isotropic directions solve a x^2 + 2 b x y + c y^2 = 0.
    if (a != 0) {
      candidates.push_back(primitive_part(LatticeVector{-b + r, a}));
      candidates.push_back(primitive_part(LatticeVector{-b - r, a}));
    } else {
      candidates.push_back(LatticeVector{1, 0});
      candidates.push_back(primitive_part(LatticeVector{-c, 2 * b}));
    }
  }
  auto det = [](const RationalVector& x, const RationalVector& y) -> Rat { return x[0] * y[1] - x[1] * y[0]; };
  std::vector<LatticeVector> feasible;
  for (auto r : candidates) {
    if (is_zero(r)) continue;
    if (pairing(l, r, w) < 0)
      for (auto& x : r) x = -x;
    bool inside = pairing(l, r, w) > 0;
    for (const auto& f : facets)
      if (pairing(l, f.vector, r) < 0) inside = false;
    if (inside && std::find(feasible.begin(), feasible.end(), r) == feasible.end()) feasible.push_back(r);
  }
  std::vector<LatticeVector> rays;
  for (int side : {1, -1}) {
    std::optional<LatticeVector> best;
    for (const auto& r : feasible) {
      if (sign(det(w, to_rational(r))) != side) continue;
      if (!best || sign(det(to_rational(*best), to_rational(r))) == side) best = r;
    }
    if (!best) return {};
    rays.push_back(*best);
  }
  std::sort(rays.begin(), rays.end());
  ok = true;
  return rays;
}

// Extreme rays of {x : q(f,x) >= 0 for every facet f}; empty when the cone is
// not pointed or too many combinations would have to be checked.
std::vector<LatticeVector> extreme_rays(const Lattice& l, const std::vector<Wall>& facets, const RationalVector& w,
                                       bool& ok) {
  const std::size_t n = l.rank();
  ok = false;
  if (n == 2) return plane_rays(l, facets, w, ok);
  std::vector<LatticeVector> normals;
  for (const auto& f : facets) normals.push_back(f.vector);
  if (span_rank(normals) != n) return {};
  const std::size_t m = facets.size();
  const std::size_t pick = n - 1;
  // Binomial guard.
  double combos = 1;
  for (std::size_t i = 0; i < pick; ++i) combos = combos * double(m - i) / double(i + 1);
  if (combos > 20000) return {};
  std::vector<LatticeVector> rays;
  std::vector<std::size_t> idx(pick);
  for (std::size_t i = 0; i < pick; ++i) idx[i] = i;
  while (true) {
    IntMatrix rows;
    for (auto i : idx) rows.push_back(l.gram_times(facets[i].vector));
    auto ker = linalg::rational_kernel(rows, n);
    if (ker.size() == 1) {
      for (int s : {1, -1}) {
        LatticeVector rho = ker[0];
        if (s < 0)
          for (auto& x : rho) x = -x;
        bool feasible = true;
        for (const auto& f : facets)
          if (pairing(l, f.vector, rho) < 0) {
            feasible = false;
            break;
          }
        if (feasible && std::find(rays.begin(), rays.end(), rho) == rays.end()) rays.push_back(rho);
      }
    }
    std::size_t i = pick;
    while (i > 0 && idx[i - 1] == m - pick + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < pick; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(rays.begin(), rays.end());
  ok = true;
  return rays;
}


// Pairs of positive points such that a wall meets the interior of the cone
// spanned by `rays` iff it separates one of the pairs. Rays may be isotropic:
// for isotropic r and positive u, a wall s with q(s,r) > 0 > q(s,u) meets the
// segment at b r + a u (a = q(s,r), b = -q(s,u)), and the 3x3 Gram of (r,u,s)
// having at most one positive eigenvalue gives 2abc <= c^2 |q(s,s)| with
// c = q(r,u), so b/a <= c M / 2 and the wall already separates u from
// (floor(c M / 2) + 1) r + u. Returns false when some ray is not in the
// closure of the positive cone.
bool boundary_probes(const Lattice& l, const std::vector<LatticeVector>& rays, const RationalVector& w,
                     const WallSpec& spec, std::vector<std::pair<RationalVector, RationalVector>>& probes) {
  for (const auto& r : rays)
    if (square(l, r) < 0 || pairing(l, r, w) <= 0) return false;
  const Int m = spec.max_abs_square();
  auto toward_cusp = [&](const LatticeVector& r, const LatticeVector& u) {
    const Int c = pairing(l, r, u);
    const Int steps = c * m / 2 + 1;
    LatticeVector p = u;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += steps * r[i];
    probes.emplace_back(to_rational(u), to_rational(p));
  };
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      const LatticeVector& a = rays[i];
      const LatticeVector& b = rays[j];
      const bool ia = square(l, a) == 0;
      const bool ib = square(l, b) == 0;
      if (!ia && !ib) {
        probes.emplace_back(to_rational(a), to_rational(b));
      } else if (ia && !ib) {
        toward_cusp(a, b);
      } else if (!ia && ib) {
        toward_cusp(b, a);
      } else {
        LatticeVector mid = a;
        for (std::size_t k = 0; k < mid.size(); ++k) mid[k] += b[k];
        toward_cusp(a, mid);
        toward_cusp(b, mid);
      }
    }
  return true;
}

}  // namespace

FacetSearch facet_walls(const Lattice& l, const Chamber& chamber, const WallSpec& spec, const Int& search_bound) {
  spec.validate();
  const RationalVector& w = chamber.witness;
  FacetSearch out;
  Int height = search_bound;
  int widenings = 0;
  out.candidates = walls_near(l, w, spec, height);
  std::vector<Wall> oriented_facets;
  auto add_missing = [&](const std::vector<Wall>& missing) {
    for (const auto& mw : missing)
      if (!contains_wall(out.candidates, mw.canonical())) out.candidates.push_back(mw);
  };
  std::size_t next = 0;
  while (true) {
    while (next < out.candidates.size()) {
      const Wall s = out.candidates[next];
      std::vector<Wall> others;
      for (std::size_t i = 0; i < out.candidates.size(); ++i)
        if (i != next) others.push_back(out.candidates[i]);
      FacePoint fp = face_point(l, w, {s.vector}, others, spec);
      if (!fp.missing.empty()) {
        add_missing(fp.missing);
        continue;  // retry the same wall with the new constraints
      }
      if (fp.point) {
        Face f;
        f.supporting_wall = {s.canonical(), s.square};
        f.orientation = sign(pairing(l, f.supporting_wall.vector, w));
        f.witness_on_wall = *fp.point;
        out.faces.push_back(std::move(f));
        oriented_facets.push_back(s);
      }
      ++next;
    }
    // Completeness: every extreme ray in the closed positive cone and no wall
    // through the interior of their hull.
    out.certified = false;
    bool ok = false;
    auto rays = extreme_rays(l, oriented_facets, w, ok);
    std::vector<std::pair<RationalVector, RationalVector>> probes;
    if (ok && !rays.empty() && boundary_probes(l, rays, w, spec, probes)) {
      std::vector<Wall> found;
      bool crossed = false;
      for (std::size_t i = 0; i < probes.size() && found.empty(); ++i)
        for (auto& s : separating_walls(l, probes[i].first, probes[i].second, spec)) {
          crossed = true;
          if (pairing(l, s.vector, w) < 0)
            for (auto& x : s.vector) x = -x;
          if (!contains_wall(out.candidates, s.canonical())) found.push_back(s);
        }
      if (!crossed) {
        out.certified = true;
        break;
      }
      if (!found.empty()) {
        add_missing(found);
        continue;
      }
    }
    // The candidate set is too small to bound the chamber: widen the search.
    if (++widenings > kMaxWidenings) break;
    height *= 2;
    add_missing(walls_near(l, w, spec, height));
  }
  std::sort(out.faces.begin(), out.faces.end(),
            [](const Face& a, const Face& b) { return wall_less(a.supporting_wall, b.supporting_wall); });
  sort_walls(out.candidates);
  return out;
}

Flag encode_flag(const Lattice& l, const std::vector<LatticeVector>& face_chain, const WallSpec& spec,
                 const std::vector<RationalVector>& references) {
  spec.validate();
  if (face_chain.empty()) throw ValidationError("encode_flag: empty chain");
  if (!references.empty() && references.size() != face_chain.size())
    throw ValidationError("encode_flag: need one reference point per chain entry");
  Flag flag;
  std::vector<LatticeVector> previous;
  for (std::size_t k = 0; k < face_chain.size(); ++k) {
    require_rank(l, face_chain[k].size(), "encode_flag");
    LatticeVector z = face_chain[k];
    for (const auto& u : previous) z = orthogonal_project(l, u, z).y_prime_unscaled;
    const Int zz = square(l, z);
    if (zz >= 0)
      throw ChainRejected("chain does not bound a common chamber within Pos: projection of " +
                          to_string(face_chain[k]) + " has square " + zz.get_str());
    FlagEntry e;
    e.unscaled = z;
    e.unscaled_square = zz;
    e.projected = canonical_class(z);
    e.square = square(l, e.projected);
    if (!references.empty()) {
      e.orientation = sign(pairing(l, e.projected, references[k]));
      if (e.orientation == 0)
        throw ValidationError("encode_flag: reference point " + to_string(references[k]) + " lies on the flag hyperplane");
    }
    flag.entries.push_back(std::move(e));
    previous.push_back(std::move(z));
  }
  return flag;
}

namespace {

struct Expansion {
  std::vector<Face> facets;
  bool certified = false;
  std::vector<Chamber> neighbours;
};

RationalVector cross_facet(const Lattice& l, const RationalVector& w, const Face& f, const WallSpec& spec) {
  const LatticeVector& s = f.supporting_wall.vector;
  if (reflection_is_integral(l, s)) return reflect(l, w, s);
  // Step off the face point to the far side of the wall.
  LatticeVector toward = s;
  if (pairing(l, toward, w) < 0)
    for (auto& x : toward) x = -x;
  Rat eps = 1;
  for (int it = 0; it < 128; ++it, eps /= 2) {
    RationalVector p = f.witness_on_wall;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += eps * toward[i];
    if (square(l, p) <= 0 || pairing(l, p, w) <= 0) continue;
    if (!walls_containing(l, p, spec, kUnusedBound).walls.empty()) continue;
    auto sep = separating_walls(l, w, p, spec);
    if (sep.size() == 1 && sep[0].canonical() == f.supporting_wall.vector) return p;
  }
  throw InternalError("cross_facet: could not step across " + to_string(s));
}

Expansion expand(const Lattice& l, const Chamber& c, const WallSpec& spec, const Int& bound, bool neighbours) {
  Expansion e;
  FacetSearch fs = facet_walls(l, c, spec, bound);
  e.facets = std::move(fs.faces);
  e.certified = fs.certified;
  if (neighbours)
    for (const auto& f : e.facets)
      e.neighbours.push_back(make_chamber(l, cross_facet(l, c.witness, f, spec), c.base_witness, spec));
  return e;
}

Tessellation explore_impl(const Lattice& l, const RationalVector& base, const WallSpec& spec, std::size_t depth,
                          const ExploreOptions& options, bool parallel) {
  Tessellation t;
  std::map<std::vector<LatticeVector>, std::size_t> index;
  std::vector<TessellationNode> nodes;
  nodes.push_back({make_chamber(l, base, base, spec), 0, {}, false});
  index[nodes[0].chamber.key()] = 0;
  std::map<std::tuple<std::size_t, std::size_t, LatticeVector>, Wall> edges;
  std::size_t layer_begin = 0;
  for (std::size_t d = 0; d <= depth; ++d) {
    const std::size_t layer_end = nodes.size();
    const bool expand_layer = d < depth;
    if (!expand_layer && !options.facets_of_last_layer) break;
    std::vector<Expansion> results(layer_end - layer_begin);
    const long count = static_cast<long>(results.size());
#pragma omp parallel for schedule(dynamic) if (parallel && count > 1)
    for (long k = 0; k < count; ++k)
      results[k] = expand(l, nodes[layer_begin + k].chamber, spec, options.search_bound, expand_layer);
    for (std::size_t k = 0; k < results.size(); ++k) {
      const std::size_t from = layer_begin + k;
      nodes[from].facets = results[k].facets;
      nodes[from].certified = results[k].certified;
      if (!results[k].certified) t.certified = false;
      if (!expand_layer) continue;
      for (std::size_t f = 0; f < results[k].neighbours.size(); ++f) {
        Chamber& nb = results[k].neighbours[f];
        auto key = nb.key();
        auto it = index.find(key);
        std::size_t to;
        if (it == index.end()) {
          to = nodes.size();
          index.emplace(std::move(key), to);
          nodes.push_back({std::move(nb), d + 1, {}, false});
        } else {
          to = it->second;
        }
        const Wall& w = results[k].facets[f].supporting_wall;
        edges.emplace(std::make_tuple(std::min(from, to), std::max(from, to), w.vector), w);
      }
    }
    layer_begin = layer_end;
    if (!expand_layer) break;
  }
  // Deterministic order: (depth, key).
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (nodes[a].depth != nodes[b].depth) return nodes[a].depth < nodes[b].depth;
    return nodes[a].chamber.key() < nodes[b].chamber.key();
  });
  std::vector<std::size_t> rank(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  for (auto i : order) t.nodes.push_back(std::move(nodes[i]));
  for (auto& [k, w] : edges) {
    std::size_t a = rank[std::get<0>(k)], b = rank[std::get<1>(k)];
    t.edges.push_back({std::min(a, b), std::max(a, b), w});
  }
  std::sort(t.edges.begin(), t.edges.end(), [](const TessellationEdge& a, const TessellationEdge& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.wall.vector < b.wall.vector;
  });
  return t;
}

}  // namespace

Tessellation explore_tessellation(const Lattice& l, const RationalVector& base, const WallSpec& spec,
                                  std::size_t depth, const ExploreOptions& options) {
  return explore_impl(l, base, spec, depth, options, true);
}

Tessellation serial::explore_tessellation(const Lattice& l, const RationalVector& base, const WallSpec& spec,
                                          std::size_t depth, const ExploreOptions& options) {
  return explore_impl(l, base, spec, depth, options, false);
}

}  // namespace mbm
