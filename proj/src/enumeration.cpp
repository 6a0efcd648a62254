#include "mbm/enumeration.hpp"

#include "mbm/detail/shells.hpp"
#include "mbm/errors.hpp"
#include "mbm/linalg.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mbm {

void WallSpec::validate() const {
  if (squares.empty()) throw ValidationError("wall spec: squares must be non-empty");
  for (const auto& d : squares)
    if (d >= 0) throw ValidationError("wall spec: square " + d.get_str() + " is not negative");
}

Int WallSpec::max_abs_square() const {
  Int m = 0;
  for (const auto& d : squares)
    if (abs(d) > m) m = abs(d);
  return m;
}

WallSpec make_wall_spec(std::initializer_list<long> squares, bool require_reflective) {
  WallSpec s;
  for (long d : squares) s.squares.insert(Int(d));
  s.require_reflective = require_reflective;
  s.validate();
  return s;
}

bool wall_less(const Wall& a, const Wall& b) {
  if (a.square != b.square) return a.square < b.square;
  return a.vector < b.vector;
}

void sort_walls(std::vector<Wall>& walls) {
  std::sort(walls.begin(), walls.end(), wall_less);
  walls.erase(std::unique(walls.begin(), walls.end()), walls.end());
}

bool reflection_is_integral(const Lattice& l, const LatticeVector& s) {
  const Int ss = square(l, s);
  if (ss == 0) return false;
  for (const auto& x : l.gram_times(s))
    if (!mpz_divisible_p(Int(2 * x).get_mpz_t(), ss.get_mpz_t())) return false;
  return true;
}

namespace detail {

namespace {

struct Walker {
  const linalg::LdlFactor& f;
  const RationalVector& center;
  bool exact;
  LatticeVector x;
  std::vector<LatticeVector>* out;

  // Integer interval {z : (z - c)^2 <= r2}.
  static bool interval(const Rat& c, const Rat& r2, Int& lo, Int& hi) {
    if (r2 < 0) return false;
    Int r = isqrt(floor_rat(r2)) + 1;
    lo = floor_rat(c) - r;
    hi = ceil_rat(c) + r;
    while (lo <= hi) {
      Rat t = lo - c;
      if (t * t <= r2) break;
      ++lo;
    }
    while (hi >= lo) {
      Rat t = hi - c;
      if (t * t <= r2) break;
      --hi;
    }
    return lo <= hi;
  }

  Rat level_center(std::size_t i) const {
    Rat s = 0;
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (f.mu[i][j] != 0) s += f.mu[i][j] * (x[j] - center[j]);
    return center[i] - s;
  }

  void descend(std::size_t i, const Rat& remaining) {
    const Rat c = level_center(i);
    const Rat r2 = remaining / f.d[i];
    if (i == 0 && exact) {
      Rat root;
      if (!rational_sqrt(r2, root)) return;
      Rat a = c - root;
      Rat b = c + root;
      if (a.get_den() == 1) {
        x[0] = a.get_num();
        out->push_back(x);
      }
      if (root != 0 && b.get_den() == 1) {
        x[0] = b.get_num();
        out->push_back(x);
      }
      return;
    }
    Int lo, hi;
    if (!interval(c, r2, lo, hi)) return;
    for (Int z = lo; z <= hi; ++z) {
      x[i] = z;
      Rat t = z - c;
      Rat rest = remaining - f.d[i] * t * t;
      if (i == 0)
        out->push_back(x);
      else
        descend(i - 1, rest);
    }
  }
};

}  // namespace

std::vector<LatticeVector> walk_ellipsoid(const linalg::LdlFactor& f, const RationalVector& center,
                                          const Rat& bound, bool exact, bool parallel) {
  const std::size_t n = f.d.size();
  std::vector<LatticeVector> out;
  if (bound < 0) return out;
  if (n == 0) {
    if (!exact || bound == 0) out.emplace_back();
    return out;
  }
  // Values of the top coordinate are independent subtrees.
  Walker top{f, center, exact, LatticeVector(n, 0), nullptr};
  const Rat c = center[n - 1];
  const Rat r2 = bound / f.d[n - 1];
  if (n == 1 && exact) {
    top.out = &out;
    top.descend(0, bound);
    std::sort(out.begin(), out.end());
    return out;
  }
  Int lo, hi;
  if (!Walker::interval(c, r2, lo, hi)) return out;
  std::vector<Int> values;
  for (Int z = lo; z <= hi; ++z) values.push_back(z);
  std::vector<std::vector<LatticeVector>> parts(values.size());
  const long count = static_cast<long>(values.size());
#pragma omp parallel for schedule(dynamic) if (parallel && count > 1)
  for (long k = 0; k < count; ++k) {
    Walker w{f, center, exact, LatticeVector(n, 0), &parts[k]};
    w.x[n - 1] = values[k];
    Rat t = values[k] - c;
    Rat rest = bound - f.d[n - 1] * t * t;
    if (n == 1)
      parts[k].push_back(w.x);
    else
      w.descend(n - 2, rest);
  }
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

LatticeVector integral_direction(const RationalVector& v) { return primitive_part(clear_denominators(v)); }

ShellContext::ShellContext(const Lattice& l, const LatticeVector& base)
    : lattice_(&l), base_(base), base_square_(square(l, base)) {
  if (base_square_ <= 0) throw NotPositive("shell base " + to_string(base) + " has non-positive square");
  const std::size_t n = l.rank();
  LatticeVector row = l.gram_times(base);
  auto rr = linalg::reduce_row(row);
  step_ = rr.g;
  particular_.resize(n);
  for (std::size_t i = 0; i < n; ++i) particular_[i] = rr.u[i][0];
  auto section = restrict_to_hyperplane(l, base);
  basis_ = section.embedding;
  const std::size_t k = basis_.empty() ? 0 : basis_[0].size();
  if (k == 0) {
    factor_ = linalg::LdlFactor{};
    return;
  }
  const auto& gk = section.sublattice.gram();
  RatMatrix neg = rat_matrix(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) neg[i][j] = -gk[i][j];
  factor_ = linalg::ldl(neg);
  if (!factor_) throw SignatureError("orthogonal complement of a positive class is not negative definite");
  // center_map = G_K^{-1} B^T G, so coordinates of the K-part of s are center_map * s.
  auto inv = linalg::inverse(linalg::to_rational(gk));
  IntMatrix btg = linalg::multiply(linalg::transpose(basis_), l.gram());
  center_map_ = rat_matrix(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat s = 0;
      for (std::size_t m = 0; m < k; ++m) s += (*inv)[i][m] * btg[m][j];
      center_map_[i][j] = s;
    }
}

std::vector<LatticeVector> ShellContext::shell(const Int& d, const Int& t) const {
  std::vector<LatticeVector> out;
  if (step_ == 0 || !mpz_divisible_p(t.get_mpz_t(), step_.get_mpz_t())) return out;
  const std::size_t n = base_.size();
  const Int mult = t / step_;
  LatticeVector st(n);
  for (std::size_t i = 0; i < n; ++i) st[i] = mult * particular_[i];
  const std::size_t k = factor_->d.size();
  RationalVector center(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    Rat c = 0;
    for (std::size_t j = 0; j < n; ++j) c += center_map_[i][j] * st[j];
    center[i] = -c;
  }
  Rat radius = Rat(t * t, base_square_) - d;
  radius.canonicalize();
  for (const auto& kv : walk_ellipsoid(*factor_, center, radius, true, false)) {
    LatticeVector s = st;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (kv[j] != 0) s[i] += basis_[i][j] * kv[j];
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

std::vector<LatticeVector> serial::enumerate_ellipsoid(const EllipsoidQuery& q) {
  auto f = linalg::ldl(q.form);
  if (!f) throw SignatureError("enumerate_ellipsoid: form is not definite");
  for (const auto& x : f->d)
    if (x <= 0) throw SignatureError("enumerate_ellipsoid: form is not positive definite");
  return detail::walk_ellipsoid(*f, q.center, q.bound, q.exact, false);
}

std::vector<LatticeVector> enumerate_ellipsoid(const EllipsoidQuery& q) {
  auto f = linalg::ldl(q.form);
  if (!f) throw SignatureError("enumerate_ellipsoid: form is not definite");
  for (const auto& x : f->d)
    if (x <= 0) throw SignatureError("enumerate_ellipsoid: form is not positive definite");
  return detail::walk_ellipsoid(*f, q.center, q.bound, q.exact, true);
}

std::vector<LatticeVector> definite_short_vectors(const Lattice& l, const Int& min_square) {
  if (!l.negative_definite()) throw SignatureError("definite_short_vectors requires a negative-definite lattice");
  const std::size_t n = l.rank();
  EllipsoidQuery q;
  q.form = rat_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q.form[i][j] = -l.gram()[i][j];
  q.center.assign(n, 0);
  q.bound = -min_square;
  std::vector<LatticeVector> out;
  for (auto& v : enumerate_ellipsoid(q)) {
    if (is_zero(v)) continue;
    // First nonzero coordinate positive.
    auto it = std::find_if(v.begin(), v.end(), [](const Int& x) { return x != 0; });
    if (*it > 0) out.push_back(std::move(v));
  }
  return out;
}

namespace {

// Exhaustive scan of the first rank-1 coordinates; the last coordinate is
// solved from the quadratic equation, so every box point is accounted for.
void scan_slice(const Lattice& l, const Int& target, const Int& box, const Int& first,
                std::vector<LatticeVector>& out) {
  const std::size_t n = l.rank();
  const auto& g = l.gram();
  LatticeVector v(n, 0);
  v[0] = first;
  if (n == 1) {
    if (g[0][0] * first * first == target) out.push_back(v);
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) v[i] = -box;
  const std::size_t last = n - 1;
  const Int& a = g[last][last];
  while (true) {
    // q(v + t e_last) = a t^2 + 2 b t + c
    v[last] = 0;
    Int b = 0;
    for (std::size_t j = 0; j < last; ++j) b += g[last][j] * v[j];
    Int c = pairing(l, v, v);
    Int rhs = target - c;
    auto keep = [&](const Int& t) {
      if (abs(t) <= box) {
        v[last] = t;
        out.push_back(v);
      }
    };
    if (a == 0) {
      if (b == 0) {
        if (rhs == 0)
          for (Int t = -box; t <= box; ++t) keep(t);
      } else if (mpz_divisible_p(rhs.get_mpz_t(), Int(2 * b).get_mpz_t())) {
        keep(rhs / (2 * b));
      }
    } else {
      // a t^2 + 2 b t - rhs = 0  ->  t = (-b +- sqrt(b^2 + a rhs)) / a
      Int disc = b * b + a * rhs;
      if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
        Int r = isqrt(disc);
        std::vector<Int> roots;
        for (int sgn : {-1, 1}) {
          Int num = -b + sgn * r;
          if (mpz_divisible_p(num.get_mpz_t(), a.get_mpz_t())) roots.push_back(num / a);
          if (r == 0) break;
        }
        std::sort(roots.begin(), roots.end());
        for (const auto& t : roots) keep(t);
      }
    }
    // Odometer over coordinates 1..n-2.
    std::size_t i = last;
    while (i-- > 1) {
      if (v[i] < box) {
        ++v[i];
        break;
      }
      v[i] = -box;
    }
    if (i == 0) break;
  }
}

// Same scan in machine integers, used when every intermediate value is
// provably below 2^62.
bool fits_machine(const Lattice& l, const Int& target, const Int& box) {
  Int gmax = 0;
  for (const auto& row : l.gram())
    for (const auto& x : row) gmax = std::max(gmax, Int(abs(x)));
  const Int n = static_cast<long>(l.rank());
  const Int bound = 4 * n * n * (gmax + 1) * box * box + abs(target);
  return bound < (Int(1) << 60);
}

long long isqrt_ll(long long x) {
  long long r = static_cast<long long>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

void scan_slice_machine(const Lattice& l, long long target, long long box, long long first,
                        std::vector<LatticeVector>& out) {
  const std::size_t n = l.rank();
  std::vector<std::vector<long long>> g(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = l.gram()[i][j].get_si();
  std::vector<long long> v(n, 0);
  v[0] = first;
  auto emit = [&](long long t) {
    if (t < -box || t > box) return;
    LatticeVector w(n);
    for (std::size_t i = 0; i + 1 < n; ++i) w[i] = static_cast<long>(v[i]);
    w[n - 1] = static_cast<long>(t);
    out.push_back(std::move(w));
  };
  if (n == 1) {
    if (g[0][0] * first * first == target) emit(first);
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) v[i] = -box;
  const std::size_t last = n - 1;
  const long long a = g[last][last];
  while (true) {
    long long b = 0, c = 0;
    for (std::size_t j = 0; j < last; ++j) {
      b += g[last][j] * v[j];
      for (std::size_t k = 0; k < last; ++k) c += g[j][k] * v[j] * v[k];
    }
    const long long rhs = target - c;
    if (a == 0) {
      if (b == 0) {
        if (rhs == 0)
          for (long long t = -box; t <= box; ++t) emit(t);
      } else if (rhs % (2 * b) == 0) {
        emit(rhs / (2 * b));
      }
    } else {
      const long long disc = b * b + a * rhs;
      if (disc >= 0) {
        const long long r = isqrt_ll(disc);
        if (r * r == disc) {
          long long lo = -b - r, hi = -b + r;
          if (a < 0) std::swap(lo, hi);
          if (lo % a == 0) emit(lo / a);
          if (r != 0 && hi % a == 0) emit(hi / a);
        }
      }
    }
    std::size_t i = last;
    while (i-- > 1) {
      if (v[i] < box) {
        ++v[i];
        break;
      }
      v[i] = -box;
    }
    if (i == 0) break;
  }
}

std::vector<LatticeVector> vectors_of_square_impl(const Lattice& l, const Int& target, const Int& box,
                                                  bool parallel) {
  if (box < 1) throw ValidationError("vectors_of_square: box must be >= 1");
  std::vector<Int> firsts;
  for (Int x = -box; x <= box; ++x) firsts.push_back(x);
  const bool machine = fits_machine(l, target, box);
  std::vector<std::vector<LatticeVector>> parts(firsts.size());
  const long count = static_cast<long>(firsts.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long k = 0; k < count; ++k) {
    if (machine)
      scan_slice_machine(l, target.get_si(), box.get_si(), firsts[k].get_si(), parts[k]);
    else
      scan_slice(l, target, box, firsts[k], parts[k]);
  }
  std::vector<LatticeVector> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

struct Endpoints {
  LatticeVector base;
  RationalVector far;
};

Endpoints check_endpoints(const Lattice& l, const RationalVector& v0, const RationalVector& v1) {
  require_rank(l, v0.size(), "separating_walls");
  require_rank(l, v1.size(), "separating_walls");
  if (!l.hyperbolic() || l.degenerate())
    throw SignatureError("separating_walls requires a non-degenerate lattice of signature (1, m)");
  if (square(l, v0) <= 0) throw NotPositive("v0 = " + to_string(v0) + " is not positive");
  if (square(l, v1) <= 0) throw NotPositive("v1 = " + to_string(v1) + " is not positive");
  if (pairing(l, v0, v1) <= 0) throw NotPositive("v0 and v1 lie in opposite components of the positive cone");
  return {detail::integral_direction(v0), v1};
}

struct Task {
  Int d;
  Int t;
};

std::vector<Task> separation_tasks(const Lattice& l, const Endpoints& e, const WallSpec& spec) {
  // t = q(s,v0) satisfies t^2 < |d| (q(v0,v1)^2 - q(v0)q(v1)) / q(v1).
  const Rat u = pairing(l, e.base, e.far);
  const Rat n = square(l, e.base);
  const Rat q1 = square(l, e.far);
  const Rat gap = (u * u - n * q1) / q1;
  std::vector<Task> tasks;
  for (const auto& d : spec.squares) {
    const Rat limit = -d * gap;
    for (Int t = 1; Rat(t * t) < limit; ++t) tasks.push_back({d, t});
  }
  return tasks;
}

std::vector<Wall> run_separation(const Lattice& l, const RationalVector& v0, const RationalVector& v1,
                                 const WallSpec& spec, bool parallel) {
  spec.validate();
  Endpoints e = check_endpoints(l, v0, v1);
  std::vector<Task> tasks = separation_tasks(l, e, spec);
  if (tasks.empty()) return {};
  detail::ShellContext ctx(l, e.base);
  std::vector<std::vector<Wall>> parts(tasks.size());
  const long count = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic) if (parallel && count > 1)
  for (long k = 0; k < count; ++k) {
    for (auto& s : ctx.shell(tasks[k].d, tasks[k].t)) {
      if (content(s) != 1) continue;
      if (spec.require_reflective && !reflection_is_integral(l, s)) continue;
      if (pairing(l, s, e.far) >= 0) continue;
      parts[k].push_back({std::move(s), tasks[k].d});
    }
  }
  std::vector<Wall> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  sort_walls(out);
  return out;
}

}  // namespace

std::vector<LatticeVector> vectors_of_square(const Lattice& l, const Int& square, const Int& box) {
  return vectors_of_square_impl(l, square, box, true);
}

std::vector<LatticeVector> serial::vectors_of_square(const Lattice& l, const Int& square, const Int& box) {
  return vectors_of_square_impl(l, square, box, false);
}

std::vector<Wall> separating_walls(const Lattice& l, const RationalVector& v0, const RationalVector& v1,
                                   const WallSpec& spec) {
  return run_separation(l, v0, v1, spec, true);
}

std::vector<Wall> serial::separating_walls(const Lattice& l, const RationalVector& v0, const RationalVector& v1,
                                           const WallSpec& spec) {
  return run_separation(l, v0, v1, spec, false);
}

WallSet walls_containing(const Lattice& l, const RationalVector& v, const WallSpec& spec, const Int& search_bound) {
  spec.validate();
  require_rank(l, v.size(), "walls_containing");
  if (!l.hyperbolic() || l.degenerate())
    throw SignatureError("walls_containing requires a non-degenerate lattice of signature (1, m)");
  const Rat vv = square(l, v);
  WallSet result;
  if (vv < 0 || is_zero(v)) throw NotPositive("walls_containing: " + to_string(v) + " is neither positive nor isotropic");
  if (vv > 0) {
    detail::ShellContext ctx(l, detail::integral_direction(v));
    for (const auto& d : spec.squares)
      for (auto& s : ctx.shell(d, 0)) {
        if (content(s) != 1 || canonical_class(s) != s) continue;
        if (spec.require_reflective && !reflection_is_integral(l, s)) continue;
        result.walls.push_back({std::move(s), d});
      }
  } else {
    result.complete = false;
    const LatticeVector dir = detail::integral_direction(v);
    for (const auto& d : spec.squares)
      for (auto& s : vectors_of_square(l, d, search_bound)) {
        if (pairing(l, s, dir) != 0 || content(s) != 1 || canonical_class(s) != s) continue;
        if (spec.require_reflective && !reflection_is_integral(l, s)) continue;
        result.walls.push_back({std::move(s), d});
      }
  }
  sort_walls(result.walls);
  return result;
}

std::vector<Wall> walls_near(const Lattice& l, const RationalVector& w, const WallSpec& spec, const Int& height_bound) {
  spec.validate();
  require_rank(l, w.size(), "walls_near");
  if (square(l, w) <= 0) throw NotPositive("walls_near: " + to_string(w) + " is not positive");
  detail::ShellContext ctx(l, detail::integral_direction(w));
  std::vector<Task> tasks;
  for (const auto& d : spec.squares)
    for (Int t = 1; t <= height_bound; ++t) tasks.push_back({d, t});
  std::vector<std::vector<Wall>> parts(tasks.size());
  const long count = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic) if (count > 1)
  for (long k = 0; k < count; ++k)
    for (auto& s : ctx.shell(tasks[k].d, tasks[k].t)) {
      if (content(s) != 1) continue;
      if (spec.require_reflective && !reflection_is_integral(l, s)) continue;
      parts[k].push_back({std::move(s), tasks[k].d});
    }
  std::vector<Wall> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  sort_walls(out);
  return out;
}

RationalVector nudge_off_walls(const Lattice& l, const RationalVector& v, const WallSpec& spec) {
  if (square(l, v) <= 0) throw NotPositive("nudge_off_walls: " + to_string(v) + " is not positive");
  const Int unused = 1;
  if (walls_containing(l, v, spec, unused).walls.empty()) return v;
  const std::size_t n = v.size();
  // Directions in a fixed order: small integer vectors, lexicographic by box size.
  for (int box = 1; box <= 3; ++box) {
    std::vector<int> h(n, -box);
    while (true) {
      bool nonzero = std::any_of(h.begin(), h.end(), [](int x) { return x != 0; });
      if (nonzero) {
        for (int e = 2; e <= 12; e += 2) {
          Rat eps(1, Int(1) << e);
          RationalVector p = v;
          for (std::size_t i = 0; i < n; ++i) p[i] += eps * h[i];
          if (square(l, p) <= 0 || pairing(l, p, v) <= 0) continue;
          if (!walls_containing(l, p, spec, unused).walls.empty()) continue;
          if (!separating_walls(l, v, p, spec).empty()) continue;
          return p;
        }
      }
      std::size_t i = n;
      while (i-- > 0) {
        if (h[i] < box) {
          ++h[i];
          break;
        }
        h[i] = -box;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
  throw InternalError("nudge_off_walls: no wall-free point found near " + to_string(v));
}

}  // namespace mbm
