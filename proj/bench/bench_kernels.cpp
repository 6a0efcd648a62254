#include "mbm/chambers.hpp"
#include "mbm/enumeration.hpp"
#include "mbm/lattice.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

#include <random>
#include <vector>

using namespace mbm;

namespace {

Lattice u_2a1() {
  return make_lattice(direct_sum({hyperbolic_plane(), diagonal_block(-2), diagonal_block(-2)}), "U+2A1m2");
}

Lattice e8_sum() { return make_lattice(direct_sum({e8_negative(), e8_negative()}), "2E8m"); }

const WallSpec kSpec = make_wall_spec({-2, -4});

// Pairs of positive vectors far enough apart to be separated by many walls.
std::vector<std::pair<RationalVector, RationalVector>> far_pairs(const Lattice& l, std::size_t count) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coord(-6, 6);
  RationalVector ref(l.rank(), 0);
  ref[0] = ref[1] = 1;
  std::vector<std::pair<RationalVector, RationalVector>> out;
  auto draw = [&] {
    while (true) {
      LatticeVector v(l.rank());
      for (auto& x : v) x = coord(rng);
      v[0] = abs(v[0]) + 10;
      if (is_positive(l, v, ref)) return to_rational(v);
    }
  };
  while (out.size() < count) out.emplace_back(draw(), draw());
  return out;
}

void BM_separating_walls(benchmark::State& state) {
  const Lattice l = u_2a1();
  const auto pairs = far_pairs(l, 16);
  omp_set_num_threads(static_cast<int>(state.range(0)));
  std::size_t walls = 0;
  for (auto _ : state)
    for (const auto& [a, b] : pairs) walls += separating_walls(l, a, b, kSpec).size();
  state.counters["walls/pair"] = benchmark::Counter(static_cast<double>(walls) / (16.0 * state.iterations()));
}

void BM_separating_walls_serial(benchmark::State& state) {
  const Lattice l = u_2a1();
  const auto pairs = far_pairs(l, 16);
  for (auto _ : state)
    for (const auto& [a, b] : pairs) benchmark::DoNotOptimize(serial::separating_walls(l, a, b, kSpec));
}

void BM_vectors_of_square(benchmark::State& state) {
  const Lattice l = u_2a1();
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vectors_of_square(l, -2, 12));
}

void BM_vectors_of_square_serial(benchmark::State& state) {
  const Lattice l = u_2a1();
  for (auto _ : state) benchmark::DoNotOptimize(serial::vectors_of_square(l, -2, 12));
}

// Fincke-Pohst on a rank-16 definite form: the root shell, then the -4 shell.
void BM_definite_short_vectors(benchmark::State& state) {
  const Lattice l = e8_sum();
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(definite_short_vectors(l, -state.range(1)));
}

void BM_explore(benchmark::State& state) {
  const Lattice l = u_2a1();
  const WallSpec spec = make_wall_spec({-2});
  const RationalVector base = nudge_off_walls(l, RationalVector{1, 1, 0, 0}, spec);
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(explore_tessellation(l, base, spec, 3));
}

void BM_explore_serial(benchmark::State& state) {
  const Lattice l = u_2a1();
  const WallSpec spec = make_wall_spec({-2});
  const RationalVector base = nudge_off_walls(l, RationalVector{1, 1, 0, 0}, spec);
  for (auto _ : state) benchmark::DoNotOptimize(serial::explore_tessellation(l, base, spec, 3));
}

}  // namespace

BENCHMARK(BM_separating_walls)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_separating_walls_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_vectors_of_square)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_vectors_of_square_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_definite_short_vectors)->Args({1, 2})->Args({4, 2})->Args({1, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_explore)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_explore_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
