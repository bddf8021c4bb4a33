// Micro-benchmarks for the exact-arithmetic hot paths.

#include <benchmark/benchmark.h>

#include "movstab/cone.hpp"
#include "movstab/lattice.hpp"
#include "movstab/matrix.hpp"
#include "movstab/smith.hpp"
#include "movstab/stability.hpp"
#include "movstab/surface.hpp"

namespace {

using namespace movstab;

LatticePtr rank5_lattice() {
  RatMat gram(5, RatVec(5, Rational(0)));
  gram[0][0] = 1;
  for (int i = 1; i < 5; ++i) gram[i][i] = -1;
  return NSLattice::create(gram);
}

NumClass mk(const LatticePtr& lat, std::vector<long long> v) {
  RatVec coords;
  for (long long x : v) coords.push_back(Rational(x));
  return NumClass(lat, coords);
}

void bm_pairing(benchmark::State& state) {
  auto lat = rank5_lattice();
  NumClass a = mk(lat, {7, -3, 2, 5, -1});
  NumClass b = mk(lat, {2, 9, -4, 1, 6});
  for (auto _ : state) benchmark::DoNotOptimize(pairing(a, b));
}
BENCHMARK(bm_pairing);

void bm_certify_signature(benchmark::State& state) {
  RatMat gram(5, RatVec(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) gram[i][j] = Rational((i + 1) * (j + 1) - 7 * (i == j));
  for (auto _ : state) benchmark::DoNotOptimize(certify_signature(gram));
}
BENCHMARK(bm_certify_signature);

void bm_cone_dual(benchmark::State& state) {
  auto lat = rank5_lattice();
  std::vector<NumClass> gens = {mk(lat, {1, 0, 0, 0, 0}),  mk(lat, {1, 1, 0, 0, 0}),
                                mk(lat, {1, 0, 1, 0, 0}),  mk(lat, {1, 0, 0, 1, 0}),
                                mk(lat, {1, 0, 0, 0, 1}),  mk(lat, {1, -1, 0, 0, 0}),
                                mk(lat, {1, 0, -1, 0, 0}), mk(lat, {1, 0, 0, -1, 0})};
  auto cone = RationalCone::from_generators(gens);
  for (auto _ : state) benchmark::DoNotOptimize(cone.dual());
}
BENCHMARK(bm_cone_dual);

void bm_segment_stability(benchmark::State& state) {
  RatMat gram = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  auto lat = NSLattice::create(gram, {"f1", "f2"});
  SubsheafFamily fam(SheafClass(2, mk(lat, {1, 1}), Rational(1)),
                     {SheafClass(1, mk(lat, {1, 0}), Rational(0)),
                      SheafClass(1, mk(lat, {0, 1}), Rational(0))},
                     {}, true);
  auto mov = RationalCone::from_generators({mk(lat, {1, 0}), mk(lat, {0, 1})});
  NumClass a = mk(lat, {1, 0});
  NumClass b = mk(lat, {0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(segment_stability(fam, a, b, mov));
}
BENCHMARK(bm_segment_stability);

void bm_zariski(benchmark::State& state) {
  auto lat = rank5_lattice();
  std::vector<NumClass> gens, curves;
  for (int i = 0; i < 5; ++i) {
    std::vector<long long> v(5, 0);
    v[i] = 1;
    gens.push_back(mk(lat, v));
    if (i > 0) curves.push_back(gens.back());
  }
  auto eff = RationalCone::from_generators(gens);
  NegativeCurveSet ncs(curves);
  NumClass d = mk(lat, {9, 4, 0, 2, 7});
  for (auto _ : state) benchmark::DoNotOptimize(zariski_decomposition(d, ncs, eff));
}
BENCHMARK(bm_zariski);

void bm_smith(benchmark::State& state) {
  IntMat a = {{Integer(2), Integer(4), Integer(4)},
              {Integer(-6), Integer(6), Integer(12)},
              {Integer(10), Integer(4), Integer(16)}};
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(bm_smith);

}  // namespace

BENCHMARK_MAIN();
