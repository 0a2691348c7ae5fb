#include <benchmark/benchmark.h>

#include "hexlimit/marking.hpp"
#include "hexlimit/render.hpp"
#include "hexlimit/verify.hpp"

namespace {

using namespace hexlimit;

QadicParam bench_q() { return sample_generic_q(42, 10, 32); }

void BM_parity_formula(benchmark::State& state) {
  QadicParam q = bench_q();
  TriContext ctx{q, 10};
  std::vector<QPoint> ball = hex_ball(16);
  for (auto _ : state) {
    int acc = 0;
    for (QPoint x : ball) acc ^= parity(ctx, x).parity;
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<i64>(ball.size()));
}
BENCHMARK(BM_parity_formula);

void BM_generate_patch(benchmark::State& state) {
  QadicParam q = bench_q();
  i64 R = state.range(0);
  for (auto _ : state) {
    Patch p = generate_patch(q, R, 10, FreeBits{});
    benchmark::DoNotOptimize(p.tiles.size());
  }
  state.SetItemsProcessed(state.iterations() * (1 + 3 * R * (R + 1)));
}
BENCHMARK(BM_generate_patch)->Arg(8)->Arg(16)->Arg(32);

void BM_check_prototile(benchmark::State& state) {
  QadicParam q = bench_q();
  Patch p = generate_patch(q, 32, 10, FreeBits{});
  for (auto _ : state) {
    CheckReport rep = check_prototile(p);
    benchmark::DoNotOptimize(rep.violations.size());
  }
}
BENCHMARK(BM_check_prototile);

void BM_render_full(benchmark::State& state) {
  QadicParam q = bench_q();
  Patch p = generate_patch(q, 16, 10, FreeBits{});
  RenderStyle style;
  for (auto _ : state) {
    std::string svg = render_svg(p, style);
    benchmark::DoNotOptimize(svg.size());
  }
}
BENCHMARK(BM_render_full);

}  // namespace

BENCHMARK_MAIN();
