// Serial reference kernels against their OpenMP counterparts on a KITTI-sized
// frame (1242x375). Set OMP_NUM_THREADS to vary the parallel width.

#include <benchmark/benchmark.h>

#include <vector>

#include "depthbench/corruptions.hpp"
#include "depthbench/kernels.hpp"
#include "depthbench/rng.hpp"

namespace db = depthbench;
namespace k = depthbench::kernels;

namespace {

constexpr int kWidth = 1242;
constexpr int kHeight = 375;

db::ImageBuffer frame() {
  db::ImageBuffer img(kWidth, kHeight);
  db::DeterministicRng rng(1);
  for (float& v : img.samples()) v = static_cast<float>(rng.uniform());
  return img;
}

const db::ImageBuffer& input() {
  static const db::ImageBuffer img = frame();
  return img;
}

void set_pixels(benchmark::State& state) {
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kWidth) * kHeight);
}

template <auto Fn>
void convolve(benchmark::State& state) {
  const auto kernel = db::defocus_kernel(static_cast<double>(state.range(0)), 0.5);
  db::ImageBuffer out(kWidth, kHeight);
  for (auto _ : state) {
    Fn(input().view(), out.view(), kernel);
    benchmark::ClobberMemory();
  }
  set_pixels(state);
}

template <auto Fn>
void separable(benchmark::State& state) {
  const auto taps = k::gaussian_taps(static_cast<double>(state.range(0)));
  db::ImageBuffer out(kWidth, kHeight);
  for (auto _ : state) {
    Fn(input().view(), out.view(), taps, taps);
    benchmark::ClobberMemory();
  }
  set_pixels(state);
}

template <auto Fn>
void resize(benchmark::State& state) {
  db::ImageBuffer out(kWidth * 2, kHeight * 2);
  for (auto _ : state) {
    Fn(input().view(), out.view());
    benchmark::ClobberMemory();
  }
  set_pixels(state);
}

template <auto Fn>
void remap(benchmark::State& state) {
  db::Plane mx(kWidth, kHeight), my(kWidth, kHeight);
  for (int y = 0; y < kHeight; ++y) {
    for (int x = 0; x < kWidth; ++x) {
      mx.at(x, y) = static_cast<float>(x) + 0.37f;
      my.at(x, y) = static_cast<float>(y) - 1.61f;
    }
  }
  db::ImageBuffer out(kWidth, kHeight);
  for (auto _ : state) {
    Fn(input().view(), out.view(), mx, my);
    benchmark::ClobberMemory();
  }
  set_pixels(state);
}

template <auto Fn>
void histogram(benchmark::State& state) {
  std::vector<std::uint64_t> counts(3 * 256);
  for (auto _ : state) {
    Fn(input().view(), 256, counts);
    benchmark::DoNotOptimize(counts.data());
  }
  set_pixels(state);
}

}  // namespace

BENCHMARK(convolve<k::serial::convolve>)->Name("convolve/serial")->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(convolve<k::parallel::convolve>)->Name("convolve/parallel")->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(separable<k::serial::convolve_separable>)->Name("separable/serial")->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(separable<k::parallel::convolve_separable>)->Name("separable/parallel")->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(resize<k::serial::resize_bilinear>)->Name("resize_bilinear/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(resize<k::parallel::resize_bilinear>)->Name("resize_bilinear/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(remap<k::serial::remap_bilinear>)->Name("remap_bilinear/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(remap<k::parallel::remap_bilinear>)->Name("remap_bilinear/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(histogram<k::serial::histogram>)->Name("histogram/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(histogram<k::parallel::histogram>)->Name("histogram/parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
