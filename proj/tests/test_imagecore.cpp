#include <gtest/gtest.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "depthbench/color.hpp"
#include "depthbench/error.hpp"
#include "depthbench/imageops.hpp"
#include "depthbench/jpeg_codec.hpp"
#include "depthbench/kernels.hpp"
#include "depthbench/plasma.hpp"
#include "depthbench/rng.hpp"

namespace db = depthbench;

namespace {

db::ImageBuffer random_image(int w, int h, std::uint64_t seed, float lo = 0.0f, float hi = 1.0f) {
  db::DeterministicRng rng(seed);
  db::ImageBuffer img(w, h);
  for (float& v : img.samples()) v = static_cast<float>(rng.uniform(lo, hi));
  return img;
}

// Independent of kernels.cpp on purpose.
int mirror(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) i = i < 0 ? -i : 2 * (n - 1) - i;
  return i;
}

double sample_variance(const db::ImageBuffer& img) {
  double mean = 0.0;
  for (float v : img.samples()) mean += v;
  mean /= static_cast<double>(img.samples().size());
  double var = 0.0;
  for (float v : img.samples()) var += (v - mean) * (v - mean);
  return var / static_cast<double>(img.samples().size());
}

}  // namespace

TEST(ReflectIndex, MirrorsWithoutRepeatingTheEdge) {
  EXPECT_EQ(db::kernels::reflect_index(-1, 5), 1);
  EXPECT_EQ(db::kernels::reflect_index(-2, 5), 2);
  EXPECT_EQ(db::kernels::reflect_index(5, 5), 3);
  EXPECT_EQ(db::kernels::reflect_index(6, 5), 2);
  EXPECT_EQ(db::kernels::reflect_index(3, 1), 0);
  for (int i = -40; i < 40; ++i) EXPECT_EQ(db::kernels::reflect_index(i, 7), mirror(i, 7)) << i;
}

TEST(Convolve, IdentityKernelIsBitIdentical) {
  const auto img = random_image(13, 9, 1);
  EXPECT_EQ(db::convolve(img, db::Kernel2D::identity()), img);
}

TEST(Convolve, ConstantImageIsInvariant) {
  const db::ImageBuffer img(16, 12, 0.5f);
  const auto out = db::convolve(img, db::Kernel2D::disk(3.0));
  for (float v : out.samples()) EXPECT_NEAR(v, 0.5f, 1e-6);
}

TEST(Convolve, BoxMatchesNestedLoopOracle) {
  const auto img = random_image(16, 16, 2);
  const auto out = db::convolve(img, db::Kernel2D::box(3));
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) s += img.at(mirror(x + dx, 16), mirror(y + dy, 16), c) / 9.0;
        EXPECT_NEAR(out.at(x, y, c), s, 1e-6);
      }
    }
  }
}

TEST(Convolve, NormalizedKernelPreservesInteriorMean) {
  // mid-gray frame, random content only in the interior, so no border pixel
  // ever sees the random patch and the total mass is conserved
  db::ImageBuffer img(48, 48, 0.5f);
  const auto patch = random_image(16, 16, 3, 0.3f, 0.7f);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x)
      for (int c = 0; c < 3; ++c) img.at(16 + x, 16 + y, c) = patch.at(x, y, c);
  const auto out = db::convolve(img, db::Kernel2D::disk(3.0));
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < img.samples().size(); ++i) {
    a += img.samples()[i];
    b += out.samples()[i];
  }
  const auto n = static_cast<double>(img.samples().size());
  EXPECT_NEAR(a / n, b / n, 1e-6);
}

TEST(Convolve, OversizedKernelIsRejected) {
  const db::ImageBuffer img(8, 8, 0.5f);
  EXPECT_NO_THROW(db::convolve(img, db::Kernel2D::box(15)));
  try {
    db::convolve(img, db::Kernel2D::box(17));
    FAIL();
  } catch (const db::Error& e) {
    EXPECT_EQ(e.code(), db::Errc::invalid_kernel);
  }
}

TEST(Kernel2D, RejectsEvenSizes) {
  EXPECT_THROW(db::Kernel2D(4, std::vector<float>(16, 1.0f / 16)), db::Error);
  EXPECT_TRUE(db::Kernel2D::disk(4.0).is_normalized());
  EXPECT_TRUE(db::Kernel2D::box(7).is_normalized());
}

TEST(GaussianBlur, ZeroSigmaIsIdentity) {
  const auto img = random_image(20, 10, 4);
  EXPECT_EQ(db::gaussian_blur(img, 0.0), img);
}

TEST(GaussianBlur, NegativeSigmaIsRejected) {
  const db::ImageBuffer img(8, 8);
  try {
    db::gaussian_blur(img, -1.0);
    FAIL();
  } catch (const db::Error& e) {
    EXPECT_EQ(e.code(), db::Errc::invalid_parameter);
  }
}

TEST(GaussianBlur, ImpulseMatchesDirect2DKernel) {
  const double sigma = 2.0;
  const int r = 6;
  db::ImageBuffer img(31, 31, 0.0f);
  for (int c = 0; c < 3; ++c) img.at(15, 15, c) = 1.0f;
  const auto out = db::gaussian_blur(img, sigma);
  double total = 0.0;
  for (int y = -r; y <= r; ++y)
    for (int x = -r; x <= r; ++x) total += std::exp(-(x * x + y * y) / (2 * sigma * sigma));
  for (int y = -3; y <= 3; ++y) {
    for (int x = -3; x <= 3; ++x) {
      const double expected = std::exp(-(x * x + y * y) / (2 * sigma * sigma)) / total;
      EXPECT_NEAR(out.at(15 + x, 15 + y, 1), expected, 1e-4);
    }
  }
  EXPECT_NEAR(out.at(15, 15, 0), 1.0 / total, 1e-6);
  EXPECT_NEAR(1.0 / total, 1.0 / (2 * std::numbers::pi * sigma * sigma), 2e-3);
}

TEST(GaussianBlur, NoiseVarianceFallsWithSigma) {
  const auto img = random_image(64, 64, 5);
  double prev = sample_variance(img);
  for (double s : {1.0, 2.0, 4.0}) {
    const double v = sample_variance(db::gaussian_blur(img, s));
    EXPECT_LT(v, prev) << s;
    prev = v;
  }
}

TEST(Resize, SameSizeNearestIsIdentity) {
  const auto img = random_image(17, 11, 6);
  EXPECT_EQ(db::resize(img, 17, 11, db::ResizeMode::nearest), img);
  EXPECT_EQ(db::resize(img, 17, 11, db::ResizeMode::bilinear), img);
}

TEST(Resize, CheckerboardNearestReplicates) {
  db::ImageBuffer img(2, 2, 0.0f);
  for (int c = 0; c < 3; ++c) {
    img.at(1, 0, c) = 1.0f;
    img.at(0, 1, c) = 1.0f;
  }
  const auto out = db::resize(img, 4, 4, db::ResizeMode::nearest);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) EXPECT_EQ(out.at(x, y, 2), img.at(x / 2, y / 2, 2));
}

TEST(Resize, BilinearMatchesScalarOracle) {
  db::ImageBuffer img(8, 8);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x)
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = static_cast<float>((x + 2 * y + c) / 24.0);
  const auto out = db::resize(img, 4, 4, db::ResizeMode::bilinear);
  auto coord = [](int i) { return std::clamp((i + 0.5) * 2.0 - 0.5, 0.0, 7.0); };
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      const double sx = coord(x), sy = coord(y);
      const int x0 = static_cast<int>(sx), y0 = static_cast<int>(sy);
      const int x1 = std::min(x0 + 1, 7), y1 = std::min(y0 + 1, 7);
      const double fx = sx - x0, fy = sy - y0;
      for (int c = 0; c < 3; ++c) {
        const double v = (1 - fy) * ((1 - fx) * img.at(x0, y0, c) + fx * img.at(x1, y0, c)) +
                         fy * ((1 - fx) * img.at(x0, y1, c) + fx * img.at(x1, y1, c));
        EXPECT_NEAR(out.at(x, y, c), v, 1e-6);
      }
    }
  }
}

TEST(Resize, ZeroDimensionIsRejected) {
  const db::ImageBuffer img(8, 8);
  EXPECT_THROW(db::resize(img, 0, 4, db::ResizeMode::nearest), db::Error);
  EXPECT_THROW(db::resize(img, 4, 0, db::ResizeMode::bilinear), db::Error);
}

TEST(Hsv, PrimaryAndGray) {
  const auto red = db::rgb_to_hsv(1.0f, 0.0f, 0.0f);
  EXPECT_FLOAT_EQ(red[0], 0.0f);
  EXPECT_FLOAT_EQ(red[1], 1.0f);
  EXPECT_FLOAT_EQ(red[2], 1.0f);
  for (float g : {0.0f, 0.5f, 1.0f}) {
    const auto hsv = db::rgb_to_hsv(g, g, g);
    EXPECT_FLOAT_EQ(hsv[1], 0.0f);
    EXPECT_FLOAT_EQ(hsv[2], g);
  }
}

TEST(Hsv, RoundTripWithinTolerance) {
  const auto img = random_image(100, 100, 7);
  const auto back = db::hsv_to_rgb(db::rgb_to_hsv(img));
  for (std::size_t i = 0; i < img.samples().size(); ++i) EXPECT_NEAR(back.samples()[i], img.samples()[i], 1e-6);
}

TEST(YCbCr, RoundTrip) {
  db::DeterministicRng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const float r = static_cast<float>(rng.uniform()), g = static_cast<float>(rng.uniform()),
                b = static_cast<float>(rng.uniform());
    const auto y = db::rgb_to_ycbcr(r, g, b);
    const auto back = db::ycbcr_to_rgb(y[0], y[1], y[2]);
    EXPECT_NEAR(back[0], r, 1e-5);
    EXPECT_NEAR(back[1], g, 1e-5);
    EXPECT_NEAR(back[2], b, 1e-5);
  }
}

TEST(Plasma, NormalizedAndDeterministic) {
  db::DeterministicRng a(9), b(9);
  const auto p = db::plasma_fractal(64, 2.0, a);
  const auto q = db::plasma_fractal(64, 2.0, b);
  EXPECT_EQ(p, q);
  const auto [lo, hi] = std::minmax_element(p.values().begin(), p.values().end());
  EXPECT_EQ(*lo, 0.0f);
  EXPECT_EQ(*hi, 1.0f);
}

TEST(Plasma, RejectsBadArguments) {
  db::DeterministicRng rng(1);
  EXPECT_THROW(db::plasma_fractal(96, 2.0, rng), db::Error);
  EXPECT_THROW(db::plasma_fractal(4, 2.0, rng), db::Error);
  EXPECT_THROW(db::plasma_fractal(64, 1.0, rng), db::Error);
}

TEST(Plasma, LargerDecayIsSmoother) {
  auto laplacian = [](const db::Plane& p) {
    double s = 0.0;
    const int n = p.width();
    for (int y = 1; y < n - 1; ++y)
      for (int x = 1; x < n - 1; ++x)
        s += std::abs(4 * p.at(x, y) - p.at(x - 1, y) - p.at(x + 1, y) - p.at(x, y - 1) - p.at(x, y + 1));
    return s / ((n - 2) * (n - 2));
  };
  db::DeterministicRng a(10), b(10);
  EXPECT_LT(laplacian(db::plasma_fractal(256, 3.0, a)), laplacian(db::plasma_fractal(256, 1.5, b)));
}

TEST(Plasma, HistogramCoversRange) {
  for (int size : {128, 256}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      db::DeterministicRng rng(seed);
      const auto p = db::plasma_fractal(size, 2.0, rng);
      std::set<int> bins;
      for (float v : p.values()) bins.insert(std::min(31, static_cast<int>(v * 32)));
      EXPECT_GE(bins.size(), 29u) << size << " " << seed;
    }
  }
}

TEST(DeriveSeed, GoldenValues) {
  EXPECT_EQ(db::derive_seed(0, "a/b.png", db::CorruptionKind::gaussian_noise, 1), 0xef78ca83d61a9578ULL);
  EXPECT_EQ(db::derive_seed(17, "2011_09_26/0000000005.png", db::CorruptionKind::fog, 5), 0x547b3c7e98bea62cULL);
}

TEST(DeriveSeed, SeverityChangesSeedAcrossCorpus) {
  int collisions = 0;
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const std::string path = "seq_" + std::to_string(i / 100) + "/" + std::to_string(i) + ".png";
    std::set<std::uint64_t> per_path;
    for (int s = 1; s <= 5; ++s) {
      const auto seed = db::derive_seed(3, path, db::CorruptionKind::shot_noise, s);
      EXPECT_EQ(seed, db::derive_seed(3, path, db::CorruptionKind::shot_noise, s));
      per_path.insert(seed);
      if (!seen.insert(seed).second) ++collisions;
    }
    EXPECT_EQ(per_path.size(), 5u);
  }
  EXPECT_EQ(collisions, 0);
}

TEST(Rng, StreamMatchesSplitMix64) {
  db::DeterministicRng rng(42);
  EXPECT_EQ(rng.next_u64(), 0xbdd732262feb6e95ULL);
  EXPECT_EQ(rng.next_u64(), 0x28efe333b266f103ULL);
  EXPECT_EQ(rng.next_u64(), 0x47526757130f9f52ULL);
}

TEST(Rng, NormalAndPoissonMoments) {
  db::DeterministicRng rng(11);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
  for (double mean : {0.5, 4.0, 9.5, 30.0, 300.0}) {
    double m = 0, m2 = 0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(rng.poisson(mean));
      m += k;
      m2 += k * k;
    }
    m /= n;
    const double var = m2 / n - m * m;
    EXPECT_NEAR(m, mean, 0.02 * mean + 0.01) << mean;
    EXPECT_NEAR(var, mean, 0.05 * mean + 0.02) << mean;
  }
}

TEST(Rng, UniformIntCoversInclusiveRange) {
  db::DeterministicRng rng(12);
  std::set<int> seen;
  for (int i = 0; i < 1000; ++i) {
    const int v = rng.uniform_int(-2, 1);
    ASSERT_GE(v, -2);
    ASSERT_LE(v, 1);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 4u);
}

class SerialParallel : public ::testing::Test {
 protected:
  void SetUp() override { omp_set_num_threads(4); }
  const db::ImageBuffer img = random_image(57, 43, 13);
};

TEST_F(SerialParallel, Convolve) {
  db::ImageBuffer a(57, 43), b(57, 43);
  const auto k = db::Kernel2D::disk(4.0);
  db::kernels::serial::convolve(img.view(), a.view(), k);
  db::kernels::parallel::convolve(img.view(), b.view(), k);
  EXPECT_EQ(a, b);
}

TEST_F(SerialParallel, Separable) {
  db::ImageBuffer a(57, 43), b(57, 43);
  const auto t = db::kernels::gaussian_taps(2.5);
  db::kernels::serial::convolve_separable(img.view(), a.view(), t, t);
  db::kernels::parallel::convolve_separable(img.view(), b.view(), t, t);
  EXPECT_EQ(a, b);
}

TEST_F(SerialParallel, Resize) {
  for (auto [w, h] : {std::pair{20, 90}, std::pair{128, 7}}) {
    db::ImageBuffer a(w, h), b(w, h), c(w, h), d(w, h);
    db::kernels::serial::resize_nearest(img.view(), a.view());
    db::kernels::parallel::resize_nearest(img.view(), b.view());
    db::kernels::serial::resize_bilinear(img.view(), c.view());
    db::kernels::parallel::resize_bilinear(img.view(), d.view());
    EXPECT_EQ(a, b);
    EXPECT_EQ(c, d);
  }
}

TEST_F(SerialParallel, RemapAndShift) {
  db::Plane mx(57, 43), my(57, 43);
  db::DeterministicRng rng(14);
  for (int y = 0; y < 43; ++y)
    for (int x = 0; x < 57; ++x) {
      mx.at(x, y) = static_cast<float>(x + rng.uniform(-3, 3));
      my.at(x, y) = static_cast<float>(y + rng.uniform(-3, 3));
    }
  db::ImageBuffer a(57, 43), b(57, 43);
  db::kernels::serial::remap_bilinear(img.view(), a.view(), mx, my);
  db::kernels::parallel::remap_bilinear(img.view(), b.view(), mx, my);
  EXPECT_EQ(a, b);
  db::ImageBuffer c(57, 43), d(57, 43);
  for (int i = 0; i < 5; ++i) {
    db::kernels::serial::accumulate_shifted(img.view(), c.view(), i - 2, -i, 0.2f);
    db::kernels::parallel::accumulate_shifted(img.view(), d.view(), i - 2, -i, 0.2f);
  }
  EXPECT_EQ(c, d);
}

TEST_F(SerialParallel, Histogram) {
  std::vector<std::uint64_t> a(3 * 64), b(3 * 64);
  db::kernels::serial::histogram(img.view(), 64, a);
  db::kernels::parallel::histogram(img.view(), 64, b);
  EXPECT_EQ(a, b);
  std::uint64_t total = 0;
  for (auto v : a) total += v;
  EXPECT_EQ(total, 57u * 43u * 3u);
}

TEST(Jpeg, RoundTripPreservesShapeAndApproximatesContent) {
  const auto img = db::gaussian_blur(random_image(40, 24, 15), 2.0);
  const auto q95 = db::jpeg_roundtrip(img, 95);
  const auto q10 = db::jpeg_roundtrip(img, 10);
  EXPECT_EQ(q95.width(), 40);
  EXPECT_EQ(q95.height(), 24);
  EXPECT_GT(db::psnr(img, q95), db::psnr(img, q10));
  EXPECT_GT(db::psnr(img, q95), 35.0);
  EXPECT_THROW(db::decode_jpeg(std::vector<std::uint8_t>{1, 2, 3}), db::Error);
}

TEST(Quantize, EightBitConvention) {
  EXPECT_EQ(db::quantize_sample(0.5f), 128);
  EXPECT_EQ(db::quantize_sample(-1.0f), 0);
  EXPECT_EQ(db::quantize_sample(2.0f), 255);
  EXPECT_EQ(db::quantize_sample(std::nanf("")), 0);
}
