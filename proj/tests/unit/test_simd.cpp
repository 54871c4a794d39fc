#include "holonome/cmatrix.hpp"
#include "holonome/simd/kernels.hpp"

#include <doctest.h>

#include <random>

using namespace holonome;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = {u(rng), u(rng)};
  return v;
}

// Textbook triple loop, the oracle for every gemm variant.
std::vector<cplx> naive_gemm(std::size_t m, std::size_t k, std::size_t n, const std::vector<cplx>& a,
                             const std::vector<cplx>& b) {
  std::vector<cplx> c(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t l = 0; l < k; ++l) s += a[i * k + l] * b[l * n + j];
      c[i * n + j] = s;
    }
  return c;
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("every kernel variant agrees with the reference loops") {
    std::mt19937 rng(12345);
    const auto variants = simd::available_kernels();
    REQUIRE(!variants.empty());
    for (const auto* table : variants) {
      CAPTURE(table->name);
      const std::size_t shapes[][3] = {{1, 1, 1}, {3, 5, 2}, {7, 7, 7}, {8, 3, 9}, {16, 16, 16}, {27, 27, 27}};
      for (const auto& shape : shapes) {
        const std::size_t m = shape[0], k = shape[1], n = shape[2];
        const auto a = random_vec(m * k, rng), b = random_vec(k * n, rng);
        std::vector<cplx> c(m * n, cplx(99.0, 99.0));
        table->gemm(m, k, n, a.data(), b.data(), c.data());
        const auto ref = naive_gemm(m, k, n, a, b);
        double worst = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) worst = std::max(worst, std::abs(c[i] - ref[i]));
        CHECK(worst < 1e-13);
      }
      for (std::size_t len : {1u, 2u, 3u, 4u, 5u, 17u, 64u}) {
        const auto x = random_vec(len, rng);
        auto y = random_vec(len, rng);
        auto y_ref = y;
        const cplx alpha(0.3, -1.7);
        table->axpy(len, alpha, x.data(), y.data());
        double worst = 0.0, mx = 0.0, md = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
          y_ref[i] += alpha * x[i];
          worst = std::max(worst, std::abs(y[i] - y_ref[i]));
          mx = std::max(mx, std::abs(x[i]));
          md = std::max(md, std::abs(x[i] - y[i]));
        }
        CHECK(worst < 1e-15);
        CHECK(table->max_abs(len, x.data()) == doctest::Approx(mx).epsilon(1e-15));
        CHECK(table->max_abs_diff(len, x.data(), y.data()) == doctest::Approx(md).epsilon(1e-15));
      }
    }
  }

  TEST_CASE("vectorized and scalar variants match each other") {
    const simd::KernelTable* avx = simd::avx2_kernels();
    if (avx == nullptr) return;
    std::mt19937 rng(7);
    const auto a = random_vec(20 * 20, rng), b = random_vec(20 * 20, rng);
    std::vector<cplx> c1(400), c2(400);
    simd::scalar_kernels().gemm(20, 20, 20, a.data(), b.data(), c1.data());
    avx->gemm(20, 20, 20, a.data(), b.data(), c2.data());
    double worst = 0.0;
    for (std::size_t i = 0; i < 400; ++i) worst = std::max(worst, std::abs(c1[i] - c2[i]));
    CHECK(worst < 1e-13);
  }

  TEST_CASE("CMatrix product, inverse and power") {
    CMatrix a(2, 2);
    a(0, 0) = 2.0;
    a(0, 1) = cplx(0.0, 1.0);
    a(1, 1) = 3.0;
    const CMatrix inv = inverse(a);
    CHECK(max_abs_diff(a * inv, CMatrix::identity(2)) < 1e-15);
    CHECK(max_abs_diff(power(a, 3), a * a * a) < 1e-13);
    CHECK(max_abs_diff(power(a, 0), CMatrix::identity(2)) == 0.0);
  }
}
