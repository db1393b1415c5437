#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qmeta/kernels/dispatch.hpp"

using namespace qmeta::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

// normalized random register, interleaved complex
void random_register(std::mt19937_64& rng, std::size_t n, std::vector<double>& c0, std::vector<double>& c1) {
  c0 = random_vec(rng, 2 * n);
  c1 = random_vec(rng, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::sqrt(c0[2 * i] * c0[2 * i] + c0[2 * i + 1] * c0[2 * i + 1] +
                               c1[2 * i] * c1[2 * i] + c1[2 * i + 1] * c1[2 * i + 1]);
    for (auto* v : {&c0, &c1}) {
      (*v)[2 * i] /= s;
      (*v)[2 * i + 1] /= s;
    }
  }
}

const std::vector<std::size_t> kSizes{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 13, 16, 31, 64, 257, 1000};

class KernelEquivalence : public ::testing::TestWithParam<Isa> {
 protected:
  const KernelTable& ref = scalar_kernels();
  const KernelTable& simd() { return *kernels_for(GetParam()); }
};

TEST_P(KernelEquivalence, StencilKickBitIdentical) {
  std::mt19937_64 rng(1);
  for (std::size_t n : kSizes) {
    const auto a = random_vec(rng, n);
    const auto c2 = random_vec(rng, n, 0.5, 4.0);
    auto v1 = random_vec(rng, n);
    auto v2 = v1;
    ref.stencil_kick(a.data(), v1.data(), c2.data(), 0.037, n);
    simd().stencil_kick(a.data(), v2.data(), c2.data(), 0.037, n);
    EXPECT_EQ(v1, v2) << "n=" << n;
  }
}

TEST_P(KernelEquivalence, DriftAndBackactionBitIdentical) {
  std::mt19937_64 rng(2);
  for (std::size_t n : kSizes) {
    const auto v = random_vec(rng, n);
    const auto s = random_vec(rng, n);
    const auto chi = random_vec(rng, n, 0.0, 0.5);
    auto a1 = random_vec(rng, n);
    auto a2 = a1;
    ref.drift(a1.data(), v.data(), -0.021, n);
    simd().drift(a2.data(), v.data(), -0.021, n);
    EXPECT_EQ(a1, a2) << "n=" << n;
    ref.backaction_kick(a1.data(), s.data(), chi.data(), 0.05, n);
    simd().backaction_kick(a2.data(), s.data(), chi.data(), 0.05, n);
    EXPECT_EQ(a1, a2) << "n=" << n;
  }
}

TEST_P(KernelEquivalence, ExpectationBitIdentical) {
  std::mt19937_64 rng(3);
  const ExpectationCoeffs k{0.05, 0.45, 0.021, -0.013};
  for (std::size_t n : kSizes) {
    std::vector<double> c0, c1;
    random_register(rng, n, c0, c1);
    std::vector<double> o1(n), o2(n);
    ref.expectation(c0.data(), c1.data(), n, k, o1.data());
    simd().expectation(c0.data(), c1.data(), n, k, o2.data());
    EXPECT_EQ(o1, o2) << "n=" << n;
  }
}

TEST_P(KernelEquivalence, RotateBitIdentical) {
  std::mt19937_64 rng(4);
  const RotationCoeffs k{-0.99, 0.08, -0.05};
  for (std::size_t n : kSizes) {
    std::vector<double> c0, c1;
    random_register(rng, n, c0, c1);
    const auto cs = random_vec(rng, n), sn = random_vec(rng, n);
    const auto pr = random_vec(rng, n), pi = random_vec(rng, n);
    const RotationBuffers b{cs.data(), sn.data(), pr.data(), pi.data()};
    auto d0 = c0, d1 = c1;
    ref.rotate(c0.data(), c1.data(), b, k, n);
    simd().rotate(d0.data(), d1.data(), b, k, n);
    EXPECT_EQ(c0, d0) << "n=" << n;
    EXPECT_EQ(c1, d1) << "n=" << n;
  }
}

TEST_P(KernelEquivalence, NormDeviationAndPopulations) {
  std::mt19937_64 rng(5);
  for (std::size_t n : kSizes) {
    std::vector<double> c0, c1;
    random_register(rng, n, c0, c1);
    if (n > 3) c1[5] += 1e-7;
    EXPECT_EQ(ref.norm_deviation(c0.data(), c1.data(), n), simd().norm_deviation(c0.data(), c1.data(), n));
    std::vector<double> p1(n), p2(n);
    ref.populations(c1.data(), p1.data(), n);
    simd().populations(c1.data(), p2.data(), n);
    EXPECT_EQ(p1, p2);
  }
}

TEST_P(KernelEquivalence, FieldEnergyWithinRoundoff) {
  std::mt19937_64 rng(6);
  for (std::size_t n : kSizes) {
    const auto a = random_vec(rng, n), v = random_vec(rng, n), w = random_vec(rng, n, 0.5, 2.0);
    const double e1 = ref.field_energy(a.data(), v.data(), w.data(), 3.96, n);
    const double e2 = simd().field_energy(a.data(), v.data(), w.data(), 3.96, n);
    EXPECT_NEAR(e1, e2, 1e-13 * std::max(1.0, std::abs(e1))) << "n=" << n;
  }
}

std::string isa_name(const ::testing::TestParamInfo<Isa>& info) { return std::string(to_string(info.param)); }

INSTANTIATE_TEST_SUITE_P(AllIsas, KernelEquivalence, ::testing::ValuesIn(available_isas()), isa_name);

}  // namespace

TEST(ScalarKernels, StencilMatchesDefinition) {
  const std::vector<double> a{1.0, -2.0, 0.5, 3.0};
  const std::vector<double> c2{1.0, 2.0, 3.0, 4.0};
  std::vector<double> v(4, 0.0);
  scalar_kernels().stencil_kick(a.data(), v.data(), c2.data(), 1.0, 4);
  EXPECT_DOUBLE_EQ(v[0], 1.0 * (0.0 - 2.0 - 2.0));
  EXPECT_DOUBLE_EQ(v[1], 2.0 * (1.0 + 0.5 + 4.0));
  EXPECT_DOUBLE_EQ(v[2], 3.0 * (-2.0 + 3.0 - 1.0));
  EXPECT_DOUBLE_EQ(v[3], 4.0 * (0.5 + 0.0 - 6.0));
}

TEST(ScalarKernels, RotationIsUnitary) {
  // generator with e = 0.6, w = 0.8 i (unit norm); angle 0.3, phase 1
  std::vector<double> c0{0.6, 0.0}, c1{0.0, 0.8};
  const double cs = std::cos(0.3), sn = std::sin(0.3), pr = 1.0, pi = 0.0;
  const RotationBuffers b{&cs, &sn, &pr, &pi};
  scalar_kernels().rotate(c0.data(), c1.data(), b, {0.6, 0.0, 0.8}, 1);
  EXPECT_NEAR(scalar_kernels().norm_deviation(c0.data(), c1.data(), 1), 0.0, 1e-15);
}

TEST(Dispatch, ScalarAlwaysAvailable) {
  const auto isas = available_isas();
  ASSERT_FALSE(isas.empty());
  EXPECT_EQ(isas.front(), Isa::scalar);
  EXPECT_NE(kernels_for(Isa::scalar), nullptr);
  EXPECT_NE(active_kernels().name, nullptr);
}
