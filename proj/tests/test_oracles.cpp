#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qmeta/error.hpp"
#include "qmeta/oracles.hpp"

using namespace qmeta;

namespace {
constexpr double kPi = std::numbers::pi;
const QubitParams kQ{};
const MediumParams kM{};
}  // namespace

TEST(ChiProfileTest, ShapeAndValidation) {
  const ChiProfile c{};
  EXPECT_NEAR(c.at(0.0), 0.09, 1e-15);
  EXPECT_NEAR(c.at(6.25), 0.05, 1e-15);
  EXPECT_NEAR(c.at(12.5 * 3 + 1.0), c.at(1.0), 1e-15);
  EXPECT_THROW((ChiProfile{0.05, -0.01, 12.5}.validate()), ConfigError);
  EXPECT_THROW((ChiProfile{0.05, 0.01, 0.0}.validate()), ConfigError);
}

TEST(RabiProfile, ZeroAtNodes) {
  const double k = 2.0 * kPi / 25.0, phi0 = 0.4;
  const double z = (kPi - phi0) / (2.0 * k);
  for (double t : {0.0, 10.0, 123.4})
    EXPECT_NEAR(rabi_profile(z, t, 0.18, k, phi0, 0.0, kQ), 0.0, 1e-12);
}

TEST(RabiProfile, ResonantAntinode) {
  const double A = 0.18, k = 0.3;
  const double delta = -8.0 * A * A * (kQ.d00 - kQ.d11);
  for (double t : {0.0, 5.0, 30.0, 77.0})
    EXPECT_NEAR(rabi_profile(0.0, t, A, k, 0.0, delta, kQ), std::abs(std::sin(4.0 * kQ.d01 * A * A * t)),
                1e-14);
}

TEST(RabiProfile, HalfWavelengthPeriodicAndBounded) {
  const double A = 0.18, k = 2.0 * kPi / 25.0;
  for (double z = 0.0; z < 30.0; z += 0.7) {
    for (double t : {3.0, 40.0}) {
      const double v = rabi_profile(z, t, A, k, 0.3, 0.1, kQ);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      EXPECT_NEAR(rabi_profile(z + kPi / k, t, A, k, 0.3, 0.1, kQ), v, 1e-12);
    }
  }
}

TEST(Dispersion, UnmodulatedIsKleinGordon) {
  const ChiProfile c{0.05, 0.0, 12.5};
  for (double k : {0.0, 0.1, kPi / 12.5, 0.7}) {
    const auto b = dispersion_perturbative(k, c, kM);
    const double w = std::sqrt(kM.v_tilde * kM.v_tilde * k * k + 0.05);
    EXPECT_NEAR(b.omega_minus, w, 1e-15);
    EXPECT_NEAR(b.omega_plus, w, 1e-15);
  }
}

TEST(Dispersion, ZoneCentreAndEdge) {
  const ChiProfile c{};
  const auto b0 = dispersion_perturbative(0.0, c, kM);
  EXPECT_NEAR(b0.omega_minus, std::sqrt(0.07), 1e-15);
  EXPECT_EQ(b0.omega_minus, b0.omega_plus);
  const auto b1 = dispersion_perturbative(kPi / 12.5, c, kM);
  EXPECT_EQ(b1.resonance, 1);
  EXPECT_NEAR(b1.omega_plus * b1.omega_plus - b1.omega_minus * b1.omega_minus, 0.02, 1e-14);
  const auto b2 = dispersion_perturbative(2.0 * kPi / 12.5, c, kM);
  EXPECT_EQ(b2.resonance, 2);
  EXPECT_EQ(b2.omega_minus, b2.omega_plus);
  const auto g = dispersion_perturbative(0.123, c, kM);
  EXPECT_EQ(g.resonance, 0);
  EXPECT_EQ(g.omega_minus, g.omega_plus);
}

TEST(Dispersion, EvenInK) {
  const ChiProfile c{};
  for (double k : {0.05, kPi / 12.5, 0.9}) {
    const auto p = dispersion_perturbative(k, c, kM), n = dispersion_perturbative(-k, c, kM);
    EXPECT_EQ(p.omega_minus, n.omega_minus);
    EXPECT_EQ(p.omega_plus, n.omega_plus);
  }
}

TEST(Dispersion, RejectsBadProfile) {
  EXPECT_THROW(dispersion_perturbative(0.1, ChiProfile{-0.1, 0.02, 12.5}, kM), ConfigError);
}

TEST(GapWidth, DefaultProfile) {
  const auto g = gap_width(1, ChiProfile{}, kM);
  const double centre = std::sqrt(std::pow(kPi * 1.99 / 12.5, 2) + 0.07);
  EXPECT_NEAR(g.center, centre, 1e-15);
  EXPECT_NEAR(g.full, 0.0354, 1e-4);
  EXPECT_NEAR(g.half, 0.0177, 1e-4);
  EXPECT_EQ(g.primary_form, "half");
  EXPECT_EQ(g.primary, g.half);
  EXPECT_NEAR(g.validity_ratio, centre * centre / 0.01, 1e-12);
}

TEST(GapWidth, VanishingCases) {
  EXPECT_EQ(gap_width(1, ChiProfile{0.05, 0.0, 12.5}, kM).primary, 0.0);
  const auto g2 = gap_width(2, ChiProfile{}, kM);
  EXPECT_EQ(g2.half, 0.0);
  EXPECT_EQ(g2.full, 0.0);
  EXPECT_TRUE(std::isinf(g2.validity_ratio));
  EXPECT_THROW(gap_width(0, ChiProfile{}, kM), PreconditionError);
}

TEST(BlochBands, UnmodulatedAreFoldedFreeBranches) {
  const ChiProfile c{0.05, 0.0, 12.5};
  const double G = 2.0 * kPi / c.L_m;
  std::vector<double> ks;
  for (int i = 0; i <= 20; ++i) ks.push_back(-0.5 * G + G * i / 20.0);
  const auto b = bloch_bands(ks, c, kM, 8);
  for (const auto& s : b.samples) {
    std::vector<double> expect;
    for (int m = -8; m <= 8; ++m) {
      const double q = s.k + G * m;
      expect.push_back(std::sqrt(kM.v_tilde * kM.v_tilde * q * q + 0.05));
    }
    std::sort(expect.begin(), expect.end());
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(s.omegas[i], expect[i], 1e-12);
  }
  for (const auto& g : b.gaps) EXPECT_NEAR(g.width, 0.0, 1e-12);
}

TEST(BlochBands, AscendingAndNonNegativeGaps) {
  const auto b = bloch_bands({0.0, 0.1, 0.2, -0.25, 1.3}, ChiProfile{0.05, 0.08, 12.5}, kM, 12, 4);
  for (const auto& s : b.samples) {
    ASSERT_EQ(s.omegas.size(), 25u);
    for (std::size_t i = 1; i < s.omegas.size(); ++i) EXPECT_LE(s.omegas[i - 1], s.omegas[i]);
  }
  ASSERT_EQ(b.gaps.size(), 4u);
  for (const auto& g : b.gaps) EXPECT_GE(g.width, 0.0);
  EXPECT_NEAR(b.gaps[0].k, kPi / 12.5, 1e-15);
  EXPECT_EQ(b.gaps[1].k, 0.0);
}

TEST(BlochBands, FirstGapMatchesPerturbativeHalfForm) {
  const ChiProfile c{};
  const auto g = gap_width(1, c, kM);
  ASSERT_GE(g.validity_ratio, 20.0);
  const auto b = bloch_bands({}, c, kM, 16, 1);
  EXPECT_NEAR(b.gaps[0].width / g.half, 1.0, 0.1);
  EXPECT_GT(std::abs(b.gaps[0].width / g.full - 1.0), 0.1);
  EXPECT_NEAR(b.gaps[0].center, g.center, 0.01 * g.center);
}

TEST(BlochBands, SecondGapIsHigherOrder) {
  const auto b = bloch_bands({}, ChiProfile{}, kM, 16, 2);
  EXPECT_LT(b.gaps[1].width, 0.05 * b.gaps[0].width);
}

TEST(BlochBands, TruncationConverged) {
  const ChiProfile c{};
  std::vector<double> ks;
  for (int i = 0; i <= 10; ++i) ks.push_back(kPi / 12.5 * i / 10.0);
  const auto b8 = bloch_bands(ks, c, kM, 8), b16 = bloch_bands(ks, c, kM, 16);
  for (std::size_t s = 0; s < ks.size(); ++s)
    for (std::size_t i = 0; i < 2; ++i)
      EXPECT_NEAR(b8.samples[s].omegas[i] / b16.samples[s].omegas[i], 1.0, 1e-8);
}

TEST(BlochBands, ContinuousInModulation) {
  const std::vector<double> ks{0.0, 0.1, kPi / 12.5};
  const auto b0 = bloch_bands(ks, ChiProfile{0.05, 0.0, 12.5}, kM, 8);
  double prev = 1e9;
  for (double ct : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const auto b = bloch_bands(ks, ChiProfile{0.05, ct, 12.5}, kM, 8);
    double sup = 0.0;
    for (std::size_t s = 0; s < ks.size(); ++s)
      for (std::size_t i = 0; i < 4; ++i)
        sup = std::max(sup, std::abs(b.samples[s].omegas[i] - b0.samples[s].omegas[i]));
    EXPECT_LT(sup, prev);
    prev = sup;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(BlochBands, SmallTruncationRejected) {
  EXPECT_THROW(bloch_bands({0.0}, ChiProfile{}, kM, 3), PreconditionError);
}

TEST(QubitSpectrum, ParityAtZeroOffset) {
  for (double R : {1.0, 4.0, 10.0}) EXPECT_LT(qubit_spectrum(R, 0.0, 40).d01, 1e-12);
  EXPECT_GT(qubit_spectrum(0.5, 0.25, 40).d01, 0.05);
  EXPECT_LT(qubit_spectrum(0.5, 0.5, 40).d01, 1e-12);
}

TEST(QubitSpectrum, HarmonicLimit) {
  for (double R : {50.0, 100.0}) {
    const auto s = qubit_spectrum(R, 0.25, 64);
    EXPECT_NEAR(s.epsilon, 2.0 - 1.0 / (4.0 * R), 0.2 / R);
  }
  const auto s = qubit_spectrum(4.0, 0.25, 40);
  EXPECT_NEAR(s.epsilon, 2.0 - 1.0 / 16.0, 0.02);
}

TEST(QubitSpectrum, ChargeLimit) {
  const double R = 0.01;
  const auto s = qubit_spectrum(R, 0.25, 16);
  EXPECT_NEAR(s.epsilon * R, 0.5, 1e-3);
}

TEST(QubitSpectrum, AscendingLevels) {
  const auto s = qubit_spectrum(4.0, 0.25, 20);
  ASSERT_EQ(s.levels.size(), 41u);
  for (std::size_t i = 1; i < s.levels.size(); ++i) EXPECT_LE(s.levels[i - 1], s.levels[i]);
  for (double x : s.levels) EXPECT_TRUE(std::isfinite(x));
}

TEST(QubitSpectrum, TruncationIndependent) {
  const auto a = qubit_spectrum(4.0, 0.25, 20), b = qubit_spectrum(4.0, 0.25, 40);
  EXPECT_LT(std::abs(a.epsilon / b.epsilon - 1.0), 1e-10);
  EXPECT_NEAR(a.d01, b.d01, 1e-10);
}

TEST(QubitSpectrum, Errors) {
  EXPECT_THROW(qubit_spectrum(4.0, 0.25, 7), PreconditionError);
  EXPECT_THROW(qubit_spectrum(0.0, 0.25, 16), PreconditionError);
  EXPECT_THROW(qubit_spectrum(400.0, 0.25, 8), PreconditionError);
}
