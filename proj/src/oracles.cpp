#include "qmeta/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qmeta/error.hpp"
#include "qmeta/jacobi.hpp"

namespace qmeta {

namespace {
constexpr double kPi = std::numbers::pi;
}

void ChiProfile::validate() const {
  if (!(std::isfinite(chi0) && chi0 >= 0.0)) throw ConfigError("chi0 must be >= 0");
  if (!(std::isfinite(chi_tilde) && chi_tilde >= 0.0)) throw ConfigError("chi_tilde must be >= 0");
  if (!(std::isfinite(L_m) && L_m > 0.0)) throw ConfigError("L_m must be > 0");
}

double ChiProfile::at(double z) const {
  return chi0 + chi_tilde * (1.0 + std::cos(2.0 * kPi * z / L_m));
}

double rabi_profile(double z, double t, double A, double k, double phi0, double delta,
                    const QubitParams& q) {
  const double s = std::cos(2.0 * k * z + phi0) + 1.0;
  const double omega = 2.0 * std::abs(q.d01) * A * A * s;
  if (omega == 0.0) return 0.0;
  const double gamma = delta + 4.0 * A * A * (q.d00 - q.d11) * s;
  const double rate = std::sqrt(omega * omega + 0.25 * gamma * gamma);
  return omega * std::abs(std::sin(rate * t)) / rate;
}

BranchPair dispersion_perturbative(double k, const ChiProfile& chi, const MediumParams& m) {
  chi.validate();
  k = std::abs(k);
  const double w0 = chi.chi0 + chi.chi_tilde;
  const double kn = kPi / chi.L_m;
  const long n = std::lround(k / kn);
  BranchPair out{0.0, 0.0, 0};
  double wk = 0.0;
  if (n >= 1 && std::abs(k - static_cast<double>(n) * kn) <= 1e-9 * kn) {
    out.resonance = static_cast<int>(n);
    if (n == 1) wk = 0.5 * chi.chi_tilde;
  }
  const double base = m.v_tilde * m.v_tilde * k * k + w0;
  const double lo = base - wk, hi = base + wk;
  if (lo < 0.0) {
    std::ostringstream msg;
    msg << "unphysical parameters: omega^2 = " << lo << " < 0 at k = " << k;
    throw PreconditionError(msg.str());
  }
  out.omega_minus = std::sqrt(lo);
  out.omega_plus = std::sqrt(hi);
  return out;
}

GapEstimate gap_width(int n, const ChiProfile& chi, const MediumParams& m) {
  chi.validate();
  if (n < 1) throw PreconditionError("gap index must be >= 1");
  const double kn = kPi * m.v_tilde * n / chi.L_m;
  const double w0 = chi.chi0 + chi.chi_tilde;
  GapEstimate g;
  g.center = std::sqrt(kn * kn + w0);
  const double wk = n == 1 ? 0.5 * chi.chi_tilde : 0.0;
  g.half = wk / g.center;
  g.full = n == 1 ? chi.chi_tilde / g.center : 0.0;
  g.validity_ratio = wk > 0.0 ? g.center * g.center / wk : std::numeric_limits<double>::infinity();
  g.primary = g.half;
  g.primary_form = "half";
  return g;
}

namespace {

std::vector<double> hill_frequencies(double k, const ChiProfile& chi, const MediumParams& m, int M) {
  const std::size_t n = static_cast<std::size_t>(2 * M + 1);
  const double G = 2.0 * kPi / chi.L_m;
  const double v2 = m.v_tilde * m.v_tilde;
  std::vector<double> h(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = k + G * (static_cast<double>(i) - M);
    h[i * n + i] = v2 * q * q + chi.chi0 + chi.chi_tilde;
    if (i + 1 < n) {
      h[i * n + i + 1] = 0.5 * chi.chi_tilde;
      h[(i + 1) * n + i] = 0.5 * chi.chi_tilde;
    }
  }
  EigenResult e = jacobi_eigen(std::move(h), n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (e.values[i] < 0.0) throw PreconditionError("unphysical parameters: negative band omega^2");
    w[i] = std::sqrt(e.values[i]);
  }
  return w;
}

}  // namespace

BandStructure bloch_bands(const std::vector<double>& k_list, const ChiProfile& chi,
                          const MediumParams& m, int M, int n_gaps) {
  chi.validate();
  if (M < 4) throw PreconditionError("bloch_bands: truncation M must be >= 4");
  const double G = 2.0 * kPi / chi.L_m;
  BandStructure out;
  for (double k : k_list) {
    const double folded = k - G * std::round(k / G);
    out.samples.push_back({k, hill_frequencies(folded, chi, m, M)});
  }
  for (int n = 1; n <= std::min(n_gaps, 2 * M); ++n) {
    const double k = (n % 2 == 1) ? 0.5 * G : 0.0;
    const std::vector<double> w = hill_frequencies(k, chi, m, M);
    BandGap g{n, k, w[n - 1], w[n], 0.5 * (w[n - 1] + w[n]), w[n] - w[n - 1]};
    out.gaps.push_back(g);
  }
  return out;
}

QubitSpectrum qubit_spectrum(double ratio, double n_g, int M) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw PreconditionError("E_J/hbar omega_J must be > 0");
  if (M < 8) throw PreconditionError("qubit_spectrum: charge truncation M must be >= 8");
  const std::size_t n = static_cast<std::size_t>(2 * M + 1);
  std::vector<double> h(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = static_cast<double>(i) - M - n_g;
    h[i * n + i] = q * q / ratio;
    if (i + 1 < n) {
      h[i * n + i + 1] = -ratio;
      h[(i + 1) * n + i] = -ratio;
    }
  }
  const EigenResult e = jacobi_eigen(std::move(h), n);

  QubitSpectrum out;
  out.levels = e.values;
  out.edge_weight = std::max(e.vec(0, 0) * e.vec(0, 0), e.vec(0, n - 1) * e.vec(0, n - 1));
  if (out.edge_weight > 1e-10) {
    std::ostringstream msg;
    msg << "qubit_spectrum: truncation M=" << M << " too small (edge weight " << out.edge_weight
        << ")";
    throw PreconditionError(msg.str());
  }
  out.epsilon = e.values[1] - e.values[0];
  auto cos_elem = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
      s += e.vec(a, i) * e.vec(b, i + 1) + e.vec(a, i + 1) * e.vec(b, i);
    return 0.5 * s;
  };
  out.d00 = ratio * cos_elem(0, 0) / out.epsilon;
  out.d11 = ratio * cos_elem(1, 1) / out.epsilon;
  out.d01 = std::abs(ratio * cos_elem(0, 1) / out.epsilon);
  return out;
}

}  // namespace qmeta
