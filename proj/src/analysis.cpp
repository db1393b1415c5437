#include "qmeta/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qmeta/dynamics.hpp"
#include "qmeta/error.hpp"

namespace qmeta {

PeriodEstimate modulation_period(const std::vector<double>& p) {
  const std::size_t n = p.size();
  if (n < 3) throw InsufficientPeriodicity("fewer than 3 samples");
  const double top = *std::max_element(p.begin(), p.end());
  if (!(top > 0.0)) throw InsufficientPeriodicity("no excitation");

  PeriodEstimate out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(p[i] > p[i - 1] && p[i] >= p[i + 1] && p[i] > 0.5 * top)) continue;
    const double den = p[i - 1] - 2.0 * p[i] + p[i + 1];
    const double shift = den != 0.0 ? 0.5 * (p[i - 1] - p[i + 1]) / den : 0.0;
    out.peaks.push_back(static_cast<double>(i) + shift);
  }
  if (out.peaks.size() < 4) {
    std::ostringstream msg;
    msg << out.peaks.size() << " maxima above half the peak value, need 4";
    throw InsufficientPeriodicity(msg.str());
  }
  std::vector<double> gaps(out.peaks.size() - 1);
  for (std::size_t i = 0; i + 1 < out.peaks.size(); ++i) gaps[i] = out.peaks[i + 1] - out.peaks[i];
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / gaps.size();
  double var = 0.0;
  for (double g : gaps) var += (g - mean) * (g - mean);
  out.period = mean;
  out.uncertainty = gaps.size() > 1 ? std::sqrt(var / (gaps.size() - 1)) : 0.0;
  out.spectral_period = spectral_period(p);
  return out;
}

double spectral_period(const std::vector<double>& p) {
  const std::size_t n = p.size();
  if (n < 8) return 0.0;
  const double mean = std::accumulate(p.begin(), p.end(), 0.0) / n;
  double var = 0.0;
  for (double x : p) var += (x - mean) * (x - mean);
  if (!(var > 1e-24 * n * std::max(mean * mean, 1e-300))) return 0.0;
  const double nd = static_cast<double>(n);
  auto power = [&](double f) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      acc += (p[j] - mean) * std::polar(1.0, -2.0 * std::numbers::pi * f * static_cast<double>(j));
    return std::norm(acc);
  };
  const double f_lo = 4.0 / nd, f_hi = 0.5, df = 1.0 / (16.0 * nd);
  std::vector<double> grid;
  for (double f = f_lo; f <= f_hi; f += df) grid.push_back(f);
  std::vector<double> pw(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) pw[i] = power(grid[i]);
  std::size_t ib = 0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (pw[i] > pw[ib]) ib = i;
  if (!(pw[ib] > 0.0)) return 0.0;
  double best_f = grid[ib];
  if (ib > 0 && ib + 1 < grid.size()) {
    const double den = pw[ib - 1] - 2.0 * pw[ib] + pw[ib + 1];
    if (den != 0.0) best_f += df * 0.5 * (pw[ib - 1] - pw[ib + 1]) / den;
  }
  return 1.0 / best_f;
}

ChiFit fit_chi_profile(const SimState& s, const QubitParams& q, const MediumParams& m) {
  const std::vector<double> p = s.populations();
  if (p.empty()) throw PreconditionError("fit_chi_profile: empty register");
  ChiFit fit;
  const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
  fit.p_min = *lo;
  fit.p_max = *hi;
  const double f = m.r / q.E_J;
  fit.profile.chi0 = chi_static(fit.p_min, q, m);
  fit.profile.chi_tilde = 0.5 * f * (q.d11 - q.d00) * (fit.p_max - fit.p_min);
  fit.profile.L_m = static_cast<double>(p.size());
  if (fit.p_max - fit.p_min > 1e-9) {
    fit.period = modulation_period(p);
    fit.profile.L_m = fit.period.period;
    fit.periodic = true;
  }
  double coh = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) coh += std::abs(std::conj(s.c0[j]) * s.c1[j]);
  fit.neglected_term = 2.0 * f * q.d01 * coh / p.size();
  return fit;
}

Transmission transmission(const SimState& initial, const SimState& final,
                          const LatticeLayout& layout, const MediumParams& m) {
  auto partition = [&](const SimState& s) {
    const std::vector<double> e = field_energy_density(s, layout, m);
    double left = 0.0, mid = 0.0, right = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i < layout.active_start) left += e[i];
      else if (i < layout.active_end) mid += e[i];
      else right += e[i];
    }
    return std::array<double, 3>{left, mid, right};
  };
  const auto e0 = partition(initial);
  Transmission out;
  out.initial_energy = e0[0] + e0[1] + e0[2];
  if (!(out.initial_energy > 0.0)) throw PreconditionError("transmission: initial field is empty");
  const double outside = (e0[1] + e0[2]) / out.initial_energy;
  if (outside > 1e-6) {
    std::ostringstream msg;
    msg << "transmission: initial pulse not left of the active region (fraction " << outside << ")";
    throw PreconditionError(msg.str());
  }
  const auto e1 = partition(final);
  out.active_fraction = e1[1] / out.initial_energy;
  if (out.active_fraction >= 0.01) {
    std::ostringstream msg;
    msg << "transmission: active region still holds energy fraction " << out.active_fraction;
    throw PreconditionError(msg.str());
  }
  out.T = e1[2] / out.initial_energy;
  out.R = e1[0] / out.initial_energy;
  out.loss = 1.0 - out.T - out.R;
  return out;
}

}  // namespace qmeta
