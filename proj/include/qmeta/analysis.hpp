#pragma once

#include <vector>

#include "qmeta/model.hpp"
#include "qmeta/oracles.hpp"

namespace qmeta {

struct PeriodEstimate {
  double period = 0.0;       // mean peak spacing
  double uncertainty = 0.0;  // sample std of the spacings
  std::vector<double> peaks;
  double spectral_period = 0.0;  // DFT cross-check, 0 when undefined
};

// Local maxima above half the global maximum, refined with a parabola through
// the three neighbouring samples. Needs at least 4 maxima.
PeriodEstimate modulation_period(const std::vector<double>& p1);

// Period of the strongest DFT component with period in [2, n/4].
double spectral_period(const std::vector<double>& p1);

struct ChiFit {
  ChiProfile profile;
  double p_min = 0.0;
  double p_max = 0.0;
  bool periodic = false;  // false: uniform register, L_m set to the active length
  PeriodEstimate period;
  double neglected_term = 0.0;  // 2 (r/E_J) d01 mean|conj(c0) c1|
};

ChiFit fit_chi_profile(const SimState& s, const QubitParams& q, const MediumParams& m);

struct Transmission {
  double T = 0.0;
  double R = 0.0;
  double loss = 0.0;
  double active_fraction = 0.0;  // energy left in the active region / initial
  double initial_energy = 0.0;
};

// Energy partition. Requires the initial field to sit left of the active region
// and the final active-region field energy to be below 1% of the initial one.
Transmission transmission(const SimState& initial, const SimState& final,
                          const LatticeLayout& layout, const MediumParams& m);

}  // namespace qmeta
