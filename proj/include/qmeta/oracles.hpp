#pragma once
// Independent predictions used to validate the simulator.

#include <string>
#include <vector>

#include "qmeta/model.hpp"

namespace qmeta {

// chi(z) = chi0 + chi_tilde (1 + cos(2 pi z / L_m))
struct ChiProfile {
  double chi0 = 0.05;
  double chi_tilde = 0.02;
  double L_m = 12.5;

  void validate() const;
  double at(double z) const;
};

// |c1(z,t)| for a qubit starting in |0> under two counter-propagating
// quasi-monochromatic waves of amplitude A.
double rabi_profile(double z, double t, double A, double k, double phi0, double delta,
                    const QubitParams& q);

struct BranchPair {
  double omega_minus;
  double omega_plus;
  int resonance;  // n if k = pi n / L_m, else 0
};

BranchPair dispersion_perturbative(double k, const ChiProfile& chi, const MediumParams& m);

struct GapEstimate {
  double primary = 0.0;
  std::string primary_form;  // "half" or "full"
  double half = 0.0;         // W_kn / omega_n with W_k1 = chi_tilde / 2
  double full = 0.0;         // chi_tilde / omega_1 (numerator not halved)
  double validity_ratio = 0.0;  // omega_n^2 / |W_kn|, inf when W_kn = 0
  double center = 0.0;          // omega_n = sqrt((pi v n / L_m)^2 + W_0)
};

GapEstimate gap_width(int n, const ChiProfile& chi, const MediumParams& m);

struct BandSample {
  double k;
  std::vector<double> omegas;  // ascending
};

struct BandGap {
  int n;
  double k;  // pi/L_m for odd n, 0 for even n
  double lower;
  double upper;
  double center;
  double width;
};

struct BandStructure {
  std::vector<BandSample> samples;
  std::vector<BandGap> gaps;
};

// Plane-wave (Hill matrix) Bloch solver with harmonics |m| <= M. k values are
// folded into the first Brillouin zone. Reports gaps 1..n_gaps.
BandStructure bloch_bands(const std::vector<double>& k_list, const ChiProfile& chi,
                          const MediumParams& m, int M, int n_gaps = 4);

struct QubitSpectrum {
  double epsilon = 0.0;  // (E1 - E0) / (hbar omega_J)
  double d00 = 0.0;      // E_J <a|cos phi|b>, in hbar epsilon
  double d01 = 0.0;
  double d11 = 0.0;
  std::vector<double> levels;  // ascending, hbar omega_J
  double edge_weight = 0.0;    // ground-state weight on |m| = M
};

// Charge basis |m| <= M, H = (m - n_g)^2 / R on the diagonal and -R between
// neighbours, R = E_J / (hbar omega_J).
QubitSpectrum qubit_spectrum(double EJ_over_hbar_omegaJ, double n_g, int M);

}  // namespace qmeta
