#pragma once
// Domain types. Units: hbar = epsilon = L0 = 1 unless a field says otherwise.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace qmeta {

using cplx = std::complex<double>;

struct QubitParams {
  double epsilon = 1.0;
  double E_J = 2.0;
  double d00 = 0.4;
  double d11 = 3.6;
  double d01 = 0.2;

  void validate() const;
};

struct MediumParams {
  double v_tilde = 1.99;
  double u_tilde = 1.99;
  double r = 0.25;

  void validate() const;
  bool matched() const { return u_tilde == v_tilde; }
};

// SI inputs; converted to Gaussian units internally.
struct PhysicalParams {
  double L0 = 5e-4;         // m
  double D = 1e-5;          // m
  double W = 1e-5;          // m
  double I_c = 4e-7;        // A
  double C_junction = 0.0;  // F, optional (0 = unknown)

  void validate() const;
};

struct DerivedMedium {
  MediumParams medium;
  double bracket = 0.0;        // Phi0^2 L0 W omega_J^2 / (32 pi^3 c^2 D E_J)
  double omega_J = 0.0;        // rad/s
  double epsilon = 0.0;        // rad/s
  double E_J_erg = 0.0;
  double v_over_c = 0.0;
  double C_tilde_cm = 0.0;     // matched passive capacitance, Gaussian
  double C_tilde_farad = 0.0;
  double omega_J_from_capacitance = 0.0;  // rad/s, 0 when C_junction is unset
};

// epsilon in rad/s; when absent it comes from the charge-qubit spectrum at
// gate offset 0.25.
DerivedMedium derive_medium(const PhysicalParams& phys, double EJ_over_hbar_omegaJ,
                            std::optional<double> epsilon = std::nullopt);

struct LatticeLayout {
  std::size_t n_total = 2048;
  std::size_t active_start = 768;
  std::size_t active_end = 1280;

  static LatticeLayout centered(std::size_t n_total, std::size_t n_active);
  static LatticeLayout padded(std::size_t pad_left, std::size_t n_active, std::size_t pad_right);

  void validate() const;
  std::size_t active_count() const { return active_end - active_start; }
  bool is_active(std::size_t n) const { return n >= active_start && n < active_end; }
  double center() const { return 0.5 * static_cast<double>(active_start + active_end - 1); }
};

struct SimState {
  double t = 0.0;
  std::vector<double> a;
  std::vector<double> a_dot;
  std::vector<cplx> c0;
  std::vector<cplx> c1;

  // zero field, every qubit in |0>
  static SimState ground(const LatticeLayout& layout);

  void check_consistent(const LatticeLayout& layout) const;
  std::vector<double> populations() const;  // |c1|^2 per active site
  double max_norm_deviation() const;
};

// (r/E_J)[d00|c0|^2 + d11|c1|^2 + 2 Re(d01 conj(c0) c1 e^{-i eps t})]
double chi_expectation(cplx c0, cplx c1, double t, const QubitParams& q, const MediumParams& m);

// Same without the norm check or the oscillating cross term.
double chi_static(double p1, const QubitParams& q, const MediumParams& m);

}  // namespace qmeta
