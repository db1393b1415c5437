#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "qmeta/kernels/abi.hpp"
#include "qmeta/model.hpp"

namespace qmeta {

enum class Scheme {
  split4,      // 4th-order composition of exact field/qubit sub-flows (default)
  verlet_rk4,  // velocity Verlet for the field, RK4 for the amplitudes
};

enum class QubitMode {
  live,    // full coupling
  frozen,  // amplitudes held fixed, static chi from the populations
};

struct DynamicsOptions {
  Scheme scheme = Scheme::split4;
  QubitMode mode = QubitMode::live;
  const kernels::KernelTable* kernels = nullptr;  // nullptr: runtime-selected
};

// d^2 a / dt^2 per site, fixed ends.
std::vector<double> field_acceleration(const SimState& s, const LatticeLayout& layout,
                                       const MediumParams& m, const QubitParams& q);

// i dc/dt = a^2 D(t) c
std::pair<cplx, cplx> qubit_rhs(double a, cplx c0, cplx c1, double t, const QubitParams& q);

// 1/2 sum (v^2/c_n^2) a_dot^2 + 1/2 v^2 sum over bonds (a_{n+1}-a_n)^2
double total_field_energy(const SimState& s, const LatticeLayout& layout, const MediumParams& m);

// Per-site split of total_field_energy: each interior bond is shared equally by
// its two sites, the two end bonds belong to the end sites.
std::vector<double> field_energy_density(const SimState& s, const LatticeLayout& layout,
                                         const MediumParams& m);

using Recorder = std::function<void(const SimState&)>;

class Simulator {
 public:
  // Throws PreconditionError if dt > 0.5/max(v,u) or dt > 0.1/epsilon.
  Simulator(LatticeLayout layout, MediumParams m, QubitParams q, double dt,
            DynamicsOptions opts = {});

  double dt() const { return dt_; }
  const LatticeLayout& layout() const { return layout_; }
  const kernels::KernelTable& kernels() const { return *k_; }

  void step(SimState& s) const { step(s, dt_); }
  void step(SimState& s, double h) const;

  // Steps of dt up to t_end (a shorter last step if needed). The recorder sees
  // the initial state, every `stride`-th step and the final state.
  SimState run(SimState s, double t_end, const Recorder& rec = {}, std::size_t stride = 0) const;

 private:
  void drift(SimState& s, double h) const;
  void kick(SimState& s, double h, bool rotate_qubits) const;
  void compute_chi(const SimState& s, double t, double* chi) const;
  void step_split4(SimState& s, double h) const;
  void step_verlet_rk4(SimState& s, double h) const;

  LatticeLayout layout_;
  MediumParams m_;
  QubitParams q_;
  double dt_;
  DynamicsOptions opts_;
  const kernels::KernelTable* k_;
  std::vector<double> coef2_;
  double dbar_, norm_n_, e_unit_;

  mutable std::vector<double> chi_, sin_a_, cos_b_, sin_b_, ph_re_, ph_im_;
  mutable std::vector<double> a_old_;
};

}  // namespace qmeta
