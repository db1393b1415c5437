#pragma once
// The canonical experiments. Each compute_* function is pure (no files);
// run_* additionally writes its artifacts into out_dir and returns the summary.

#include <optional>
#include <string>
#include <vector>

#include "qmeta/analysis.hpp"
#include "qmeta/config.hpp"
#include "qmeta/dynamics.hpp"
#include "qmeta/io.hpp"
#include "qmeta/oracles.hpp"
#include "qmeta/pulses.hpp"

namespace qmeta {

const kernels::KernelTable& kernels_by_name(const std::string& isa);

struct SiteClassStats {
  std::size_t nodes = 0;
  std::size_t antinodes = 0;
  double node_max = 0.0;      // max |c1| over node sites
  double antinode_mean = 0.0;  // mean |c1| over antinode sites
};

// Nodes: cos(phase) <= -0.98, antinodes: cos(phase) >= 0.98, where phase is
// 2 k_eff (z - zc) + 2 k zc + phi0 over active lattice sites z.
SiteClassStats classify_sites(const SimState& s, const LatticeLayout& layout, double k,
                              double k_eff, double phi0);

struct Snapshot {
  double t;
  std::vector<double> a;
  std::vector<double> p1;
};

struct PrimeOutcome {
  LatticeLayout layout;
  PulseSpec right;
  PulseSpec left;
  double t_end = 0.0;
  double k_medium = 0.0;  // sqrt(omega^2 - chi0) / v_tilde
  SimState final_state;
  std::vector<Snapshot> snapshots;
  std::optional<PeriodEstimate> period;
  std::optional<ChiFit> fit;
  std::string period_error;
  SiteClassStats nodes_lattice;  // phase from the carrier k
  SiteClassStats nodes_medium;   // phase from k_medium away from the center
  double norm_deviation = 0.0;
  double max_p1 = 0.0;
  std::vector<ValidityWarning> warnings;
  double seconds = 0.0;
  std::string isa;
};

PrimeOutcome compute_prime(const Config& cfg);
nlohmann::json summarize(const PrimeOutcome& o);
nlohmann::json run_prime(const Config& cfg, const std::string& out_dir);

struct ProbeRun {
  double omega = 0.0;
  double k = 0.0;
  Transmission tr;
  double t_final = 0.0;
  std::vector<Snapshot> snapshots;
};

struct ProbeOutcome {
  LatticeLayout layout;
  Register reg;
  ChiProfile nominal;  // profile the register was built for (synthetic) or fitted
  bool synthetic = false;
  QubitMode mode = QubitMode::frozen;
  std::vector<ProbeRun> runs;
};

// Synthetic register with |c1|^2 = p_max cos^2(pi (j - jc) / L_m), p_max chosen
// so that the static susceptibility has modulation chi_tilde.
Register synthetic_register(std::size_t n, double chi_tilde, double L_m, const QubitParams& q,
                            const MediumParams& m);

// Modulation period that centres the first gap on omega for the given profile.
double bragg_period(double omega, double chi0, double chi_tilde, double v_tilde);

ProbeOutcome compute_probe(const Config& cfg);
nlohmann::json summarize(const ProbeOutcome& o);
nlohmann::json run_probe(const Config& cfg, const std::string& out_dir);

struct BandsOutcome {
  ChiProfile chi;
  std::vector<double> k;
  BandStructure bands;
  std::vector<BranchPair> perturbative;
  std::vector<GapEstimate> estimates;  // per Hill gap
  std::string resolved_form;           // form closest to the Hill gap 1
};

BandsOutcome compute_bands(const Config& cfg);
nlohmann::json summarize(const BandsOutcome& o);
nlohmann::json run_bands(const Config& cfg, const std::string& out_dir);

struct RabiSample {
  double t;
  double max_error;
  std::vector<double> sim;     // |c1| over the central sites
  std::vector<double> oracle;
};

struct RabiOutcome {
  LatticeLayout layout;
  double k = 0.0;
  double omega = 0.0;
  double phi0 = 0.0;
  double delta = 0.0;
  double rabi_period = 0.0;
  std::vector<std::size_t> sites;  // lattice indices of the central sites
  std::vector<RabiSample> samples;
  double max_error = 0.0;
  double node_max = 0.0;  // max |c1| at central sites with cos(2kz+phi0) <= -0.98
};

RabiOutcome compute_rabi_check(const Config& cfg);
nlohmann::json summarize(const RabiOutcome& o);
nlohmann::json run_rabi_check(const Config& cfg, const std::string& out_dir);

struct SpectrumOutcome {
  QubitSpectrum spectrum;
  QubitSpectrum doubled;  // same with 2M
  double epsilon_change = 0.0;
  double d01_at_zero_offset = 0.0;
};

SpectrumOutcome compute_qubit_spectrum(const Config& cfg);
nlohmann::json summarize(const SpectrumOutcome& o);
nlohmann::json run_qubit_spectrum(const Config& cfg, const std::string& out_dir);

// Runs sweep.scenario once per sweep.values entry, concurrently; results are
// merged in input order.
nlohmann::json run_sweep(const Config& cfg, const std::string& out_dir);

}  // namespace qmeta
