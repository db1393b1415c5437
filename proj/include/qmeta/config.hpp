#pragma once
// INI-style scenario configuration. Every key has a default; unknown sections
// or keys are rejected.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qmeta/dynamics.hpp"
#include "qmeta/model.hpp"

namespace qmeta {

struct LatticeConfig {
  std::size_t n_total = 2048;
  std::size_t n_active = 512;
};

struct PulsesConfig {
  double A = 0.18;
  double l = 240.0;
  double k = 0.25132741228718345;
  double omega = 0.0;  // 0: v_tilde * k
  double phi0 = 0.0;
  double offset = 300.0;  // distance of each center from the active region
};

struct RunConfig {
  double dt = 0.05;
  double t_end = 0.0;  // 0: until both pulses have left the active region
  double snapshot_interval = 50.0;
  Scheme scheme = Scheme::split4;
  std::string isa = "auto";
};

struct ProbeConfig {
  double A = 2e-3;
  double l = 240.0;
  std::vector<double> omegas{0.5, 0.6};
  QubitMode mode = QubitMode::frozen;
  std::string state;        // primed register CSV; empty: synthetic cos^2 register
  double chi_tilde = 0.02;  // synthetic register
  double L_m = 0.0;         // synthetic register; 0: Bragg-matched to omega = epsilon/2
  std::size_t n_active = 512;
  std::size_t pad_left = 2000;
  std::size_t pad_right = 1600;
  double snapshot_time = 500.0;
  double t_max = 4000.0;
  double dt = 0.05;
};

struct BandsConfig {
  double chi0 = 0.05;
  double chi_tilde = 0.02;
  double L_m = 12.5;
  std::string state;  // if set, the profile is fitted from this register
  int M = 16;
  std::size_t k_samples = 101;
};

struct RabiConfig {
  double A = 0.05;
  double omega = 0.0;  // 0: carrier from pulses.k
  double r = 0.0;
  std::size_t n_active = 510;  // adjusted to fit rabi.omega when that is set
  double l = 20000.0;
  double periods = 3.0;
  std::size_t samples = 10;
  std::size_t central = 200;
  double dt = 0.1;
};

struct SpectrumConfig {
  double ratio = 4.0;
  double n_g = 0.25;
  int M = 40;
};

struct SweepConfig {
  std::string scenario = "prime";
  std::string parameter;  // "section.key"
  std::vector<std::string> values;
  std::size_t threads = 0;  // 0: hardware concurrency
};

struct Config {
  LatticeConfig lattice;
  MediumParams medium;
  QubitParams qubit;
  PulsesConfig pulses;
  RunConfig run;
  ProbeConfig probe;
  BandsConfig bands;
  RabiConfig rabi;
  SpectrumConfig spectrum;
  SweepConfig sweep;

  void validate() const;
};

Config load_config(const std::string& path);
Config parse_config(const std::string& text);

// "section.key" = value; throws ConfigError naming the field.
void set_value(Config& cfg, const std::string& dotted, const std::string& value);

// Every key with its current value, in a fixed order.
std::vector<std::pair<std::string, std::string>> echo(const Config& cfg);

}  // namespace qmeta
