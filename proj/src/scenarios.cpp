#include "qmeta/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "qmeta/error.hpp"
#include "qmeta/kernels/dispatch.hpp"

namespace qmeta {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

Metadata meta_for(const Config& cfg, const std::string& scenario) {
  Metadata m{{"scenario", scenario}};
  for (auto& kv : echo(cfg)) m.push_back(kv);
  return m;
}

std::string join(const std::string& dir, const std::string& file) {
  return dir.empty() ? file : dir + "/" + file;
}

Snapshot take(const SimState& s) { return {s.t, s.a, s.populations()}; }

json stats_json(const SiteClassStats& s) {
  return {{"nodes", s.nodes},
          {"antinodes", s.antinodes},
          {"node_max_abs_c1", s.node_max},
          {"antinode_mean_abs_c1", s.antinode_mean}};
}

json profile_json(const ChiProfile& c) {
  return {{"chi0", c.chi0}, {"chi_tilde", c.chi_tilde}, {"L_m", c.L_m}};
}

SimState with_register(const LatticeLayout& layout, const Register& reg) {
  SimState s = SimState::ground(layout);
  s.c0 = reg.c0;
  s.c1 = reg.c1;
  s.check_consistent(layout);
  return s;
}

}  // namespace

const kernels::KernelTable& kernels_by_name(const std::string& isa) {
  if (isa == "auto" || isa.empty()) return kernels::active_kernels();
  for (auto which : {kernels::Isa::scalar, kernels::Isa::avx2, kernels::Isa::neon}) {
    if (isa == kernels::to_string(which)) {
      if (const auto* t = kernels::kernels_for(which)) return *t;
      throw ConfigError("run.isa=" + isa + " is not available on this machine");
    }
  }
  throw ConfigError("run.isa must be auto|scalar|avx2|neon");
}

SiteClassStats classify_sites(const SimState& s, const LatticeLayout& layout, double k,
                              double k_eff, double phi0) {
  SiteClassStats out;
  const double zc = layout.center();
  double sum = 0.0;
  for (std::size_t j = 0; j < layout.active_count(); ++j) {
    const double z = static_cast<double>(layout.active_start + j);
    const double c = std::cos(2.0 * k_eff * (z - zc) + 2.0 * k * zc + phi0);
    const double amp = std::abs(s.c1[j]);
    if (c <= -0.98) {
      ++out.nodes;
      out.node_max = std::max(out.node_max, amp);
    } else if (c >= 0.98) {
      ++out.antinodes;
      sum += amp;
    }
  }
  out.antinode_mean = out.antinodes ? sum / out.antinodes : 0.0;
  return out;
}

// ---------------------------------------------------------------- prime

PrimeOutcome compute_prime(const Config& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  PrimeOutcome o;
  o.layout = LatticeLayout::centered(cfg.lattice.n_total, cfg.lattice.n_active);
  const double omega = cfg.pulses.omega > 0.0 ? cfg.pulses.omega : cfg.medium.v_tilde * cfg.pulses.k;

  o.right = PulseSpec{cfg.pulses.A, cfg.pulses.k, omega, cfg.pulses.l,
                      static_cast<double>(o.layout.active_start) - cfg.pulses.offset, 0.0,
                      Direction::right};
  o.left = PulseSpec{cfg.pulses.A, cfg.pulses.k, omega, cfg.pulses.l,
                     static_cast<double>(o.layout.active_end - 1) + cfg.pulses.offset,
                     cfg.pulses.phi0, Direction::left};
  o.warnings = check_validity(o.right, o.layout, cfg.medium, cfg.qubit);

  SimState s = SimState::ground(o.layout);
  s = add_pulse(std::move(s), o.right, o.layout);
  s = add_pulse(std::move(s), o.left, o.layout);

  const double speed = omega / cfg.pulses.k;
  o.t_end = cfg.run.t_end > 0.0
                ? cfg.run.t_end
                : (static_cast<double>(o.layout.active_end - 1) - o.right.z0 + 3.0 * cfg.pulses.l) / speed;

  const kernels::KernelTable& kt = kernels_by_name(cfg.run.isa);
  o.isa = kt.name;
  const Simulator sim(o.layout, cfg.medium, cfg.qubit, cfg.run.dt,
                      {cfg.run.scheme, QubitMode::live, &kt});
  const std::size_t stride =
      cfg.run.snapshot_interval > 0.0
          ? std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(cfg.run.snapshot_interval / cfg.run.dt)))
          : 0;
  o.final_state = sim.run(std::move(s), o.t_end, [&](const SimState& st) { o.snapshots.push_back(take(st)); },
                          stride);

  const std::vector<double> p = o.final_state.populations();
  o.max_p1 = *std::max_element(p.begin(), p.end());
  o.norm_deviation = o.final_state.max_norm_deviation();
  try {
    o.period = modulation_period(p);
    o.fit = fit_chi_profile(o.final_state, cfg.qubit, cfg.medium);
  } catch (const InsufficientPeriodicity& e) {
    o.period_error = e.what();
  }

  const double chi0 = chi_static(0.0, cfg.qubit, cfg.medium);
  o.k_medium = omega * omega > chi0 ? std::sqrt(omega * omega - chi0) / cfg.medium.v_tilde : 0.0;
  o.nodes_lattice = classify_sites(o.final_state, o.layout, cfg.pulses.k, cfg.pulses.k, cfg.pulses.phi0);
  o.nodes_medium = classify_sites(o.final_state, o.layout, cfg.pulses.k, o.k_medium, cfg.pulses.phi0);
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return o;
}

json summarize(const PrimeOutcome& o) {
  json j;
  j["scenario"] = "prime";
  j["isa"] = o.isa;
  j["t_end"] = o.t_end;
  j["omega"] = o.right.omega;
  j["runtime_s"] = o.seconds;
  j["target_period"] = kPi / o.right.k;
  j["medium_period"] = o.k_medium > 0.0 ? kPi / o.k_medium : 0.0;
  j["norm_deviation"] = o.norm_deviation;
  j["max_p1"] = o.max_p1;
  if (o.period) {
    j["period"] = {{"value", o.period->period},
                   {"uncertainty", o.period->uncertainty},
                   {"spectral", o.period->spectral_period},
                   {"maxima", o.period->peaks.size()}};
  } else {
    j["period"] = nullptr;
    j["period_error"] = o.period_error;
  }
  if (o.fit) {
    j["chi_fit"] = profile_json(o.fit->profile);
    j["chi_fit"]["p_min"] = o.fit->p_min;
    j["chi_fit"]["p_max"] = o.fit->p_max;
    j["chi_fit"]["neglected_term"] = o.fit->neglected_term;
  } else {
    j["chi_fit"] = nullptr;
  }
  j["sites"] = {{"carrier_phase", stats_json(o.nodes_lattice)},
                {"medium_phase", stats_json(o.nodes_medium)}};
  json w = json::array();
  for (const auto& x : o.warnings) w.push_back({{"condition", x.condition}, {"ratio", x.ratio}, {"message", x.message}});
  j["warnings"] = w;
  return j;
}

json run_prime(const Config& cfg, const std::string& out_dir) {
  const PrimeOutcome o = compute_prime(cfg);
  ensure_dir(out_dir);
  const Metadata meta = meta_for(cfg, "prime");

  std::vector<std::vector<double>> rows;
  const std::vector<double> p = o.final_state.populations();
  for (std::size_t j = 0; j < p.size(); ++j)
    rows.push_back({static_cast<double>(o.layout.active_start + j), static_cast<double>(j), p[j],
                    std::sqrt(p[j])});
  write_csv(join(out_dir, "prime_populations.csv"), meta, {"n", "j", "p1", "abs_c1"}, rows);

  rows.clear();
  for (const Snapshot& snap : o.snapshots) {
    for (std::size_t n = 0; n < snap.a.size(); ++n) {
      const double p1 = o.layout.is_active(n) ? snap.p1[n - o.layout.active_start] : 0.0;
      rows.push_back({snap.t, static_cast<double>(n), snap.a[n], p1});
    }
  }
  write_csv(join(out_dir, "prime_snapshots.csv"), meta, {"t", "n", "a", "p1"}, rows);
  write_state(join(out_dir, "prime_state.csv"), o.final_state, meta);

  json j = summarize(o);
  write_json(join(out_dir, "prime_summary.json"), j);
  return j;
}

// ---------------------------------------------------------------- probe

Register synthetic_register(std::size_t n, double chi_tilde, double L_m, const QubitParams& q,
                            const MediumParams& m) {
  const double span = (m.r / q.E_J) * (q.d11 - q.d00);
  if (chi_tilde > 0.0 && !(span > 0.0))
    throw PreconditionError("synthetic register needs r > 0 and d11 > d00");
  const double p_max = chi_tilde > 0.0 ? 2.0 * chi_tilde / span : 0.0;
  if (p_max > 1.0) throw PreconditionError("synthetic register: chi_tilde too large for the medium");
  if (!(L_m > 0.0)) throw PreconditionError("synthetic register: L_m must be > 0");
  Register reg;
  const double jc = 0.5 * static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    const double c = std::cos(kPi * (static_cast<double>(j) - jc) / L_m);
    const double p = p_max * c * c;
    reg.c0.emplace_back(std::sqrt(1.0 - p), 0.0);
    reg.c1.emplace_back(std::sqrt(p), 0.0);
  }
  return reg;
}

double bragg_period(double omega, double chi0, double chi_tilde, double v_tilde) {
  const double w0 = chi0 + chi_tilde;
  if (!(omega * omega > w0)) throw PreconditionError("bragg_period: omega below the band bottom");
  return kPi * v_tilde / std::sqrt(omega * omega - w0);
}

ProbeOutcome compute_probe(const Config& cfg) {
  cfg.validate();
  const ProbeConfig& pc = cfg.probe;
  ProbeOutcome o;
  o.mode = pc.mode;
  if (!pc.state.empty()) {
    o.reg = read_state(pc.state);
    SimState tmp;
    tmp.c0 = o.reg.c0;
    tmp.c1 = o.reg.c1;
    try {
      o.nominal = fit_chi_profile(tmp, cfg.qubit, cfg.medium).profile;
    } catch (const InsufficientPeriodicity&) {
      o.nominal = ChiProfile{chi_static(0.0, cfg.qubit, cfg.medium), 0.0, 0.0};
    }
  } else {
    o.synthetic = true;
    o.nominal.chi0 = chi_static(0.0, cfg.qubit, cfg.medium);
    o.nominal.chi_tilde = pc.chi_tilde;
    o.nominal.L_m = pc.L_m > 0.0 ? pc.L_m
                                 : bragg_period(0.5 * cfg.qubit.epsilon, o.nominal.chi0, pc.chi_tilde,
                                                cfg.medium.v_tilde);
    o.reg = synthetic_register(pc.n_active, pc.chi_tilde, o.nominal.L_m, cfg.qubit, cfg.medium);
  }
  o.layout = LatticeLayout::padded(pc.pad_left, o.reg.c0.size(), pc.pad_right);

  const kernels::KernelTable& kt = kernels_by_name(cfg.run.isa);
  const Simulator sim(o.layout, cfg.medium, cfg.qubit, pc.dt, {cfg.run.scheme, pc.mode, &kt});
  const double u = cfg.medium.u_tilde;

  for (double omega : pc.omegas) {
    if (!(omega < 2.0 * u)) throw PreconditionError("probe omega above the lattice cutoff 2u");
    ProbeRun run;
    run.omega = omega;
    run.k = 2.0 * std::asin(omega / (2.0 * u));
    const double z0 = static_cast<double>(o.layout.active_start) - 3.0 * pc.l;
    if (z0 < 0.0) throw PreconditionError("probe.pad_left too small for a probe of width probe.l");
    const PulseSpec spec{pc.A, run.k, omega, pc.l, z0, 0.0, Direction::right};

    SimState s = add_pulse(with_register(o.layout, o.reg), spec, o.layout);
    const SimState initial = s;
    const std::vector<double> e0 = field_energy_density(initial, o.layout, cfg.medium);
    double total0 = 0.0;
    for (double x : e0) total0 += x;
    auto active_fraction = [&](const SimState& st) {
      const std::vector<double> e = field_energy_density(st, o.layout, cfg.medium);
      double mid = 0.0;
      for (std::size_t i = o.layout.active_start; i < o.layout.active_end; ++i) mid += e[i];
      return mid / total0;
    };

    run.snapshots.push_back(take(s));
    const double t_min = (static_cast<double>(o.layout.active_end) - z0) / u;
    bool snap_done = pc.snapshot_time <= 0.0;
    double t = 0.0;
    for (;;) {
      double next = t + 50.0;
      if (!snap_done && pc.snapshot_time <= next) next = pc.snapshot_time;
      s = sim.run(std::move(s), next);
      t = next;
      if (!snap_done && t >= pc.snapshot_time) {
        run.snapshots.push_back(take(s));
        snap_done = true;
      }
      if (snap_done && t >= t_min && active_fraction(s) < 1e-3) break;
      if (t >= pc.t_max) {
        std::ostringstream msg;
        msg << "probe: active region still holds energy fraction " << active_fraction(s)
            << " at t=" << t << " (probe.t_max)";
        throw PreconditionError(msg.str());
      }
    }
    run.t_final = t;
    run.tr = transmission(initial, s, o.layout, cfg.medium);
    run.snapshots.push_back(take(s));
    o.runs.push_back(std::move(run));
  }
  return o;
}

json summarize(const ProbeOutcome& o) {
  json j;
  j["scenario"] = "probe";
  j["mode"] = o.mode == QubitMode::frozen ? "frozen" : "live";
  j["register"] = o.synthetic ? "synthetic" : "file";
  j["profile"] = profile_json(o.nominal);
  json runs = json::array();
  for (const ProbeRun& r : o.runs) {
    runs.push_back({{"omega", r.omega},
                    {"k", r.k},
                    {"T", r.tr.T},
                    {"R", r.tr.R},
                    {"loss", r.tr.loss},
                    {"active_fraction", r.tr.active_fraction},
                    {"t_final", r.t_final}});
  }
  j["runs"] = runs;
  if (o.runs.size() >= 2 && o.runs.front().tr.T > 0.0) {
    j["T_ratio"] = {{"numerator_omega", o.runs.back().omega},
                    {"denominator_omega", o.runs.front().omega},
                    {"value", o.runs.back().tr.T / o.runs.front().tr.T}};
  }
  return j;
}

json run_probe(const Config& cfg, const std::string& out_dir) {
  const ProbeOutcome o = compute_probe(cfg);
  ensure_dir(out_dir);
  const Metadata meta = meta_for(cfg, "probe");
  std::vector<std::vector<double>> rows;
  for (const ProbeRun& r : o.runs)
    for (const Snapshot& snap : r.snapshots)
      for (std::size_t n = 0; n < snap.a.size(); ++n)
        rows.push_back({r.omega, snap.t, static_cast<double>(n), snap.a[n]});
  write_csv(join(out_dir, "probe_snapshots.csv"), meta, {"omega", "t", "n", "a"}, rows);
  json j = summarize(o);
  write_json(join(out_dir, "probe_summary.json"), j);
  return j;
}

// ---------------------------------------------------------------- bands

BandsOutcome compute_bands(const Config& cfg) {
  cfg.validate();
  BandsOutcome o;
  if (!cfg.bands.state.empty()) {
    const Register reg = read_state(cfg.bands.state);
    SimState tmp;
    tmp.c0 = reg.c0;
    tmp.c1 = reg.c1;
    o.chi = fit_chi_profile(tmp, cfg.qubit, cfg.medium).profile;
  } else {
    o.chi = ChiProfile{cfg.bands.chi0, cfg.bands.chi_tilde, cfg.bands.L_m};
  }
  o.chi.validate();
  const std::size_t K = cfg.bands.k_samples;
  const double kmax = 2.0 * kPi / o.chi.L_m;
  for (std::size_t i = 0; i < K; ++i) o.k.push_back(kmax * static_cast<double>(i) / static_cast<double>(K - 1));
  o.bands = bloch_bands(o.k, o.chi, cfg.medium, cfg.bands.M, 4);
  for (double k : o.k) o.perturbative.push_back(dispersion_perturbative(k, o.chi, cfg.medium));
  for (const BandGap& g : o.bands.gaps) o.estimates.push_back(gap_width(g.n, o.chi, cfg.medium));

  o.resolved_form = "none";
  if (!o.bands.gaps.empty() && o.bands.gaps[0].width > 0.0) {
    const double hill = o.bands.gaps[0].width;
    const GapEstimate& e = o.estimates[0];
    o.resolved_form = std::abs(e.half - hill) <= std::abs(e.full - hill) ? "half" : "full";
  }
  return o;
}

json summarize(const BandsOutcome& o) {
  json j;
  j["scenario"] = "bands";
  j["profile"] = profile_json(o.chi);
  j["resolved_form"] = o.resolved_form;
  json gaps = json::array();
  for (std::size_t i = 0; i < o.bands.gaps.size(); ++i) {
    const BandGap& g = o.bands.gaps[i];
    const GapEstimate& e = o.estimates[i];
    const double primary = o.resolved_form == "full" ? e.full : e.half;
    gaps.push_back({{"n", g.n},
                    {"k", g.k},
                    {"lower", g.lower},
                    {"upper", g.upper},
                    {"center", g.center},
                    {"width", g.width},
                    {"perturbative_width", primary},
                    {"perturbative_alternative", o.resolved_form == "full" ? e.half : e.full},
                    {"perturbative_center", e.center},
                    {"validity_ratio", std::isfinite(e.validity_ratio) ? json(e.validity_ratio) : json(nullptr)}});
  }
  j["gaps"] = gaps;
  return j;
}

json run_bands(const Config& cfg, const std::string& out_dir) {
  const BandsOutcome o = compute_bands(cfg);
  ensure_dir(out_dir);
  const Metadata meta = meta_for(cfg, "bands");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < o.k.size(); ++i) {
    const auto& w = o.bands.samples[i].omegas;
    rows.push_back({o.k[i], w[0], w[1], w[2], w[3], o.perturbative[i].omega_minus,
                    o.perturbative[i].omega_plus});
  }
  write_csv(join(out_dir, "bands.csv"), meta,
            {"k", "band0", "band1", "band2", "band3", "omega_minus", "omega_plus"}, rows);
  json j = summarize(o);
  write_json(join(out_dir, "bands_summary.json"), j);
  return j;
}

// ---------------------------------------------------------------- rabi

RabiOutcome compute_rabi_check(const Config& cfg) {
  cfg.validate();
  const RabiConfig& rc = cfg.rabi;
  RabiOutcome o;
  MediumParams med = cfg.medium;
  med.r = rc.r;
  const double chi0 = chi_static(0.0, cfg.qubit, med);
  // standing wave with nodes on the two fixed ends (z = -1 and z = N), k = pi m / (N + 1)
  double k_target = cfg.pulses.k;
  std::size_t n_active = rc.n_active;
  if (rc.omega > 0.0) {
    const double s_target = std::sqrt(std::max(0.0, rc.omega * rc.omega - chi0)) / (2.0 * med.v_tilde);
    if (!(s_target > 0.0 && s_target < 1.0))
      throw PreconditionError("rabi-check: rabi.omega outside the lattice pass band");
    k_target = 2.0 * std::asin(s_target);
    // lattice length near rabi.n_active whose mode comes closest to the target
    double best = 1e300;
    for (std::size_t na = rc.n_active - rc.n_active / 8; na <= rc.n_active + rc.n_active / 8; ++na) {
      const double N1 = static_cast<double>(na + 3);
      const double miss = std::abs(kPi * std::max(1.0, std::round(k_target * N1 / kPi)) / N1 - k_target);
      if (miss < best - 1e-15) {
        best = miss;
        n_active = na;
      }
    }
  }
  o.layout = LatticeLayout::padded(1, n_active, 1);
  const double N = static_cast<double>(o.layout.n_total);
  const double m = std::max(1.0, std::round(k_target * (N + 1.0) / kPi));
  o.k = kPi * m / (N + 1.0);
  o.phi0 = 2.0 * (0.5 * kPi + o.k);

  const double sk = std::sin(0.5 * o.k);
  o.omega = std::sqrt(4.0 * med.v_tilde * med.v_tilde * sk * sk + chi0);
  o.delta = 2.0 * o.omega - cfg.qubit.epsilon;
  const double rabi_rate = 4.0 * cfg.qubit.d01 * rc.A * rc.A;
  if (!(rabi_rate > 0.0)) throw PreconditionError("rabi-check needs rabi.A > 0 and qubit.d01 > 0");
  o.rabi_period = 2.0 * kPi / rabi_rate;

  const double zc = 0.5 * (N - 1.0);
  const PulseSpec right{rc.A, o.k, o.omega, rc.l, zc, 0.0, Direction::right};
  const PulseSpec left{rc.A, o.k, o.omega, rc.l, zc, o.phi0, Direction::left};
  SimState s = SimState::ground(o.layout);
  s = add_pulse(std::move(s), right, o.layout);
  s = add_pulse(std::move(s), left, o.layout);

  for (std::size_t j = 0; j < o.layout.active_count(); ++j) {
    const std::size_t z = o.layout.active_start + j;
    if (std::abs(static_cast<double>(z) - zc) <= 0.5 * static_cast<double>(rc.central)) o.sites.push_back(z);
  }

  const kernels::KernelTable& kt = kernels_by_name(cfg.run.isa);
  const Simulator sim(o.layout, med, cfg.qubit, rc.dt, {cfg.run.scheme, QubitMode::live, &kt});
  const double t_total = rc.periods * o.rabi_period;
  for (std::size_t i = 1; i <= rc.samples; ++i) {
    const double t = t_total * static_cast<double>(i) / static_cast<double>(rc.samples);
    s = sim.run(std::move(s), t);
    RabiSample sample{s.t, 0.0, {}, {}};
    for (std::size_t z : o.sites) {
      const double got = std::abs(s.c1[z - o.layout.active_start]);
      const double want = rabi_profile(static_cast<double>(z), s.t, rc.A, o.k, o.phi0, o.delta, cfg.qubit);
      sample.sim.push_back(got);
      sample.oracle.push_back(want);
      sample.max_error = std::max(sample.max_error, std::abs(got - want));
      if (std::cos(2.0 * o.k * static_cast<double>(z) + o.phi0) <= -0.98) o.node_max = std::max(o.node_max, got);
    }
    o.max_error = std::max(o.max_error, sample.max_error);
    o.samples.push_back(std::move(sample));
  }
  return o;
}

json summarize(const RabiOutcome& o) {
  json j;
  j["scenario"] = "rabi-check";
  j["n_active"] = o.layout.active_count();
  j["k"] = o.k;
  j["omega"] = o.omega;
  j["phi0"] = o.phi0;
  j["delta"] = o.delta;
  j["rabi_period"] = o.rabi_period;
  j["central_sites"] = o.sites.size();
  j["max_error"] = o.max_error;
  j["node_max_abs_c1"] = o.node_max;
  json samples = json::array();
  for (const RabiSample& s : o.samples) samples.push_back({{"t", s.t}, {"max_error", s.max_error}});
  j["samples"] = samples;
  return j;
}

json run_rabi_check(const Config& cfg, const std::string& out_dir) {
  const RabiOutcome o = compute_rabi_check(cfg);
  ensure_dir(out_dir);
  std::vector<std::vector<double>> rows;
  for (const RabiSample& s : o.samples)
    for (std::size_t i = 0; i < o.sites.size(); ++i)
      rows.push_back({s.t, static_cast<double>(o.sites[i]), s.sim[i], s.oracle[i]});
  write_csv(join(out_dir, "rabi_samples.csv"), meta_for(cfg, "rabi-check"),
            {"t", "n", "abs_c1", "oracle"}, rows);
  json j = summarize(o);
  write_json(join(out_dir, "rabi_summary.json"), j);
  return j;
}

// ---------------------------------------------------------------- qubit spectrum

SpectrumOutcome compute_qubit_spectrum(const Config& cfg) {
  cfg.validate();
  const SpectrumConfig& sc = cfg.spectrum;
  SpectrumOutcome o;
  o.spectrum = qubit_spectrum(sc.ratio, sc.n_g, sc.M);
  o.doubled = qubit_spectrum(sc.ratio, sc.n_g, 2 * sc.M);
  o.epsilon_change = std::abs(o.doubled.epsilon - o.spectrum.epsilon) / o.spectrum.epsilon;
  o.d01_at_zero_offset = qubit_spectrum(sc.ratio, 0.0, sc.M).d01;
  return o;
}

json summarize(const SpectrumOutcome& o) {
  json j;
  j["scenario"] = "qubit-spectrum";
  j["epsilon_over_omegaJ"] = o.spectrum.epsilon;
  j["d00"] = o.spectrum.d00;
  j["d01"] = o.spectrum.d01;
  j["d11"] = o.spectrum.d11;
  j["edge_weight"] = o.spectrum.edge_weight;
  j["epsilon_change_doubling_M"] = o.epsilon_change;
  j["d01_at_zero_offset"] = o.d01_at_zero_offset;
  std::vector<double> low(o.spectrum.levels.begin(),
                          o.spectrum.levels.begin() + std::min<std::size_t>(6, o.spectrum.levels.size()));
  j["levels"] = low;
  return j;
}

json run_qubit_spectrum(const Config& cfg, const std::string& out_dir) {
  const SpectrumOutcome o = compute_qubit_spectrum(cfg);
  ensure_dir(out_dir);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < o.spectrum.levels.size(); ++i)
    rows.push_back({static_cast<double>(i), o.spectrum.levels[i]});
  write_csv(join(out_dir, "qubit_levels.csv"), meta_for(cfg, "qubit-spectrum"), {"index", "energy"}, rows);
  json j = summarize(o);
  write_json(join(out_dir, "qubit_spectrum.json"), j);
  return j;
}

// ---------------------------------------------------------------- sweep

json run_sweep(const Config& cfg, const std::string& out_dir) {
  cfg.validate();
  const SweepConfig& sw = cfg.sweep;
  using Runner = json (*)(const Config&, const std::string&);
  Runner runner = nullptr;
  if (sw.scenario == "prime") runner = &run_prime;
  else if (sw.scenario == "probe") runner = &run_probe;
  else if (sw.scenario == "bands") runner = &run_bands;
  else if (sw.scenario == "rabi-check") runner = &run_rabi_check;
  else if (sw.scenario == "qubit-spectrum") runner = &run_qubit_spectrum;
  else throw ConfigError("sweep.scenario must be prime|probe|bands|rabi-check|qubit-spectrum");
  if (sw.parameter.empty() || sw.values.empty())
    throw ConfigError("sweep.parameter and sweep.values are required");

  std::vector<Config> jobs;
  for (const std::string& v : sw.values) {
    Config c = cfg;
    set_value(c, sw.parameter, v);
    c.validate();
    jobs.push_back(std::move(c));
  }
  ensure_dir(out_dir);

  std::vector<json> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      const std::string dir = join(out_dir, "run_" + std::to_string(i));
      try {
        results[i] = runner(jobs[i], dir);
      } catch (const std::exception& e) {
        results[i] = {{"error", e.what()}};
      }
    }
  };
  std::size_t n_threads = sw.threads ? sw.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, jobs.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  json j;
  j["scenario"] = "sweep";
  j["sweeps"] = sw.scenario;
  j["parameter"] = sw.parameter;
  json items = json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i)
    items.push_back({{"index", i}, {"value", sw.values[i]}, {"result", results[i]}});
  j["runs"] = items;
  write_json(join(out_dir, "sweep_summary.json"), j);
  return j;
}

}  // namespace qmeta
