// qmeta: scenario runner for the quantum metamaterial simulator.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "qmeta/config.hpp"
#include "qmeta/error.hpp"
#include "qmeta/scenarios.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kPrecondition = 3 };

struct Common {
  std::string config;
  std::string out = "out";
  std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "INI configuration file");
  sub->add_option("--out", c.out, "output directory")->capture_default_str();
  sub->add_option("--set", c.overrides, "override section.key=value (repeatable)");
}

qmeta::Config build_config(const Common& c) {
  qmeta::Config cfg = c.config.empty() ? qmeta::Config{} : qmeta::load_config(c.config);
  for (const std::string& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw qmeta::ConfigError("--set expects section.key=value, got '" + kv + "'");
    qmeta::set_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-domain simulator for a 1D quantum metamaterial of charge qubits"};
  app.require_subcommand(1);
  bool seedless = false;
  app.add_flag("--seedless", seedless, "accepted for compatibility; every run is deterministic");

  Common common;
  std::string mode, state;
  auto* prime = app.add_subcommand("prime", "two priming pulses write a periodic qubit pattern");
  auto* probe = app.add_subcommand("probe", "probe pulse through a primed or synthetic register");
  auto* bands = app.add_subcommand("bands", "Bloch bands and gaps of a periodic susceptibility");
  auto* rabi = app.add_subcommand("rabi-check", "simulated excitation profile vs the Rabi formula");
  auto* spectrum = app.add_subcommand("qubit-spectrum", "charge-qubit levels and matrix elements");
  auto* sweep = app.add_subcommand("sweep", "run one scenario over a list of parameter values");
  for (auto* sub : {prime, probe, bands, rabi, spectrum, sweep}) add_common(sub, common);
  probe->add_option("--mode", mode, "frozen|live")->check(CLI::IsMember({"frozen", "live"}));
  probe->add_option("--state", state, "primed register CSV (default: synthetic register)");
  bands->add_option("--state", state, "fit the profile from this register CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    qmeta::Config cfg = build_config(common);
    if (!mode.empty()) qmeta::set_value(cfg, "probe.mode", mode);
    if (!state.empty()) qmeta::set_value(cfg, probe->parsed() ? "probe.state" : "bands.state", state);

    nlohmann::json summary;
    int rc = kOk;
    if (prime->parsed()) {
      summary = qmeta::run_prime(cfg, common.out);
      if (summary["period"].is_null()) {
        std::cerr << "qmeta: " << summary["period_error"].get<std::string>() << '\n';
        rc = kPrecondition;
      }
    } else if (probe->parsed()) {
      summary = qmeta::run_probe(cfg, common.out);
    } else if (bands->parsed()) {
      summary = qmeta::run_bands(cfg, common.out);
    } else if (rabi->parsed()) {
      summary = qmeta::run_rabi_check(cfg, common.out);
    } else if (spectrum->parsed()) {
      summary = qmeta::run_qubit_spectrum(cfg, common.out);
    } else if (sweep->parsed()) {
      summary = qmeta::run_sweep(cfg, common.out);
    }
    std::cout << summary.dump(2) << '\n';
    return rc;
  } catch (const qmeta::ConfigError& e) {
    std::cerr << "qmeta: config error: " << e.what() << '\n';
    return kConfig;
  } catch (const qmeta::PreconditionError& e) {
    std::cerr << "qmeta: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "qmeta: " << e.what() << '\n';
    return kFailure;
  }
}
