#include "qmeta/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "qmeta/error.hpp"

namespace qmeta {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void bad(const std::string& name, const std::string& v, const char* want) {
  throw ConfigError(name + ": cannot parse '" + v + "' as " + want);
}

void parse_into(double& out, const std::string& v, const std::string& name) {
  const std::string t = trim(v);
  double x = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) bad(name, v, "a number");
  out = x;
}

void parse_into(std::size_t& out, const std::string& v, const std::string& name) {
  const std::string t = trim(v);
  std::size_t x = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) bad(name, v, "a non-negative integer");
  out = x;
}

void parse_into(int& out, const std::string& v, const std::string& name) {
  const std::string t = trim(v);
  int x = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) bad(name, v, "an integer");
  out = x;
}

void parse_into(std::string& out, const std::string& v, const std::string&) { out = trim(v); }

void parse_into(Scheme& out, const std::string& v, const std::string& name) {
  const std::string t = trim(v);
  if (t == "split4") out = Scheme::split4;
  else if (t == "verlet_rk4") out = Scheme::verlet_rk4;
  else bad(name, v, "split4|verlet_rk4");
}

void parse_into(QubitMode& out, const std::string& v, const std::string& name) {
  const std::string t = trim(v);
  if (t == "frozen") out = QubitMode::frozen;
  else if (t == "live") out = QubitMode::live;
  else bad(name, v, "frozen|live");
}

void parse_into(std::vector<double>& out, const std::string& v, const std::string& name) {
  out.clear();
  for (const std::string& item : split_list(v)) {
    double x = 0.0;
    parse_into(x, item, name);
    out.push_back(x);
  }
}

void parse_into(std::vector<std::string>& out, const std::string& v, const std::string&) {
  out = split_list(v);
}

std::string format(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}
std::string format(std::size_t x) { return std::to_string(x); }
std::string format(int x) { return std::to_string(x); }
std::string format(const std::string& x) { return x; }
std::string format(Scheme s) { return s == Scheme::split4 ? "split4" : "verlet_rk4"; }
std::string format(QubitMode m) { return m == QubitMode::frozen ? "frozen" : "live"; }
std::string format(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format(v[i]);
  return out;
}
std::string format(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

struct Field {
  std::string name;
  std::function<void(Config&, const std::string&)> set;
  std::function<std::string(const Config&)> get;
};

template <class Acc>
Field field(const char* name, Acc acc) {
  const std::string n(name);
  return {n, [acc, n](Config& c, const std::string& v) { parse_into(acc(c), v, n); },
          [acc](const Config& c) { return format(acc(const_cast<Config&>(c))); }};
}

#define QMETA_FIELD(sec, key) field(#sec "." #key, [](Config& c) -> auto& { return c.sec.key; })

const std::vector<Field>& fields() {
  static const std::vector<Field> table{
      QMETA_FIELD(lattice, n_total),    QMETA_FIELD(lattice, n_active),
      QMETA_FIELD(medium, v_tilde),     QMETA_FIELD(medium, u_tilde),
      QMETA_FIELD(medium, r),           QMETA_FIELD(qubit, epsilon),
      QMETA_FIELD(qubit, E_J),          QMETA_FIELD(qubit, d00),
      QMETA_FIELD(qubit, d11),          QMETA_FIELD(qubit, d01),
      QMETA_FIELD(pulses, A),           QMETA_FIELD(pulses, l),
      QMETA_FIELD(pulses, k),           QMETA_FIELD(pulses, omega),
      QMETA_FIELD(pulses, phi0),        QMETA_FIELD(pulses, offset),
      QMETA_FIELD(run, dt),             QMETA_FIELD(run, t_end),
      QMETA_FIELD(run, snapshot_interval), QMETA_FIELD(run, scheme),
      QMETA_FIELD(run, isa),            QMETA_FIELD(probe, A),
      QMETA_FIELD(probe, l),            QMETA_FIELD(probe, omegas),
      QMETA_FIELD(probe, mode),         QMETA_FIELD(probe, state),
      QMETA_FIELD(probe, chi_tilde),    QMETA_FIELD(probe, L_m),
      QMETA_FIELD(probe, n_active),     QMETA_FIELD(probe, pad_left),
      QMETA_FIELD(probe, pad_right),    QMETA_FIELD(probe, snapshot_time),
      QMETA_FIELD(probe, t_max),        QMETA_FIELD(probe, dt),
      QMETA_FIELD(bands, chi0),         QMETA_FIELD(bands, chi_tilde),
      QMETA_FIELD(bands, L_m),          QMETA_FIELD(bands, state),
      QMETA_FIELD(bands, M),            QMETA_FIELD(bands, k_samples),
      QMETA_FIELD(rabi, A),             QMETA_FIELD(rabi, omega),
      QMETA_FIELD(rabi, r),
      QMETA_FIELD(rabi, n_active),      QMETA_FIELD(rabi, l),
      QMETA_FIELD(rabi, periods),       QMETA_FIELD(rabi, samples),
      QMETA_FIELD(rabi, central),       QMETA_FIELD(rabi, dt),
      QMETA_FIELD(spectrum, ratio),     QMETA_FIELD(spectrum, n_g),
      QMETA_FIELD(spectrum, M),         QMETA_FIELD(sweep, scenario),
      QMETA_FIELD(sweep, parameter),    QMETA_FIELD(sweep, values),
      QMETA_FIELD(sweep, threads),
  };
  return table;
}

#undef QMETA_FIELD

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

void Config::validate() const {
  require(lattice.n_active >= 1 && lattice.n_active + 2 <= lattice.n_total,
          "lattice.n_active must be >= 1 and leave padding inside lattice.n_total");
  medium.validate();
  qubit.validate();
  require(pulses.A >= 0.0, "pulses.A must be >= 0");
  require(pulses.l > 0.0, "pulses.l must be > 0");
  require(pulses.k > 0.0, "pulses.k must be > 0");
  require(pulses.omega >= 0.0, "pulses.omega must be >= 0");
  require(pulses.offset >= 0.0, "pulses.offset must be >= 0");
  require(run.dt > 0.0, "run.dt must be > 0");
  require(run.t_end >= 0.0, "run.t_end must be >= 0");
  require(run.snapshot_interval >= 0.0, "run.snapshot_interval must be >= 0");
  require(run.isa == "auto" || run.isa == "scalar" || run.isa == "avx2" || run.isa == "neon",
          "run.isa must be auto|scalar|avx2|neon");
  require(probe.A >= 0.0 && probe.l > 0.0, "probe.A must be >= 0 and probe.l > 0");
  require(!probe.omegas.empty(), "probe.omegas must not be empty");
  for (double w : probe.omegas) require(w > 0.0, "probe.omegas must be > 0");
  require(probe.chi_tilde >= 0.0 && probe.L_m >= 0.0, "probe.chi_tilde and probe.L_m must be >= 0");
  require(probe.n_active >= 1 && probe.pad_left >= 1 && probe.pad_right >= 1,
          "probe.n_active, probe.pad_left and probe.pad_right must be >= 1");
  require(probe.dt > 0.0 && probe.t_max > 0.0, "probe.dt and probe.t_max must be > 0");
  require(bands.chi0 >= 0.0 && bands.chi_tilde >= 0.0 && bands.L_m > 0.0,
          "bands.chi0, bands.chi_tilde must be >= 0 and bands.L_m > 0");
  require(bands.M >= 4, "bands.M must be >= 4");
  require(bands.k_samples >= 2, "bands.k_samples must be >= 2");
  require(rabi.A >= 0.0 && rabi.r >= 0.0 && rabi.l > 0.0, "rabi.A, rabi.r must be >= 0, rabi.l > 0");
  require(rabi.omega >= 0.0, "rabi.omega must be >= 0");
  require(rabi.n_active >= 16, "rabi.n_active must be >= 16");
  require(rabi.periods > 0.0 && rabi.samples >= 1 && rabi.dt > 0.0,
          "rabi.periods, rabi.samples and rabi.dt must be positive");
  require(spectrum.ratio > 0.0 && spectrum.M >= 8, "spectrum.ratio must be > 0, spectrum.M >= 8");
}

void set_value(Config& cfg, const std::string& dotted, const std::string& value) {
  for (const Field& f : fields()) {
    if (f.name == dotted) {
      f.set(cfg, value);
      return;
    }
  }
  throw ConfigError("unknown config key '" + dotted + "'");
}

std::vector<std::pair<std::string, std::string>> echo(const Config& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Field& f : fields()) out.emplace_back(f.name, f.get(cfg));
  return out;
}

Config parse_config(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  Config cfg;
  for (const auto& [section, node] : tree) {
    if (node.empty() && !node.data().empty())
      throw ConfigError("config key '" + section + "' outside a section");
    for (const auto& [key, leaf] : node) set_value(cfg, section + "." + key, leaf.data());
  }
  cfg.validate();
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace qmeta
