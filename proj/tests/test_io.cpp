#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "qmeta/config.hpp"
#include "qmeta/error.hpp"
#include "qmeta/io.hpp"

using namespace qmeta;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("qmeta_io_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d / name;
}

}  // namespace

TEST(Fmt, RoundTrips) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, (i % 40) - 20);
    EXPECT_EQ(std::stod(fmt(x)), x);
  }
  EXPECT_EQ(fmt(0.5), "0.5");
  EXPECT_EQ(fmt(12.0), "12");
}

TEST(Csv, WriteRead) {
  const auto p = scratch("t.csv").string();
  write_csv(p, {{"scenario", "x"}, {"dt", "0.05"}}, {"a", "b"}, {{1.0, 0.1}, {2.0, -3e-9}});
  const CsvData d = read_csv(p);
  ASSERT_EQ(d.comments.size(), 1u);
  EXPECT_NE(d.comments[0].find("scenario=x"), std::string::npos);
  EXPECT_NE(d.comments[0].find("dt=0.05"), std::string::npos);
  EXPECT_EQ(d.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(d.rows.size(), 2u);
  EXPECT_EQ(d.rows[1][1], -3e-9);
}

TEST(Csv, Errors) {
  EXPECT_THROW(read_csv(scratch("missing.csv").string()), ConfigError);
  const auto p = scratch("bad.csv").string();
  std::ofstream(p) << "a,b\n1,2\n3\n";
  EXPECT_THROW(read_csv(p), ConfigError);
  std::ofstream(p) << "a,b\n1,x\n";
  EXPECT_THROW(read_csv(p), ConfigError);
}

TEST(State, RoundTripIsExact) {
  const auto l = LatticeLayout::padded(2, 7, 2);
  SimState s = SimState::ground(l);
  s.t = 766.25;
  for (std::size_t j = 0; j < 7; ++j) {
    s.c0[j] = std::polar(std::sqrt(1.0 - 0.1 * j), 0.3 * j + 0.1);
    s.c1[j] = std::polar(std::sqrt(0.1 * j), -1.7 * j);
  }
  const auto p = scratch("state.csv").string();
  write_state(p, s, {{"scenario", "test"}});
  const Register r = read_state(p);
  EXPECT_EQ(r.c0, s.c0);
  EXPECT_EQ(r.c1, s.c1);
  EXPECT_EQ(r.t, 766.25);
}

TEST(State, RejectsOtherFiles) {
  const auto p = scratch("notstate.csv").string();
  write_csv(p, {}, {"a", "b"}, {{1.0, 2.0}});
  EXPECT_THROW(read_state(p), ConfigError);
  write_csv(p, {}, {"n", "re_c0", "im_c0", "re_c1", "im_c1"}, {{1.0, 1.0, 0.0, 0.0, 0.0}});
  EXPECT_THROW(read_state(p), ConfigError);
}

TEST(Json, Writes) {
  const auto p = scratch("x.json").string();
  write_json(p, {{"a", 1.5}, {"b", nullptr}});
  std::ifstream in(p);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["a"], 1.5);
  EXPECT_TRUE(j["b"].is_null());
}

TEST(Config, DefaultsAreValid) {
  const Config c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.lattice.n_total, 2048u);
  EXPECT_EQ(c.run.scheme, Scheme::split4);
  EXPECT_EQ(c.probe.mode, QubitMode::frozen);
}

TEST(Config, ParsesSections) {
  const Config c = parse_config(
      "; comment\n[lattice]\nn_total = 4096\n[run]\ndt=0.02\nscheme = verlet_rk4\n"
      "[probe]\nomegas = 0.45, 0.5,0.6\nmode=live\n[sweep]\nvalues = a, b\n");
  EXPECT_EQ(c.lattice.n_total, 4096u);
  EXPECT_EQ(c.run.dt, 0.02);
  EXPECT_EQ(c.run.scheme, Scheme::verlet_rk4);
  EXPECT_EQ(c.probe.omegas, (std::vector<double>{0.45, 0.5, 0.6}));
  EXPECT_EQ(c.probe.mode, QubitMode::live);
  EXPECT_EQ(c.sweep.values, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(c.pulses.A, 0.18);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("[lattice]\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[nowhere]\nx = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("n_total = 5\n"), ConfigError);
  EXPECT_THROW(parse_config("[run]\ndt = fast\n"), ConfigError);
  EXPECT_THROW(parse_config("[run]\nscheme = euler\n"), ConfigError);
  EXPECT_THROW(parse_config("[lattice]\nn_total = -3\n"), ConfigError);
  EXPECT_THROW(parse_config("[run]\ndt = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("[lattice]\nn_total = 100\nn_active = 99\n"), ConfigError);
  EXPECT_THROW(parse_config("[medium]\nr = -0.1\n"), ConfigError);
  EXPECT_THROW(parse_config("[lattice\n"), ConfigError);
  EXPECT_THROW(load_config(scratch("nope.ini").string()), ConfigError);
  try {
    parse_config("[pulses]\nAmp = 1\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("pulses.Amp"), std::string::npos);
  }
}

TEST(Config, SetValue) {
  Config c;
  set_value(c, "pulses.phi0", "3.14");
  EXPECT_EQ(c.pulses.phi0, 3.14);
  set_value(c, "run.isa", "scalar");
  EXPECT_EQ(c.run.isa, "scalar");
  EXPECT_THROW(set_value(c, "pulses", "1"), ConfigError);
  EXPECT_THROW(set_value(c, "bands.M", "1.5"), ConfigError);
}

TEST(Config, EchoRoundTrips) {
  Config c;
  set_value(c, "pulses.A", "0.123456789012345");
  set_value(c, "probe.omegas", "0.4,0.7");
  set_value(c, "bands.state", "out/prime_state.csv");
  const auto kv = echo(c);
  EXPECT_GE(kv.size(), 50u);
  std::string text, section;
  for (const auto& [key, value] : kv) {
    const std::string sec = key.substr(0, key.find('.'));
    if (sec != section) text += "[" + (section = sec) + "]\n";
    text += key.substr(key.find('.') + 1) + " = " + value + "\n";
  }
  const Config d = parse_config(text);
  EXPECT_EQ(echo(d), kv);
  const auto p = scratch("cfg.ini").string();
  std::ofstream(p) << text;
  EXPECT_EQ(echo(load_config(p)), kv);
}
