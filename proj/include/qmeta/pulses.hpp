#pragma once

#include <string>
#include <vector>

#include "qmeta/model.hpp"

namespace qmeta {

enum class Direction { right, left };

// a(z,t) = 2A exp(-(z - z0 -+ (omega/k) t)^2 / l^2) cos(k z -+ omega t + phi0)
struct PulseSpec {
  double A = 0.18;
  double k = 0.25132741228718345;  // 2 pi / 25
  double omega = 0.5001;
  double l = 240.0;
  double z0 = 0.0;
  double phi0 = 0.0;
  Direction direction = Direction::right;

  void validate() const;
};

struct FieldArrays {
  std::vector<double> a;
  std::vector<double> a_dot;
};

// Field and exact time derivative at t = 0. Envelope values below 1e-8 of the
// peak are dropped.
FieldArrays synthesize(const PulseSpec& spec, const LatticeLayout& layout);

SimState add_pulse(SimState state, const PulseSpec& spec, const LatticeLayout& layout);

struct ValidityWarning {
  std::string condition;
  double ratio;
  double threshold;
  std::string message;
};

// l/lambda >= 5, lambda/L0 >= 10, 2A <= 0.5
std::vector<ValidityWarning> check_validity(const PulseSpec& spec, const LatticeLayout& layout,
                                            const MediumParams& m, const QubitParams& q);

}  // namespace qmeta
