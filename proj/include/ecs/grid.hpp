#pragma once

#include <string>
#include <vector>

#include "ecs/errors.hpp"

namespace ecs {

// One sweep axis: inclusive [start, stop] with positive step.
struct GridAxis {
  std::string name;
  double start = 0;
  double stop = 0;
  double step = 1;

  std::size_t count() const;
  std::vector<double> values() const;  // start + i * step
};

// Parses "AXIS=START:STOP:STEP"; AXIS must be one of
// alpha, alpha1, alpha2, phi, d, gamma_t, alpha_prime.
GridAxis parse_grid_axis(const std::string& text);

// %.9g, the fixed numeric format of all table output.
std::string format_value(double v);

}  // namespace ecs
