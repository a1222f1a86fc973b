#include "ecs/grid.hpp"

#include <cmath>
#include <cstdio>

namespace ecs {

std::size_t GridAxis::count() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
    throw InvalidGrid("grid axis: non-finite bound");
  if (!(step > 0)) throw InvalidGrid("grid axis: step must be > 0");
  if (stop < start) throw InvalidGrid("grid axis: stop < start");
  // small forgiveness so stop lands on the last point despite binary rounding
  return std::size_t(std::floor((stop - start) / step + 1e-9)) + 1;
}

std::vector<double> GridAxis::values() const {
  std::vector<double> v(count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = start + double(i) * step;
  return v;
}

GridAxis parse_grid_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw InvalidGrid("grid: expected AXIS=START:STOP:STEP, got '" + text + "'");
  GridAxis ax;
  ax.name = text.substr(0, eq);
  static const char* const known[] = {"alpha",   "alpha1", "alpha2",     "phi",
                                      "d",       "gamma_t", "alpha_prime"};
  bool ok = false;
  for (const char* n : known) ok = ok || (ax.name == n);
  if (!ok) throw InvalidGrid("grid: unknown axis '" + ax.name + "'");

  const std::string body = text.substr(eq + 1);
  const auto c1 = body.find(':');
  const auto c2 = (c1 == std::string::npos) ? std::string::npos : body.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos ||
      body.find(':', c2 + 1) != std::string::npos)
    throw InvalidGrid("grid: expected three ':'-separated numbers in '" + text + "'");

  auto num = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw InvalidGrid("grid: trailing characters in '" + s + "'");
      return v;
    } catch (const InvalidGrid&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidGrid("grid: cannot parse number '" + s + "'");
    }
  };
  ax.start = num(body.substr(0, c1));
  ax.stop = num(body.substr(c1 + 1, c2 - c1 - 1));
  ax.step = num(body.substr(c2 + 1));
  ax.count();  // validates bounds
  return ax;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace ecs
