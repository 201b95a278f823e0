#include "impuq/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace impuq {

IntervalModel::IntervalModel(double lower, double upper) : lower_(lower), upper_(upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper)) {
    throw ValidationError("interval bounds must be finite");
  }
  if (lower > upper) throw ValidationError("interval lower bound exceeds upper bound");
}

namespace {

template <class Better>
double scan(const IntervalModel& m, const Gamble& g, Better better) {
  if (m.lower() < g.grid_min() || m.upper() > g.grid_max()) {
    throw DomainError("interval lies outside the gamble domain");
  }
  if (g.is_labels()) {
    const auto first = static_cast<std::size_t>(std::ceil(m.lower()));
    const auto last = static_cast<std::size_t>(std::floor(m.upper()));
    if (first > last) throw DomainError("interval contains no label index");
    double best = g.at_label(first);
    for (std::size_t k = first + 1; k <= last; ++k) {
      const double v = g.at_label(k);
      if (better(v, best)) best = v;
    }
    return best;
  }
  double best = g.evaluate(m.lower());
  const double at_upper = g.evaluate(m.upper());
  if (better(at_upper, best)) best = at_upper;
  const auto grid = g.grid();
  const auto values = g.values();
  auto it = std::upper_bound(grid.begin(), grid.end(), m.lower());
  for (; it != grid.end() && *it < m.upper(); ++it) {
    const double v = values[static_cast<std::size_t>(it - grid.begin())];
    if (better(v, best)) best = v;
  }
  return best;
}

}  // namespace

double lower_expectation(const IntervalModel& m, const Gamble& g) {
  return scan(m, g, [](double a, double b) { return a < b; });
}

double upper_expectation(const IntervalModel& m, const Gamble& g) {
  return scan(m, g, [](double a, double b) { return a > b; });
}

}  // namespace impuq
