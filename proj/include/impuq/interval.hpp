#pragma once

#include "impuq/core.hpp"

namespace impuq {

/// Vacuous model: all that is known is that the outcome lies in [lower, upper].
/// Against a finite-label gamble the bounds are read as a label-index range.
class IntervalModel {
 public:
  IntervalModel(double lower, double upper);

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

  bool contains(double y) const noexcept { return y >= lower_ && y <= upper_; }

 private:
  double lower_;
  double upper_;
};

/// Infimum of `g` over the interval: exact scan of the tabulated knots inside
/// [a, b] plus both endpoints. Throws DomainError if [a, b] leaves the grid.
double lower_expectation(const IntervalModel& m, const Gamble& g);
double upper_expectation(const IntervalModel& m, const Gamble& g);

}  // namespace impuq
