#pragma once

#include <variant>

#include "impuq/core.hpp"
#include "impuq/interval.hpp"

namespace impuq {

struct ContaminationOptions {
  /// Require 0 < epsilon < 1 instead of the closed range.
  bool strict_open_epsilon = false;
};

/// Mixture (1 - epsilon) * precise + epsilon * vacuous interval model.
///
/// The precise part is either a distribution over labels (paired with
/// finite-label gambles, the interval then being a label-index range) or a
/// tabulated CDF (paired with real-grid gambles). Its support must lie inside
/// the interval, which makes the precise expectation dominate the interval's
/// lower expectation.
class ContaminationModel {
 public:
  using Precise = std::variant<DiscreteDistribution, TabulatedCDF>;

  ContaminationModel(double epsilon, Precise precise, IntervalModel imprecise,
                     ContaminationOptions opts = {});

  double epsilon() const noexcept { return epsilon_; }
  const Precise& precise() const noexcept { return precise_; }
  const IntervalModel& imprecise() const noexcept { return imprecise_; }

  double precise_expectation(const Gamble& g) const;

 private:
  double epsilon_;
  Precise precise_;
  IntervalModel imprecise_;
};

double lower_expectation(const ContaminationModel& cm, const Gamble& g);
double upper_expectation(const ContaminationModel& cm, const Gamble& g);

}  // namespace impuq
