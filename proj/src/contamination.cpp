#include "impuq/contamination.hpp"

#include <cmath>
#include <string>

namespace impuq {

ContaminationModel::ContaminationModel(double epsilon, Precise precise, IntervalModel imprecise,
                                       ContaminationOptions opts)
    : epsilon_(epsilon), precise_(std::move(precise)), imprecise_(imprecise) {
  if (!std::isfinite(epsilon) || epsilon < 0.0 || epsilon > 1.0) {
    throw ValidationError("epsilon must lie in [0, 1]");
  }
  if (opts.strict_open_epsilon && (epsilon == 0.0 || epsilon == 1.0)) {
    throw ValidationError("epsilon must lie in the open interval (0, 1)");
  }
  if (const auto* d = std::get_if<DiscreteDistribution>(&precise_)) {
    for (std::size_t k = 0; k < d->size(); ++k) {
      if ((*d)[k] > 0.0 && !imprecise_.contains(static_cast<double>(k))) {
        throw DomainError("precise mass on label " + std::to_string(k) +
                          " lies outside the interval model");
      }
    }
  } else {
    const auto& f = std::get<TabulatedCDF>(precise_);
    if (f.support_min() < imprecise_.lower() || f.support_max() > imprecise_.upper()) {
      throw DomainError("precise CDF support lies outside the interval model");
    }
  }
}

double ContaminationModel::precise_expectation(const Gamble& g) const {
  return std::visit([&](const auto& p) { return p.expectation(g); }, precise_);
}

double lower_expectation(const ContaminationModel& cm, const Gamble& g) {
  const double e = cm.precise_expectation(g);
  return (1.0 - cm.epsilon()) * e + cm.epsilon() * lower_expectation(cm.imprecise(), g);
}

double upper_expectation(const ContaminationModel& cm, const Gamble& g) {
  const double e = cm.precise_expectation(g);
  return (1.0 - cm.epsilon()) * e + cm.epsilon() * upper_expectation(cm.imprecise(), g);
}

}  // namespace impuq
