#pragma once

#include <optional>
#include <string_view>

#include "impuq/core.hpp"

namespace impuq {

enum class Rule { additive, weighted, contnn, credal_entropy };

std::string_view rule_name(Rule r);

/// Total / aleatoric / epistemic split. Instances can only be built through
/// the factories, which enforce the invariant of each rule.
class Decomposition {
 public:
  /// tu = au + eu.
  static Decomposition additive(double au, double eu, const Tolerance& tol = {});
  /// tu = alpha1 * au + alpha2 * eu. Requires alpha1 + alpha2 > 1 and rejects
  /// results with tu < max(au, eu) - abs_tol.
  static Decomposition weighted(double au, double eu, double alpha1, double alpha2,
                                const Tolerance& tol = {});
  /// Additive split tagged with the contamination weight.
  static Decomposition contnn(double au, double eu, double epsilon, const Tolerance& tol = {});
  /// tu = upper entropy, au = lower entropy, eu = their difference.
  static Decomposition credal_entropy(double upper_entropy, double lower_entropy,
                                      const Tolerance& tol = {});

  double tu() const noexcept { return tu_; }
  double au() const noexcept { return au_; }
  double eu() const noexcept { return eu_; }
  Rule rule() const noexcept { return rule_; }
  std::optional<double> alpha1() const noexcept { return alpha1_; }
  std::optional<double> alpha2() const noexcept { return alpha2_; }
  std::optional<double> epsilon() const noexcept { return epsilon_; }

 private:
  Decomposition(double tu, double au, double eu, Rule rule) : tu_(tu), au_(au), eu_(eu), rule_(rule) {}

  double tu_;
  double au_;
  double eu_;
  Rule rule_;
  std::optional<double> alpha1_;
  std::optional<double> alpha2_;
  std::optional<double> epsilon_;
};

}  // namespace impuq
