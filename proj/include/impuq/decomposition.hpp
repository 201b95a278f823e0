#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "impuq/core.hpp"
#include "impuq/credal.hpp"
#include "impuq/uncertainty.hpp"

namespace impuq {

// ---------------------------------------------------------------------------
// Weights for the weighted rule

/// `given`: supplied by the user rather than estimated.
enum class AlphaMethod { sensitivity, credal_imprecision, inn_width, ensemble_spread, given };

std::string_view alpha_method_name(AlphaMethod m);

/// Weights (alpha1 on AU, alpha2 on EU). Always alpha1, alpha2 > 0 and
/// alpha1 + alpha2 > 1; the constructor throws ValidationError otherwise.
class AlphaEstimate {
 public:
  AlphaEstimate(double alpha1, double alpha2, AlphaMethod method,
                std::map<std::string, double> evidence = {});

  double alpha1() const noexcept { return alpha1_; }
  double alpha2() const noexcept { return alpha2_; }
  AlphaMethod method() const noexcept { return method_; }
  const std::map<std::string, double>& evidence() const noexcept { return evidence_; }

 private:
  double alpha1_;
  double alpha2_;
  AlphaMethod method_;
  std::map<std::string, double> evidence_;
};

// ---------------------------------------------------------------------------
// Network predictions

enum class BundleKind { bnn_samples, inn_intervals, ensemble, credal };

std::string_view bundle_kind_name(BundleKind k);

/// Per-instance predictions of one model. Sample kinds (bnn-samples,
/// ensemble) carry >= 2 distributions per instance; interval kinds
/// (inn-intervals, credal) carry one set of probability intervals.
class PredictionBundle {
 public:
  static PredictionBundle from_samples(BundleKind kind,
                                       std::vector<std::vector<DiscreteDistribution>> samples);
  static PredictionBundle from_intervals(BundleKind kind,
                                         std::vector<ProbabilityIntervals> intervals);

  BundleKind kind() const noexcept { return kind_; }
  bool has_samples() const noexcept {
    return kind_ == BundleKind::bnn_samples || kind_ == BundleKind::ensemble;
  }
  std::size_t instances() const noexcept;
  std::size_t classes() const noexcept { return classes_; }

  const std::vector<std::vector<DiscreteDistribution>>& samples() const noexcept { return samples_; }
  const std::vector<ProbabilityIntervals>& intervals() const noexcept { return intervals_; }

  /// Per-class mean of the samples of instance `i`.
  std::vector<double> sample_mean(std::size_t i) const;

 private:
  explicit PredictionBundle(BundleKind kind) : kind_(kind) {}

  BundleKind kind_;
  std::size_t classes_ = 0;
  std::vector<std::vector<DiscreteDistribution>> samples_;
  std::vector<ProbabilityIntervals> intervals_;
};

// ---------------------------------------------------------------------------
// Rules

Decomposition additive_tu(double au, double eu, const Tolerance& tol = {});
Decomposition weighted_tu(double au, double eu, const AlphaEstimate& alphas,
                          const Tolerance& tol = {});

/// Mean sample entropy as AU, entropy of the mean minus AU as EU, additive.
Decomposition sample_decomposition(std::span<const DiscreteDistribution> samples,
                                   const Tolerance& tol = {});

/// Per-instance baseline split of a bundle: entropy split for sample kinds,
/// credal entropy bounds for interval kinds.
std::vector<Decomposition> bundle_decomposition(const PredictionBundle& bundle,
                                                const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Alpha estimators

/// loss(noise_scale, data_fraction).
using LossCallback = std::function<double(double, double)>;

/// Sensitivity of the loss to noise (AU) and to data size (EU). The ranges
/// across each grid, relative to the loss at (noise_grid[0], 1), give
///   alpha1 = 1/2 + s_AU / (s_AU + s_EU),  alpha2 = 1/2 + s_EU / (s_AU + s_EU),
/// or alpha1 = alpha2 = 1 when both ranges vanish. The fraction sweep runs at
/// noise_grid[0]. Each grid needs at least three points.
AlphaEstimate estimate_alphas_sensitivity(const LossCallback& loss,
                                          std::span<const double> noise_grid,
                                          std::span<const double> fraction_grid,
                                          const Tolerance& tol = {});

/// alpha2 = max(upper entropy - lower entropy, abs_tol).
AlphaEstimate estimate_alpha2_credal(const CredalSet& cs);
/// alpha2 = mean interval width over instances and classes.
AlphaEstimate estimate_alpha2_interval_width(const PredictionBundle& bundle,
                                             const Tolerance& tol = {});
/// alpha2 = mean over instances and classes of (max - min) member probability.
AlphaEstimate estimate_alpha2_ensemble(const PredictionBundle& bundle, const Tolerance& tol = {});

/// Completes an EU lower bound into a valid estimate: alpha2 = max(bound,
/// abs_tol) and alpha1 = max(1 + abs_tol - alpha2, abs_tol).
AlphaEstimate alpha_from_eu_bound(double eu_bound, AlphaMethod method,
                                  std::map<std::string, double> evidence, const Tolerance& tol);

// ---------------------------------------------------------------------------
// Contamination of a precise and an interval predictor

enum class EpsilonConvention {
  /// epsilon weighs the interval (imprecise) part, as in the lower/upper
  /// contaminated expectations.
  definition,
  /// epsilon weighs the precise part instead.
  swapped,
};

/// Per instance and class: [(1-e) * mean_k + e * lower_k, (1-e) * mean_k + e * upper_k]
/// with e = eps (definition) or 1 - eps (swapped), clipped to [0, 1].
std::vector<ProbabilityIntervals> contnn_combine(
    const PredictionBundle& bnn, const PredictionBundle& inn, double eps,
    EpsilonConvention convention = EpsilonConvention::definition);

/// AU = mean entropy of the BNN samples; EU = upper minus lower entropy of the
/// credal set of the combined intervals; TU = AU + EU.
std::vector<Decomposition> contnn_decompose(
    const PredictionBundle& bnn, const PredictionBundle& inn, double eps,
    EpsilonConvention convention = EpsilonConvention::definition, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Noise / data-size dependency experiment

enum class SignalShape { linear, sine };

struct DependencyConfig {
  SignalShape shape = SignalShape::sine;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double sigma1 = 0.1;
  double sigma2 = 1.0;
  std::vector<std::size_t> sizes{50, 500, 5000};
  std::vector<std::size_t> removals{0};
  std::vector<std::uint64_t> seeds{42};
  std::size_t bootstrap = 200;
};

struct DependencyRow {
  std::uint64_t seed;
  std::size_t size;
  std::size_t removal;
  std::size_t kept;        ///< size - removal points left in the second set
  double mean_diff;        ///< mean(X1) - mean(X2) over the full sets
  double sigma1_hat;
  double sigma2_hat;       ///< on the kept points
  double sigma_ratio;      ///< sigma2_hat / sigma1_hat
  double bootstrap_spread; ///< std. dev. of sigma2_hat over bootstrap resamples
};

/// X1 = f(x) + N(mu1, sigma1), X2 = f(x) + N(mu2, sigma2) with x ~ U(0, 1),
/// f(x) = x or sin(2 pi x). One row per (seed, size, removal), deterministic
/// per seed.
std::vector<DependencyRow> dependency_experiment(const DependencyConfig& cfg);

double signal(SignalShape shape, double x);

}  // namespace impuq
