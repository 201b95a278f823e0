#include "impuq/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "impuq/randomset.hpp"

namespace impuq {

// ---------------------------------------------------------------------------
// Decomposition

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::additive: return "additive";
    case Rule::weighted: return "weighted";
    case Rule::contnn: return "contnn";
    case Rule::credal_entropy: return "credal-entropy";
  }
  return "unknown";
}

namespace {

// Component values may come out a rounding error below zero.
double nonnegative(double v, const char* what, const Tolerance& tol) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
  if (v < -tol.abs_tol) throw DomainError(std::string(what) + " must be non-negative");
  return std::max(v, 0.0);
}

}  // namespace

Decomposition Decomposition::additive(double au, double eu, const Tolerance& tol) {
  au = nonnegative(au, "AU", tol);
  eu = nonnegative(eu, "EU", tol);
  return Decomposition(au + eu, au, eu, Rule::additive);
}

Decomposition Decomposition::weighted(double au, double eu, double alpha1, double alpha2,
                                      const Tolerance& tol) {
  au = nonnegative(au, "AU", tol);
  eu = nonnegative(eu, "EU", tol);
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) {
    throw ValidationError("weighted rule requires alpha1 > 0 and alpha2 > 0");
  }
  if (!(alpha1 + alpha2 > 1.0)) {
    throw ValidationError("weighted rule requires alpha1 + alpha2 > 1");
  }
  const double tu = alpha1 * au + alpha2 * eu;
  if (tu < std::max(au, eu) - tol.abs_tol) {
    throw ValidationError("weighted rule requires TU >= max(AU, EU); alpha1 * AU + alpha2 * EU "
                          "falls below it for these inputs");
  }
  Decomposition d(tu, au, eu, Rule::weighted);
  d.alpha1_ = alpha1;
  d.alpha2_ = alpha2;
  return d;
}

Decomposition Decomposition::contnn(double au, double eu, double epsilon, const Tolerance& tol) {
  au = nonnegative(au, "AU", tol);
  eu = nonnegative(eu, "EU", tol);
  Decomposition d(au + eu, au, eu, Rule::contnn);
  d.epsilon_ = epsilon;
  return d;
}

Decomposition Decomposition::credal_entropy(double upper_entropy, double lower_entropy,
                                            const Tolerance& tol) {
  const double au = nonnegative(lower_entropy, "lower entropy", tol);
  const double eu = nonnegative(upper_entropy - lower_entropy, "entropy gap", tol);
  return Decomposition(upper_entropy, au, eu, Rule::credal_entropy);
}

// ---------------------------------------------------------------------------
// AlphaEstimate

std::string_view alpha_method_name(AlphaMethod m) {
  switch (m) {
    case AlphaMethod::sensitivity: return "sensitivity";
    case AlphaMethod::credal_imprecision: return "credal-imprecision";
    case AlphaMethod::inn_width: return "inn-width";
    case AlphaMethod::ensemble_spread: return "ensemble-spread";
    case AlphaMethod::given: return "given";
  }
  return "unknown";
}

AlphaEstimate::AlphaEstimate(double alpha1, double alpha2, AlphaMethod method,
                             std::map<std::string, double> evidence)
    : alpha1_(alpha1), alpha2_(alpha2), method_(method), evidence_(std::move(evidence)) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) {
    throw ValidationError("alpha estimate requires alpha1 > 0 and alpha2 > 0");
  }
  if (!(alpha1 + alpha2 > 1.0)) throw ValidationError("alpha estimate requires alpha1 + alpha2 > 1");
}

// ---------------------------------------------------------------------------
// PredictionBundle

std::string_view bundle_kind_name(BundleKind k) {
  switch (k) {
    case BundleKind::bnn_samples: return "bnn-samples";
    case BundleKind::inn_intervals: return "inn-intervals";
    case BundleKind::ensemble: return "ensemble";
    case BundleKind::credal: return "credal";
  }
  return "unknown";
}

PredictionBundle PredictionBundle::from_samples(
    BundleKind kind, std::vector<std::vector<DiscreteDistribution>> samples) {
  PredictionBundle b(kind);
  if (!b.has_samples()) throw DomainError("bundle kind does not carry samples");
  if (samples.empty()) throw ValidationError("bundle has no instances");
  b.classes_ = samples.front().empty() ? 0 : samples.front().front().size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].size() < 2) {
      throw DomainError("instance " + std::to_string(i) + " needs at least two samples");
    }
    for (const auto& s : samples[i]) {
      if (s.size() != b.classes_) {
        throw ValidationError("instance " + std::to_string(i) + " has inconsistent class count");
      }
    }
  }
  b.samples_ = std::move(samples);
  return b;
}

PredictionBundle PredictionBundle::from_intervals(BundleKind kind,
                                                  std::vector<ProbabilityIntervals> intervals) {
  PredictionBundle b(kind);
  if (b.has_samples()) throw DomainError("bundle kind does not carry intervals");
  if (intervals.empty()) throw ValidationError("bundle has no instances");
  b.classes_ = intervals.front().size();
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].size() != b.classes_) {
      throw ValidationError("instance " + std::to_string(i) + " has inconsistent class count");
    }
  }
  b.intervals_ = std::move(intervals);
  return b;
}

std::size_t PredictionBundle::instances() const noexcept {
  return has_samples() ? samples_.size() : intervals_.size();
}

std::vector<double> PredictionBundle::sample_mean(std::size_t i) const {
  std::vector<double> mean(classes_, 0.0);
  for (const auto& s : samples_.at(i)) {
    for (std::size_t k = 0; k < classes_; ++k) mean[k] += s[k];
  }
  for (double& m : mean) m /= static_cast<double>(samples_[i].size());
  return mean;
}

// ---------------------------------------------------------------------------
// Rules

Decomposition additive_tu(double au, double eu, const Tolerance& tol) {
  if (au < 0.0 || eu < 0.0) throw DomainError("additive rule needs AU >= 0 and EU >= 0");
  return Decomposition::additive(au, eu, tol);
}

Decomposition weighted_tu(double au, double eu, const AlphaEstimate& alphas, const Tolerance& tol) {
  if (au < 0.0 || eu < 0.0) throw DomainError("weighted rule needs AU >= 0 and EU >= 0");
  return Decomposition::weighted(au, eu, alphas.alpha1(), alphas.alpha2(), tol);
}

namespace {

double mean_entropy(std::span<const DiscreteDistribution> samples) {
  double h = 0.0;
  for (const auto& s : samples) h += shannon_entropy(s.probs());
  return h / static_cast<double>(samples.size());
}

}  // namespace

Decomposition sample_decomposition(std::span<const DiscreteDistribution> samples,
                                   const Tolerance& tol) {
  if (samples.empty()) throw DomainError("entropy split needs at least one sample");
  const std::size_t c = samples.front().size();
  std::vector<double> mean(c, 0.0);
  for (const auto& s : samples) {
    for (std::size_t k = 0; k < c; ++k) mean[k] += s[k] / static_cast<double>(samples.size());
  }
  const double au = mean_entropy(samples);
  return Decomposition::additive(au, std::max(0.0, shannon_entropy(mean) - au), tol);
}

std::vector<Decomposition> bundle_decomposition(const PredictionBundle& bundle,
                                                const Tolerance& tol) {
  std::vector<Decomposition> out;
  out.reserve(bundle.instances());
  for (std::size_t i = 0; i < bundle.instances(); ++i) {
    if (bundle.has_samples()) {
      out.push_back(sample_decomposition(bundle.samples()[i], tol));
    } else {
      out.push_back(credal_decomposition(CredalSet(bundle.intervals()[i], tol)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Alpha estimators

AlphaEstimate alpha_from_eu_bound(double eu_bound, AlphaMethod method,
                                  std::map<std::string, double> evidence, const Tolerance& tol) {
  const double alpha2 = std::max(eu_bound, tol.abs_tol);
  const double alpha1 = std::max(1.0 + tol.abs_tol - alpha2, tol.abs_tol);
  evidence["eu_lower_bound"] = eu_bound;
  return AlphaEstimate(alpha1, alpha2, method, std::move(evidence));
}

AlphaEstimate estimate_alphas_sensitivity(const LossCallback& loss,
                                          std::span<const double> noise_grid,
                                          std::span<const double> fraction_grid,
                                          const Tolerance& tol) {
  if (noise_grid.size() < 3 || fraction_grid.size() < 3) {
    throw DomainError("sensitivity grids need at least three points each");
  }
  const double baseline_noise = noise_grid.front();
  const double baseline = loss(baseline_noise, 1.0);
  const auto range = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
  };
  std::vector<double> by_noise, by_fraction;
  for (double s : noise_grid) by_noise.push_back(loss(s, 1.0));
  for (double f : fraction_grid) by_fraction.push_back(loss(baseline_noise, f));
  require_finite(by_noise, "loss over the noise grid");
  require_finite(by_fraction, "loss over the fraction grid");

  const double scale = std::abs(baseline) > tol.abs_tol ? std::abs(baseline) : 1.0;
  const double s_au = range(by_noise) / scale;
  const double s_eu = range(by_fraction) / scale;
  std::map<std::string, double> evidence{
      {"baseline_loss", baseline}, {"s_au", s_au}, {"s_eu", s_eu}};
  if (s_au + s_eu == 0.0) return AlphaEstimate(1.0, 1.0, AlphaMethod::sensitivity, evidence);
  const double total = s_au + s_eu;
  return AlphaEstimate(0.5 + s_au / total, 0.5 + s_eu / total, AlphaMethod::sensitivity,
                       std::move(evidence));
}

AlphaEstimate estimate_alpha2_credal(const CredalSet& cs) {
  const auto b = entropy_bounds(cs);
  return alpha_from_eu_bound(b.upper - b.lower, AlphaMethod::credal_imprecision,
                             {{"upper_entropy", b.upper}, {"lower_entropy", b.lower}},
                             cs.tolerance());
}

AlphaEstimate estimate_alpha2_interval_width(const PredictionBundle& bundle, const Tolerance& tol) {
  if (bundle.kind() != BundleKind::inn_intervals) {
    throw DomainError("interval-width estimate needs an inn-intervals bundle, got " +
                      std::string(bundle_kind_name(bundle.kind())));
  }
  double sum = 0.0;
  for (const auto& pi : bundle.intervals()) {
    for (std::size_t k = 0; k < pi.size(); ++k) sum += pi.uppers()[k] - pi.lowers()[k];
  }
  const double mean = sum / static_cast<double>(bundle.instances() * bundle.classes());
  return alpha_from_eu_bound(mean, AlphaMethod::inn_width, {{"mean_width", mean}}, tol);
}

AlphaEstimate estimate_alpha2_ensemble(const PredictionBundle& bundle, const Tolerance& tol) {
  if (bundle.kind() != BundleKind::ensemble) {
    throw DomainError("ensemble-spread estimate needs an ensemble bundle, got " +
                      std::string(bundle_kind_name(bundle.kind())));
  }
  double sum = 0.0;
  for (const auto& members : bundle.samples()) {
    if (members.size() < 2) throw DomainError("ensemble-spread needs at least two members");
    for (std::size_t k = 0; k < bundle.classes(); ++k) {
      double lo = members.front()[k], hi = lo;
      for (const auto& m : members) {
        lo = std::min(lo, m[k]);
        hi = std::max(hi, m[k]);
      }
      sum += hi - lo;
    }
  }
  const double mean = sum / static_cast<double>(bundle.instances() * bundle.classes());
  return alpha_from_eu_bound(mean, AlphaMethod::ensemble_spread, {{"mean_spread", mean}}, tol);
}

// ---------------------------------------------------------------------------
// ContNN

std::vector<ProbabilityIntervals> contnn_combine(const PredictionBundle& bnn,
                                                 const PredictionBundle& inn, double eps,
                                                 EpsilonConvention convention) {
  if (bnn.kind() != BundleKind::bnn_samples) throw DomainError("first bundle must be bnn-samples");
  if (inn.kind() != BundleKind::inn_intervals) throw DomainError("second bundle must be inn-intervals");
  if (bnn.instances() != inn.instances() || bnn.classes() != inn.classes()) {
    throw DomainError("bnn and inn bundles differ in instance or class count");
  }
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("epsilon must lie in [0, 1]");
  const double e = convention == EpsilonConvention::definition ? eps : 1.0 - eps;

  std::vector<ProbabilityIntervals> out;
  out.reserve(bnn.instances());
  for (std::size_t i = 0; i < bnn.instances(); ++i) {
    const auto mean = bnn.sample_mean(i);
    const auto& pi = inn.intervals()[i];
    std::vector<double> lo(mean.size()), hi(mean.size());
    for (std::size_t k = 0; k < mean.size(); ++k) {
      lo[k] = std::clamp((1.0 - e) * mean[k] + e * pi.lowers()[k], 0.0, 1.0);
      hi[k] = std::clamp((1.0 - e) * mean[k] + e * pi.uppers()[k], 0.0, 1.0);
    }
    out.emplace_back(std::move(lo), std::move(hi));
  }
  return out;
}

std::vector<Decomposition> contnn_decompose(const PredictionBundle& bnn,
                                            const PredictionBundle& inn, double eps,
                                            EpsilonConvention convention, const Tolerance& tol) {
  const auto combined = contnn_combine(bnn, inn, eps, convention);
  std::vector<Decomposition> out;
  out.reserve(combined.size());
  for (std::size_t i = 0; i < combined.size(); ++i) {
    const double au = mean_entropy(bnn.samples()[i]);
    const auto b = entropy_bounds(CredalSet(combined[i], tol));
    out.push_back(Decomposition::contnn(au, b.upper - b.lower, eps, tol));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dependency experiment

double signal(SignalShape shape, double x) {
  return shape == SignalShape::linear ? x : std::sin(2.0 * std::numbers::pi * x);
}

namespace {

double sample_std(std::span<const double> v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

std::vector<DependencyRow> dependency_experiment(const DependencyConfig& cfg) {
  if (!(cfg.sigma1 > 0.0) || !(cfg.sigma2 > 0.0)) throw DomainError("noise sigmas must be positive");
  if (cfg.bootstrap < 2) throw DomainError("bootstrap needs at least two resamples");
  for (std::size_t n : cfg.sizes) {
    if (n < 10) throw DomainError("data sizes must be at least 10");
    for (std::size_t k : cfg.removals) {
      if (k >= n || n - k < 2) {
        throw DomainError("removal of " + std::to_string(k) + " points leaves too few of " +
                          std::to_string(n));
      }
    }
  }

  std::vector<DependencyRow> rows;
  for (std::uint64_t seed : cfg.seeds) {
    for (std::size_t n : cfg.sizes) {
      const std::size_t key[] = {n};
      std::mt19937_64 gen(subset_seed(seed, key));
      std::uniform_real_distribution<double> ux(0.0, 1.0);
      std::normal_distribution<double> noise1(cfg.mu1, cfg.sigma1);
      std::normal_distribution<double> noise2(cfg.mu2, cfg.sigma2);
      std::vector<double> r1(n), r2(n);
      double sum1 = 0.0, sum2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double f = signal(cfg.shape, ux(gen));
        const double x1 = f + noise1(gen);
        const double x2 = f + noise2(gen);
        sum1 += x1;
        sum2 += x2;
        r1[i] = x1 - f;
        r2[i] = x2 - f;
      }
      const double sigma1_hat = sample_std(r1);
      const double mean_diff = (sum1 - sum2) / static_cast<double>(n);

      for (std::size_t k : cfg.removals) {
        // x is i.i.d., so dropping the first k points is a random removal.
        const std::span<const double> kept(r2.data() + k, n - k);
        const double sigma2_hat = sample_std(kept);
        const std::size_t boot_key[] = {n, k, 1};
        std::mt19937_64 boot_gen(subset_seed(seed, boot_key));
        std::uniform_int_distribution<std::size_t> pick(0, kept.size() - 1);
        std::vector<double> resample(kept.size()), stats(cfg.bootstrap);
        for (std::size_t b = 0; b < cfg.bootstrap; ++b) {
          for (double& v : resample) v = kept[pick(boot_gen)];
          stats[b] = sample_std(resample);
        }
        rows.push_back({seed, n, k, kept.size(), mean_diff, sigma1_hat, sigma2_hat,
                        sigma2_hat / sigma1_hat, sample_std(stats)});
      }
    }
  }
  return rows;
}

}  // namespace impuq
