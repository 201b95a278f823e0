#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "impuq/decomposition.hpp"
#include "oracles.hpp"

using namespace impuq;

namespace {

PredictionBundle worked_bnn() {
  return PredictionBundle::from_samples(
      BundleKind::bnn_samples,
      {{DiscreteDistribution({0.6, 0.4}), DiscreteDistribution({0.8, 0.2})}});
}

PredictionBundle worked_inn() {
  return PredictionBundle::from_intervals(BundleKind::inn_intervals,
                                          {ProbabilityIntervals({0.5, 0.1}, {0.9, 0.5})});
}

}  // namespace

TEST(Decomposition, FactoriesValidate) {
  EXPECT_THROW(Decomposition::additive(-0.1, 0.2), ValidationError);
  EXPECT_THROW(Decomposition::weighted(0.5, 0.5, 0.5, 0.4), ValidationError);
  EXPECT_THROW(Decomposition::weighted(0.5, 0.5, 0.0, 2.0), ValidationError);
  EXPECT_THROW(Decomposition::credal_entropy(0.2, 0.5), ValidationError);
  const auto d = Decomposition::contnn(0.3, 0.1, 0.5);
  EXPECT_DOUBLE_EQ(d.tu(), 0.4);
  EXPECT_EQ(d.epsilon(), 0.5);
}

TEST(Decomposition, WeightedUnitAlphasEqualAdditive) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int t = 0; t < 1000; ++t) {
    const double au = u(rng), eu = u(rng);
    const auto w = weighted_tu(au, eu, AlphaEstimate(1.0, 1.0, AlphaMethod::given));
    const auto a = additive_tu(au, eu);
    EXPECT_EQ(w.tu(), a.tu());
    EXPECT_EQ(w.au(), a.au());
    EXPECT_EQ(w.eu(), a.eu());
  }
}

TEST(Decomposition, WeightedAssertsTotalDominates) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 2.0), a(0.01, 1.5);
  int built = 0, rejected = 0;
  for (int t = 0; t < 1000; ++t) {
    const double au = u(rng), eu = u(rng);
    double a1 = a(rng), a2 = a(rng);
    if (a1 + a2 <= 1.0) a2 = 1.0 - a1 + 0.01;
    const AlphaEstimate al(a1, a2, AlphaMethod::given);
    const bool dominates = a1 * au + a2 * eu >= std::max(au, eu) - 1e-9;
    try {
      const auto d = weighted_tu(au, eu, al);
      ++built;
      EXPECT_TRUE(dominates);
      EXPECT_GE(d.tu(), std::max(d.au(), d.eu()) - 1e-9);
    } catch (const ValidationError&) {
      ++rejected;
      EXPECT_FALSE(dominates);
    }
  }
  EXPECT_GT(built, 0);
  EXPECT_GT(rejected, 0);
}

TEST(AlphaEstimate, Invariant) {
  EXPECT_THROW(AlphaEstimate(0.5, 0.5, AlphaMethod::given), ValidationError);
  EXPECT_THROW(AlphaEstimate(-1.0, 3.0, AlphaMethod::given), ValidationError);
  const auto e = alpha_from_eu_bound(0.0, AlphaMethod::inn_width, {}, Tolerance{});
  EXPECT_GT(e.alpha1() + e.alpha2(), 1.0);
  EXPECT_GT(e.alpha2(), 0.0);
  const auto big = alpha_from_eu_bound(3.0, AlphaMethod::inn_width, {}, Tolerance{});
  EXPECT_DOUBLE_EQ(big.alpha2(), 3.0);
  EXPECT_GT(big.alpha1(), 0.0);
}

TEST(AlphaEstimate, Sensitivity) {
  const std::vector<double> noise{1.0, 2.0, 4.0};
  const std::vector<double> frac{1.0, 0.5, 0.25};
  // loss grows with noise (range 3) and weakly with less data (range 1)
  const auto loss = [](double s, double f) { return s + (1.0 - f) * 4.0 / 3.0; };
  const auto e = estimate_alphas_sensitivity(loss, noise, frac);
  EXPECT_NEAR(e.alpha1(), 0.5 + 3.0 / 4.0, 1e-12);
  EXPECT_NEAR(e.alpha2(), 0.5 + 1.0 / 4.0, 1e-12);
  const auto flat = estimate_alphas_sensitivity([](double, double) { return 1.0; }, noise, frac);
  EXPECT_DOUBLE_EQ(flat.alpha1(), 1.0);
  EXPECT_DOUBLE_EQ(flat.alpha2(), 1.0);
  const std::vector<double> short_grid{1.0, 2.0};
  EXPECT_THROW(estimate_alphas_sensitivity(loss, short_grid, frac), ValidationError);
}

TEST(AlphaEstimate, BundleEstimators) {
  const auto cred = estimate_alpha2_credal(CredalSet(ProbabilityIntervals::vacuous(3)));
  EXPECT_NEAR(cred.alpha2(), std::log(3.0), 1e-9);
  const auto w = estimate_alpha2_interval_width(worked_inn(), Tolerance{});
  EXPECT_NEAR(w.evidence().at("mean_width"), 0.4, 1e-12);
  EXPECT_THROW(estimate_alpha2_interval_width(worked_bnn(), Tolerance{}), DomainError);
  EXPECT_THROW(estimate_alpha2_ensemble(worked_bnn(), Tolerance{}), DomainError);
}

TEST(Bundle, SampleDecompositionIsMutualInformation) {
  const auto b = worked_bnn();
  const auto d = bundle_decomposition(b, Tolerance{});
  ASSERT_EQ(d.size(), 1u);
  const double au = 0.5 * (oracle::entropy({0.6, 0.4}) + oracle::entropy({0.8, 0.2}));
  EXPECT_NEAR(d[0].au(), au, 1e-12);
  EXPECT_NEAR(d[0].eu(), oracle::entropy({0.7, 0.3}) - au, 1e-12);
  EXPECT_THROW(PredictionBundle::from_samples(BundleKind::bnn_samples, {{DiscreteDistribution({1.0})}}),
               ValidationError);
  EXPECT_THROW(PredictionBundle::from_samples(BundleKind::credal, {}), ValidationError);
}

TEST(ContNN, WorkedFixture) {
  const auto c = contnn_combine(worked_bnn(), worked_inn(), 0.5);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NEAR(c[0].lowers()[0], 0.6, 1e-12);
  EXPECT_NEAR(c[0].uppers()[0], 0.8, 1e-12);
  EXPECT_NEAR(c[0].lowers()[1], 0.2, 1e-12);
  EXPECT_NEAR(c[0].uppers()[1], 0.4, 1e-12);
  const auto d = contnn_decompose(worked_bnn(), worked_inn(), 0.5);
  const auto g = oracle::grid_entropy({0.6, 0.2}, {0.8, 0.4}, 1e-4);
  EXPECT_NEAR(d[0].eu(), g.upper - g.lower, 1e-5);
  EXPECT_NEAR(d[0].eu(), 0.172610, 1e-5);
}

TEST(ContNN, EndpointsWidthAndMonotonicity) {
  const auto bnn = worked_bnn();
  EXPECT_NEAR(contnn_decompose(bnn, worked_inn(), 0.0)[0].eu(), 0.0, 1e-12);
  const auto vac = PredictionBundle::from_intervals(BundleKind::inn_intervals,
                                                    {ProbabilityIntervals::vacuous(2)});
  EXPECT_NEAR(contnn_decompose(bnn, vac, 1.0)[0].eu(), std::log(2.0), 1e-9);
  double prev = -1.0;
  for (int i = 0; i <= 20; ++i) {
    const double eps = i / 20.0;
    const auto c = contnn_combine(bnn, worked_inn(), eps);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_NEAR(c[0].uppers()[k] - c[0].lowers()[k], eps * 0.4, 1e-12);
    }
    const double eu = contnn_decompose(bnn, worked_inn(), eps)[0].eu();
    EXPECT_GE(eu, prev - 1e-12);
    prev = eu;
  }
  EXPECT_THROW(contnn_combine(bnn, worked_inn(), 1.5), ValidationError);
}

TEST(ContNN, SwappedConvention) {
  const auto a = contnn_combine(worked_bnn(), worked_inn(), 0.2, EpsilonConvention::swapped);
  const auto b = contnn_combine(worked_bnn(), worked_inn(), 0.8);
  EXPECT_NEAR(a[0].lowers()[0], b[0].lowers()[0], 1e-12);
  EXPECT_NEAR(a[0].uppers()[1], b[0].uppers()[1], 1e-12);
}

TEST(Dependency, RatioAndReproducibility) {
  DependencyConfig cfg;
  cfg.sizes = {10000};
  cfg.bootstrap = 20;
  const auto rows = dependency_experiment(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_GE(rows[0].sigma_ratio, 9.5);
  EXPECT_LE(rows[0].sigma_ratio, 10.5);
  const auto again = dependency_experiment(cfg);
  EXPECT_EQ(again[0].sigma_ratio, rows[0].sigma_ratio);
  EXPECT_EQ(again[0].bootstrap_spread, rows[0].bootstrap_spread);
}

TEST(Dependency, RemovalAndErrors) {
  DependencyConfig cfg;
  cfg.sizes = {100};
  cfg.removals = {0, 60};
  cfg.bootstrap = 10;
  const auto rows = dependency_experiment(cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].kept, 40u);
  cfg.removals = {100};
  EXPECT_THROW(dependency_experiment(cfg), ValidationError);
  cfg.removals = {0};
  cfg.sigma1 = 0.0;
  EXPECT_THROW(dependency_experiment(cfg), ValidationError);
  EXPECT_DOUBLE_EQ(signal(SignalShape::linear, 0.3), 0.3);
  EXPECT_NEAR(signal(SignalShape::sine, 0.25), 1.0, 1e-15);
}
