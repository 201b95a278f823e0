#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "impuq/credal.hpp"
#include "oracles.hpp"

using namespace impuq;

TEST(ProbabilityIntervals, Validation) {
  EXPECT_THROW(ProbabilityIntervals({0.1}, {0.2, 0.3}), ValidationError);
  EXPECT_THROW(ProbabilityIntervals({0.5, 0.1}, {0.4, 0.9}), ValidationError);
  EXPECT_THROW(ProbabilityIntervals({-0.1, 0.1}, {0.4, 0.9}), ValidationError);
  EXPECT_THROW(ProbabilityIntervals({0.1, 0.1}, {1.4, 0.9}), ValidationError);
  EXPECT_THROW(ProbabilityIntervals({0.1, std::nan("")}, {0.4, 0.9}), ValidationError);
}

TEST(ProbabilityIntervals, NonEmptiness) {
  EXPECT_TRUE(check_nonempty(ProbabilityIntervals::vacuous(3)));
  EXPECT_FALSE(check_nonempty(ProbabilityIntervals({0.5, 0.5, 0.5}, {0.9, 0.9, 0.9})));
  EXPECT_FALSE(check_nonempty(ProbabilityIntervals({0.0, 0.0}, {0.3, 0.3})));
  EXPECT_THROW(CredalSet(ProbabilityIntervals({0.5, 0.5, 0.5}, {0.9, 0.9, 0.9})), InfeasibleError);
}

TEST(Reachability, TightensAndIsIdempotent) {
  const ProbabilityIntervals pi({0.1, 0.2, 0.0}, {0.9, 0.9, 0.3});
  const auto r = normalize_reachable(pi);
  EXPECT_NEAR(r.lowers()[0], 0.1, 1e-12);
  EXPECT_NEAR(r.uppers()[0], 0.8, 1e-12);
  EXPECT_NEAR(r.uppers()[1], 0.9, 1e-12);
  const auto rr = normalize_reachable(r);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(r.lowers()[k], rr.lowers()[k]);
    EXPECT_EQ(r.uppers()[k], rr.uppers()[k]);
  }
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto a = normalize_reachable(oracle::random_intervals(rng, 2 + t % 6));
    const auto b = normalize_reachable(a);
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_NEAR(a.lowers()[k], b.lowers()[k], 1e-12);
      EXPECT_NEAR(a.uppers()[k], b.uppers()[k], 1e-12);
    }
  }
}

TEST(Vertices, MatchBruteForce) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const auto r = normalize_reachable(oracle::random_intervals(rng, 2 + t % 6));
    const auto v = enumerate_vertices(r);
    auto brute = oracle::brute_vertices(r.lowers(), r.uppers());
    // every library vertex is a brute-force vertex and vice versa
    for (const auto& d : v) {
      const std::vector<double> p(d.probs().begin(), d.probs().end());
      bool found = false;
      for (const auto& q : brute) {
        double e = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) e = std::max(e, std::abs(p[k] - q[k]));
        found = found || e < 1e-9;
      }
      EXPECT_TRUE(found);
    }
    for (const auto& q : brute) {
      bool found = false;
      for (const auto& d : v) {
        double e = 0.0;
        for (std::size_t k = 0; k < q.size(); ++k) e = std::max(e, std::abs(d.probs()[k] - q[k]));
        found = found || e < 1e-9;
      }
      EXPECT_TRUE(found);
    }
  }
}

TEST(Vertices, SizeCap) {
  EXPECT_THROW(enumerate_vertices(ProbabilityIntervals::vacuous(17)), SizeError);
  EXPECT_EQ(enumerate_vertices(ProbabilityIntervals::vacuous(4)).size(), 4u);
}

TEST(Expectation, GreedyMatchesVertexOracle) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t c = 2 + t % 7;
    const CredalSet cs(oracle::random_intervals(rng, c));
    std::vector<double> gv(c);
    for (auto& x : gv) x = u(rng);
    const auto g = Gamble::labels(gv);
    double lo = 1e300, hi = -1e300;
    for (const auto& q : oracle::brute_vertices(cs.intervals().lowers(), cs.intervals().uppers())) {
      lo = std::min(lo, oracle::dot(q, gv));
      hi = std::max(hi, oracle::dot(q, gv));
    }
    EXPECT_NEAR(lower_expectation(cs, g), lo, 1e-9);
    EXPECT_NEAR(upper_expectation(cs, g), hi, 1e-9);
    EXPECT_LE(lower_expectation(cs, g), upper_expectation(cs, g));
  }
}

TEST(Expectation, EqualBoundsOnlyForSingleton) {
  const CredalSet p(ProbabilityIntervals::precise({0.2, 0.3, 0.5}));
  EXPECT_TRUE(p.is_singleton());
  const auto g = Gamble::labels({1.0, 2.0, 3.0});
  EXPECT_NEAR(lower_expectation(p, g), upper_expectation(p, g), 1e-12);
  const CredalSet v(ProbabilityIntervals::vacuous(3));
  EXPECT_FALSE(v.is_singleton());
  EXPECT_DOUBLE_EQ(lower_expectation(v, g), 1.0);
  EXPECT_DOUBLE_EQ(upper_expectation(v, g), 3.0);
}

TEST(Entropy, VacuousAndPrecise) {
  const auto v = entropy_bounds(CredalSet(ProbabilityIntervals::vacuous(3)));
  EXPECT_NEAR(v.upper, std::log(3.0), 1e-9);
  EXPECT_NEAR(v.lower, 0.0, 1e-12);
  const auto d = credal_decomposition(CredalSet(ProbabilityIntervals::precise({0.6, 0.2, 0.2})));
  EXPECT_NEAR(d.eu(), 0.0, 1e-12);
  EXPECT_NEAR(d.tu(), 0.950270539, 1e-9);
}

TEST(Entropy, FixtureFromIntervals) {
  const auto b = entropy_bounds(CredalSet(ProbabilityIntervals({0.2, 0.2, 0.2}, {0.6, 0.6, 0.6})));
  EXPECT_NEAR(b.lower, oracle::entropy({0.6, 0.2, 0.2}), 1e-9);
  EXPECT_NEAR(b.upper, std::log(3.0), 1e-9);
  EXPECT_NEAR(b.upper - b.lower, 0.148341, 1e-6);
}

TEST(Entropy, WaterFillingHitsBounds) {
  const auto p = max_entropy_distribution(ProbabilityIntervals({0.5, 0.0, 0.0}, {0.9, 0.1, 0.5}));
  EXPECT_NEAR(p[0], 0.5, 1e-12);
  EXPECT_NEAR(p[1], 0.1, 1e-12);
  EXPECT_NEAR(p[2], 0.4, 1e-12);
}

TEST(Entropy, MatchesGridOracle) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    const CredalSet cs(oracle::random_intervals(rng, 3));
    const auto b = entropy_bounds(cs);
    const auto g = oracle::grid_entropy(cs.intervals().lowers(), cs.intervals().uppers(), 1e-3);
    ASSERT_TRUE(g.any);
    EXPECT_NEAR(b.upper, g.upper, 1e-4);
    EXPECT_LE(g.upper, b.upper + 1e-9);
    EXPECT_LE(b.lower, g.lower + 1e-9);
    const auto v = oracle::brute_vertices(cs.intervals().lowers(), cs.intervals().uppers());
    EXPECT_NEAR(b.lower, oracle::min_vertex_entropy(v), 1e-9);
  }
}

TEST(Entropy, SandwichOnRejectionSamples) {
  std::mt19937_64 rng(33);
  std::gamma_distribution<double> gamma(1.0, 1.0);
  for (std::size_t c : {2u, 3u, 4u}) {
    for (int t = 0; t < 5; ++t) {
      const CredalSet cs(oracle::random_intervals(rng, c));
      const auto b = entropy_bounds(cs);
      int accepted = 0;
      for (int s = 0; s < 10000; ++s) {
        std::vector<double> p(c);
        double z = 0.0;
        for (auto& x : p) z += (x = gamma(rng));
        for (auto& x : p) x /= z;
        if (!cs.contains(p)) continue;
        ++accepted;
        const double h = oracle::entropy(p);
        EXPECT_LE(h, b.upper + 1e-9);
        EXPECT_GE(h, b.lower - 1e-9);
      }
      EXPECT_GE(b.upper - b.lower, 0.0);
      EXPECT_LE(b.upper, std::log(static_cast<double>(c)) + 1e-12);
      (void)accepted;
    }
  }
}
