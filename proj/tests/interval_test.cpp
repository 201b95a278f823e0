#include <random>

#include <gtest/gtest.h>

#include "impuq/interval.hpp"

using namespace impuq;

TEST(IntervalModel, VacuousBoundsAreInfAndSup) {
  const IntervalModel m(0.0, 2.0);
  const auto g = Gamble::on_grid({0.0, 1.0, 2.0}, {1.0, 4.0, -2.0});
  EXPECT_DOUBLE_EQ(lower_expectation(m, g), -2.0);
  EXPECT_DOUBLE_EQ(upper_expectation(m, g), 4.0);
}

TEST(IntervalModel, EndpointsBetweenKnotsAreInterpolated) {
  const IntervalModel m(0.25, 0.75);
  const auto g = Gamble::on_grid({0.0, 1.0}, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(lower_expectation(m, g), 0.25);
  EXPECT_DOUBLE_EQ(upper_expectation(m, g), 0.75);
}

TEST(IntervalModel, Rejects) {
  EXPECT_THROW(IntervalModel(1.0, 0.0), ValidationError);
  EXPECT_THROW(IntervalModel(0.0, std::nan("")), ValidationError);
  const auto g = Gamble::on_grid({0.0, 1.0}, {0.0, 1.0});
  EXPECT_THROW(lower_expectation(IntervalModel(0.5, 1.5), g), DomainError);
}

TEST(IntervalModel, LabelRange) {
  const auto g = Gamble::labels({5.0, 1.0, 3.0, 0.0});
  EXPECT_DOUBLE_EQ(lower_expectation(IntervalModel(0.0, 2.0), g), 1.0);
  EXPECT_DOUBLE_EQ(upper_expectation(IntervalModel(1.0, 3.0), g), 3.0);
}

TEST(IntervalModel, Properties) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.0, 10.0);
  for (int t = 0; t < 300; ++t) {
    std::vector<double> vals(21);
    for (auto& v : vals) v = u(rng);
    const auto g = Gamble::tabulate([&](double y) { return vals[static_cast<std::size_t>(y * 2)]; },
                                    0.0, 10.0, 21);
    double a = pos(rng), b = pos(rng);
    if (a > b) std::swap(a, b);
    const IntervalModel m(a, b);
    const double lo = lower_expectation(m, g), hi = upper_expectation(m, g);
    EXPECT_LE(lo, hi);
    EXPECT_EQ(lower_expectation(m, -g), -hi);
    const double w = (b - a) / 4;
    const IntervalModel inner(a + w, b - w);
    EXPECT_GE(lower_expectation(inner, g), lo);
    EXPECT_LE(upper_expectation(inner, g), hi);
  }
  const auto c = Gamble::constant_on(3.5, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(lower_expectation(IntervalModel(0.2, 0.4), c), 3.5);
  EXPECT_DOUBLE_EQ(upper_expectation(IntervalModel(0.2, 0.4), c), 3.5);
}
