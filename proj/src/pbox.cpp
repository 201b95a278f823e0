#include "impuq/pbox.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace impuq {

namespace {

std::string fmt_abscissa(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

PBox::PBox(TabulatedCDF lower_cdf, TabulatedCDF upper_cdf, const Tolerance& tol)
    : lower_(std::move(lower_cdf)), upper_(std::move(upper_cdf)) {
  // Both bounds are linear between the merged knots, so checking the knots
  // (from both sides, for jumps) covers the whole line.
  std::vector<double> knots(lower_.xs().begin(), lower_.xs().end());
  knots.insert(knots.end(), upper_.xs().begin(), upper_.xs().end());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  for (double x : knots) {
    if (lower_.left_limit(x) > upper_.left_limit(x) + tol.abs_tol ||
        lower_.eval(x) > upper_.eval(x) + tol.abs_tol) {
      throw ValidationError("p-box bounds cross at x = " + fmt_abscissa(x) +
                            ": lower CDF exceeds upper CDF");
    }
  }
}

double PBox::support_min() const { return std::min(lower_.support_min(), upper_.support_min()); }
double PBox::support_max() const { return std::max(lower_.support_max(), upper_.support_max()); }

double event_lower_probability(const PBox& pb, double s) { return pb.lower_cdf().eval(s); }
double event_upper_probability(const PBox& pb, double s) { return pb.upper_cdf().eval(s); }
double tail_lower_probability(const PBox& pb, double r) { return 1.0 - pb.upper_cdf().eval(r); }

double event_union_lower(const PBox& pb, std::span<const double> cuts) {
  if (cuts.empty() || cuts.size() % 2 == 0) {
    throw DomainError("event union needs an odd number of cut points");
  }
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (!(cuts[i] > cuts[i - 1])) throw DomainError("cut points must be strictly increasing");
  }
  double p = pb.lower_cdf().eval(cuts[0]);
  for (std::size_t k = 1; 2 * k < cuts.size(); ++k) {
    p += std::max(0.0, pb.lower_cdf().eval(cuts[2 * k]) - pb.upper_cdf().eval(cuts[2 * k - 1]));
  }
  return std::clamp(p, 0.0, 1.0);
}

namespace {

std::vector<IntervalModel> quantile_cells(const TabulatedCDF& f, std::size_t n) {
  std::vector<IntervalModel> cells;
  cells.reserve(n);
  const double dn = static_cast<double>(n);
  double left = f.pseudo_inverse(0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double right = f.pseudo_inverse(static_cast<double>(i) / dn);
    cells.emplace_back(left, std::max(left, right));
    left = right;
  }
  return cells;
}

void require_coverage(const PBox& pb, const Gamble& g) {
  if (g.is_labels()) throw DomainError("p-box expectations need a real-grid gamble");
  if (pb.support_min() < g.grid_min() || pb.support_max() > g.grid_max()) {
    throw DomainError("gamble grid does not cover the p-box support");
  }
}

template <class Bound>
double cell_average(const std::vector<IntervalModel>& cells, const Gamble& g, Bound bound) {
  double sum = 0.0;
  for (const auto& cell : cells) sum += bound(cell, g);
  return sum / static_cast<double>(cells.size());
}

}  // namespace

PBoxDiscretization discretize(const PBox& pb, std::size_t n) {
  if (n == 0) throw DomainError("partition count must be positive");
  return {n, quantile_cells(pb.upper_cdf(), n), quantile_cells(pb.lower_cdf(), n)};
}

namespace {

// Cell i: from the (i-1)/n quantile of the higher CDF to the i/n quantile of
// the lower CDF.
std::vector<IntervalModel> focal_cells(const PBox& pb, std::size_t n) {
  const auto hi = quantile_cells(pb.upper_cdf(), n);
  const auto lo = quantile_cells(pb.lower_cdf(), n);
  std::vector<IntervalModel> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(hi[i].lower(), lo[i].upper());
  return out;
}

}  // namespace

double lower_expectation(const PBox& pb, const Gamble& g, std::size_t n, CellPairing pairing) {
  require_coverage(pb, g);
  if (n == 0) throw DomainError("partition count must be positive");
  const auto cells = pairing == CellPairing::coherent ? focal_cells(pb, n)
                                                      : quantile_cells(pb.lower_cdf(), n);
  return cell_average(cells, g, [](const IntervalModel& m, const Gamble& h) {
    return lower_expectation(m, h);
  });
}

double upper_expectation(const PBox& pb, const Gamble& g, std::size_t n, CellPairing pairing) {
  require_coverage(pb, g);
  if (n == 0) throw DomainError("partition count must be positive");
  const auto cells = pairing == CellPairing::coherent ? focal_cells(pb, n)
                                                      : quantile_cells(pb.upper_cdf(), n);
  return cell_average(cells, g, [](const IntervalModel& m, const Gamble& h) {
    return upper_expectation(m, h);
  });
}

std::vector<ConvergenceRow> convergence_report(const PBox& pb, const Gamble& g,
                                               std::span<const std::size_t> ns,
                                               CellPairing pairing) {
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] <= ns[i - 1]) throw DomainError("partition counts must be strictly increasing");
  }
  std::vector<ConvergenceRow> rows;
  rows.reserve(ns.size());
  for (std::size_t n : ns) {
    rows.push_back({n, lower_expectation(pb, g, n, pairing), upper_expectation(pb, g, n, pairing)});
  }
  return rows;
}

}  // namespace impuq
