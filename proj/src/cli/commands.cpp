#include "impuq/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "impuq/cli/io.hpp"
#include "impuq/contamination.hpp"
#include "impuq/pbox.hpp"

namespace impuq::cli {

using nlohmann::json;

namespace {

struct CommonOptions {
  Tolerance tol;
  std::uint64_t seed = 42;
  std::string entropy_base = "e";
  bool pbox_literal = false;
  std::string contnn_convention = "definition";
  std::string out_path;
  std::string format = "table";

  double entropy_scale() const { return entropy_base == "2" ? 1.0 / std::numbers::ln2 : 1.0; }
};

/// Human table plus line-delimited JSON records of one command.
class Report {
 public:
  void line(const std::string& s) { table_ << s << '\n'; }
  void row(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::string c = cells[i];
      if (c.size() < 16) c.insert(0, 16 - c.size(), ' ');
      s += c;
    }
    line(s);
  }
  void record(json r) { records_.push_back(std::move(r)); }

  void emit(const CommonOptions& opts, std::ostream& out) const {
    std::string jsonl;
    for (const auto& r : records_) jsonl += r.dump() + '\n';
    if (opts.format == "json") {
      out << jsonl;
    } else {
      out << table_.str();
    }
    if (!opts.out_path.empty()) {
      std::ofstream f(opts.out_path, std::ios::binary);
      if (!f) throw Error("cannot write output file '" + opts.out_path + "'");
      f << jsonl;
    }
  }

 private:
  std::ostringstream table_;
  std::vector<json> records_;
};

json decomposition_json(const Decomposition& d, double scale) {
  json j{{"tu", round9(d.tu() * scale)},
         {"au", round9(d.au() * scale)},
         {"eu", round9(d.eu() * scale)},
         {"rule", std::string(rule_name(d.rule()))}};
  if (d.alpha1()) j["alpha1"] = round9(*d.alpha1());
  if (d.alpha2()) j["alpha2"] = round9(*d.alpha2());
  if (d.epsilon()) j["epsilon"] = round9(*d.epsilon());
  return j;
}

json alpha_json(const AlphaEstimate& a) {
  json ev = json::object();
  for (const auto& [k, v] : a.evidence()) ev[k] = round9(v);
  return json{{"record", "alphas"},
              {"method", std::string(alpha_method_name(a.method()))},
              {"alpha1", round9(a.alpha1())},
              {"alpha2", round9(a.alpha2())},
              {"evidence", ev}};
}

std::string join9(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt9(v[i]);
  return s + ")";
}

void require_feasible(const ProbabilityIntervals& pi, const Tolerance& tol) {
  if (!check_nonempty(pi, tol)) {
    const double lo = std::accumulate(pi.lowers().begin(), pi.lowers().end(), 0.0);
    const double hi = std::accumulate(pi.uppers().begin(), pi.uppers().end(), 0.0);
    throw InfeasibleError("infeasible probability intervals: the credal set is non-empty only if "
                          "sum(lowers) <= 1 <= sum(uppers); got sum(lowers) = " +
                          fmt9(lo) + ", sum(uppers) = " + fmt9(hi));
  }
}

// ---------------------------------------------------------------------------

void cmd_entropy_bounds(const std::string& path, const CommonOptions& opts, Report& rep) {
  const auto pi = parse_intervals(read_file(path));
  require_feasible(pi, opts.tol);
  const CredalSet cs(pi, opts.tol);
  const auto b = entropy_bounds(cs);
  const double s = opts.entropy_scale();
  rep.line("classes        " + std::to_string(cs.size()));
  rep.line("entropy base   " + opts.entropy_base);
  rep.line("upper entropy  " + fmt9(b.upper * s));
  rep.line("lower entropy  " + fmt9(b.lower * s));
  rep.line("EU             " + fmt9((b.upper - b.lower) * s));
  rep.line("argmax         " + join9(b.argmax));
  rep.line("argmin         " + join9(b.argmin));
  rep.record(json{{"command", "entropy-bounds"},
                  {"base", opts.entropy_base},
                  {"upper_entropy", round9(b.upper * s)},
                  {"lower_entropy", round9(b.lower * s)},
                  {"eu", round9((b.upper - b.lower) * s)},
                  {"argmax", rounded(b.argmax)},
                  {"argmin", rounded(b.argmin)},
                  {"reachable", intervals_to_json(cs.intervals())}});
}

struct DecomposeArgs {
  std::string rule = "additive";
  std::string bundle, bnn, inn, alphas_file, alpha_method, loss_table;
  std::optional<double> epsilon;
};

AlphaEstimate bundle_alphas(const DecomposeArgs& a, const PredictionBundle* bundle,
                            const CommonOptions& opts) {
  if (!a.alphas_file.empty()) return parse_alphas(read_file(a.alphas_file));
  if (a.alpha_method == "sensitivity") {
    if (a.loss_table.empty()) throw ValidationError("--alpha-method sensitivity needs --loss-table");
    const auto t = parse_loss_table(read_file(a.loss_table));
    return estimate_alphas_sensitivity(t.callback, t.noise_grid, t.fraction_grid, opts.tol);
  }
  if (bundle == nullptr) throw ValidationError("alpha method '" + a.alpha_method + "' needs a bundle");
  if (a.alpha_method == "inn-width") return estimate_alpha2_interval_width(*bundle, opts.tol);
  if (a.alpha_method == "ensemble-spread") return estimate_alpha2_ensemble(*bundle, opts.tol);
  throw ValidationError("unknown or missing alpha method '" + a.alpha_method + "'");
}

bool cmd_decompose(const DecomposeArgs& a, const CommonOptions& opts, Report& rep) {
  const double s = opts.entropy_scale();
  std::vector<std::optional<Decomposition>> results;
  std::vector<std::string> errors;

  if (a.rule == "contnn") {
    if (a.bnn.empty() || a.inn.empty() || !a.epsilon) {
      throw ValidationError("rule contnn needs --bnn, --inn and --epsilon");
    }
    const auto bnn = parse_bundle(read_file(a.bnn), opts.tol);
    const auto inn = parse_bundle(read_file(a.inn), opts.tol);
    const auto conv = opts.contnn_convention == "eq12" ? EpsilonConvention::swapped
                                                       : EpsilonConvention::definition;
    const auto combined = contnn_combine(bnn, inn, *a.epsilon, conv);
    for (const auto& d : contnn_decompose(bnn, inn, *a.epsilon, conv, opts.tol)) results.emplace_back(d);
    errors.resize(results.size());
    for (std::size_t i = 0; i < combined.size(); ++i) {
      rep.record(json{{"record", "contnn-intervals"}, {"instance", i},
                      {"intervals", intervals_to_json(combined[i])}});
    }
  } else if (a.rule == "additive" || a.rule == "weighted") {
    if (a.bundle.empty()) throw ValidationError("rule " + a.rule + " needs --bundle");
    const auto bundle = parse_bundle(read_file(a.bundle), opts.tol);
    const auto base = bundle_decomposition(bundle, opts.tol);
    if (a.rule == "additive") {
      for (const auto& d : base) results.emplace_back(additive_tu(d.au(), d.eu(), opts.tol));
      errors.resize(results.size());
    } else {
      const bool per_instance = a.alphas_file.empty() && a.alpha_method == "credal-imprecision";
      if (per_instance && bundle.has_samples()) {
        throw ValidationError("alpha method credal-imprecision needs an interval bundle");
      }
      std::optional<AlphaEstimate> shared;
      if (!per_instance) {
        shared = bundle_alphas(a, &bundle, opts);
        rep.record(alpha_json(*shared));
        rep.line("alphas  method " + std::string(alpha_method_name(shared->method())) +
                 "  alpha1 " + fmt9(shared->alpha1()) + "  alpha2 " + fmt9(shared->alpha2()));
      }
      for (std::size_t i = 0; i < base.size(); ++i) {
        try {
          const AlphaEstimate alphas =
              shared ? *shared : estimate_alpha2_credal(CredalSet(bundle.intervals()[i], opts.tol));
          if (!shared) {
            json r = alpha_json(alphas);
            r["instance"] = i;
            rep.record(r);
          }
          results.emplace_back(weighted_tu(base[i].au(), base[i].eu(), alphas, opts.tol));
          errors.emplace_back();
        } catch (const ValidationError& e) {
          results.emplace_back();
          errors.emplace_back(e.what());
        }
      }
    }
  } else {
    throw ValidationError("unknown rule '" + a.rule + "' (expected additive, weighted or contnn)");
  }

  rep.row({"instance", "TU", "AU", "EU", "rule"});
  double tu = 0.0, au = 0.0, eu = 0.0;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i]) {
      rep.line("instance " + std::to_string(i) + ": " + errors[i]);
      rep.record(json{{"record", "instance"}, {"instance", i}, {"error", errors[i]}});
      continue;
    }
    const auto& d = *results[i];
    rep.row({std::to_string(i), fmt9(d.tu() * s), fmt9(d.au() * s), fmt9(d.eu() * s),
             std::string(rule_name(d.rule()))});
    json r = decomposition_json(d, s);
    r["record"] = "instance";
    r["instance"] = i;
    rep.record(r);
    tu += d.tu();
    au += d.au();
    eu += d.eu();
    ++ok;
  }
  if (ok > 0) {
    const double n = static_cast<double>(ok);
    rep.row({"mean", fmt9(tu / n * s), fmt9(au / n * s), fmt9(eu / n * s), a.rule});
    rep.record(json{{"record", "aggregate"}, {"instances", ok}, {"rule", a.rule},
                    {"tu", round9(tu / n * s)}, {"au", round9(au / n * s)},
                    {"eu", round9(eu / n * s)}});
  }
  return ok == results.size();
}

struct PBoxArgs {
  std::string lower, upper, gamble;
  std::vector<std::size_t> ns{10, 100, 1000};
};

void cmd_pbox(const PBoxArgs& a, const CommonOptions& opts, Report& rep) {
  const PBox pb(parse_cdf_csv(read_file(a.lower)), parse_cdf_csv(read_file(a.upper)), opts.tol);
  const Gamble g = a.gamble.empty()
                       ? Gamble::tabulate([](double y) { return y; }, pb.support_min(),
                                          pb.support_max(), opts.tol.grid_resolution)
                       : parse_gamble_csv(read_file(a.gamble));
  const auto pairing = opts.pbox_literal ? CellPairing::literal : CellPairing::coherent;
  const auto rows = convergence_report(pb, g, a.ns, pairing);
  rep.line(std::string("pairing ") + (opts.pbox_literal ? "literal" : "coherent"));
  rep.row({"n", "lower", "upper", "gap"});
  for (const auto& r : rows) {
    rep.row({std::to_string(r.n), fmt9(r.lower), fmt9(r.upper), fmt9(r.upper - r.lower)});
    rep.record(json{{"command", "pbox"}, {"pairing", opts.pbox_literal ? "literal" : "coherent"},
                    {"n", r.n}, {"lower", round9(r.lower)}, {"upper", round9(r.upper)}});
  }
}

struct ContaminateArgs {
  double epsilon = 0.5;
  std::vector<double> interval;
  std::string precise_cdf, gamble;
  std::vector<double> precise_probs, gamble_values;
  bool strict = false;
};

void cmd_contaminate(const ContaminateArgs& a, const CommonOptions& opts, Report& rep) {
  if (a.interval.size() != 2) throw ValidationError("--interval needs exactly two values");
  const IntervalModel im(a.interval[0], a.interval[1]);
  std::optional<ContaminationModel> cm;
  std::optional<Gamble> g;
  if (!a.precise_cdf.empty()) {
    cm.emplace(a.epsilon, parse_cdf_csv(read_file(a.precise_cdf)), im,
               ContaminationOptions{a.strict});
    g = a.gamble.empty() ? Gamble::tabulate([](double y) { return y; }, im.lower(), im.upper(),
                                            opts.tol.grid_resolution)
                         : parse_gamble_csv(read_file(a.gamble));
  } else if (!a.precise_probs.empty()) {
    cm.emplace(a.epsilon, DiscreteDistribution(a.precise_probs, opts.tol), im,
               ContaminationOptions{a.strict});
    if (a.gamble_values.empty()) throw ValidationError("--precise-probs needs --gamble-values");
    g = Gamble::labels(a.gamble_values);
  } else {
    throw ValidationError("contaminate needs --precise-cdf or --precise-probs");
  }
  const double precise = cm->precise_expectation(*g);
  const double lo = lower_expectation(*cm, *g);
  const double hi = upper_expectation(*cm, *g);
  rep.line("epsilon            " + fmt9(a.epsilon));
  rep.line("precise E          " + fmt9(precise));
  rep.line("lower expectation  " + fmt9(lo));
  rep.line("upper expectation  " + fmt9(hi));
  rep.record(json{{"command", "contaminate"}, {"epsilon", round9(a.epsilon)},
                  {"precise", round9(precise)}, {"lower", round9(lo)}, {"upper", round9(hi)}});
}

struct DependencyArgs {
  DependencyConfig cfg;
  std::string shape = "sine";
  std::size_t seed_count = 1;
  std::string plot_data;
};

void cmd_demo_dependency(DependencyArgs a, const CommonOptions& opts, Report& rep) {
  a.cfg.shape = a.shape == "linear" ? SignalShape::linear : SignalShape::sine;
  a.cfg.seeds.clear();
  for (std::size_t i = 0; i < a.seed_count; ++i) a.cfg.seeds.push_back(opts.seed + i);
  const auto rows = dependency_experiment(a.cfg);

  rep.row({"seed", "size", "removed", "mean_diff", "sigma1_hat", "sigma2_hat", "ratio",
           "boot_spread"});
  std::string plot = "size kept bootstrap_spread\n";
  for (const auto& r : rows) {
    rep.row({std::to_string(r.seed), std::to_string(r.size), std::to_string(r.removal),
             fmt9(r.mean_diff), fmt9(r.sigma1_hat), fmt9(r.sigma2_hat), fmt9(r.sigma_ratio),
             fmt9(r.bootstrap_spread)});
    rep.record(json{{"command", "demo-dependency"}, {"seed", r.seed}, {"size", r.size},
                    {"removal", r.removal}, {"kept", r.kept}, {"mean_diff", round9(r.mean_diff)},
                    {"sigma1_hat", round9(r.sigma1_hat)}, {"sigma2_hat", round9(r.sigma2_hat)},
                    {"sigma_ratio", round9(r.sigma_ratio)},
                    {"bootstrap_spread", round9(r.bootstrap_spread)}});
    plot += std::to_string(r.size) + " " + std::to_string(r.kept) + " " + fmt9(r.bootstrap_spread) + "\n";
  }
  if (!a.plot_data.empty()) {
    std::ofstream f(a.plot_data, std::ios::binary);
    if (!f) throw Error("cannot write plot data '" + a.plot_data + "'");
    f << plot;
  }
}

struct FocalArgs {
  std::string path;
  std::size_t k = 0;
  std::size_t samples = kMinOverlapSamples;
  std::size_t max_cardinality = 0;
};

void cmd_focal_select(const FocalArgs& a, const CommonOptions& opts, Report& rep) {
  if (a.k == 0) throw ValidationError("--k must be at least 1");
  const auto named = parse_ellipsoids(read_file(a.path), opts.tol);
  if (named.size() < 2) throw ValidationError("focal selection needs at least two classes");
  std::vector<ClassEllipsoid> classes;
  for (const auto& n : named) classes.push_back(n.ellipsoid);
  FocalSelectionOptions fo;
  fo.budget = a.k;
  fo.samples = a.samples;
  fo.seed = opts.seed;
  fo.max_cardinality = a.max_cardinality;
  const auto sets = select_focal_budget(classes, fo);

  rep.line("classes " + std::to_string(named.size()) + ", focal sets " + std::to_string(sets.size()) +
           ", network outputs " + std::to_string(named.size() + sets.size()));
  rep.row({"rank", "overlap", "std_error", "labels"});
  for (std::size_t r = 0; r < sets.size(); ++r) {
    std::string labels;
    json names = json::array();
    for (std::size_t k : sets[r].labels) {
      labels += (labels.empty() ? "" : ",") + named[k].label;
      names.push_back(named[k].label);
    }
    rep.row({std::to_string(r + 1), fmt9(sets[r].overlap.iou), fmt9(sets[r].overlap.std_error),
             labels});
    rep.record(json{{"rank", r + 1}, {"labels", names}, {"indices", sets[r].labels},
                    {"overlap", round9(sets[r].overlap.iou)},
                    {"std_error", round9(sets[r].overlap.std_error)}});
  }
}

struct AlphaArgs {
  std::string method;
  std::string bundle, intervals, loss_table;
};

void cmd_alphas(const AlphaArgs& a, const CommonOptions& opts, Report& rep) {
  std::optional<AlphaEstimate> est;
  if (a.method == "credal-imprecision") {
    if (a.intervals.empty()) throw ValidationError("credal-imprecision needs --intervals");
    const auto pi = parse_intervals(read_file(a.intervals));
    require_feasible(pi, opts.tol);
    est = estimate_alpha2_credal(CredalSet(pi, opts.tol));
  } else {
    DecomposeArgs d;
    d.alpha_method = a.method;
    d.loss_table = a.loss_table;
    std::optional<PredictionBundle> bundle;
    if (!a.bundle.empty()) bundle = parse_bundle(read_file(a.bundle), opts.tol);
    est = bundle_alphas(d, bundle ? &*bundle : nullptr, opts);
  }
  rep.line("method  " + std::string(alpha_method_name(est->method())));
  rep.line("alpha1  " + fmt9(est->alpha1()));
  rep.line("alpha2  " + fmt9(est->alpha2()));
  for (const auto& [k, v] : est->evidence()) rep.line(k + "  " + fmt9(v));
  rep.record(alpha_json(*est));
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("IMPUQ_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 42;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Imprecise-probability uncertainty quantification toolkit"};
  app.name("impuq");
  app.require_subcommand(1);

  CommonOptions opts;
  opts.seed = default_seed();
  app.add_option("--tol", opts.tol.abs_tol, "absolute tolerance")->capture_default_str();
  app.add_option("--opt-tol", opts.tol.opt_tol, "optimizer tolerance")->capture_default_str();
  app.add_option("--grid", opts.tol.grid_resolution, "points for tabulated default gambles")
      ->capture_default_str();
  app.add_option("--seed", opts.seed, "random seed (default 42, or IMPUQ_SEED)");
  app.add_option("--entropy-base", opts.entropy_base, "entropy units for reports")
      ->check(CLI::IsMember({"e", "2"}))
      ->capture_default_str();
  app.add_flag("--pbox-literal", opts.pbox_literal,
               "pair inf-sums with the lower CDF cells (may be incoherent)");
  app.add_option("--contnn-eps-convention", opts.contnn_convention,
                 "definition: epsilon weighs the interval part; eq12: the precise part")
      ->check(CLI::IsMember({"definition", "eq12"}))
      ->capture_default_str();
  app.add_option("--out", opts.out_path, "write JSON-lines records to this file");
  app.add_option("--format", opts.format, "stdout format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  std::string intervals_path;
  auto* eb = app.add_subcommand("entropy-bounds", "upper/lower Shannon entropy of a credal set");
  eb->add_option("intervals", intervals_path, "probability-intervals JSON file")->required();

  DecomposeArgs dec;
  auto* dc = app.add_subcommand("decompose", "TU/AU/EU per instance of prediction bundles");
  dc->add_option("--rule", dec.rule, "additive | weighted | contnn")
      ->check(CLI::IsMember({"additive", "weighted", "contnn"}))
      ->capture_default_str();
  dc->add_option("--bundle", dec.bundle, "prediction bundle (additive, weighted)");
  dc->add_option("--bnn", dec.bnn, "bnn-samples bundle (contnn)");
  dc->add_option("--inn", dec.inn, "inn-intervals bundle (contnn)");
  dc->add_option("--epsilon", dec.epsilon, "contamination weight (contnn)");
  dc->add_option("--alphas", dec.alphas_file, "JSON file with alpha1, alpha2 (weighted)");
  dc->add_option("--alpha-method", dec.alpha_method,
                 "sensitivity | credal-imprecision | inn-width | ensemble-spread (weighted)");
  dc->add_option("--loss-table", dec.loss_table, "noise_scale,data_fraction,loss CSV (sensitivity)");

  PBoxArgs pba;
  auto* pb = app.add_subcommand("pbox", "discretized p-box expectation bounds");
  pb->add_option("--lower", pba.lower, "CSV of the pointwise-lower CDF")->required();
  pb->add_option("--upper", pba.upper, "CSV of the pointwise-upper CDF")->required();
  pb->add_option("--gamble", pba.gamble, "CSV gamble (default f(y) = y on the support)");
  pb->add_option("--n", pba.ns, "partition counts, increasing")->capture_default_str();

  ContaminateArgs ca;
  auto* ct = app.add_subcommand("contaminate", "epsilon-contaminated lower/upper expectation");
  ct->add_option("--epsilon", ca.epsilon, "contamination weight")->required();
  ct->add_option("--interval", ca.interval, "vacuous interval a b")->expected(2)->required();
  ct->add_option("--precise-cdf", ca.precise_cdf, "CSV of the precise CDF");
  ct->add_option("--gamble", ca.gamble, "CSV gamble (default f(y) = y on the interval)");
  ct->add_option("--precise-probs", ca.precise_probs, "precise distribution over labels");
  ct->add_option("--gamble-values", ca.gamble_values, "gamble over labels");
  ct->add_flag("--strict-epsilon", ca.strict, "require 0 < epsilon < 1");

  DependencyArgs da;
  auto* dd = app.add_subcommand("demo-dependency",
                                "noise vs data-size dependency experiment (f = sin(2 pi x) by "
                                "default, 200 bootstrap resamples)");
  dd->add_option("--shape", da.shape, "linear | sine")
      ->check(CLI::IsMember({"linear", "sine"}))
      ->capture_default_str();
  dd->add_option("--mu1", da.cfg.mu1)->capture_default_str();
  dd->add_option("--mu2", da.cfg.mu2)->capture_default_str();
  dd->add_option("--sigma1", da.cfg.sigma1)->capture_default_str();
  dd->add_option("--sigma2", da.cfg.sigma2)->capture_default_str();
  dd->add_option("--sizes", da.cfg.sizes, "data sizes")->capture_default_str();
  dd->add_option("--removals", da.cfg.removals, "points removed from the second set")
      ->capture_default_str();
  dd->add_option("--seeds", da.seed_count, "number of consecutive seeds from --seed")
      ->capture_default_str();
  dd->add_option("--bootstrap", da.cfg.bootstrap, "bootstrap resamples")->capture_default_str();
  dd->add_option("--plot-data", da.plot_data, "columnar plot-data output file");

  FocalArgs fa;
  auto* fs = app.add_subcommand("focal-select", "budget-K focal sets from class ellipsoids");
  fs->add_option("ellipsoids", fa.path, "ellipsoid JSON file")->required();
  fs->add_option("--k", fa.k, "number of focal sets")->required();
  fs->add_option("--samples", fa.samples, "Monte-Carlo points per subset")->capture_default_str();
  fs->add_option("--max-cardinality", fa.max_cardinality, "0 = no cap");

  AlphaArgs aa;
  auto* al = app.add_subcommand("alphas", "estimate weights for the weighted rule");
  al->add_option("--method", aa.method,
                 "sensitivity | credal-imprecision | inn-width | ensemble-spread")
      ->required()
      ->check(CLI::IsMember({"sensitivity", "credal-imprecision", "inn-width", "ensemble-spread"}));
  al->add_option("--bundle", aa.bundle, "prediction bundle");
  al->add_option("--intervals", aa.intervals, "probability-intervals JSON file");
  al->add_option("--loss-table", aa.loss_table, "noise_scale,data_fraction,loss CSV");

  for (auto* sub : {eb, dc, pb, ct, dd, fs, al}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    opts.tol.validate();
    Report rep;
    bool complete = true;
    if (*eb) cmd_entropy_bounds(intervals_path, opts, rep);
    if (*dc) complete = cmd_decompose(dec, opts, rep);
    if (*pb) cmd_pbox(pba, opts, rep);
    if (*ct) cmd_contaminate(ca, opts, rep);
    if (*dd) cmd_demo_dependency(da, opts, rep);
    if (*fs) cmd_focal_select(fa, opts, rep);
    if (*al) cmd_alphas(aa, opts, rep);
    rep.emit(opts, out);
    if (!complete) {
      err << "error: some instances violate the weighted-rule constraints\n";
      return kInvalidInput;
    }
    return kOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace impuq::cli
