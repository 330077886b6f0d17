#pragma once

// Command-line front end. Every subcommand writes CSV with a `#` header line
// that records the library version and the fully resolved flags.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cfb/cfb.hpp"

namespace cfb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitUndefined = 3;

/// Parses "a,b,c" into a benefit triple. The three decimals must sum to 1
/// within 1e-9; they are rescaled by their sum so short decimal inputs pass
/// the stricter triple validation.
inline ProbTriple parse_triple(const std::string& text) {
  const auto parts = csv::split(text);
  if (parts.size() != 3) throw InvalidArgument("triple must have three comma-separated values: " + text);
  double v[3];
  for (int i = 0; i < 3; ++i) v[i] = csv::parse_double(parts[static_cast<std::size_t>(i)]);
  const double sum = v[0] + v[1] + v[2];
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("triple must sum to 1: " + text);
  for (double x : v) {
    if (x < 0.0 || x > 1.0) throw InvalidArgument("triple components must lie in [0,1]: " + text);
  }
  return ProbTriple(v[0] / sum, v[1] / sum, v[2] / sum);
}

/// Parses "lo:hi:step" into an inclusive arithmetic sequence; the last
/// point is exactly `hi` when the range divides evenly.
inline std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw InvalidArgument("range must be lo:hi:step, got " + text);
  const double lo = csv::parse_double(parts[0]);
  const double hi = csv::parse_double(parts[1]);
  const double step = csv::parse_double(parts[2]);
  if (!(step > 0.0) || !(hi >= lo)) throw InvalidArgument("range needs hi >= lo and step > 0");
  const double span = (hi - lo) / step;
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9));
  std::vector<double> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  if (std::abs(span - std::round(span)) < 1e-9) out.back() = hi;
  return out;
}

inline std::vector<double> parse_list(const std::string& text, std::size_t expected) {
  const auto parts = csv::split(text);
  if (parts.size() != expected) {
    throw InvalidArgument("expected " + std::to_string(expected) + " comma-separated values: " + text);
  }
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(csv::parse_double(p));
  return out;
}

/// "cfb <version> <command> --flag=value ..." for every option of `sub`,
/// including defaults.
inline std::string resolved_config(const CLI::App& sub) {
  std::string line = std::string("cfb ") + kVersion + " " + sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string& name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    std::string value;
    if (opt->get_expected_max() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      const auto& r = opt->results();
      for (std::size_t i = 0; i < r.size(); ++i) value += (i ? "," : "") + r[i];
    } else {
      value = opt->get_default_str();
    }
    line += " --" + name + "=" + value;
  }
  return line;
}

/// Opens `dir/name` for writing, creating the directory.
inline std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir.empty() ? "." : dir);
  const auto path = std::filesystem::path(dir.empty() ? "." : dir) / name;
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  return out;
}

inline std::vector<std::string> improper_fields(const ImproperRecord& r) {
  const double d = r.p.resolution();
  return {csv::num(r.p.minus / d), csv::num(r.p.zero / d), csv::num(r.p.plus / d),
          csv::num(r.q.minus / d), csv::num(r.q.zero / d), csv::num(r.q.plus / d),
          csv::num(r.cfb_star)};
}

inline const std::vector<std::string> kImproperHeader = {"p_minus", "p_zero", "p_plus", "q_minus",
                                                         "q_zero",  "q_plus", "cfb_star"};

inline void write_histogram(csv::Writer& w, const Histogram& h) {
  w.row({"bin_left", "bin_right", "count"});
  for (std::size_t i = 0; i < h.bins(); ++i) {
    w.row({csv::num(h.bin_left(i)), csv::num(h.bin_right(i)), csv::num(h.counts()[i])});
  }
}

/// Reads improper records back from CSV, snapping each probability to the
/// grid of the given resolution.
inline std::vector<ImproperRecord> read_improper(const std::string& path, int resolution) {
  const auto table = csv::read_file(path);
  std::size_t col[7];
  for (std::size_t i = 0; i < 7; ++i) col[i] = table.column(kImproperHeader[i]);
  auto units = [&](const std::string& s) {
    const double v = csv::parse_double(s) * resolution;
    const double k = std::round(v);
    if (std::abs(v - k) > 1e-6) throw InvalidArgument("probability " + s + " is not on the grid");
    return static_cast<int>(k);
  };
  std::vector<ImproperRecord> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    ImproperRecord r{{units(row[col[0]]), units(row[col[1]]), units(row[col[2]])},
                     {units(row[col[3]]), units(row[col[4]]), units(row[col[5]])},
                     csv::parse_double(row[col[6]])};
    if (r.p.resolution() != resolution || r.q.resolution() != resolution) {
      throw InvalidArgument("triple in " + path + " does not sum to 1 on the grid");
    }
    out.push_back(r);
  }
  return out;
}

struct EvalDiscreteArgs {
  double c = 0.5;
  std::string p, q;
  std::optional<double> h0, h1;
  std::string out;
};

inline int eval_discrete(const CLI::App& sub, const EvalDiscreteArgs& a, std::ostream& os) {
  const BinaryXPopulation pop(a.c, parse_triple(a.p), parse_triple(a.q));
  BenefitPredictor predictor = best_predictor(pop);
  if (a.h0) predictor.set(0, *a.h0);
  if (a.h1) predictor.set(1, *a.h1);

  const auto dist = benefit_distribution(pop, predictor);
  const PairTable table = pair_table(dist);
  const CfbResult result = cfb_from_pair_table(table);
  const CfbResult oracle = empirical_cfb_oracle(dist);

  std::string closed = "n/a";
  const double h0 = predictor(0), h1 = predictor(1);
  if (h1 > h0) closed = csv::num(cfb_two_group(pop.c(), pop.triple0(), pop.triple1()).value);
  if (h0 > h1) closed = csv::num(cfb_two_group(1.0 - pop.c(), pop.triple1(), pop.triple0()).value);

  std::ostringstream buf;
  csv::Writer w(buf);
  w.comment(resolved_config(sub));
  w.comment("h0=" + csv::num(h0) + " h1=" + csv::num(h1));
  w.row({"h_relation", "b_equal", "b_greater", "b_less", "total"});
  const char* names[] = {"equal", "greater", "less"};
  for (int h = 0; h < 3; ++h) {
    const Rel hr = static_cast<Rel>(h);
    w.row({names[h], csv::num(table(hr, Rel::Eq)), csv::num(table(hr, Rel::Gt)),
           csv::num(table(hr, Rel::Lt)), csv::num(table.h_total(hr))});
  }
  w.row({"total", csv::num(table.b_total(Rel::Eq)), csv::num(table.b_total(Rel::Gt)),
         csv::num(table.b_total(Rel::Lt)), csv::num(1.0)});
  w.comment("cfb=" + csv::num(result.value) + " closed_form=" + closed +
            " oracle=" + csv::num(oracle.value) + " gini_mean_difference=" +
            csv::num(gini_mean_difference(dist)));
  os << buf.str();
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw InvalidArgument("cannot write " + a.out);
    f << buf.str();
  }
  return kExitOk;
}

struct SearchArgs {
  double step = 0.01;
  double c = 0.5;
  std::string arithmetic = "binary64";
  bool binary_b = false;
  std::size_t bins = 50;
  double hist_lo = 0.41;
  double hist_hi = 0.50;
  std::string out_dir = ".";
};

inline SearchOptions search_options(const SearchArgs& a) {
  SearchOptions o;
  o.step = a.step;
  o.c = a.c;
  o.arithmetic = parse_grid_arithmetic(a.arithmetic);
  o.binary_benefit_only = a.binary_b;
  o.hist_bins = a.bins;
  o.hist_lo = a.hist_lo;
  o.hist_hi = a.hist_hi;
  return o;
}

inline const char* kBoundaryConvention =
    "survivors: strict q+-q- > p+-p- and strict q+-q-+q-p+ < p+-p-+q+p-, then cfb* < 0.5";

inline int search(const CLI::App& sub, const SearchArgs& a, std::ostream& os) {
  const SearchOptions opt = search_options(a);
  const SearchResult res = grid_search(opt);
  const auto& s = res.summary;
  {
    auto f = open_output(a.out_dir, "improper.csv");
    csv::Writer w(f);
    w.comment(resolved_config(sub));
    w.comment(std::string(kBoundaryConvention) + "; arithmetic=" + std::string(to_string(opt.arithmetic)));
    w.row(kImproperHeader);
    for (const auto& r : res.records) w.row(improper_fields(r));
  }
  {
    auto f = open_output(a.out_dir, "fig1_hist.csv");
    csv::Writer w(f);
    w.comment(resolved_config(sub));
    write_histogram(w, s.histogram);
  }
  csv::Writer w(os);
  w.comment(resolved_config(sub));
  w.row({"candidates", "count", "min", "median", "max", "argmin_p", "argmin_q"});
  auto triple = [](const GridTriple& t) { return t.exact().str(); };
  w.row({csv::num(s.candidates), csv::num(s.count), csv::num(s.min), csv::num(s.median),
         csv::num(s.max), s.count ? "\"" + triple(s.argmin_p) + "\"" : "",
         s.count ? "\"" + triple(s.argmin_q) + "\"" : ""});
  return kExitOk;
}

struct ScreenArgs {
  std::string input;
  SearchArgs search;
};

inline int screen_cf(const CLI::App& sub, const ScreenArgs& a, std::ostream& os) {
  const SearchOptions opt = search_options(a.search);
  std::vector<ImproperRecord> records;
  if (a.input.empty()) {
    records = grid_search(opt).records;
  } else {
    records = read_improper(a.input, grid_resolution(opt.step));
  }
  const ScreenResult res = screen_improper_set(records, opt.arithmetic);
  {
    auto f = open_output(a.search.out_dir, "realizable.csv");
    csv::Writer w(f);
    w.comment(resolved_config(sub));
    auto header = kImproperHeader;
    for (const char* extra : {"y0_x0", "y1_x0", "y0_x1", "y1_x1"}) header.emplace_back(extra);
    w.row(header);
    for (const auto& r : res.records) {
      auto fields = improper_fields(r.record);
      for (double v : {r.x0.y0, r.x0.y1, r.x1.y0, r.x1.y1}) fields.push_back(csv::num(v));
      w.row(fields);
    }
  }
  {
    Histogram all(opt.hist_lo, opt.hist_hi, opt.hist_bins);
    Histogram kept(opt.hist_lo, opt.hist_hi, opt.hist_bins);
    for (const auto& r : records) all.add(r.cfb_star);
    for (const auto& r : res.records) kept.add(r.record.cfb_star);
    auto f = open_output(a.search.out_dir, "fig6_hist.csv");
    csv::Writer w(f);
    w.comment(resolved_config(sub));
    w.row({"bin_left", "bin_right", "count_all", "count_realizable"});
    for (std::size_t i = 0; i < all.bins(); ++i) {
      w.row({csv::num(all.bin_left(i)), csv::num(all.bin_right(i)), csv::num(all.counts()[i]),
             csv::num(kept.counts()[i])});
    }
  }
  const auto& s = res.summary;
  csv::Writer w(os);
  w.comment(resolved_config(sub));
  w.row({"input_count", "count", "min", "mean", "median", "max"});
  w.row({csv::num(s.input_count), csv::num(s.count), csv::num(s.min), csv::num(s.mean),
         csv::num(s.median), csv::num(s.max)});
  return kExitOk;
}

struct BetaMcArgs {
  double alpha = 0.5;
  double beta = 0.5;
  std::string p, q;
  std::size_t n = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  bool all_pairs = false;
  std::string out;
};

inline int beta_mc(const CLI::App& sub, const BetaMcArgs& a, std::ostream& os) {
  const BetaXPopulation pop(a.alpha, a.beta, parse_triple(a.p), parse_triple(a.q));
  McOptions opt;
  opt.all_pairs = a.all_pairs;
  const McResult r = cfb_monte_carlo(BetaXSampler(pop), a.n, a.seed, opt);
  std::ostringstream buf;
  csv::Writer w(buf);
  w.comment(resolved_config(sub));
  w.row({"alpha", "beta", "n", "estimate", "mc_standard_error", "scored_pairs", "total_pairs"});
  w.row({csv::num(a.alpha), csv::num(a.beta), csv::num(a.n), csv::num(r.estimate),
         csv::num(r.standard_error), csv::num(r.scored_pairs), csv::num(r.total_pairs)});
  os << buf.str();
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw InvalidArgument("cannot write " + a.out);
    f << buf.str();
  }
  return kExitOk;
}

struct RhoSweepArgs {
  double beta_xt = 1.0;
  double beta_t = 0.0;
  double sigma = 1.0;
  std::string rho = "-1:1:0.1";
  std::size_t mc_n = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

inline int rho_sweep(const CLI::App& sub, const RhoSweepArgs& a, std::ostream& os) {
  std::ostringstream buf;
  csv::Writer w(buf);
  w.comment(resolved_config(sub));
  std::vector<std::string> header = {"rho", "correlation", "cfb", "cfb_arcsine"};
  if (a.mc_n > 0) {
    header.emplace_back("mc_estimate");
    header.emplace_back("mc_standard_error");
  }
  w.row(header);
  for (double rho : parse_range(a.rho)) {
    LinearGaussianPopulation pop;
    pop.betat = a.beta_t;
    pop.betaxt = a.beta_xt;
    pop.sigma = a.sigma;
    pop.rho = rho;
    pop.validate();
    const CfbResult r = cfb_linear_gaussian(pop);
    std::vector<std::string> row = {csv::num(rho), csv::num(pair_difference_correlation(pop)),
                                    csv::num(r.value), csv::num(cfb_linear_gaussian_arcsine(pop))};
    if (a.mc_n > 0) {
      const McResult mc = cfb_monte_carlo(LinearGaussianSampler(pop), a.mc_n, a.seed);
      row.push_back(csv::num(mc.estimate));
      row.push_back(csv::num(mc.standard_error));
    }
    w.row(row);
  }
  os << buf.str();
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw InvalidArgument("cannot write " + a.out);
    f << buf.str();
  }
  return kExitOk;
}

struct MatchArgs {
  double step = 0.001;
  std::uint64_t seed = kDefaultSeed;
  double coef_lo = -5.0;
  double coef_hi = 5.0;
  bool bijective = false;
  std::size_t bins = 50;
  double hist_hi = 0.25;
  std::string out_dir = ".";
  // Single-population mode.
  std::optional<double> a, b;
  std::string betas = "0,0,0,0";
  std::string scheme = "sequential";
};

inline BenefitPredictor identity_predictor() {
  return BenefitPredictor({{0, 0.0}, {1, 1.0}, {2, 2.0}});
}

inline int match_single(const CLI::App& sub, const MatchArgs& m, std::ostream& os) {
  if (!m.a || !m.b) throw InvalidArgument("single-population mode needs both --a and --b");
  const auto beta = parse_list(m.betas, 4);
  const LogisticModel model{beta[0], beta[1], beta[2], beta[3]};
  SamplingScheme scheme;
  if (m.scheme == "sequential") {
    scheme = SamplingScheme::SequentialTreatedFirst;
  } else if (m.scheme == "simultaneous") {
    scheme = SamplingScheme::SimultaneousConditioning;
  } else {
    throw InvalidArgument("scheme must be 'sequential' or 'simultaneous'");
  }
  std::vector<std::pair<Level, double>> levels;
  const double masses[3] = {*m.a, *m.b, 1.0 - *m.a - *m.b};
  for (Level x = 0; x <= 2; ++x) {
    if (masses[x] > 0.0) levels.emplace_back(x, masses[x]);
  }
  const auto xdist = x_prime_distribution(CovariateDistribution(levels), scheme);
  double mp[3] = {0, 0, 0};
  for (const auto& [x, w] : xdist.levels()) mp[x] = w;
  const LogisticRctPopulation pop(mp[0], mp[1], model);
  const BenefitPredictor h = m.bijective ? identity_predictor() : predictor_h_quadratic();

  csv::Writer w(os);
  w.comment(resolved_config(sub));
  w.comment("matched covariate masses: " + csv::num(mp[0]) + "," + csv::num(mp[1]) + "," + csv::num(mp[2]));
  w.row({"factor", "h", "weight", "b_minus", "b_zero", "b_plus", "cfb"});
  for (MatchingFactor f : {MatchingFactor::Covariate, MatchingFactor::PredictedBenefit}) {
    const auto dist = benefit_given_h(pop, h, f);
    const double value = matched_cfb(dist).value;
    for (const auto& r : dist.rows()) {
      w.row({std::string(to_string(f)), csv::num(r.h), csv::num(r.weight), csv::num(r.triple.minus()),
             csv::num(r.triple.zero()), csv::num(r.triple.plus()), csv::num(value)});
    }
  }
  return kExitOk;
}

inline int match_compare(const CLI::App& sub, const MatchArgs& m, std::ostream& os) {
  if (m.a || m.b) return match_single(sub, m, os);
  MatchingOptions opt;
  opt.step = m.step;
  opt.seed = m.seed;
  opt.coef_lo = m.coef_lo;
  opt.coef_hi = m.coef_hi;
  opt.hist_bins = m.bins;
  opt.hist_hi = m.hist_hi;
  if (m.bijective) opt.predictor = identity_predictor();
  const MatchingResult res = matching_experiment(opt);
  const std::string scheme_note = "sampling scheme: sequential treated-first (covariate marginal preserved)";
  {
    auto f = open_output(m.out_dir, "match_diffs.csv");
    csv::Writer w(f);
    w.comment(resolved_config(sub));
    w.comment(scheme_note);
    w.row({"a", "b", "beta0", "betax", "betat", "betaxt", "cfb_x", "cfb_h", "abs_diff", "undefined_flag"});
    for (const auto& c : res.cells) {
      w.row({csv::num(c.a), csv::num(c.b), csv::num(c.model.beta0), csv::num(c.model.betax),
             csv::num(c.model.betat), csv::num(c.model.betaxt), csv::num(c.cfb_x), csv::num(c.cfb_h),
             csv::num(c.abs_diff), c.undefined ? "1" : "0"});
    }
  }
  {
    auto f = open_output(m.out_dir, "fig2_hist.csv");
    csv::Writer w(f);
    w.comment(resolved_config(sub));
    w.comment(scheme_note);
    write_histogram(w, res.histogram);
  }
  const auto& s = res.summary;
  csv::Writer w(os);
  w.comment(resolved_config(sub));
  w.row({"cells", "defined", "fraction_below_0.05", "median_abs_diff", "max_abs_diff"});
  w.row({csv::num(s.cells), csv::num(s.defined), csv::num(s.fraction_below_005),
         csv::num(s.median_abs_diff), csv::num(s.max_abs_diff)});
  return kExitOk;
}

struct HistArgs {
  std::string input;
  std::string column;
  std::size_t bins = 50;
  double lo = 0.0;
  double hi = 1.0;
  std::string out;
};

inline int hist(const CLI::App& sub, const HistArgs& a, std::ostream& os) {
  const auto table = csv::read_file(a.input);
  const std::size_t col = table.column(a.column);
  Histogram h(a.lo, a.hi, a.bins);
  for (const auto& row : table.rows) {
    const double v = csv::parse_double(row[col]);
    if (!std::isnan(v)) h.add(v);
  }
  std::ostringstream buf;
  csv::Writer w(buf);
  w.comment(resolved_config(sub));
  write_histogram(w, h);
  if (a.out.empty()) {
    os << buf.str();
  } else {
    std::ofstream f(a.out);
    if (!f) throw InvalidArgument("cannot write " + a.out);
    f << buf.str();
  }
  return kExitOk;
}

inline void add_search_flags(CLI::App* sub, SearchArgs& s) {
  sub->add_option("--step", s.step, "grid step (1/D for integer D)");
  sub->add_option("--c", s.c, "Pr(X=1)");
  sub->add_option("--arithmetic", s.arithmetic, "grid arithmetic")->check(CLI::IsMember({"binary64", "exact"}));
  sub->add_flag("--binary-b", s.binary_b, "restrict to triples with Pr(B=0)=0");
  sub->add_option("--bins", s.bins, "histogram bins");
  sub->add_option("--hist-lo", s.hist_lo, "histogram lower edge");
  sub->add_option("--hist-hi", s.hist_hi, "histogram upper edge");
  sub->add_option("--out-dir", s.out_dir, "output directory");
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 2 on validation errors, 3 when cfb is undefined for the population.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Population-level concordance statistic for benefit (cfb)", "cfb"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  EvalDiscreteArgs ed;
  auto* sub_eval = app.add_subcommand("eval-discrete", "pair table and cfb for a binary covariate");
  sub_eval->add_option("--c", ed.c, "Pr(X=1)");
  sub_eval->add_option("--p", ed.p, "benefit triple for X=0 (minus,zero,plus)")->required();
  sub_eval->add_option("--q", ed.q, "benefit triple for X=1 (minus,zero,plus)")->required();
  sub_eval->add_option("--h0", ed.h0, "prediction at X=0 (default h*)");
  sub_eval->add_option("--h1", ed.h1, "prediction at X=1 (default h*)");
  sub_eval->add_option("--out", ed.out, "also write the table to this file");

  SearchArgs sa;
  auto* sub_search = app.add_subcommand("search", "grid search for pairs of triples with cfb* < 0.5");
  add_search_flags(sub_search, sa);

  ScreenArgs sc;
  auto* sub_screen = app.add_subcommand("screen-cf", "keep improper pairs realizable from counterfactuals");
  sub_screen->add_option("--input", sc.input, "improper.csv from `search` (runs the search if omitted)");
  add_search_flags(sub_screen, sc.search);

  BetaMcArgs bm;
  auto* sub_beta = app.add_subcommand("beta-mc", "Monte Carlo cfb* for a Beta-distributed covariate");
  sub_beta->add_option("--alpha", bm.alpha, "Beta shape alpha");
  sub_beta->add_option("--beta", bm.beta, "Beta shape beta");
  sub_beta->add_option("--p", bm.p, "benefit triple at x=0")->required();
  sub_beta->add_option("--q", bm.q, "benefit triple at x=1")->required();
  sub_beta->add_option("--n", bm.n, "sample size (n/2 disjoint pairs)");
  sub_beta->add_option("--seed", bm.seed, "base seed");
  sub_beta->add_flag("--all-pairs", bm.all_pairs, "score all pairs (n <= 10000)");
  sub_beta->add_option("--out", bm.out, "also write the result to this file");

  RhoSweepArgs rs;
  auto* sub_rho = app.add_subcommand("rho-sweep", "linear-Gaussian cfb* across counterfactual correlations");
  sub_rho->add_option("--beta-xt", rs.beta_xt, "treatment-covariate interaction");
  sub_rho->add_option("--beta-t", rs.beta_t, "main treatment effect");
  sub_rho->add_option("--sigma", rs.sigma, "residual standard deviation");
  sub_rho->add_option("--rho", rs.rho, "correlation range lo:hi:step");
  sub_rho->add_option("--mc-n", rs.mc_n, "also estimate by Monte Carlo with this sample size");
  sub_rho->add_option("--seed", rs.seed, "base seed for --mc-n");
  sub_rho->add_option("--out", rs.out, "also write the table to this file");

  MatchArgs ma;
  auto* sub_match = app.add_subcommand("match-compare", "cfb under covariate vs predicted-benefit matching");
  sub_match->add_option("--step", ma.step, "(a,b) grid step");
  sub_match->add_option("--seed", ma.seed, "base seed");
  sub_match->add_option("--coef-lo", ma.coef_lo, "lower end of the coefficient range");
  sub_match->add_option("--coef-hi", ma.coef_hi, "upper end of the coefficient range");
  sub_match->add_flag("--bijective", ma.bijective, "use h(x)=x instead of x^2-x-1");
  sub_match->add_option("--bins", ma.bins, "histogram bins");
  sub_match->add_option("--hist-hi", ma.hist_hi, "histogram upper edge");
  sub_match->add_option("--out-dir", ma.out_dir, "output directory");
  sub_match->add_option("--a", ma.a, "single population: Pr(X=0)");
  sub_match->add_option("--b", ma.b, "single population: Pr(X=1)");
  sub_match->add_option("--betas", ma.betas, "single population: beta0,betax,betat,betaxt");
  sub_match->add_option("--scheme", ma.scheme, "single population: sequential|simultaneous");

  HistArgs ha;
  auto* sub_hist = app.add_subcommand("hist", "histogram of one CSV column");
  sub_hist->add_option("--input", ha.input, "input CSV")->required();
  sub_hist->add_option("--column", ha.column, "column name")->required();
  sub_hist->add_option("--bins", ha.bins, "number of bins");
  sub_hist->add_option("--lo", ha.lo, "lower edge");
  sub_hist->add_option("--hi", ha.hi, "upper edge");
  sub_hist->add_option("--out", ha.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*sub_eval) return eval_discrete(*sub_eval, ed, out);
    if (*sub_search) return search(*sub_search, sa, out);
    if (*sub_screen) return screen_cf(*sub_screen, sc, out);
    if (*sub_beta) return beta_mc(*sub_beta, bm, out);
    if (*sub_rho) return rho_sweep(*sub_rho, rs, out);
    if (*sub_match) return match_compare(*sub_match, ma, out);
    if (*sub_hist) return hist(*sub_hist, ha, out);
  } catch (const UndefinedCfb& e) {
    err << "error: " << e.what() << '\n';
    return kExitUndefined;
  } catch (const DegenerateCfb& e) {
    err << "error: " << e.what() << '\n';
    return kExitUndefined;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace cfb::cli
