#include "graphonlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "graphonlab/distances.hpp"
#include "graphonlab/kernel_io.hpp"
#include "graphonlab/parallel.hpp"
#include "graphonlab/pullback.hpp"
#include "graphonlab/sampling.hpp"
#include "graphonlab/testers.hpp"

namespace graphonlab {

using nlohmann::json;

namespace {

constexpr std::string_view kRounding = "rounding-concentration";
constexpr std::string_view kPullback = "pullback-convergence";
constexpr std::string_view kTester = "tester-curves";
constexpr std::string_view kStepping = "stepping-convergence";

// Stream ids under the config seed.
constexpr std::uint64_t kInstanceStream = 1;
constexpr std::uint64_t kTrialStream = 2;
constexpr std::uint64_t kGeneratorStream = 3;

std::map<std::string, double> key_values(std::string_view text, std::string_view what) {
  std::map<std::string, double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument(std::string(what) + ": expected key=value, got '" + std::string(item) + "'");
    std::size_t used = 0;
    const std::string value(item.substr(eq + 1));
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw std::invalid_argument(std::string(what) + ": bad number '" + value + "'");
    out[std::string(item.substr(0, eq))] = v;
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }
  return out;
}

struct RandomDigraphonSpec {
  int k = 3;
  int steps = 4;
  double lo = 0.2;
  double hi = 0.8;
};

std::optional<RandomDigraphonSpec> parse_random_digraphon(const std::string& text) {
  constexpr std::string_view prefix = "random:";
  if (text.rfind(prefix, 0) != 0 && text != "random") return std::nullopt;
  RandomDigraphonSpec spec;
  const std::string_view rest = text == "random" ? std::string_view{} : std::string_view(text).substr(prefix.size());
  for (const auto& [key, v] : key_values(rest, "random digraphon")) {
    if (key == "k")
      spec.k = static_cast<int>(v);
    else if (key == "steps")
      spec.steps = static_cast<int>(v);
    else if (key == "lo")
      spec.lo = v;
    else if (key == "hi")
      spec.hi = v;
    else
      throw std::invalid_argument("random digraphon: unknown key '" + key + "'");
  }
  return spec;
}

std::pair<AnalyticKernel, double> parse_kernel(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::optional<double> param =
      colon == std::string::npos ? std::nullopt : std::optional<double>(std::stod(text.substr(colon + 1)));
  if (name == "product") return {AnalyticKernel::product, 0.0};
  if (name == "minimum" || name == "min") return {AnalyticKernel::minimum, 0.0};
  if (name == "constant") return {AnalyticKernel::constant, param.value_or(0.5)};
  if (name == "threshold") return {AnalyticKernel::threshold, param.value_or(1.0)};
  throw std::invalid_argument("unknown kernel '" + text + "'");
}

bool strictly_decreasing(const std::vector<double>& v) {
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) return true;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream out;
  out.precision(6);
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  return out.str();
}

// Medians of `metric` per size, in size order.
std::vector<double> medians(const ExperimentReport& rep, const std::vector<int>& sizes, const std::string& metric) {
  std::vector<double> out;
  for (int n : sizes) {
    std::vector<double> vals;
    for (const auto& r : rep.rows)
      if (r.n == n && r.metric == metric) vals.push_back(r.value);
    out.push_back(vals.empty() ? std::numeric_limits<double>::quiet_NaN() : median(vals));
  }
  return out;
}

bool all_exact(const ExperimentReport& rep, const std::string& metric) {
  return std::all_of(rep.rows.begin(), rep.rows.end(), [&](const ExperimentRow& r) { return r.metric != metric || r.exact; });
}

void trend_verdict(ExperimentReport& rep, const std::vector<int>& sizes, const std::string& metric) {
  const auto med = medians(rep, sizes, metric);
  Verdict v;
  v.name = "median " + metric + " strictly decreasing";
  v.passed = strictly_decreasing(med);
  v.detail = "medians [" + join(med) + "]";
  if (!all_exact(rep, metric)) v.detail += " (heuristic lower bounds, flagged in rows)";
  rep.verdicts.push_back(std::move(v));
}

// Runs `cell(n, trial)` over the grid in parallel and concatenates in (n, trial) order.
template <typename Cell>
std::vector<ExperimentRow> grid_rows(const ExperimentConfig& c, Cell cell) {
  const std::size_t per = static_cast<std::size_t>(c.trials);
  std::vector<std::vector<ExperimentRow>> slots(c.sizes.size() * per);
  parallel_for(slots.size(), [&](std::size_t s) { slots[s] = cell(c.sizes[s / per], static_cast<int>(s % per)); });
  std::vector<ExperimentRow> rows;
  for (auto& s : slots)
    for (auto& r : s) rows.push_back(std::move(r));
  return rows;
}

RngSpec trial_stream(const ExperimentConfig& c, int n, int trial) {
  return RngSpec{c.seed, kTrialStream}.substream(static_cast<std::uint64_t>(n)).substream(static_cast<std::uint64_t>(trial));
}

CutNormOptions heuristic_options(const ExperimentConfig& c, const RngSpec& rng) {
  CutNormOptions o;
  o.mode = CutNormMode::heuristic;
  o.starts = c.cut_starts;
  o.rng = rng;
  return o;
}

ExperimentReport run_rounding(const ExperimentConfig& c) {
  ExperimentReport rep;
  const auto coupling = c.coupling == "joint" ? RoundingCoupling::joint : RoundingCoupling::independent;
  rep.rows = grid_rows(c, [&](int n, int trial) {
    const RngSpec s = trial_stream(c, n, trial);
    const FractionalColoring H = random_fractional_coloring(n, c.k, s.substream(0));
    const KColoredDigraph L = round_coloring(H, s.substream(1), coupling);
    const FractionalColoring HL = FractionalColoring::indicator(L);
    const CutDistanceResult d = cut_distance_fractional(H, HL, heuristic_options(c, s.substream(2)));
    // ‖D‖_□ <= ‖D‖_1 certifies an upper bound when the solver was heuristic.
    double upper = d.value;
    if (!d.exact) {
      upper = 0.0;
      for (int h = 0; h < c.k; ++h)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) upper += std::abs(H.effective_weight(h, i, j) - HL.effective_weight(h, i, j));
      upper /= static_cast<double>(n) * n;
    }
    const double bound = 10.0 * c.k / std::sqrt(static_cast<double>(n));
    const std::string e(kRounding);
    return std::vector<ExperimentRow>{
        {e, n, trial, s.stream_id, "cut_distance", d.value, d.exact, false},
        {e, n, trial, s.stream_id, "cut_distance_upper", upper, true, false},
        {e, n, trial, s.stream_id, "bound", bound, true, false},
        {e, n, trial, s.stream_id, "violation", upper > bound ? 1.0 : 0.0, true, false},
    };
  });
  long long violations = 0;
  for (const auto& r : rep.rows)
    if (r.metric == "violation") violations += r.value > 0.0;
  rep.verdicts.push_back({"no violation of 10k/sqrt(n)", violations == 0,
                          std::to_string(violations) + " violation(s), judged on certified upper bounds"});
  trend_verdict(rep, c.sizes, "cut_distance");
  return rep;
}

KDigraphon pullback_target(const ExperimentConfig& c) {
  if (const auto spec = parse_random_digraphon(c.digraphon))
    return random_digraphon(spec->k, c.m, spec->steps, spec->lo, spec->hi, RngSpec{c.seed, kInstanceStream});
  return load_digraphon(c.digraphon);
}

ExperimentReport run_pullback(const ExperimentConfig& c) {
  ExperimentReport rep;
  const KDigraphon W = pullback_target(c);
  const StepKernel U = W.color_mass(c.m);
  rep.rows = grid_rows(c, [&](int n, int trial) {
    const RngSpec s = trial_stream(c, n, trial);
    const SimpleGraph F = sample_graph_from_graphon(U, n, s.substream(0), LatentOrder::sorted);
    const PullbackResult P = pullback_coloring(F, W, c.m);
    const CutDistanceResult d =
        cut_distance_digraphons(digraphon_of_fractional(P.coloring), W, heuristic_options(c, s.substream(2)));
    const KColoredDigraph J = round_coloring(P.coloring, s.substream(1));
    const bool fallback = P.fallback_cells > 0;
    const std::string e(kPullback);
    return std::vector<ExperimentRow>{
        {e, n, trial, s.stream_id, "cut_distance", d.value, d.exact, fallback},
        {e, n, trial, s.stream_id, "shadow_identity", shadow(J, c.m) == F ? 1.0 : 0.0, true, fallback},
        {e, n, trial, s.stream_id, "fallback_cells", static_cast<double>(P.fallback_cells), true, fallback},
    };
  });
  long long failures = 0;
  for (const auto& r : rep.rows)
    if (r.metric == "shadow_identity") failures += r.value != 1.0;
  rep.verdicts.push_back({"shadow of rounded pullback equals F_n", failures == 0,
                          std::to_string(failures) + " failure(s)"});
  trend_verdict(rep, c.sizes, "cut_distance");
  return rep;
}

ExperimentReport run_tester(const ExperimentConfig& c) {
  ExperimentReport rep;
  const PropertySpec P = PropertySpec::parse(c.property);
  const std::string e(kTester);
  std::vector<SimpleGraph> graphs;
  for (std::size_t g = 0; g < c.generators.size(); ++g)
    graphs.push_back(generate(GeneratorSpec::parse(c.generators[g].spec), RngSpec{c.seed, kGeneratorStream}.substream(g)));

  for (std::size_t g = 0; g < graphs.size(); ++g) {
    try {
      const auto d = distance_to_property(graphs[g], P, PropertyMetric::d1);
      rep.rows.push_back({e, graphs[g].n(), static_cast<int>(g), 0, "d1_to_property[" + c.generators[g].spec + "]",
                          d.value, d.exact, false});
    } catch (const std::exception&) {
      // no d1 procedure at this size: the column is omitted
    }
  }
  for (int r : c.sizes)
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      const TesterSpec T = P.kind == PropertyKind::maxcut_density
                               ? tester_for_maxcut(P.param(0), r, c.trials, c.margin_coefficient)
                               : tester_for_property(P, r, c.trials);
      const RngSpec s = trial_stream(c, r, static_cast<int>(g));
      const auto a = acceptance_probability(graphs[g], T, s);
      rep.rows.push_back({e, r, static_cast<int>(g), s.stream_id, "acceptance[" + c.generators[g].spec + "]",
                          a.probability, r <= kMaxCutExactLimit || P.kind != PropertyKind::maxcut_density, false});
    }
  std::stable_sort(rep.rows.begin(), rep.rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
    return std::pair(a.n, a.trial) < std::pair(b.n, b.trial);
  });

  for (std::size_t g = 0; g < graphs.size(); ++g) {
    const auto& gc = c.generators[g];
    if (gc.expect == "none") continue;
    const bool want_accept = gc.expect == "accept";
    const std::string metric = "acceptance[" + gc.spec + "]";
    std::vector<double> curve = medians(rep, c.sizes, metric);
    auto ok = [&](double p) { return want_accept ? p >= 2.0 / 3.0 : p <= 1.0 / 3.0; };
    // Smallest grid r from which every larger r meets the expectation.
    std::optional<int> r_star;
    for (std::size_t i = curve.size(); i-- > 0;) {
      if (!ok(curve[i])) break;
      r_star = c.sizes[i];
    }
    std::string detail = "acceptance [" + join(curve) + "]";
    detail += r_star ? ", observed r* = " + std::to_string(*r_star) : ", no r* on grid";
    if (gc.expect == "eventually-reject") {
      rep.verdicts.push_back({gc.spec + " rejected (<= 1/3) at the largest r", r_star.has_value(), detail});
      continue;
    }
    const bool all = std::all_of(curve.begin(), curve.end(), ok);
    rep.verdicts.push_back({gc.spec + (want_accept ? " accepted (>= 2/3)" : " rejected (<= 1/3)"), all, detail});
  }
  return rep;
}

ExperimentReport run_stepping(const ExperimentConfig& c) {
  ExperimentReport rep;
  const auto [kind, param] = parse_kernel(c.kernel);
  const StepKernel W = discretize(kind, c.resolution, param);
  std::vector<double> errors(c.sizes.size());
  parallel_for(errors.size(), [&](std::size_t i) {
    errors[i] = difference(average(W, Partition::equal(c.sizes[i])), W).l1_norm();
  });
  const std::string e(kStepping);
  for (std::size_t i = 0; i < errors.size(); ++i) rep.rows.push_back({e, c.sizes[i], 0, 0, "l1_error", errors[i], true, false});

  rep.verdicts.push_back({"l1_error strictly decreasing", strictly_decreasing(errors), "errors [" + join(errors) + "]"});
  bool consistent = true;
  for (std::size_t i = 0; i < c.sizes.size(); ++i)
    for (std::size_t j = 0; j < c.sizes.size(); ++j)
      if (c.sizes[j] == 2 * c.sizes[i] && errors[i] < errors[j]) consistent = false;
  rep.verdicts.push_back({"error at n >= error at 2n", consistent, "dyadic pairs on the grid"});
  if (c.final_max)
    rep.verdicts.push_back({"final l1_error <= " + std::to_string(*c.final_max), errors.back() <= *c.final_max,
                            "final " + join({errors.back()})});
  return rep;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (experiment != kRounding && experiment != kPullback && experiment != kTester && experiment != kStepping)
    throw std::invalid_argument("unknown experiment '" + experiment + "'");
  if (sizes.empty()) throw std::invalid_argument("size grid is empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw std::invalid_argument("sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw std::invalid_argument("sizes must be strictly increasing");
  }
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (k < 1 || k > 255) throw std::invalid_argument("k must be in 1..255");
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (coupling != "independent" && coupling != "joint") throw std::invalid_argument("coupling must be independent or joint");
  if (cut_starts < 1) throw std::invalid_argument("cut_starts must be positive");
  if (experiment == kPullback) {
    if (const auto spec = parse_random_digraphon(digraphon)) {
      if (m >= spec->k) throw std::invalid_argument("pullback needs m < k");
    } else if (!std::filesystem::exists(digraphon)) {
      throw std::invalid_argument("digraphon file not found: " + digraphon);
    }
  }
  if (experiment == kStepping) {
    if (resolution < 1) throw std::invalid_argument("resolution must be positive");
    parse_kernel(kernel);
  }
  if (experiment == kTester) {
    const auto P = PropertySpec::parse(property);
    if (P.domain() != PropertyDomain::graph) throw std::invalid_argument("tester-curves needs a graph property");
    if (generators.empty()) throw std::invalid_argument("tester-curves needs generators");
    for (const auto& g : generators) {
      const auto spec = GeneratorSpec::parse(g.spec);
      if (g.expect != "accept" && g.expect != "reject" && g.expect != "eventually-reject" && g.expect != "none")
        throw std::invalid_argument("expect must be accept, reject, eventually-reject or none");
      if (sizes.back() > spec.nodes()) throw std::invalid_argument("sample size exceeds nodes of " + g.spec);
    }
  }
}

ExperimentConfig config_from_json(const json& j) {
  static const char* const known[] = {"experiment", "sizes",    "trials",     "seed",   "k",
                                      "coupling",   "digraphon", "m",         "kernel", "resolution",
                                      "final_max",  "property",  "generators", "margin_coefficient", "cut_starts"};
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw std::invalid_argument("unknown config key '" + key + "'");
  ExperimentConfig c;
  try {
    c.experiment = j.at("experiment").get<std::string>();
    c.sizes = j.at("sizes").get<std::vector<int>>();
    c.trials = get_or(j, "trials", c.trials);
    c.seed = get_or(j, "seed", c.seed);
    c.k = get_or(j, "k", c.k);
    c.coupling = get_or(j, "coupling", c.coupling);
    c.digraphon = get_or(j, "digraphon", c.digraphon);
    c.m = get_or(j, "m", c.m);
    c.kernel = get_or(j, "kernel", c.kernel);
    c.resolution = get_or(j, "resolution", c.resolution);
    if (j.contains("final_max") && !j.at("final_max").is_null()) c.final_max = j.at("final_max").get<double>();
    c.property = get_or(j, "property", c.property);
    if (j.contains("generators"))
      for (const auto& g : j.at("generators")) {
        if (g.is_string())
          c.generators.push_back({g.get<std::string>(), "none"});
        else
          c.generators.push_back({g.at("spec").get<std::string>(), get_or<std::string>(g, "expect", "none")});
      }
    if (j.contains("margin_coefficient") && !j.at("margin_coefficient").is_null())
      c.margin_coefficient = j.at("margin_coefficient").get<double>();
    c.cut_starts = get_or(j, "cut_starts", c.cut_starts);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json g = json::array();
  for (const auto& x : c.generators) g.push_back({{"spec", x.spec}, {"expect", x.expect}});
  return json{{"experiment", c.experiment},
              {"sizes", c.sizes},
              {"trials", c.trials},
              {"seed", c.seed},
              {"k", c.k},
              {"coupling", c.coupling},
              {"digraphon", c.digraphon},
              {"m", c.m},
              {"kernel", c.kernel},
              {"resolution", c.resolution},
              {"final_max", c.final_max ? json(*c.final_max) : json(nullptr)},
              {"property", c.property},
              {"generators", g},
              {"margin_coefficient", c.margin_coefficient ? json(*c.margin_coefficient) : json(nullptr)},
              {"cut_starts", c.cut_starts}};
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

bool ExperimentReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport rep;
  if (config.experiment == kRounding)
    rep = run_rounding(config);
  else if (config.experiment == kPullback)
    rep = run_pullback(config);
  else if (config.experiment == kTester)
    rep = run_tester(config);
  else
    rep = run_stepping(config);
  rep.experiment = config.experiment;
  return rep;
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << "experiment,n,trial,seed,metric,value,exact_flag,fallback_flag\n";
  for (const auto& r : report.rows)
    out << r.experiment << ',' << r.n << ',' << r.trial << ',' << r.seed << ',' << r.metric << ',' << r.value << ','
        << (r.exact ? 1 : 0) << ',' << (r.fallback ? 1 : 0) << '\n';
  out.precision(old);
}

json summary_json(const ExperimentReport& report) {
  std::map<std::pair<std::string, int>, std::vector<const ExperimentRow*>> groups;
  std::vector<std::pair<std::string, int>> order;
  for (const auto& r : report.rows) {
    auto key = std::pair(r.metric, r.n);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  json metrics = json::array();
  for (const auto& key : order) {
    const auto& rows = groups[key];
    std::vector<double> vals;
    bool exact = true;
    bool fallback = false;
    for (const auto* r : rows) {
      vals.push_back(r->value);
      exact = exact && r->exact;
      fallback = fallback || r->fallback;
    }
    metrics.push_back({{"metric", key.first},
                       {"n", key.second},
                       {"count", vals.size()},
                       {"mean", std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(vals.size())},
                       {"median", median(vals)},
                       {"q10", quantile(vals, 0.1)},
                       {"q90", quantile(vals, 0.9)},
                       {"min", *std::min_element(vals.begin(), vals.end())},
                       {"max", *std::max_element(vals.begin(), vals.end())},
                       {"all_exact", exact},
                       {"any_fallback", fallback}});
  }
  json verdicts = json::array();
  for (const auto& v : report.verdicts) verdicts.push_back({{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
  return json{{"experiment", report.experiment}, {"passed", report.passed()}, {"verdicts", verdicts}, {"metrics", metrics}};
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace graphonlab
