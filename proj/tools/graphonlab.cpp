// graphonlab command-line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "graphonlab/certificate.hpp"
#include "graphonlab/distances.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/experiments.hpp"
#include "graphonlab/graph_io.hpp"
#include "graphonlab/kernel_io.hpp"
#include "graphonlab/pullback.hpp"
#include "graphonlab/sampling.hpp"
#include "graphonlab/testers.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace graphonlab;

namespace {

// A graph argument is a file path, or a generator spec such as "er:100,0.5".
SimpleGraph graph_arg(const std::string& arg, std::uint64_t seed) {
  if (fs::exists(arg)) return load_graph(arg);
  try {
    return generate(GeneratorSpec::parse(arg), RngSpec{seed, 0});
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("'" + arg + "' is neither a readable file nor a generator spec");
  }
}

void emit_json(const json& j) { std::cout << j.dump(2) << '\n'; }

template <typename Writer>
void emit(const std::string& out, Writer write) {
  if (out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  write(f);
}

json cut_json(const CutNormResult& r) {
  return json{{"value", r.value}, {"S", r.S}, {"T", r.T}, {"exact", r.exact}};
}

json cut_distance_json(const CutDistanceResult& r) {
  json layers = json::array();
  for (const auto& l : r.layers) layers.push_back(cut_json(l));
  return json{{"value", r.value}, {"exact", r.exact}, {"layers", layers}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph limits, cut distances and property testing toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Master seed for every random choice")->capture_default_str();

  // sample ------------------------------------------------------------------
  auto* sample = app.add_subcommand("sample", "Sample induced subgraphs, W-random graphs or colored digraphs");
  std::string s_graph, s_colored, s_graphon, s_digraphon, s_out;
  int s_r = 0;
  bool s_sorted = false;
  sample->add_option("--graph", s_graph, "Graph file or generator spec: induced sample on r nodes");
  sample->add_option("--colored", s_colored, "Colored digraph file: induced sample on r nodes");
  sample->add_option("--graphon", s_graphon, "Step kernel file: W-random graph on r nodes");
  sample->add_option("--digraphon", s_digraphon, "k-digraphon file: random colored digraph on r nodes");
  sample->add_option("--r,-r,--n", s_r, "Sample size")->required();
  sample->add_flag("--sorted", s_sorted, "Sort latent points before labeling (graphon sampling)");
  sample->add_option("--out,-o", s_out, "Output file (default stdout)");

  // cutnorm -----------------------------------------------------------------
  auto* cutnorm = app.add_subcommand("cutnorm", "Cut norm of a step kernel with its witness");
  std::string c_kernel;
  bool c_heuristic = false;
  int c_starts = kCutNormDefaultStarts;
  cutnorm->add_option("--kernel", c_kernel, "Step kernel file")->required()->check(CLI::ExistingFile);
  auto* c_exact_flag = cutnorm->add_flag("--exact", "Exact enumeration (at most 24 steps; default)");
  cutnorm->add_flag("--heuristic", c_heuristic, "Multi-start local search (lower bound)")->excludes(c_exact_flag);
  cutnorm->add_option("--starts", c_starts, "Local-search starts")->capture_default_str();

  // dist --------------------------------------------------------------------
  auto* dist = app.add_subcommand("dist", "Distances between two objects, or from a graph to a property");
  std::string d_metric = "dcut", d_type = "graph", d_mode, d_a, d_b, d_property;
  dist->add_option("--metric", d_metric, "d1 | dcut | delta")->check(CLI::IsMember({"d1", "dcut", "delta"}))->capture_default_str();
  dist->add_option("--type", d_type, "graph | colored | fractional | digraphon")
      ->check(CLI::IsMember({"graph", "colored", "fractional", "digraphon"}))
      ->capture_default_str();
  dist->add_option("--mode", d_mode, "delta mode: exact-perm | align-heuristic (default by size)");
  dist->add_option("--a", d_a, "First object (file; graphs may be generator specs)")->required();
  dist->add_option("--b", d_b, "Second object");
  dist->add_option("--property", d_property, "Graph property: distance from --a to it");

  // round -------------------------------------------------------------------
  auto* round = app.add_subcommand("round", "Randomized rounding of a fractional coloring");
  std::string r_coloring, r_out;
  bool r_joint = false;
  round->add_option("--coloring", r_coloring, "Fractional coloring file")->required()->check(CLI::ExistingFile);
  round->add_flag("--joint", r_joint, "One uniform per unordered pair drives both directions");
  round->add_option("--out,-o", r_out, "Output file (default stdout)");

  // pullback ----------------------------------------------------------------
  auto* pull = app.add_subcommand("pullback", "Fractional coloring of a graph pulled back from a k-digraphon");
  std::string p_graph, p_digraphon, p_out;
  int p_m = 1;
  pull->add_option("--graph", p_graph, "Graph file or generator spec")->required();
  pull->add_option("--digraphon", p_digraphon, "k-digraphon file")->required()->check(CLI::ExistingFile);
  pull->add_option("--m", p_m, "Shadow colors 1..m")->required();
  pull->add_option("--out,-o", p_out, "Coloring output file (default stdout)");

  // shadow ------------------------------------------------------------------
  auto* shadow_cmd = app.add_subcommand("shadow", "Shadow graph of a colored digraph");
  std::string sh_colored, sh_out;
  int sh_m = 1;
  shadow_cmd->add_option("--colored", sh_colored, "Colored digraph file")->required()->check(CLI::ExistingFile);
  shadow_cmd->add_option("--m", sh_m, "Shadow colors 1..m")->required();
  shadow_cmd->add_option("--out,-o", sh_out, "Output file (default stdout)");

  // test --------------------------------------------------------------------
  auto* test = app.add_subcommand("test", "Acceptance probability of an oblivious tester");
  std::string t_property, t_graph;
  int t_r = 0, t_trials = 1000;
  std::optional<double> t_margin;
  test->add_option("--property", t_property, "Graph property, e.g. maxcut:c=0.2")->required();
  test->add_option("--graph", t_graph, "Graph file or generator spec")->required();
  test->add_option("--r,-r", t_r, "Sample size")->required();
  test->add_option("--trials", t_trials, "Independent samples")->capture_default_str();
  test->add_option("--margin", t_margin, "Max-cut margin coefficient (default c)");

  // estimate ----------------------------------------------------------------
  auto* estimate = app.add_subcommand("estimate", "Estimate a parameter from random induced samples");
  std::string e_param = "edge-density", e_graph, e_colored;
  int e_k = 0, e_trials = 100, e_m = 2;
  double e_epsilon = 0.1;
  estimate->add_option("--param", e_param, "edge-density | normalized-maxcut (maxcut) | normalized-2-colored-edges")
      ->capture_default_str();
  estimate->add_option("--graph", e_graph, "Graph file or generator spec");
  estimate->add_option("--colored", e_colored, "Colored digraph file (for normalized-2-colored-edges)");
  estimate->add_option("--k,-k", e_k, "Sample size")->required();
  estimate->add_option("--trials", e_trials, "Samples")->capture_default_str();
  estimate->add_option("--m", e_m, "Shadow colors for the colored parameter")->capture_default_str();
  estimate->add_option("--epsilon", e_epsilon, "Deviation threshold")->capture_default_str();

  // certify -----------------------------------------------------------------
  auto* certify = app.add_subcommand("certify", "Certified parameter or nondeterministic membership");
  std::string cf_graph, cf_property;
  int cf_k = 3, cf_m = 2;
  bool cf_heuristic = false;
  certify->add_option("--graph", cf_graph, "Graph file or generator spec")->required();
  certify->add_option("--k,-k", cf_k, "Colors")->capture_default_str();
  certify->add_option("--m", cf_m, "Shadow colors 1..m")->capture_default_str();
  certify->add_option("--property", cf_property, "Colored-digraph property Q: search for a certificate");
  certify->add_flag("--heuristic", cf_heuristic, "Annealing instead of exact enumeration");

  // exp ---------------------------------------------------------------------
  auto* exp = app.add_subcommand("exp", "Run a configured experiment; exit status 1 if a verdict fails");
  std::string x_config, x_out = ".";
  exp->add_option("--config", x_config, "Experiment JSON")->required()->check(CLI::ExistingFile);
  exp->add_option("--out", x_out, "Output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      const int given = !s_graph.empty() + !s_colored.empty() + !s_graphon.empty() + !s_digraphon.empty();
      if (given != 1) throw std::invalid_argument("give exactly one of --graph, --colored, --graphon, --digraphon");
      const RngSpec rng{seed, 1};
      if (!s_graph.empty()) {
        const auto g = sample_induced(graph_arg(s_graph, seed), s_r, rng);
        emit(s_out, [&](std::ostream& o) { write_graph(o, g); });
      } else if (!s_colored.empty()) {
        const auto L = sample_induced_colored(load_colored_digraph(s_colored), s_r, rng);
        emit(s_out, [&](std::ostream& o) { write_colored_digraph(o, L); });
      } else if (!s_graphon.empty()) {
        const auto g = sample_graph_from_graphon(load_step_kernel(s_graphon), s_r, rng,
                                                 s_sorted ? LatentOrder::sorted : LatentOrder::as_drawn);
        emit(s_out, [&](std::ostream& o) { write_graph(o, g); });
      } else {
        const auto L = sample_from_digraphon(load_digraphon(s_digraphon), s_r, rng);
        emit(s_out, [&](std::ostream& o) { write_colored_digraph(o, L); });
      }
    } else if (*cutnorm) {
      CutNormOptions o;
      o.mode = c_heuristic ? CutNormMode::heuristic : CutNormMode::exact;
      o.starts = c_starts;
      o.rng = RngSpec{seed, 0};
      emit_json(cut_json(cut_norm(load_step_kernel(c_kernel), o)));
    } else if (*dist) {
      if (!d_property.empty()) {
        if (d_metric == "dcut") throw std::invalid_argument("distance to a property uses --metric d1 or delta");
        const auto r = distance_to_property(graph_arg(d_a, seed), PropertySpec::parse(d_property),
                                            d_metric == "d1" ? PropertyMetric::d1 : PropertyMetric::delta);
        emit_json({{"value", r.value}, {"exact", r.exact}, {"method", r.method}});
        return 0;
      }
      if (d_b.empty()) throw std::invalid_argument("--b is required unless --property is given");
      CutNormOptions heuristic;
      heuristic.mode = CutNormMode::heuristic;
      heuristic.rng = RngSpec{seed, 0};
      if (d_type == "graph") {
        const auto a = graph_arg(d_a, seed);
        const auto b = graph_arg(d_b, seed + 1);
        if (d_metric == "d1") {
          emit_json({{"value", edit_distance_graphs(a, b)}, {"exact", true}});
        } else if (d_metric == "dcut") {
          emit_json(cut_json(cut_distance_graphs_labeled(a, b, heuristic)));
        } else {
          DeltaMode mode = a.n() == b.n() && a.n() <= kDeltaExactLimit ? DeltaMode::exact_perm : DeltaMode::align_heuristic;
          if (d_mode == "exact-perm") mode = DeltaMode::exact_perm;
          else if (d_mode == "align-heuristic") mode = DeltaMode::align_heuristic;
          else if (!d_mode.empty()) throw std::invalid_argument("unknown delta mode '" + d_mode + "'");
          const auto r = delta_cut_upper(a, b, mode);
          emit_json({{"value", r.value}, {"exact", r.exact}, {"upper_bound", true}, {"permutation", r.permutation}});
        }
      } else if (d_type == "colored") {
        if (d_metric != "d1") throw std::invalid_argument("colored digraphs support --metric d1");
        emit_json({{"value", edit_distance_colored(load_colored_digraph(d_a), load_colored_digraph(d_b))}, {"exact", true}});
      } else if (d_type == "fractional") {
        if (d_metric != "dcut") throw std::invalid_argument("fractional colorings support --metric dcut");
        emit_json(cut_distance_json(
            cut_distance_fractional(load_fractional_coloring(d_a), load_fractional_coloring(d_b), heuristic)));
      } else {
        const auto a = load_digraphon(d_a);
        const auto b = load_digraphon(d_b);
        if (d_metric == "d1")
          emit_json({{"value", edit_distance_digraphons(a, b)}, {"exact", true}});
        else if (d_metric == "dcut")
          emit_json(cut_distance_json(cut_distance_digraphons(a, b, heuristic)));
        else
          throw std::invalid_argument("digraphons support --metric d1 or dcut");
      }
    } else if (*round) {
      const auto L = round_coloring(load_fractional_coloring(r_coloring), RngSpec{seed, 2},
                                    r_joint ? RoundingCoupling::joint : RoundingCoupling::independent);
      emit(r_out, [&](std::ostream& o) { write_colored_digraph(o, L); });
    } else if (*pull) {
      const auto r = pullback_coloring(graph_arg(p_graph, seed), load_digraphon(p_digraphon), p_m);
      emit(p_out, [&](std::ostream& o) { write_fractional_coloring(o, r.coloring); });
      std::cerr << "degenerate cells: " << r.fallback_cells << '\n';
    } else if (*shadow_cmd) {
      const auto g = shadow(load_colored_digraph(sh_colored), sh_m);
      emit(sh_out, [&](std::ostream& o) { write_graph(o, g); });
    } else if (*test) {
      const auto P = PropertySpec::parse(t_property);
      const auto T = P.kind == PropertyKind::maxcut_density ? tester_for_maxcut(P.param(0), t_r, t_trials, t_margin)
                                                            : tester_for_property(P, t_r, t_trials);
      const auto rep = acceptance_probability(graph_arg(t_graph, seed), T, RngSpec{seed, 3});
      emit_json({{"estimate", rep.probability},
                 {"ci", rep.ci_halfwidth},
                 {"accepted", rep.accepted},
                 {"trials", rep.trials},
                 {"seed", seed},
                 {"verdict", rep.verdict}});
    } else if (*estimate) {
      const ParameterId f = parse_parameter(e_param);
      EstimateReport rep;
      if (f == ParameterId::normalized_2_colored_edges) {
        if (e_colored.empty()) throw std::invalid_argument("normalized-2-colored-edges needs --colored");
        rep = estimate_colored_parameter(load_colored_digraph(e_colored), e_m, e_k, e_trials, RngSpec{seed, 4}, e_epsilon);
      } else {
        if (e_graph.empty()) throw std::invalid_argument("--graph is required");
        rep = estimate_parameter(graph_arg(e_graph, seed), f, e_k, e_trials, RngSpec{seed, 4}, e_epsilon);
      }
      emit_json({{"parameter", parameter_name(rep.parameter)},
                 {"estimate", rep.point_estimate},
                 {"true_value", rep.true_value ? json(*rep.true_value) : json(nullptr)},
                 {"deviation", rep.empirical_deviation},
                 {"epsilon", rep.epsilon},
                 {"delta", rep.delta ? json(*rep.delta) : json(nullptr)},
                 {"k", rep.sample_k},
                 {"trials", rep.trials},
                 {"seed", seed}});
    } else if (*certify) {
      const auto G = graph_arg(cf_graph, seed);
      if (!cf_property.empty()) {
        const auto L = brute_force_certificate(G, PropertySpec::parse(cf_property), cf_k, cf_m);
        json j{{"member", L.has_value()}};
        if (L) {
          std::ostringstream s;
          write_colored_digraph(s, *L);
          j["certificate"] = s.str();
        }
        emit_json(j);
      } else {
        const auto r = certified_parameter(G, cf_k, cf_m, cf_heuristic ? CertifiedMode::heuristic : CertifiedMode::exact,
                                           RngSpec{seed, 5});
        std::ostringstream s;
        write_colored_digraph(s, r.witness);
        emit_json({{"value", r.value}, {"exact", r.exact}, {"witness", s.str()}});
      }
    } else if (*exp) {
      const auto config = load_config(x_config);
      const auto rep = run_experiment(config);
      fs::create_directories(x_out);
      const fs::path base = fs::path(x_out) / config.experiment;
      emit(base.string() + ".csv", [&](std::ostream& o) { write_csv(o, rep); });
      const json summary = summary_json(rep);
      emit(base.string() + ".json", [&](std::ostream& o) { o << summary.dump(2) << '\n'; });
      for (const auto& v : rep.verdicts)
        std::cout << (v.passed ? "PASS  " : "FAIL  ") << v.name << ": " << v.detail << '\n';
      return rep.passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
