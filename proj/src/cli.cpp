#include "dpgs/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dpgs/graph.hpp"
#include "dpgs/metrics.hpp"
#include "dpgs/summarizers.hpp"
#include "dpgs/synth.hpp"

namespace dpgs {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verbosity { kQuiet, kInfo, kDebug };

Verbosity verbosity() {
  const char* level = std::getenv("DPGS_LOG");
  if (level == nullptr) return Verbosity::kInfo;
  const std::string v(level);
  if (v == "quiet" || v == "0") return Verbosity::kQuiet;
  if (v == "debug" || v == "2") return Verbosity::kDebug;
  return Verbosity::kInfo;
}

void info(const std::string& message) {
  if (verbosity() != Verbosity::kQuiet) std::cerr << "[dpgs] " << message << '\n';
}

void debug(const std::string& message) {
  if (verbosity() == Verbosity::kDebug) std::cerr << "[dpgs] " << message << '\n';
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

IdDialect parse_dialect(const std::string& name) {
  return name == "string" ? IdDialect::kString : IdDialect::kInteger;
}

LoadedGraph load_graph(const std::string& path, const std::string& dialect) {
  LoadedGraph loaded = load_edge_list_file(path, parse_dialect(dialect));
  if (loaded.cleanup.self_loops_dropped > 0) {
    info("dropped " + std::to_string(loaded.cleanup.self_loops_dropped) + " self-loop(s)");
  }
  if (loaded.cleanup.duplicates_collapsed > 0) {
    debug("collapsed " + std::to_string(loaded.cleanup.duplicates_collapsed) +
          " duplicate edge(s)");
  }
  return loaded;
}

json length_json(const DescriptionLength& d) {
  return {{"model_bits", d.model_bits}, {"error_nats", d.error_nats}, {"total_bits", d.total_bits}};
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::vector<std::string>& args, const json& inputs, const json& config,
                    std::uint64_t seed, double wall_ms, const json& outputs) {
  json manifest;
  manifest["command"] = command;
  manifest["argv"] = args;
  manifest["inputs"] = inputs;
  manifest["config"] = config;
  manifest["seed"] = seed;
  manifest["tool_version"] = kToolVersion;
  manifest["wall_ms"] = wall_ms;
  manifest["outputs"] = outputs;
  open_output(path) << manifest.dump(2) << '\n';
}

// Options shared by `summarize` and `bench`.
struct MethodOptions {
  std::string method = "dpgs";
  int iterations = 30;
  std::optional<double> target_ratio;
  std::optional<std::size_t> k;
  int bands_min = 3;
  int bands_max = 8;
  std::size_t group_cap = 500;
  std::string banding = "any";
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--method", method, "dpgs, kgs (uniform/L1) or kgs-cr (CR/KL)")
        ->check(CLI::IsMember({"dpgs", "kgs", "kgs-cr"}));
    cmd->add_option("--iters", iterations, "DPGS iterations T")->check(CLI::PositiveNumber);
    cmd->add_option("--target-ratio", target_ratio, "stop at n_s <= ratio * n")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--k", k, "k-Gs target supernode count");
    cmd->add_option("--bands-min", bands_min)->check(CLI::PositiveNumber);
    cmd->add_option("--bands-max", bands_max)->check(CLI::PositiveNumber);
    cmd->add_option("--group-cap", group_cap)->check(CLI::Range(2, 1 << 30));
    cmd->add_option("--banding", banding, "LSH band semantics: any or all")
        ->check(CLI::IsMember({"any", "all"}));
    cmd->add_option("--samples", samples, "k-Gs pairs per step (0: ceil(n_s/2), max 10000)");
    cmd->add_option("--seed", seed);
  }

  void validate() const {
    if (method == "dpgs") {
      if (k) throw UsageError("--k applies to kgs methods only");
      if (target_ratio && *target_ratio <= 0.0) throw UsageError("--target-ratio must be > 0");
      if (bands_min > bands_max) throw UsageError("--bands-min exceeds --bands-max");
    } else if (!k && !target_ratio) {
      throw UsageError("kgs methods need --k or --target-ratio");
    } else if (k && target_ratio) {
      throw UsageError("give either --k or --target-ratio, not both");
    }
  }

  DpgsConfig dpgs_config() const {
    DpgsConfig cfg;
    cfg.iterations = iterations;
    cfg.lsh.bands_min = bands_min;
    cfg.lsh.bands_max = bands_max;
    cfg.lsh.group_cap = group_cap;
    cfg.lsh.banding = banding == "all" ? Banding::kAllBands : Banding::kAnyBand;
    cfg.lsh.seed = seed;
    cfg.target_node_ratio = target_ratio;
    cfg.seed = seed;
    return cfg;
  }

  KgsConfig kgs_config(NodeId n) const {
    KgsConfig cfg;
    cfg.target_supernodes =
        k ? *k : static_cast<std::size_t>(std::floor(*target_ratio * static_cast<double>(n)));
    if (cfg.target_supernodes < 1 || cfg.target_supernodes >= n) {
      throw UsageError("k must satisfy 1 <= k < n (n=" + std::to_string(n) + ")");
    }
    cfg.samples_per_step = samples;
    cfg.objective = method == "kgs-cr" ? KgsObjective::kConfigurationKL : KgsObjective::kUniformL1;
    cfg.seed = seed;
    return cfg;
  }

  json to_json() const {
    json j{{"method", method}, {"seed", seed}};
    if (method == "dpgs") {
      j["iters"] = iterations;
      j["bands_min"] = bands_min;
      j["bands_max"] = bands_max;
      j["group_cap"] = group_cap;
      j["banding"] = banding;
    } else {
      j["samples"] = samples;
      if (k) j["k"] = *k;
    }
    j["target_ratio"] = target_ratio ? json(*target_ratio) : json(nullptr);
    return j;
  }
};

struct RunOutcome {
  SummaryGraph summary;
  std::vector<IterationLog> log;
};

RunOutcome run_method(const Graph& g, const MethodOptions& opts) {
  if (opts.method == "dpgs") {
    DpgsResult r = dpgs_summarize(g, opts.dpgs_config());
    if (r.relaxed_merges > 0) {
      info(std::to_string(r.relaxed_merges) +
           " merge(s) accepted with non-positive gain to reach the target ratio");
    }
    return {std::move(r.summary), std::move(r.log)};
  }
  const auto start = Clock::now();
  RunOutcome out{kgs_summarize(g, opts.kgs_config(g.num_nodes())), {}};
  IterationLog entry;
  entry.supernodes = out.summary.num_supernodes();
  entry.superedges = out.summary.num_superedges();
  entry.length = total_length(g, out.summary);
  entry.merges = g.num_nodes() - out.summary.num_supernodes();
  entry.elapsed_ms = elapsed_ms(start);
  out.log.push_back(entry);
  return out;
}

int cmd_summarize(const std::vector<std::string>& args, const std::string& input,
                  const std::string& dialect, std::string output, std::string log_path,
                  const MethodOptions& opts) {
  opts.validate();
  const auto start = Clock::now();
  LoadedGraph loaded = load_graph(input, dialect);
  const Graph& g = loaded.graph;
  info("loaded " + std::to_string(g.num_nodes()) + " nodes, " + std::to_string(g.num_edges()) +
       " edges");

  RunOutcome run = run_method(g, opts);
  if (output.empty()) output = input + ".summary";
  if (log_path.empty()) log_path = output + ".log.jsonl";
  {
    std::ofstream out = open_output(output);
    write_summary(out, run.summary, loaded.original_ids);
  }
  {
    std::ofstream log = open_output(log_path);
    for (const IterationLog& e : run.log) {
      json line{{"iteration", e.iteration},        {"n_s", e.supernodes},
                {"m_s", e.superedges},             {"model_bits", e.length.model_bits},
                {"error_nats", e.length.error_nats}, {"total_bits", e.length.total_bits},
                {"merges", e.merges},              {"elapsed_ms", e.elapsed_ms},
                {"bands", e.bands},                {"min_gain_bits", e.min_gain_bits}};
      log << line.dump() << '\n';
    }
  }
  const double relative = relative_length(g, run.summary);
  info("n_s=" + std::to_string(run.summary.num_supernodes()) +
       " relative_length=" + std::to_string(relative));
  write_manifest(output + ".manifest.json", "summarize", args, {{"input", input}},
                 opts.to_json(), opts.seed, elapsed_ms(start),
                 {{"summary", output}, {"log", log_path}});
  return kExitOk;
}

int cmd_evaluate(const std::vector<std::string>& args, const std::string& graph_path,
                 const std::string& summary_path, const std::string& dialect,
                 const std::string& scheme, bool spectral, bool assert_bound,
                 std::size_t spectral_cap, std::string output, std::string csv_path) {
  const auto start = Clock::now();
  LoadedGraph loaded = load_graph(graph_path, dialect);
  std::ifstream in(summary_path);
  if (!in) throw std::runtime_error("cannot open summary '" + summary_path + "'");
  const SummaryGraph s = read_summary(in, loaded.graph, loaded.original_ids);

  EvaluateOptions options;
  options.spectral = spectral || assert_bound;
  options.spectral_cap = spectral_cap;
  options.schemes = scheme == "both" || scheme == "uniform";
  options.l1 = loaded.graph.num_nodes() <= options.reconstruction_cap;
  const MetricsReport report = evaluate(loaded.graph, s, options);

  json j;
  j["length"] = length_json(report.length);
  j["relative_description_length"] = report.relative_description_length;
  j["kl_error_nats"] = report.kl_error_nats;
  if (report.l1_error_cr && scheme != "uniform") j["l1_error_cr"] = *report.l1_error_cr;
  if (report.l1_error_uniform && scheme != "cr") j["l1_error_uniform"] = *report.l1_error_uniform;
  if (report.schemes) {
    j["kl_cr_per_node"] = report.schemes->kl_cr;
    j["kl_uniform_per_node"] =
        report.schemes->uniform_undefined ? json(nullptr) : json(report.schemes->kl_uniform);
  }
  if (report.spectral) {
    j["spectral_check"] = {{"lhs", report.spectral->lhs},
                           {"rhs", report.spectral->rhs},
                           {"holds", report.spectral->holds}};
  }

  if (output.empty()) output = summary_path + ".metrics.json";
  if (csv_path.empty()) csv_path = summary_path + ".metrics.csv";
  open_output(output) << j.dump(2) << '\n';
  open_output(csv_path) << metrics_csv_header() << '\n' << metrics_csv_row(report) << '\n';
  std::cout << j.dump(2) << '\n';
  write_manifest(output + ".manifest.json", "evaluate", args,
                 {{"graph", graph_path}, {"summary", summary_path}},
                 {{"scheme", scheme}, {"spectral", options.spectral}}, 0, elapsed_ms(start),
                 {{"metrics_json", output}, {"metrics_csv", csv_path}});
  if (assert_bound && !report.spectral->holds) {
    std::cerr << "spectral bound violated: " << report.spectral->lhs << " > "
              << report.spectral->rhs << '\n';
    return kExitAssertion;
  }
  return kExitOk;
}

int cmd_reconstruct(const std::vector<std::string>& args, const std::string& graph_path,
                    const std::string& summary_path, const std::string& dialect,
                    const std::string& scheme, std::size_t cap, const std::string& output) {
  const auto start = Clock::now();
  LoadedGraph loaded = load_graph(graph_path, dialect);
  std::ifstream in(summary_path);
  if (!in) throw std::runtime_error("cannot open summary '" + summary_path + "'");
  const SummaryGraph s = read_summary(in, loaded.graph, loaded.original_ids);
  const DenseMatrix a = full_reconstruction(
      s, loaded.graph, scheme == "uniform" ? Scheme::kUniform : Scheme::kConfiguration, cap);
  std::ofstream out = open_output(output);
  out.precision(17);
  for (std::size_t i = 0; i < a.n; ++i) {
    for (std::size_t j = 0; j < a.n; ++j) {
      if (a(i, j) != 0.0) {
        out << loaded.original_ids[i] << ' ' << loaded.original_ids[j] << ' ' << a(i, j) << '\n';
      }
    }
  }
  write_manifest(output + ".manifest.json", "reconstruct", args,
                 {{"graph", graph_path}, {"summary", summary_path}}, {{"scheme", scheme}}, 0,
                 elapsed_ms(start), {{"matrix", output}});
  return kExitOk;
}

int cmd_generate(const std::vector<std::string>& args, const std::string& model, NodeId n,
                 double p, double alpha, std::uint32_t d_min, std::uint64_t seed,
                 const std::string& output) {
  const auto start = Clock::now();
  if (model == "er" && !(p >= 0.0 && p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
  if (model == "plaw" && !(alpha > 2.0)) throw UsageError("--alpha must exceed 2");
  const Graph g = model == "er" ? gen_er(n, p, seed) : gen_power_law(n, alpha, d_min, seed);
  {
    std::ofstream out = open_output(output);
    out << "# model=" << model << " n=" << n << " seed=" << seed << '\n';
    write_edge_list(out, g);
  }
  info("generated " + std::to_string(g.num_nodes()) + " nodes, " + std::to_string(g.num_edges()) +
       " edges");
  json config{{"model", model}, {"n", n}};
  if (model == "er") {
    config["p"] = p;
  } else {
    config["alpha"] = alpha;
    config["d_min"] = d_min;
  }
  write_manifest(output + ".manifest.json", "generate", args, json::object(), config, seed,
                 elapsed_ms(start), {{"edge_list", output}});
  return kExitOk;
}

int cmd_bench(const std::vector<std::string>& args, const std::string& input,
              const std::string& dialect, std::vector<double> fractions,
              const MethodOptions& opts, const std::string& output) {
  opts.validate();
  const auto start = Clock::now();
  LoadedGraph loaded = load_graph(input, dialect);
  std::sort(fractions.begin(), fractions.end());
  std::ofstream out = open_output(output);
  out << "fraction,nodes,edges,wall_ms,supernodes,relative_length\n";
  out.precision(10);
  for (std::size_t r = 0; r < fractions.size(); ++r) {
    const double f = fractions[r];
    if (!(f > 0.0 && f <= 1.0)) throw UsageError("node fractions must lie in (0, 1]");
    Rng rng = make_rng(opts.seed, "bench-subgraph", r);
    const Graph sub = f == 1.0 ? loaded.graph : sample_induced_subgraph(loaded.graph, f, rng);
    const auto t0 = Clock::now();
    RunOutcome run = run_method(sub, opts);
    const double wall = elapsed_ms(t0);
    out << f << ',' << sub.num_nodes() << ',' << sub.num_edges() << ',' << wall << ','
        << run.summary.num_supernodes() << ',' << relative_length(sub, run.summary) << '\n';
    info("fraction " + std::to_string(f) + ": " + std::to_string(sub.num_edges()) + " edges in " +
         std::to_string(wall) + " ms");
  }
  write_manifest(output + ".manifest.json", "bench", args, {{"input", input}},
                 {{"method", opts.to_json()}, {"node_fractions", fractions}}, opts.seed,
                 elapsed_ms(start), {{"csv", output}});
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Degree-preserving graph summarization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string dialect = "int";
  auto add_dialect = [&dialect](CLI::App* cmd) {
    cmd->add_option("--dialect", dialect, "node id dialect: int or string")
        ->check(CLI::IsMember({"int", "string"}));
  };

  // summarize
  auto* summarize = app.add_subcommand("summarize", "summarize an edge list");
  std::string sum_input, sum_output, sum_log;
  MethodOptions sum_opts;
  summarize->add_option("--input", sum_input, "edge list")->required();
  summarize->add_option("--output", sum_output, "summary file (default <input>.summary)");
  summarize->add_option("--log", sum_log, "JSONL run log (default <output>.log.jsonl)");
  sum_opts.add_to(summarize);
  add_dialect(summarize);

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score a summary against its graph");
  std::string ev_graph, ev_summary, ev_scheme = "both", ev_output, ev_csv;
  bool ev_spectral = false;
  bool ev_assert = false;
  std::size_t ev_cap = kDefaultSpectralCap;
  evaluate_cmd->add_option("--graph", ev_graph)->required();
  evaluate_cmd->add_option("--summary", ev_summary)->required();
  evaluate_cmd->add_option("--scheme", ev_scheme)->check(CLI::IsMember({"cr", "uniform", "both"}));
  evaluate_cmd->add_flag("--spectral", ev_spectral, "run the eigenvalue bound check");
  evaluate_cmd->add_flag("--assert-bound", ev_assert, "exit 1 if the eigenvalue bound fails");
  evaluate_cmd->add_option("--spectral-cap", ev_cap);
  evaluate_cmd->add_option("--output", ev_output, "metrics JSON");
  evaluate_cmd->add_option("--csv", ev_csv, "metrics CSV");
  add_dialect(evaluate_cmd);

  // reconstruct
  auto* reconstruct = app.add_subcommand("reconstruct", "write the reconstructed matrix");
  std::string rc_graph, rc_summary, rc_scheme = "cr", rc_output;
  std::size_t rc_cap = kDefaultReconstructionCap;
  reconstruct->add_option("--graph", rc_graph)->required();
  reconstruct->add_option("--summary", rc_summary)->required();
  reconstruct->add_option("--scheme", rc_scheme)->check(CLI::IsMember({"cr", "uniform"}));
  reconstruct->add_option("--cap", rc_cap, "maximum node count");
  reconstruct->add_option("--output", rc_output)->required();
  add_dialect(reconstruct);

  // generate
  auto* generate = app.add_subcommand("generate", "write a synthetic edge list");
  std::string gen_model, gen_output;
  NodeId gen_n = 1000;
  double gen_p = 0.02;
  double gen_alpha = 3.0;
  std::uint32_t gen_dmin = kDefaultPowerLawMinDegree;
  std::uint64_t gen_seed = 0;
  generate->add_option("--model", gen_model)->required()->check(CLI::IsMember({"er", "plaw"}));
  generate->add_option("--n", gen_n)->check(CLI::PositiveNumber);
  generate->add_option("--p", gen_p);
  generate->add_option("--alpha", gen_alpha);
  generate->add_option("--d-min", gen_dmin)->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen_seed);
  generate->add_option("--output", gen_output)->required();

  // bench
  auto* bench = app.add_subcommand("bench", "time a method on random node-induced subgraphs");
  std::string bench_input, bench_output;
  std::vector<double> bench_fractions{0.25, 0.5, 1.0};
  MethodOptions bench_opts;
  bench->add_option("--input", bench_input)->required();
  bench->add_option("--node-fractions", bench_fractions)->delimiter(',');
  bench->add_option("--output", bench_output)->required();
  bench_opts.add_to(bench);
  add_dialect(bench);

  // rerun
  auto* rerun = app.add_subcommand("rerun", "replay the command recorded in a manifest");
  std::string manifest_path;
  rerun->add_option("--manifest", manifest_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*summarize) {
      return cmd_summarize(args, sum_input, dialect, sum_output, sum_log, sum_opts);
    }
    if (*evaluate_cmd) {
      return cmd_evaluate(args, ev_graph, ev_summary, dialect, ev_scheme, ev_spectral, ev_assert,
                          ev_cap, ev_output, ev_csv);
    }
    if (*reconstruct) {
      return cmd_reconstruct(args, rc_graph, rc_summary, dialect, rc_scheme, rc_cap, rc_output);
    }
    if (*generate) {
      return cmd_generate(args, gen_model, gen_n, gen_p, gen_alpha, gen_dmin, gen_seed,
                          gen_output);
    }
    if (*bench) {
      return cmd_bench(args, bench_input, dialect, bench_fractions, bench_opts, bench_output);
    }
    if (*rerun) {
      std::ifstream in(manifest_path);
      if (!in) throw std::runtime_error("cannot open manifest '" + manifest_path + "'");
      const json manifest = json::parse(in);
      const auto replay = manifest.at("argv").get<std::vector<std::string>>();
      if (!replay.empty() && replay.front() == "rerun") throw UsageError("manifest replays itself");
      return run_cli(replay);
    }
  } catch (const std::exception& e) {
    std::cerr << "dpgs: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dpgs
