// Command-line front end: learn, simulate, bench, connectome, musep.

#include "cscreen/experiments/bench.hpp"
#include "cscreen/experiments/connectome.hpp"
#include "cscreen/graph_io.hpp"
#include "cscreen/hawkes.hpp"
#include "cscreen/hawkes_io.hpp"
#include "cscreen/screening.hpp"
#include "cscreen/separation.hpp"
#include "cscreen/walk.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace cscreen;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string format = "csv";
  bool json() const { return format == "json"; }
};

/// Writes to a file if `path` is non-empty, to stdout otherwise.
class Sink {
public:
  explicit Sink(const std::string &path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw InputError("cannot write '" + path + "'");
  }
  std::ostream &os() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

void write_file(const std::string &path, const std::string &content) {
  Sink s(path);
  s.os() << content;
}

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.pop_back();
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.erase(item.begin());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// `a,b,c` or `@file` with labels separated by commas or newlines.
std::vector<std::string> label_list(const std::string &arg) {
  if (arg.empty() || arg[0] != '@') return split_list(arg);
  std::ifstream in(arg.substr(1));
  if (!in) throw InputError("cannot open label file '" + arg.substr(1) + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    for (auto &l : split_list(line)) out.push_back(l);
  return out;
}

NodeSet node_set(const DirectedMixedGraph &g, const std::string &arg) {
  NodeSet s(g.size());
  for (const auto &l : label_list(arg)) s.insert(g.node(l));
  return s;
}

PairOrder order_from(const std::string &s, const Globals &g) {
  if (s == "random") return {true, g.seed};
  return PairOrder::parse(s);
}

// learn ----------------------------------------------------------------------

struct LearnArgs {
  std::string graph, observed, algo = "cs", order = "lex";
  std::string out_dot, out_json, certificates, trace, query_log;
  bool fixpoint = false;
};

json certificate_json(const LearnResult &r) {
  auto arr = json::array();
  const auto &g = r.graph;
  for (const auto &[e, c] : r.certificates)
    arr.push_back({{"tail", g.label(e.first)},
                   {"head", g.label(e.second)},
                   {"stage", to_string(c.stage)},
                   {"tested", {g.label(c.tested.first), g.label(c.tested.second)}},
                   {"conditioning", [&] {
                      auto c_arr = json::array();
                      c.conditioning.for_each([&](std::size_t v) { c_arr.push_back(g.label(NodeId(v))); });
                      return c_arr;
                    }()}});
  return arr;
}

int cmd_learn(const LearnArgs &a, const Globals &glob) {
  const auto truth = load_graph(a.graph);
  const auto obs = a.observed.empty() ? ObservedSet::all(truth)
                                      : ObservedSet::from_labels(truth, label_list(a.observed));
  GraphicalOracle oracle(truth, obs);
  if (!a.query_log.empty()) oracle.enable_log();
  ScreeningOptions opt{order_from(a.order, glob), a.fixpoint};
  const auto result = run(parse_algorithm(a.algo), oracle, opt);
  const auto &g = result.graph;

  if (!a.out_dot.empty()) write_file(a.out_dot, to_dot(g));
  if (!a.out_json.empty()) write_file(a.out_json, graph_to_json(g).dump(2) + "\n");
  if (!a.query_log.empty()) {
    Sink s(a.query_log);
    oracle.write_log_csv(s.os());
  }
  if (!a.certificates.empty()) {
    Sink s(a.certificates);
    if (glob.json()) {
      s.os() << certificate_json(result).dump(2) << "\n";
    } else {
      s.os() << "tail,head,stage,tested_a,tested_b,conditioning\n";
      for (const auto &[e, c] : result.certificates)
        s.os() << g.label(e.first) << ',' << g.label(e.second) << ',' << to_string(c.stage) << ','
               << g.label(c.tested.first) << ',' << g.label(c.tested.second) << ','
               << format_set(g, c.conditioning, "|") << '\n';
    }
  }
  if (!a.trace.empty()) {
    Sink s(a.trace);
    s.os() << "step,stage,tail,head,action\n";
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
      const auto &t = result.trace[i];
      s.os() << i << ',' << to_string(t.stage) << ',' << g.label(t.edge.first) << ','
             << g.label(t.edge.second) << ',' << (t.action == Action::keep ? "keep" : "remove") << '\n';
    }
  }

  if (glob.json()) {
    json j{{"algo", to_string(result.algorithm)},
           {"order", opt.order.str()},
           {"oracle_calls", result.oracle_calls},
           {"graph", graph_to_json(g)},
           {"certificates", certificate_json(result)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "tail,head\n";
    for (auto [t, h] : g.directed_edges()) std::cout << g.label(t) << ',' << g.label(h) << '\n';
  }
  std::cerr << to_string(result.algorithm) << ": " << g.directed_edge_count() << " edges on "
            << g.size() << " nodes, " << result.oracle_calls << " oracle calls\n";
  return 0;
}

// simulate -------------------------------------------------------------------

struct SimulateArgs {
  std::string model, intervene, out, out_graph;
  bool force = false;
  std::size_t event_cap = 10'000'000;
};

int cmd_simulate(const SimulateArgs &a, const Globals &glob) {
  const auto model = hawkes::load_model(a.model);
  std::vector<std::string> warnings;
  const auto graph = hawkes::causal_graph(model, &warnings);
  for (const auto &w : warnings) std::cerr << "warning: " << w << "\n";
  if (!a.out_graph.empty()) write_file(a.out_graph, graph_to_json(graph).dump(2) + "\n");

  hawkes::SimulationOptions opt{a.force, a.event_cap};
  const auto report = hawkes::stationarity_check(model);
  std::cerr << "spectral radius " << report.spectral_radius
            << (report.stationary ? " (stationary)\n" : " (not stationary)\n");
  const auto history = a.intervene.empty()
                           ? hawkes::simulate(model, glob.seed, opt)
                           : hawkes::simulate_intervened(model, hawkes::parse_intervention(model, a.intervene),
                                                         glob.seed, opt);
  Sink s(a.out);
  if (glob.json()) {
    auto arr = json::array();
    for (auto [t, i] : history.merged()) arr.push_back({{"node", model.label(i)}, {"time", t}});
    s.os() << arr.dump(2) << "\n";
  } else {
    hawkes::write_events_csv(s.os(), model, history);
  }
  std::cerr << history.total() << " events on [0, " << model.horizon() << "]\n";
  return 0;
}

// bench ----------------------------------------------------------------------

struct BenchArgs {
  std::size_t n = 5, replicates = 100;
  std::string p_dir = "0.3", p_bi = "0.1", algos = "cs,csapc,csap,ca", order = "lex";
  std::string out, summary;
  double latent_fraction = 0.0;
  bool timing = false;
};

double parse_probability(const std::string &s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != s.size()) throw InputError("not a number: '" + s + "'");
  return v;
}

int cmd_bench(const BenchArgs &a, const Globals &glob) {
  experiments::BenchConfig cfg;
  cfg.algorithms.clear();
  for (const auto &s : split_list(a.algos)) cfg.algorithms.push_back(parse_algorithm(s));
  cfg.latent_fraction = a.latent_fraction;
  cfg.screening.order = order_from(a.order, glob);
  cfg.threads = glob.threads;
  cfg.timing = a.timing;

  std::vector<experiments::MetricsRow> rows;
  for (const auto &pd : split_list(a.p_dir))
    for (const auto &pb : split_list(a.p_bi)) {
      cfg.corpus = {a.n, parse_probability(pd), parse_probability(pb), a.replicates, glob.seed};
      const auto part = experiments::bench_run(cfg);
      rows.insert(rows.end(), part.begin(), part.end());
    }
  const auto summary = experiments::summarize(rows);
  {
    Sink s(a.out);
    if (glob.json()) s.os() << experiments::metrics_json(rows).dump(2) << "\n";
    else experiments::write_metrics_csv(s.os(), rows);
  }
  if (!a.summary.empty()) {
    Sink s(a.summary);
    if (glob.json()) s.os() << experiments::summary_json(summary).dump(2) << "\n";
    else experiments::write_summary_csv(s.os(), summary);
  }
  for (const auto &sm : summary)
    std::cerr << to_string(sm.algorithm) << " p_dir=" << sm.p_dir << " p_bi=" << sm.p_bi
              << ": mean excess " << sm.mean_excess << ", mean calls " << sm.mean_calls << "\n";
  return 0;
}

// connectome -----------------------------------------------------------------

struct ConnectomeArgs {
  std::string input, algo = "cs", order = "lex", out, out_graph;
  experiments::ConnectomeSpec spec;
  std::size_t replicates = 10, k = 15;
  bool timing = false;
};

int cmd_connectome(const ConnectomeArgs &a, const Globals &glob) {
  const auto g = experiments::ingest_connectome(experiments::load_connectome_csv(a.input), a.spec);
  std::cerr << g.size() << " neurons, " << g.directed_edge_count() << " directed and "
            << g.bidirected_edge_count() << " bidirected edges after thresholding\n";
  if (!a.out_graph.empty()) write_file(a.out_graph, graph_to_json(g).dump(2) + "\n");

  experiments::ConnectomeConfig cfg;
  cfg.spec = a.spec;
  cfg.replicates = a.replicates;
  cfg.seed = glob.seed;
  cfg.algorithm = parse_algorithm(a.algo);
  cfg.screening.order = order_from(a.order, glob);
  cfg.k = a.k;
  cfg.threads = glob.threads;
  cfg.timing = a.timing;
  const auto rows = experiments::connectome_run(g, cfg);
  Sink s(a.out);
  if (glob.json()) s.os() << experiments::connectome_json(rows).dump(2) << "\n";
  else experiments::write_connectome_csv(s.os(), rows);
  return 0;
}

// musep ----------------------------------------------------------------------

struct MusepArgs {
  std::string graph, a, b, c;
};

int cmd_musep(const MusepArgs &m, const Globals &glob) {
  const auto g = load_graph(m.graph);
  const SeparationQuery q{node_set(g, m.a), node_set(g, m.b), node_set(g, m.c)};
  const auto walk = find_mu_connecting_walk(g, q);
  const std::string witness = walk ? format_walk(g, *walk) : "";
  if (glob.json()) {
    json j{{"A", label_list(m.a)}, {"B", label_list(m.b)}, {"C", label_list(m.c)}, {"separated", !walk}};
    if (walk) j["witness"] = witness;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "A,B,C,separated,witness\n"
              << format_set(g, q.a, "|") << ',' << format_set(g, q.b, "|") << ','
              << format_set(g, q.c, "|") << ',' << (walk ? "false" : "true") << ',' << witness << '\n';
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Causal screening for local independence graphs"};
  app.require_subcommand(1);
  Globals glob;
  app.add_option("--seed", glob.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", glob.threads, "Worker threads for replicate loops")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", glob.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  LearnArgs la;
  auto *learn = app.add_subcommand("learn", "Screen a graph with an oracle built from a true graph");
  learn->add_option("--graph", la.graph, "True graph (JSON)")->required()->check(CLI::ExistingFile);
  learn->add_option("--observed", la.observed, "Observed labels: a,b,c or @file (default: all)");
  learn->add_option("--algo", la.algo, "cs, csapc, csap, ca or trek")->capture_default_str();
  learn->add_option("--order", la.order, "Pair order: lex, random or random(N)")->capture_default_str();
  learn->add_flag("--parent-fixpoint", la.fixpoint, "Repeat the parent step until stable");
  learn->add_option("--out-dot", la.out_dot, "Write the output graph as DOT");
  learn->add_option("--out-json", la.out_json, "Write the output graph as JSON");
  learn->add_option("--emit-certificates", la.certificates, "Write separating sets of removed edges");
  learn->add_option("--emit-trace", la.trace, "Write every keep/remove decision");
  learn->add_option("--query-log", la.query_log, "Write every oracle query");

  SimulateArgs sa;
  auto *simulate = app.add_subcommand("simulate", "Simulate a linear Hawkes process");
  simulate->add_option("--model", sa.model, "Model (JSON)")->required()->check(CLI::ExistingFile);
  simulate->add_option("--intervene", sa.intervene, "Hard intervention node@t1,t2,...");
  simulate->add_option("--out", sa.out, "Event CSV (default: stdout)");
  simulate->add_option("--out-graph", sa.out_graph, "Write the causal graph as JSON");
  simulate->add_flag("--force", sa.force, "Simulate even if not stationary");
  simulate->add_option("--event-cap", sa.event_cap, "Abort after this many events")->capture_default_str();

  BenchArgs ba;
  auto *bench = app.add_subcommand("bench", "Compare algorithms on random graphs");
  bench->add_option("--n", ba.n, "Nodes per graph")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--replicates", ba.replicates, "Graphs per density")->capture_default_str();
  bench->add_option("--p-dir", ba.p_dir, "Directed edge probabilities, comma separated")->capture_default_str();
  bench->add_option("--p-bi", ba.p_bi, "Bidirected edge probabilities, comma separated")->capture_default_str();
  bench->add_option("--algos", ba.algos, "Algorithms, comma separated")->capture_default_str();
  bench->add_option("--latent-fraction", ba.latent_fraction, "Fraction of nodes hidden from the oracle");
  bench->add_option("--order", ba.order, "Pair order")->capture_default_str();
  bench->add_flag("--timing", ba.timing, "Record wall-clock time per run");
  bench->add_option("--out", ba.out, "Metrics output (default: stdout)");
  bench->add_option("--summary", ba.summary, "Per-algorithm means");

  ConnectomeArgs ca;
  auto *connectome = app.add_subcommand("connectome", "Screen subsampled connectome networks");
  connectome->add_option("--input", ca.input, "CSV pre,post,count,type")->required()->check(CLI::ExistingFile);
  connectome->add_option("--threshold", ca.spec.threshold, "Keep chemical synapses with count above this")
      ->capture_default_str();
  connectome->add_option("--gap-threshold", ca.spec.gap_threshold, "Same for gap junctions")
      ->capture_default_str();
  connectome->add_option("--m", ca.spec.m, "Neurons per subsample")->capture_default_str();
  connectome->add_option("--weight", ca.spec.weight_exponent, "Sampling weight exponent")
      ->capture_default_str();
  connectome->add_option("--replicates", ca.replicates, "Number of subsamples")->capture_default_str();
  connectome->add_option("--k", ca.k, "Hub set size for top-k overlap")->capture_default_str();
  connectome->add_option("--algo", ca.algo, "Screening algorithm")->capture_default_str();
  connectome->add_option("--order", ca.order, "Pair order")->capture_default_str();
  connectome->add_flag("--timing", ca.timing, "Record wall-clock time per run");
  connectome->add_option("--out", ca.out, "Per-replicate metrics (default: stdout)");
  connectome->add_option("--out-graph", ca.out_graph, "Write the ingested graph as JSON");

  MusepArgs ma;
  auto *musep = app.add_subcommand("musep", "Decide one mu-separation query");
  musep->add_option("--graph", ma.graph, "Graph (JSON)")->required()->check(CLI::ExistingFile);
  musep->add_option("--a", ma.a, "Source labels")->required();
  musep->add_option("--b", ma.b, "Target labels")->required();
  musep->add_option("--c", ma.c, "Conditioning labels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*learn) return cmd_learn(la, glob);
    if (*simulate) return cmd_simulate(sa, glob);
    if (*bench) return cmd_bench(ba, glob);
    if (*connectome) return cmd_connectome(ca, glob);
    if (*musep) return cmd_musep(ma, glob);
  } catch (const InputError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
