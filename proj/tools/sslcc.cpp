// Command-line front end: run experiments, check datasets, generate
// synthetic graphs.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sslcc/data_io.hpp"
#include "sslcc/errors.hpp"
#include "sslcc/harness.hpp"
#include "sslcc/synthetic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

int run(const std::string& config_path) {
  const sslcc::ExperimentConfig config = sslcc::load_config(config_path);
  const sslcc::ExperimentReport report = sslcc::run_experiment(config);
  sslcc::write_summary_csv(std::cout, report);
  for (const auto& r : report.results) {
    if (!r.ok()) {
      std::cerr << "trial failed: " << r.method << " density " << r.density << " trial " << r.trial
                << ": " << r.error << '\n';
    }
  }
  if (!report.results.empty() && report.failures() == report.results.size()) return kExitRuntime;
  std::cout << "reports written to " << config.output_dir.string() << '\n';
  return kExitOk;
}

int validate(const std::string& nodes, const std::string& edges) {
  const sslcc::RawDataset raw = sslcc::load_dataset(nodes, edges);
  const sslcc::RawDataset linked = sslcc::remove_isolated(raw);
  const sslcc::DataGraph graph = sslcc::build_graph(raw);
  std::cout << "nodes:          " << raw.node_count() << '\n'
            << "isolated:       " << raw.node_count() - linked.node_count() << '\n'
            << "nodes (linked): " << graph.node_count() << '\n'
            << "links:          " << graph.edge_count() << '\n'
            << "classes:        " << graph.class_count() << '\n'
            << "attributes:     " << graph.attribute_dim() << " (after binarization)\n";
  std::vector<std::size_t> counts(graph.class_count(), 0);
  for (auto c : graph.true_labels()) ++counts[static_cast<std::size_t>(c)];
  for (std::size_t c = 0; c < counts.size(); ++c) {
    std::cout << "  " << std::setw(12) << std::left << graph.label_domain()[c] << ' ' << counts[c]
              << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-supervised collective classification experiments"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment described by a config file");
  run_cmd->add_option("--config", config_path, "Experiment config")->required();

  std::string nodes_path, edges_path;
  auto* validate_cmd = app.add_subcommand("validate", "Load and check a dataset");
  validate_cmd->add_option("--nodes", nodes_path, "Node file")->required();
  validate_cmd->add_option("--edges", edges_path, "Edge file")->required();

  sslcc::SyntheticOptions synth;
  std::string out_dir;
  auto* gen_cmd = app.add_subcommand("gen-synthetic", "Write a synthetic homophilous graph");
  gen_cmd->add_option("--nodes", synth.nodes, "Node count")->required();
  gen_cmd->add_option("--classes", synth.classes, "Class count")->required();
  gen_cmd->add_option("--homophily", synth.homophily, "Probability a link joins same-class nodes")
      ->required();
  gen_cmd->add_option("--attr-noise", synth.attr_noise, "Attribute noise standard deviation")
      ->required();
  gen_cmd->add_option("--seed", synth.seed, "Random seed")->required();
  gen_cmd->add_option("--out", out_dir, "Output directory")->required();
  gen_cmd->add_option("--dims", synth.attr_dims, "Attribute dimensions");
  gen_cmd->add_option("--links-per-node", synth.links_per_node, "Links started by each node");
  gen_cmd->add_option("--class-weights", synth.class_weights, "Relative class frequencies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return run(config_path);
    if (*validate_cmd) return validate(nodes_path, edges_path);
    if (*gen_cmd) {
      std::filesystem::create_directories(out_dir);
      const auto data = sslcc::generate_synthetic(synth);
      sslcc::write_dataset(data, std::filesystem::path(out_dir) / "nodes.tsv",
                           std::filesystem::path(out_dir) / "edges.tsv");
      std::cout << "wrote " << data.node_count() << " nodes and " << data.edges.size()
                << " links to " << out_dir << '\n';
      return kExitOk;
    }
  } catch (const sslcc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sslcc::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sslcc::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
