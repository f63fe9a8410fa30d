// Command-line front end: run episodes, sweep benchmark grids, query the
// exhaustive oracle, dump search trees, and render charts.
//
// Exit codes: 0 on success (including --help), 1 on bad usage, 2 when a
// command fails at runtime.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treesearch/bench.hpp"
#include "treesearch/env_factory.hpp"
#include "treesearch/oracle.hpp"
#include "treesearch/plot.hpp"
#include "treesearch/search.hpp"
#include "treesearch/tree_dump.hpp"
#include "treesearch/version.hpp"

namespace ts = treesearch;

namespace {

void add_env_options(CLI::App* cmd, ts::EnvParams& p) {
  cmd->add_option("--env", p.name,
                  "Environment: chain, loopy-chain, frozenlake, cartpole")
      ->capture_default_str();
  cmd->add_option("--length", p.length, "Chain length (chain variants only)")
      ->capture_default_str();
  cmd->add_option("--goal-reward", p.goal_reward,
                  "Reward for reaching the chain goal")
      ->capture_default_str();
  cmd->add_option("--map-seed", p.map_seed,
                  "Seed for the per-state correct-action map")
      ->capture_default_str();
  cmd->add_option("--horizon", p.horizon,
                  "Episode horizon override (0 keeps the default)")
      ->capture_default_str();
  cmd->add_option("--angle-limit", p.cart_angle_limit_deg,
                  "Cart-pole failure angle in degrees")
      ->capture_default_str();
  cmd->add_option("--x-limit", p.cart_x_limit,
                  "Cart-pole failure position bound")
      ->capture_default_str();
}

void add_search_options(CLI::App* cmd, ts::SearchConfig& s) {
  cmd->add_option("--c", s.c, "Exploration constant")->capture_default_str();
  cmd->add_option("--gamma", s.gamma, "Discount factor")
      ->capture_default_str();
  cmd->add_option("--eta", s.eta, "State-distance threshold for loop blocking")
      ->capture_default_str();
  cmd->add_option("--max-rollout-depth", s.max_rollout_depth,
                  "Cap on random roll-out length")
      ->capture_default_str();
  cmd->add_option("--loop-cap", s.loop_value_cap,
                  "Value magnitude assigned to rewarding loops "
                  "(default: reward bound times horizon)");
}

std::string join_actions(const std::vector<int>& actions) {
  std::string out;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(actions[i]);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "treesearch: Monte Carlo tree search for deterministic environments, "
      "with tree-uncertainty and loop-blocking variants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ts::kVersion);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");
  app.set_config("--config", "", "Read options from a TOML/INI file");

  // --- run: one episode, fresh search per step, record printed as CSV ---
  ts::EnvParams run_env;
  ts::SearchConfig run_search;
  std::string run_variant = "mcts";
  int run_budget = 128;
  int run_episode_idx = 0;
  std::uint64_t run_seed = 0;
  CLI::App* run_cmd = app.add_subcommand(
      "run", "Play one episode, searching afresh at every step");
  add_env_options(run_cmd, run_env);
  add_search_options(run_cmd, run_search);
  run_cmd->add_option("--variant", run_variant,
                      "Search variant: mcts, mcts-t, mcts-t+")
      ->capture_default_str();
  run_cmd->add_option("--budget", run_budget, "Traces per root search")
      ->capture_default_str();
  run_cmd->add_option("--episode", run_episode_idx,
                      "Episode index fed into seed derivation")
      ->capture_default_str();
  run_cmd->add_option("--seed", run_seed, "Master seed")
      ->capture_default_str()
      ->envname("TREESEARCH_SEED");
  run_cmd->callback([&] {
    const std::unique_ptr<ts::EnvModel> env = ts::make_env(run_env);
    const ts::Variant variant = ts::variant_from_string(run_variant);
    const std::uint64_t search_seed = ts::episode_search_seed(
        run_seed, env->spec().name, variant, run_budget, run_episode_idx);
    const std::uint64_t reset_seed = ts::episode_reset_seed(
        run_seed, env->spec().name, run_budget, run_episode_idx);
    const ts::EpisodeRecord rec =
        ts::run_episode(*env, variant, run_budget, run_search, search_seed,
                        reset_seed, run_episode_idx);
    std::cout << ts::records_to_csv({rec});
  });

  // --- sweep: variants x budgets x episodes grid with CSV/JSON artifacts ---
  ts::ExperimentConfig sweep_cfg;
  std::vector<std::string> sweep_variants = {"mcts", "mcts-t"};
  std::string sweep_out = "out";
  bool sweep_plot = false;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Benchmark variants over trace budgets and write artifacts");
  add_env_options(sweep_cmd, sweep_cfg.env);
  add_search_options(sweep_cmd, sweep_cfg.search);
  sweep_cmd->add_option("--variants", sweep_variants, "Variants to compare")
      ->capture_default_str();
  sweep_cmd->add_option("--budgets", sweep_cfg.budgets,
                        "Trace budgets, strictly ascending")
      ->capture_default_str();
  sweep_cmd->add_option("--episodes", sweep_cfg.episodes, "Episodes per cell")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep_cfg.master_seed, "Master seed")
      ->capture_default_str()
      ->envname("TREESEARCH_SEED");
  sweep_cmd->add_option("--jobs", sweep_cfg.jobs, "Worker threads")
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "Output directory")
      ->capture_default_str();
  sweep_cmd->add_flag("--plot", sweep_plot,
                      "Also write one SVG chart per environment");
  sweep_cmd->callback([&] {
    sweep_cfg.variants.clear();
    for (const std::string& name : sweep_variants)
      sweep_cfg.variants.push_back(ts::variant_from_string(name));
    const ts::SweepResult result = ts::run_sweep(sweep_cfg);
    std::filesystem::create_directories(sweep_out);
    ts::write_file(sweep_out + "/records.csv",
                   ts::records_to_csv(result.records));
    ts::write_file(sweep_out + "/summary.csv",
                   ts::summary_to_csv(result.summary));
    ts::write_file(sweep_out + "/manifest.json", ts::manifest_json(sweep_cfg));
    if (sweep_plot)
      for (const auto& [env_name, svg] : ts::render_sweep_svgs(result.summary))
        ts::write_file(sweep_out + "/" + env_name + ".svg", svg);
    std::cout << ts::summary_to_csv(result.summary);
  });

  // --- oracle: exhaustive enumeration from the initial state ---
  ts::EnvParams oracle_env;
  double oracle_gamma = 1.0;
  std::uint64_t oracle_seed = 0;
  long oracle_budget = 10'000'000;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Exhaustively evaluate the initial state by brute force");
  add_env_options(oracle_cmd, oracle_env);
  oracle_cmd->add_option("--gamma", oracle_gamma, "Discount factor")
      ->capture_default_str();
  oracle_cmd->add_option("--seed", oracle_seed, "Reset seed")
      ->capture_default_str()
      ->envname("TREESEARCH_SEED");
  oracle_cmd
      ->add_option("--node-budget", oracle_budget,
                   "Abort after this many environment transitions")
      ->capture_default_str();
  oracle_cmd->callback([&] {
    const std::unique_ptr<ts::EnvModel> env = ts::make_env(oracle_env);
    const ts::State state = env->reset(oracle_seed);
    const ts::OracleResult res = ts::oracle_solve(
        *env, state, env->spec().horizon, oracle_gamma, oracle_budget);
    std::cout << "optimal_value=" << ts::format_g6(res.optimal_value) << "\n"
              << "optimal_actions=" << join_actions(res.optimal_actions)
              << "\n"
              << "expanded_traces=" << res.expanded_traces << "\n";
  });

  // --- dump-tree: one search at the initial state, tree printed as text ---
  ts::EnvParams dump_env;
  ts::SearchConfig dump_search;
  std::string dump_variant = "mcts-t";
  int dump_budget = 32;
  std::uint64_t dump_seed = 0;
  std::uint64_t dump_reset_seed = 0;
  CLI::App* dump_cmd = app.add_subcommand(
      "dump-tree", "Run one search at the initial state and print the tree");
  add_env_options(dump_cmd, dump_env);
  add_search_options(dump_cmd, dump_search);
  dump_cmd->add_option("--variant", dump_variant,
                       "Search variant: mcts, mcts-t, mcts-t+")
      ->capture_default_str();
  dump_cmd->add_option("--budget", dump_budget, "Traces for the search")
      ->capture_default_str();
  dump_cmd->add_option("--seed", dump_seed, "Search stream seed")
      ->capture_default_str()
      ->envname("TREESEARCH_SEED");
  dump_cmd->add_option("--reset-seed", dump_reset_seed, "Environment reset seed")
      ->capture_default_str();
  dump_cmd->callback([&] {
    const std::unique_ptr<ts::EnvModel> env = ts::make_env(dump_env);
    dump_search.variant = ts::variant_from_string(dump_variant);
    dump_search.n_trace = dump_budget;
    dump_search.rng_seed = dump_seed;
    dump_search.validate();
    ts::Rng rng(dump_seed);
    ts::TreeSearch search(*env, dump_search);
    search.begin_search(env->reset(dump_reset_seed), env->spec().horizon);
    while (search.step_trace(rng)) {
    }
    std::cout << ts::dump_tree(search.root());
  });

  // --- plot: render SVG charts from an existing summary CSV ---
  std::string plot_summary = "out/summary.csv";
  std::string plot_out = "out";
  CLI::App* plot_cmd =
      app.add_subcommand("plot", "Render SVG charts from a summary CSV");
  plot_cmd->add_option("--summary", plot_summary, "Path to summary.csv")
      ->capture_default_str();
  plot_cmd->add_option("--out", plot_out, "Output directory")
      ->capture_default_str();
  plot_cmd->callback([&] {
    const std::vector<ts::SweepRow> rows =
        ts::parse_summary_csv(ts::read_file(plot_summary));
    std::filesystem::create_directories(plot_out);
    for (const auto& [env_name, svg] : ts::render_sweep_svgs(rows)) {
      const std::string path = plot_out + "/" + env_name + ".svg";
      ts::write_file(path, svg);
      std::cout << path << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
