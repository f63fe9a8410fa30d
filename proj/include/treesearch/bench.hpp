#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treesearch/env_factory.hpp"
#include "treesearch/search.hpp"

namespace treesearch {

// A sweep evaluates every (variant, budget) cell over a fixed number of
// episodes. Per-episode randomness is derived, never shared: the search
// stream hashes (master, env, variant, budget, episode) while the reset
// stream leaves the variant out so all variants face identical initial
// states in the same cell row.
struct ExperimentConfig {
  EnvParams env;
  std::vector<Variant> variants{Variant::Baseline, Variant::TreeUncertainty};
  std::vector<int> budgets{8, 32, 128};
  int episodes = 25;
  std::uint64_t master_seed = 0;
  SearchConfig search;  // variant/n_trace/rng_seed overridden per cell
  int jobs = 1;

  void validate() const;  // throws std::invalid_argument
};

struct EpisodeRecord {
  std::string env;
  Variant variant = Variant::Baseline;
  int budget = 0;
  int episode = 0;
  std::uint64_t seed = 0;      // search-stream seed
  double episode_return = 0.0; // undiscounted sum of real rewards
  int steps = 0;
  long nodes = 0;              // expansions summed over the episode's searches
  double wall_ms = 0.0;
};

struct SweepRow {
  std::string env;
  Variant variant = Variant::Baseline;
  int budget = 0;
  double mean_return = 0.0;
  double stderr_return = 0.0;  // sample stddev / sqrt(episodes)
  double mean_nodes = 0.0;
  double mean_wall_ms = 0.0;
};

struct SweepResult {
  std::vector<EpisodeRecord> records;  // sorted (env, variant, budget, episode)
  std::vector<SweepRow> summary;
};

std::uint64_t episode_search_seed(std::uint64_t master_seed,
                                  const std::string& env_name, Variant variant,
                                  int budget, int episode);
std::uint64_t episode_reset_seed(std::uint64_t master_seed,
                                 const std::string& env_name, int budget,
                                 int episode);

// Plays one full episode: a fresh search per real step (unless the config
// reuses trees), the decided action applied to the environment.
EpisodeRecord run_episode(const EnvModel& env, Variant variant, int budget,
                          const SearchConfig& base, std::uint64_t search_seed,
                          std::uint64_t reset_seed, int episode_index);

// Runs every cell of the experiment, optionally on several threads; results
// are deterministic and identically ordered regardless of the job count
// (wall_ms aside).
SweepResult run_sweep(const ExperimentConfig& cfg);

// Aggregates records into per-(env, variant, budget) summary rows. Values are
// normalized through their CSV rendering first, so recomputing aggregates
// from a written record file reproduces the summary exactly.
std::vector<SweepRow> summarize(const std::vector<EpisodeRecord>& records);

inline constexpr const char* kRecordsCsvHeader =
    "env,variant,budget,episode,seed,return,steps,nodes,wall_ms";
inline constexpr const char* kSummaryCsvHeader =
    "env,variant,budget,mean_return,stderr,mean_nodes,mean_wall_ms";

std::string records_to_csv(const std::vector<EpisodeRecord>& records);
std::string summary_to_csv(const std::vector<SweepRow>& rows);
void write_file(const std::string& path, const std::string& contents);

std::vector<EpisodeRecord> parse_records_csv(const std::string& text);
std::vector<SweepRow> parse_summary_csv(const std::string& text);
std::string read_file(const std::string& path);

// Structured echo of the experiment (JSON): config, library version, seed.
std::string manifest_json(const ExperimentConfig& cfg);

}  // namespace treesearch
