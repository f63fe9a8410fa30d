#include "treesearch/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "treesearch/tree_dump.hpp"
#include "treesearch/version.hpp"

namespace treesearch {

namespace {

double parse_double(const std::string& field) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    throw std::invalid_argument("csv: bad numeric field '" + field + "'");
  return v;
}

// Normalizes a double through its CSV rendering so in-memory aggregates and
// aggregates recomputed from a written file agree bit-for-bit.
double csv_normalize(double v) { return parse_double(format_g6(v)); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::vector<std::string> non_empty_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur))
    if (!cur.empty()) lines.push_back(cur);
  return lines;
}

auto record_key(const EpisodeRecord& r) {
  return std::make_tuple(r.env, to_string(r.variant), r.budget, r.episode);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (episodes < 1)
    throw std::invalid_argument("experiment: episodes must be >= 1");
  if (variants.empty())
    throw std::invalid_argument("experiment: no variants given");
  for (std::size_t i = 0; i + 1 < variants.size(); ++i)
    for (std::size_t j = i + 1; j < variants.size(); ++j)
      if (variants[i] == variants[j])
        throw std::invalid_argument("experiment: duplicate variant");
  if (budgets.empty())
    throw std::invalid_argument("experiment: no budgets given");
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    if (budgets[i] < 1)
      throw std::invalid_argument("experiment: budgets must be positive");
    if (i > 0 && budgets[i] <= budgets[i - 1])
      throw std::invalid_argument("experiment: budgets must be ascending");
  }
  if (jobs < 1) throw std::invalid_argument("experiment: jobs must be >= 1");
  search.validate();
}

std::uint64_t episode_search_seed(std::uint64_t master_seed,
                                  const std::string& env_name, Variant variant,
                                  int budget, int episode) {
  std::uint64_t h = mix_seed(master_seed, hash_string("search"));
  h = mix_seed(h, hash_string(env_name));
  h = mix_seed(h, hash_string(to_string(variant)));
  h = mix_seed(h, static_cast<std::uint64_t>(budget));
  h = mix_seed(h, static_cast<std::uint64_t>(episode));
  return h;
}

std::uint64_t episode_reset_seed(std::uint64_t master_seed,
                                 const std::string& env_name, int budget,
                                 int episode) {
  // Variant-free on purpose: variants face identical initial states in the
  // same (budget, episode) cell row, making comparisons paired.
  std::uint64_t h = mix_seed(master_seed, hash_string("reset"));
  h = mix_seed(h, hash_string(env_name));
  h = mix_seed(h, static_cast<std::uint64_t>(budget));
  h = mix_seed(h, static_cast<std::uint64_t>(episode));
  return h;
}

EpisodeRecord run_episode(const EnvModel& env, Variant variant, int budget,
                          const SearchConfig& base, std::uint64_t search_seed,
                          std::uint64_t reset_seed, int episode_index) {
  SearchConfig cfg = base;
  cfg.variant = variant;
  cfg.n_trace = budget;
  cfg.rng_seed = search_seed;
  cfg.validate();

  const auto start = std::chrono::steady_clock::now();
  Rng rng(search_seed);
  TreeSearch search(env, cfg);
  State state = env.reset(reset_seed);

  EpisodeRecord rec;
  rec.env = env.spec().name;
  rec.variant = variant;
  rec.budget = budget;
  rec.episode = episode_index;
  rec.seed = search_seed;

  const int horizon = env.spec().horizon;
  std::vector<EpisodeStep> past;
  bool terminal = false;
  for (int t = 0; t < horizon && !terminal; ++t) {
    search.begin_search(state, horizon - t, past);
    while (search.step_trace(rng)) {
    }
    const RootDecision decision = search.decide(rng);
    rec.nodes += search.stats().expansions;
    StepResult sr = env.step(state, decision.action);
    search.apply_root_action(decision.action);
    past.push_back({state, sr.reward});
    rec.episode_return += sr.reward;
    state = std::move(sr.next_state);
    terminal = sr.terminal;
    ++rec.steps;
  }

  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rec;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::unique_ptr<EnvModel> env = make_env(cfg.env);

  struct Job {
    Variant variant;
    int budget;
    int episode;
  };
  std::vector<Job> jobs;
  for (Variant v : cfg.variants)
    for (int budget : cfg.budgets)
      for (int ep = 0; ep < cfg.episodes; ++ep) jobs.push_back({v, budget, ep});

  std::vector<EpisodeRecord> records(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < jobs.size();
         i = next.fetch_add(1)) {
      const Job& job = jobs[i];
      try {
        const std::uint64_t search_seed = episode_search_seed(
            cfg.master_seed, env->spec().name, job.variant, job.budget,
            job.episode);
        const std::uint64_t reset_seed = episode_reset_seed(
            cfg.master_seed, env->spec().name, job.budget, job.episode);
        records[i] = run_episode(*env, job.variant, job.budget, cfg.search,
                                 search_seed, reset_seed, job.episode);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const int thread_count =
      std::max(1, std::min<int>(cfg.jobs, static_cast<int>(jobs.size())));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error(
          "sweep cell failed (env=" + env->spec().name +
          " variant=" + to_string(jobs[i].variant) +
          " budget=" + std::to_string(jobs[i].budget) +
          " episode=" + std::to_string(jobs[i].episode) + "): " + e.what());
    }
  }

  std::sort(records.begin(), records.end(),
            [](const EpisodeRecord& a, const EpisodeRecord& b) {
              return record_key(a) < record_key(b);
            });

  SweepResult out;
  out.summary = summarize(records);
  out.records = std::move(records);
  return out;
}

std::vector<SweepRow> summarize(const std::vector<EpisodeRecord>& records) {
  std::vector<EpisodeRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end(),
            [](const EpisodeRecord& a, const EpisodeRecord& b) {
              return record_key(a) < record_key(b);
            });

  std::vector<SweepRow> rows;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].env == sorted[i].env &&
           sorted[j].variant == sorted[i].variant &&
           sorted[j].budget == sorted[i].budget)
      ++j;
    const double n = static_cast<double>(j - i);
    double sum_ret = 0.0, sum_nodes = 0.0, sum_wall = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      sum_ret += csv_normalize(sorted[k].episode_return);
      sum_nodes += static_cast<double>(sorted[k].nodes);
      sum_wall += csv_normalize(sorted[k].wall_ms);
    }
    const double mean_ret = sum_ret / n;
    double var = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      const double d = csv_normalize(sorted[k].episode_return) - mean_ret;
      var += d * d;
    }
    SweepRow row;
    row.env = sorted[i].env;
    row.variant = sorted[i].variant;
    row.budget = sorted[i].budget;
    row.mean_return = mean_ret;
    row.stderr_return =
        n > 1 ? std::sqrt(var / (n - 1.0)) / std::sqrt(n) : 0.0;
    row.mean_nodes = sum_nodes / n;
    row.mean_wall_ms = sum_wall / n;
    rows.push_back(row);
    i = j;
  }
  return rows;
}

std::string records_to_csv(const std::vector<EpisodeRecord>& records) {
  std::string out = kRecordsCsvHeader;
  out += '\n';
  for (const EpisodeRecord& r : records) {
    out += r.env;
    out += ',';
    out += to_string(r.variant);
    out += ',';
    out += std::to_string(r.budget);
    out += ',';
    out += std::to_string(r.episode);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += format_g6(r.episode_return);
    out += ',';
    out += std::to_string(r.steps);
    out += ',';
    out += std::to_string(r.nodes);
    out += ',';
    out += format_g6(r.wall_ms);
    out += '\n';
  }
  return out;
}

std::string summary_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = kSummaryCsvHeader;
  out += '\n';
  for (const SweepRow& r : rows) {
    out += r.env;
    out += ',';
    out += to_string(r.variant);
    out += ',';
    out += std::to_string(r.budget);
    out += ',';
    out += format_g6(r.mean_return);
    out += ',';
    out += format_g6(r.stderr_return);
    out += ',';
    out += format_g6(r.mean_nodes);
    out += ',';
    out += format_g6(r.mean_wall_ms);
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<EpisodeRecord> parse_records_csv(const std::string& text) {
  const std::vector<std::string> lines = non_empty_lines(text);
  if (lines.empty() || lines[0] != kRecordsCsvHeader)
    throw std::invalid_argument("records csv: bad or missing header");
  std::vector<EpisodeRecord> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> f = split_csv_line(lines[i]);
    if (f.size() != 9)
      throw std::invalid_argument("records csv: bad field count on line " +
                                  std::to_string(i + 1));
    EpisodeRecord r;
    r.env = f[0];
    r.variant = variant_from_string(f[1]);
    r.budget = static_cast<int>(parse_double(f[2]));
    r.episode = static_cast<int>(parse_double(f[3]));
    r.seed = std::strtoull(f[4].c_str(), nullptr, 10);
    r.episode_return = parse_double(f[5]);
    r.steps = static_cast<int>(parse_double(f[6]));
    r.nodes = static_cast<long>(parse_double(f[7]));
    r.wall_ms = parse_double(f[8]);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<SweepRow> parse_summary_csv(const std::string& text) {
  const std::vector<std::string> lines = non_empty_lines(text);
  if (lines.empty() || lines[0] != kSummaryCsvHeader)
    throw std::invalid_argument("summary csv: bad or missing header");
  std::vector<SweepRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> f = split_csv_line(lines[i]);
    if (f.size() != 7)
      throw std::invalid_argument("summary csv: bad field count on line " +
                                  std::to_string(i + 1));
    SweepRow r;
    r.env = f[0];
    r.variant = variant_from_string(f[1]);
    r.budget = static_cast<int>(parse_double(f[2]));
    r.mean_return = parse_double(f[3]);
    r.stderr_return = parse_double(f[4]);
    r.mean_nodes = parse_double(f[5]);
    r.mean_wall_ms = parse_double(f[6]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string manifest_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["tool"] = "treesearch";
  j["version"] = kVersion;
  j["master_seed"] = cfg.master_seed;
  j["episodes"] = cfg.episodes;
  j["jobs"] = cfg.jobs;
  j["env"] = {{"name", cfg.env.name},
              {"length", cfg.env.length},
              {"goal_reward", cfg.env.goal_reward},
              {"map_seed", cfg.env.map_seed},
              {"horizon", cfg.env.horizon},
              {"cart_angle_limit_deg", cfg.env.cart_angle_limit_deg},
              {"cart_x_limit", cfg.env.cart_x_limit}};
  nlohmann::json variants = nlohmann::json::array();
  for (Variant v : cfg.variants) variants.push_back(to_string(v));
  j["variants"] = variants;
  j["budgets"] = cfg.budgets;
  j["search"] = {{"c", cfg.search.c},
                 {"gamma", cfg.search.gamma},
                 {"eta", cfg.search.eta},
                 {"max_rollout_depth", cfg.search.max_rollout_depth},
                 {"loop_value_cap", cfg.search.loop_value_cap
                                        ? nlohmann::json(*cfg.search.loop_value_cap)
                                        : nlohmann::json(nullptr)},
                 {"reuse_tree", cfg.search.reuse_tree},
                 {"early_stop", cfg.search.early_stop}};
  return j.dump(2) + "\n";
}

}  // namespace treesearch
