#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treesearch/env.hpp"
#include "treesearch/rng.hpp"

namespace treesearch {

class Rng;

// Search behaviour:
//   Baseline             - UCT selection, on-policy mean back-ups.
//   TreeUncertainty      - selection bonus scaled by subtree uncertainty,
//                          off-policy value back-ups over backward counts.
//   TreeUncertaintyLoops - TreeUncertainty plus within-trace loop blocking.
enum class Variant { Baseline, TreeUncertainty, TreeUncertaintyLoops };

std::string to_string(Variant v);
Variant variant_from_string(std::string_view name);

struct SearchConfig {
  Variant variant = Variant::Baseline;
  double c = 1.0;            // exploration scale
  double gamma = 1.0;        // discount
  int n_trace = 128;         // trace budget per search
  double eta = 1e-5;         // loop-detection distance threshold
  int max_rollout_depth = 10000;
  // Magnitude assigned to a net-positive/negative reward loop; when unset it
  // resolves to reward_bound * horizon of the environment at hand.
  std::optional<double> loop_value_cap;
  std::uint64_t rng_seed = 0;  // used when the caller supplies no stream
  bool reuse_tree = false;     // keep the chosen subtree across real steps
  bool early_stop = false;     // stop once every root child has uncertainty 0

  void validate() const;  // throws std::invalid_argument
};

struct Node;

struct Edge {
  int n = 0;          // forward visit count
  double w = 0.0;     // cumulative on-policy return
  double q = 0.0;     // action value estimate
  int b = 0;          // backward count (reference-policy visits)
  double reward = 0.0;  // immediate reward, cached at expansion
  std::unique_ptr<Node> child;  // present iff n >= 1 (between traces)
};

struct Node {
  State state;
  bool terminal = false;
  bool looped = false;    // blocked as a within-trace revisit
  double sigma = 1.0;     // subtree-structure uncertainty in [0, 1]
  int depth = 0;          // distance from the current search root
  double leaf_value = 0.0;  // value estimate frozen at expansion
  std::vector<Edge> edges;  // empty for terminal/looped nodes

  int visit_total() const {
    int total = 0;
    for (const Edge& e : edges) total += e.n;
    return total;
  }
};

// One forward pass: (node, action, reward) triples from the root down to the
// deepest edge traversed, plus the value estimate found at the end.
struct TraceStep {
  Node* node;
  int action;
  double reward;
};

struct Trace {
  std::vector<TraceStep> steps;
  Node* leaf = nullptr;
  double leaf_value = 0.0;
};

struct ActionStats {
  int n = 0;
  double q = 0.0;
  int b = 0;
  double child_sigma = 1.0;  // 1 for untried actions
};

struct RootDecision {
  int action = 0;
  std::vector<ActionStats> root_stats;
};

struct LoopHit {
  std::size_t ancestor_index;  // earliest trace index whose state matches
  double reward_sum;           // net reward around the loop
};

// One completed real step of the running episode: the state the agent was in
// and the reward paid for leaving it. A search rooted mid-episode is itself
// mid-trace, so loop blocking also recognises returns to these states.
struct EpisodeStep {
  State state;
  double reward = 0.0;
};

// Episode prefix behind the search root, preprocessed for loop checks:
// suffix_reward[i] sums the rewards from step i up to the root.
struct EpisodeContext {
  std::vector<State> states;
  std::vector<double> suffix_reward;

  static EpisodeContext from_steps(const std::vector<EpisodeStep>& past);
};

struct SearchStats {
  int traces = 0;
  int expansions = 0;
  int terminal_hits = 0;  // traces ended at an in-tree terminal node
  int loop_hits = 0;      // traces ended at (or expanded) a looped node
  int horizon_hits = 0;   // traces cut by the depth cap
  int max_depth = 0;
};

// --- selection -------------------------------------------------------------

// Per-action upper confidence bounds; untried actions get +infinity. With
// use_sigma the exploration term is scaled by the child's uncertainty.
std::vector<double> ucb_bounds(const Node& node, double c, bool use_sigma);

// Indices attaining the maximum (exact comparison).
std::vector<int> argmax_set(const std::vector<double>& values);

// Variant-aware tree policy; ties break uniformly at random.
int tree_policy_select(const Node& node, const SearchConfig& cfg, Rng& rng);

// Plain UCT argmax regardless of variant (used to advance backward counts).
int baseline_ucb_argmax(const Node& node, const SearchConfig& cfg, Rng& rng);

// --- expansion and leaf evaluation ------------------------------------------

// Compares new_state against every state on the trace, root included;
// returns the earliest match within eta plus the summed rewards from that
// ancestor through the trace's last edge. The trace must already contain the
// edge that produced new_state.
std::optional<LoopHit> detect_loop(const Trace& trace, const State& new_state,
                                   const EnvModel& env, double eta);

// Value assigned to a blocked loop: 0 for a (numerically) zero-reward loop,
// +-cap for net positive/negative reward cycles.
double loop_value(double loop_reward_sum, const SearchConfig& cfg,
                  const EnvSpec& spec);

// Uniform-random playout from a non-terminal state, discounted, at most
// depth_remaining steps.
double rollout(const EnvModel& env, const State& state, int depth_remaining,
               double gamma, Rng& rng);

// Simulates (parent.state, action), appends the traversed edge to the trace
// and attaches the new leaf: terminal leaves get value 0, looped leaves (under
// TreeUncertaintyLoops) the loop value, and regular leaves a rollout estimate.
// When past is given, loop detection also matches states the episode visited
// before the search root (checked first, as they precede every tree ancestor).
Node* expand_edge(Trace& trace, Node& parent, int action, const EnvModel& env,
                  const SearchConfig& cfg, int depth_cap, Rng& rng,
                  SearchStats* stats = nullptr,
                  const EpisodeContext* past = nullptr);

// --- back-ups ---------------------------------------------------------------

// Classic cumulative-mean back-up: q = w / n along the trace, b mirrors n.
void backup_value_onpolicy(Trace& trace, double gamma);

// Uncertainty-variant back-up: n and w still accumulate on-policy, but q is
// re-derived as reward + gamma * V(child), where V mixes the child's action
// values under its backward counts (falling back to the on-policy mean of
// tried actions, then to the stored leaf value).
void backup_value_offpolicy(Trace& trace, double gamma);

// V(node) under the backward-count mixture described above.
double node_value_offpolicy(const Node& node);

// Recomputes one node's subtree uncertainty from its edges; untried actions
// count as one visit with uncertainty 1. Call bottom-up after value back-ups.
void backup_sigma(Node& node);

// --- search driver ----------------------------------------------------------

class SearchObserver {
 public:
  virtual ~SearchObserver() = default;
  virtual void on_select(const Node& node, int action) {
    (void)node;
    (void)action;
  }
  virtual void on_expand(const Node& parent, int action, const Node& leaf) {
    (void)parent;
    (void)action;
    (void)leaf;
  }
  virtual void on_trace_complete(const Node& root, const Trace& trace) {
    (void)root;
    (void)trace;
  }
};

// Drives traces through one search tree. A fresh tree is built per search
// unless reuse_tree is set and the root state matches the subtree kept by
// apply_root_action().
class TreeSearch {
 public:
  TreeSearch(const EnvModel& env, SearchConfig cfg);

  // Prepares a search from root_state with at most remaining_horizon real
  // steps ahead. remaining_horizon must be >= 1.
  void begin_search(const State& root_state, int remaining_horizon);

  // Same, but also hands the search the episode steps already taken, so the
  // loop-blocking variant can treat returns to previously visited states as
  // loops. The other variants ignore the history.
  void begin_search(const State& root_state, int remaining_horizon,
                    const std::vector<EpisodeStep>& past);

  // Runs one trace; returns false once the budget is exhausted (or the
  // early-stop condition holds).
  bool step_trace(Rng& rng);

  // Final action choice: visit-count argmax for Baseline, value argmax for
  // the uncertainty variants. Ties break uniformly at random.
  RootDecision decide(Rng& rng) const;

  const Node& root() const;
  const SearchStats& stats() const { return stats_; }
  const SearchConfig& config() const { return cfg_; }

  // Informs the search which action was taken in the environment. With
  // reuse_tree the chosen child becomes the next root; otherwise the tree is
  // dropped.
  void apply_root_action(int action);

  void set_observer(SearchObserver* observer) { observer_ = observer; }

 private:
  bool root_fully_resolved() const;
  void backup(Trace& trace);

  const EnvModel& env_;
  SearchConfig cfg_;
  std::unique_ptr<Node> root_;
  SearchStats stats_;
  EpisodeContext past_;
  int depth_cap_ = 1;
  std::uint64_t tie_modulus_ = 1;
  SearchObserver* observer_ = nullptr;
};

// Convenience wrapper: builds a tree from scratch, spends the configured
// budget and returns the decision.
RootDecision run_search(const EnvModel& env, const State& root_state,
                        int remaining_horizon, const SearchConfig& cfg,
                        Rng& rng, SearchStats* stats_out = nullptr);

// Number of nodes in a (sub)tree, the root included.
long count_nodes(const Node& node);

}  // namespace treesearch
