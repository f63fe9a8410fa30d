#include "treesearch/search.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace treesearch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Loops whose net reward is this close to zero are treated as reward-free.
constexpr double kLoopValueEpsilon = 1e-12;

// Modulus whose draws can break ties exactly uniformly for every tie-set
// size up to action_count: lcm(1..action_count).
std::uint64_t tie_modulus_for(int action_count) {
  if (action_count < 1 || action_count > 42)
    throw std::invalid_argument("tie modulus: unsupported action count");
  std::uint64_t l = 1;
  for (int k = 2; k <= action_count; ++k) l = std::lcm(l, std::uint64_t(k));
  return l;
}

// Selection with an externally supplied tie draw. A single draw shared by
// the tree-policy argmax and the backward-count argmax keeps the two picks
// identical whenever their tie sets coincide (notably over untried actions),
// which guarantees every expanded action receives a backward count.
int select_with_draw(const Node& node, double c, bool use_sigma,
                     std::uint64_t tie_draw) {
  if (node.terminal || node.looped)
    throw std::logic_error("select: node is terminal or blocked");
  if (node.edges.empty()) throw std::logic_error("select: node has no actions");

  std::vector<int> untried;
  for (std::size_t a = 0; a < node.edges.size(); ++a)
    if (node.edges[a].n == 0) untried.push_back(static_cast<int>(a));
  if (!untried.empty())
    return untried[static_cast<std::size_t>(tie_draw % untried.size())];

  const std::vector<double> bounds = ucb_bounds(node, c, use_sigma);
  const std::vector<int> best = argmax_set(bounds);
  return best[static_cast<std::size_t>(tie_draw % best.size())];
}

void rebase_depth(Node& node, int delta) {
  node.depth += delta;
  for (Edge& e : node.edges)
    if (e.child) rebase_depth(*e.child, delta);
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Baseline: return "mcts";
    case Variant::TreeUncertainty: return "mcts-t";
    case Variant::TreeUncertaintyLoops: return "mcts-t+";
  }
  throw std::logic_error("to_string: unknown variant");
}

Variant variant_from_string(std::string_view name) {
  if (name == "mcts") return Variant::Baseline;
  if (name == "mcts-t") return Variant::TreeUncertainty;
  if (name == "mcts-t+") return Variant::TreeUncertaintyLoops;
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

void SearchConfig::validate() const {
  if (!(c >= 0.0)) throw std::invalid_argument("config: c must be >= 0");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("config: gamma must be in [0, 1]");
  if (n_trace < 1) throw std::invalid_argument("config: n_trace must be >= 1");
  if (!(eta >= 0.0)) throw std::invalid_argument("config: eta must be >= 0");
  if (max_rollout_depth < 1)
    throw std::invalid_argument("config: max_rollout_depth must be >= 1");
  if (loop_value_cap && !(*loop_value_cap > 0.0))
    throw std::invalid_argument("config: loop_value_cap must be > 0");
}

// --- selection -------------------------------------------------------------

std::vector<double> ucb_bounds(const Node& node, double c, bool use_sigma) {
  const double sqrt_total =
      std::sqrt(static_cast<double>(node.visit_total()));
  std::vector<double> out(node.edges.size());
  for (std::size_t a = 0; a < node.edges.size(); ++a) {
    const Edge& e = node.edges[a];
    if (e.n == 0) {
      out[a] = kInf;
      continue;
    }
    double bonus = c * sqrt_total / static_cast<double>(e.n);
    if (use_sigma) bonus *= e.child->sigma;
    out[a] = e.q + bonus;
  }
  return out;
}

std::vector<int> argmax_set(const std::vector<double>& values) {
  std::vector<int> best;
  double top = -kInf;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > top) {
      top = values[i];
      best.clear();
    }
    if (values[i] == top) best.push_back(static_cast<int>(i));
  }
  return best;
}

int tree_policy_select(const Node& node, const SearchConfig& cfg, Rng& rng) {
  const std::uint64_t draw =
      rng.below(tie_modulus_for(static_cast<int>(node.edges.size())));
  return select_with_draw(node, cfg.c, cfg.variant != Variant::Baseline, draw);
}

int baseline_ucb_argmax(const Node& node, const SearchConfig& cfg, Rng& rng) {
  const std::uint64_t draw =
      rng.below(tie_modulus_for(static_cast<int>(node.edges.size())));
  return select_with_draw(node, cfg.c, /*use_sigma=*/false, draw);
}

// --- expansion and leaf evaluation ------------------------------------------

std::optional<LoopHit> detect_loop(const Trace& trace, const State& new_state,
                                   const EnvModel& env, double eta) {
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    if (env.distance(trace.steps[i].node->state, new_state) <= eta) {
      double sum = 0.0;
      for (std::size_t j = i; j < trace.steps.size(); ++j)
        sum += trace.steps[j].reward;
      return LoopHit{i, sum};
    }
  }
  return std::nullopt;
}

EpisodeContext EpisodeContext::from_steps(const std::vector<EpisodeStep>& past) {
  EpisodeContext ctx;
  ctx.states.reserve(past.size());
  for (const EpisodeStep& step : past) ctx.states.push_back(step.state);
  ctx.suffix_reward.assign(past.size(), 0.0);
  double sum = 0.0;
  for (std::size_t i = past.size(); i-- > 0;) {
    sum += past[i].reward;
    ctx.suffix_reward[i] = sum;
  }
  return ctx;
}

double loop_value(double loop_reward_sum, const SearchConfig& cfg,
                  const EnvSpec& spec) {
  if (std::abs(loop_reward_sum) <= kLoopValueEpsilon) return 0.0;
  const double cap = cfg.loop_value_cap
                         ? *cfg.loop_value_cap
                         : spec.reward_bound * static_cast<double>(spec.horizon);
  return loop_reward_sum > 0.0 ? cap : -cap;
}

double rollout(const EnvModel& env, const State& state, int depth_remaining,
               double gamma, Rng& rng) {
  double total = 0.0;
  double discount = 1.0;
  State s = state;
  const int actions = env.spec().action_count;
  for (int k = 0; k < depth_remaining; ++k) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(actions)));
    StepResult sr = env.step(s, a);
    total += discount * sr.reward;
    discount *= gamma;
    if (sr.terminal) break;
    s = std::move(sr.next_state);
  }
  return total;
}

Node* expand_edge(Trace& trace, Node& parent, int action, const EnvModel& env,
                  const SearchConfig& cfg, int depth_cap, Rng& rng,
                  SearchStats* stats, const EpisodeContext* past) {
  Edge& edge = parent.edges.at(static_cast<std::size_t>(action));
  if (edge.child) throw std::logic_error("expand: edge already expanded");

  StepResult sr = env.step(parent.state, action);
  edge.reward = sr.reward;
  trace.steps.push_back({&parent, action, sr.reward});

  auto child = std::make_unique<Node>();
  child->state = std::move(sr.next_state);
  child->depth = parent.depth + 1;
  child->terminal = sr.terminal;
  Node* leaf = child.get();

  if (cfg.variant == Variant::TreeUncertaintyLoops) {
    // Episode-history states precede every tree ancestor, so they are
    // checked first to honour the earliest-match convention.
    std::optional<double> loop_sum;
    if (past) {
      for (std::size_t i = 0; i < past->states.size(); ++i) {
        if (env.distance(past->states[i], leaf->state) <= cfg.eta) {
          double tree_sum = 0.0;
          for (const TraceStep& st : trace.steps) tree_sum += st.reward;
          loop_sum = past->suffix_reward[i] + tree_sum;
          break;
        }
      }
    }
    if (!loop_sum) {
      if (auto hit = detect_loop(trace, leaf->state, env, cfg.eta))
        loop_sum = hit->reward_sum;
    }
    if (loop_sum) {
      leaf->looped = true;
      leaf->sigma = 0.0;
      leaf->leaf_value = loop_value(*loop_sum, cfg, env.spec());
      if (stats) ++stats->loop_hits;
    }
  }
  if (!leaf->looped) {
    if (leaf->terminal) {
      leaf->sigma = 0.0;
      leaf->leaf_value = 0.0;  // playout skipped by convention
    } else {
      leaf->sigma = 1.0;
      leaf->edges.resize(static_cast<std::size_t>(env.spec().action_count));
      const int depth_remaining =
          std::min(cfg.max_rollout_depth, depth_cap - leaf->depth);
      leaf->leaf_value =
          rollout(env, leaf->state, depth_remaining, cfg.gamma, rng);
    }
  }

  trace.leaf = leaf;
  trace.leaf_value = leaf->leaf_value;
  edge.child = std::move(child);
  if (stats) {
    ++stats->expansions;
    stats->max_depth = std::max(stats->max_depth, leaf->depth);
  }
  return leaf;
}

// --- back-ups ---------------------------------------------------------------

void backup_value_onpolicy(Trace& trace, double gamma) {
  double ret = trace.leaf_value;
  for (std::size_t i = trace.steps.size(); i-- > 0;) {
    TraceStep& st = trace.steps[i];
    Edge& e = st.node->edges.at(static_cast<std::size_t>(st.action));
    ret = st.reward + gamma * ret;
    e.n += 1;
    e.w += ret;
    e.q = e.w / static_cast<double>(e.n);
    e.b = e.n;  // Baseline keeps backward counts mirroring forward ones
  }
}

double node_value_offpolicy(const Node& node) {
  double weighted_q = 0.0, w_sum = 0.0;
  long b_sum = 0, n_sum = 0;
  for (const Edge& e : node.edges) {
    if (e.n < 1) continue;
    weighted_q += static_cast<double>(e.b) * e.q;
    b_sum += e.b;
    w_sum += e.w;
    n_sum += e.n;
  }
  if (b_sum > 0) return weighted_q / static_cast<double>(b_sum);
  if (n_sum > 0) return w_sum / static_cast<double>(n_sum);
  return node.leaf_value;
}

void backup_value_offpolicy(Trace& trace, double gamma) {
  double ret = trace.leaf_value;
  for (std::size_t i = trace.steps.size(); i-- > 0;) {
    TraceStep& st = trace.steps[i];
    Edge& e = st.node->edges.at(static_cast<std::size_t>(st.action));
    ret = st.reward + gamma * ret;
    e.n += 1;
    e.w += ret;
    if (i + 1 == trace.steps.size()) {
      // Deepest edge: estimate straight from the leaf.
      e.q = st.reward + gamma * trace.leaf_value;
    } else {
      e.q = st.reward + gamma * node_value_offpolicy(*e.child);
    }
  }
}

void backup_sigma(Node& node) {
  if (node.terminal || node.looped) return;  // pinned at 0
  double num = 0.0, den = 0.0;
  for (const Edge& e : node.edges) {
    const double m = e.n >= 1 ? static_cast<double>(e.n) : 1.0;
    const double child_sigma = e.n >= 1 ? e.child->sigma : 1.0;
    num += m * child_sigma;
    den += m;
  }
  // num/den is a convex combination of values in [0, 1]; the min guards the
  // upper bound against last-ulp rounding of the accumulated products.
  node.sigma = std::min(1.0, num / den);
  assert(node.sigma >= 0.0 && node.sigma <= 1.0);
}

// --- search driver ----------------------------------------------------------

TreeSearch::TreeSearch(const EnvModel& env, SearchConfig cfg)
    : env_(env), cfg_(cfg) {
  cfg_.validate();
  tie_modulus_ = tie_modulus_for(env.spec().action_count);
}

void TreeSearch::begin_search(const State& root_state, int remaining_horizon) {
  begin_search(root_state, remaining_horizon, {});
}

void TreeSearch::begin_search(const State& root_state, int remaining_horizon,
                              const std::vector<EpisodeStep>& past) {
  if (remaining_horizon < 1)
    throw std::logic_error("begin_search: remaining_horizon must be >= 1");
  depth_cap_ = remaining_horizon;
  stats_ = SearchStats{};
  past_ = EpisodeContext::from_steps(past);
  if (cfg_.reuse_tree && root_ && root_->state == root_state) return;
  root_ = std::make_unique<Node>();
  root_->state = root_state;
  root_->edges.resize(static_cast<std::size_t>(env_.spec().action_count));
}

const Node& TreeSearch::root() const {
  if (!root_) throw std::logic_error("root: no active search");
  return *root_;
}

bool TreeSearch::root_fully_resolved() const {
  for (const Edge& e : root_->edges)
    if (e.n < 1 || e.child->sigma != 0.0) return false;
  return true;
}

bool TreeSearch::step_trace(Rng& rng) {
  if (!root_) throw std::logic_error("step_trace: no active search");
  if (stats_.traces >= cfg_.n_trace) return false;
  if (cfg_.early_stop && root_fully_resolved()) return false;

  const bool use_sigma = cfg_.variant != Variant::Baseline;
  Trace trace;
  Node* node = root_.get();
  while (true) {
    if (node->terminal || node->looped || node->depth >= depth_cap_) {
      // Nothing below this node can be (or may be) explored: consume the
      // trace and back up its stored value.
      trace.leaf = node;
      trace.leaf_value = node->leaf_value;
      if (node->terminal)
        ++stats_.terminal_hits;
      else if (node->looped)
        ++stats_.loop_hits;
      else
        ++stats_.horizon_hits;
      break;
    }
    const std::uint64_t tie_draw = rng.below(tie_modulus_);
    if (use_sigma) {
      const int ref = select_with_draw(*node, cfg_.c, /*use_sigma=*/false,
                                       tie_draw);
      node->edges[static_cast<std::size_t>(ref)].b += 1;
    }
    const int action = select_with_draw(*node, cfg_.c, use_sigma, tie_draw);
    if (observer_) observer_->on_select(*node, action);
    Edge& edge = node->edges[static_cast<std::size_t>(action)];
    if (edge.n == 0) {
      Node* leaf =
          expand_edge(trace, *node, action, env_, cfg_, depth_cap_, rng,
                      &stats_, past_.states.empty() ? nullptr : &past_);
      if (observer_) observer_->on_expand(*node, action, *leaf);
      break;
    }
    trace.steps.push_back({node, action, edge.reward});
    node = edge.child.get();
  }

  backup(trace);
  ++stats_.traces;
  if (observer_) observer_->on_trace_complete(*root_, trace);
  return true;
}

void TreeSearch::backup(Trace& trace) {
  if (cfg_.variant == Variant::Baseline)
    backup_value_onpolicy(trace, cfg_.gamma);
  else
    backup_value_offpolicy(trace, cfg_.gamma);
  for (std::size_t i = trace.steps.size(); i-- > 0;)
    backup_sigma(*trace.steps[i].node);
}

RootDecision TreeSearch::decide(Rng& rng) const {
  if (!root_) throw std::logic_error("decide: no active search");
  const Node& r = *root_;
  RootDecision decision;
  decision.root_stats.reserve(r.edges.size());
  std::vector<double> scores(r.edges.size());
  for (std::size_t a = 0; a < r.edges.size(); ++a) {
    const Edge& e = r.edges[a];
    ActionStats st;
    st.n = e.n;
    st.q = e.q;
    st.b = e.b;
    st.child_sigma = e.n >= 1 ? e.child->sigma : 1.0;
    decision.root_stats.push_back(st);
    scores[a] = cfg_.variant == Variant::Baseline ? static_cast<double>(e.n)
                                                  : e.q;
  }
  const std::vector<int> best = argmax_set(scores);
  decision.action =
      best[static_cast<std::size_t>(rng.below(best.size()))];
  return decision;
}

void TreeSearch::apply_root_action(int action) {
  if (!cfg_.reuse_tree || !root_) {
    root_.reset();
    return;
  }
  if (action < 0 || action >= static_cast<int>(root_->edges.size())) {
    root_.reset();
    return;
  }
  std::unique_ptr<Node> child = std::move(root_->edges[action].child);
  if (!child || child->terminal || child->looped) {
    root_.reset();
    return;
  }
  rebase_depth(*child, -1);
  root_ = std::move(child);
}

RootDecision run_search(const EnvModel& env, const State& root_state,
                        int remaining_horizon, const SearchConfig& cfg,
                        Rng& rng, SearchStats* stats_out) {
  TreeSearch search(env, cfg);
  search.begin_search(root_state, remaining_horizon);
  while (search.step_trace(rng)) {
  }
  if (stats_out) *stats_out = search.stats();
  return search.decide(rng);
}

long count_nodes(const Node& node) {
  long total = 1;
  for (const Edge& e : node.edges)
    if (e.child) total += count_nodes(*e.child);
  return total;
}

}  // namespace treesearch
