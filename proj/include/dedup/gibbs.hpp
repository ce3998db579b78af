#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "dedup/candidate_graph.hpp"
#include "dedup/model.hpp"
#include "dedup/partition.hpp"
#include "dedup/random.hpp"
#include "dedup/truncated_beta.hpp"

namespace dedup {

struct SamplerConfig {
  std::size_t iterations = 10000;
  std::size_t burn_in = 1000;
  std::size_t thinning = 1;
  std::uint64_t seed = 1;
  std::size_t chains = 1;
  bool update_params = true;     // false freezes Phi at its initial value
  bool randomized_scan = false;  // default sweep is ascending record index
  std::size_t audit_every = 0;   // test mode: recompute sufficient statistics every N sweeps

  void validate() const {
    if (iterations == 0) throw ConfigError("sampler.iterations must be positive");
    if (burn_in >= iterations) throw ConfigError("sampler.burn_in must be smaller than sampler.iterations");
    if (thinning == 0) throw ConfigError("sampler.thinning must be positive");
    if (chains == 0) throw ConfigError("sampler.chains must be positive");
  }

  std::size_t retained() const { return (iterations - burn_in) / thinning; }
};

// Retained draws of one chain. Labelings are canonical.
struct PosteriorSample {
  std::size_t r = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> iterations;
  std::vector<Labeling> labelings;
  std::vector<ModelParams> params;

  std::size_t size() const noexcept { return labelings.size(); }
};

struct ChainState {
  Labeling z;
  ModelParams phi;
  SufficientStats stats;
};

inline std::uint64_t chain_seed(std::uint64_t seed, std::size_t chain) {
  return chain == 0 ? seed : mix64(seed + 0x9e3779b97f4a7c15ULL * chain);
}

namespace detail {

// One RNG stream per compared field, keyed by field name so that adding or removing a field
// leaves the other fields' draws untouched.
inline std::vector<Rng> field_streams(const std::vector<LevelSpec>& specs, std::uint64_t seed) {
  std::vector<Rng> out;
  for (const auto& s : specs) out.push_back(make_stream(seed, fnv1a(s.field) | 1ULL));
  return out;
}

inline double draw_m(const SufficientStats& s, const PriorEntry& e, std::size_t f, std::size_t l, Rng& rng) {
  double tail = 0.0;
  for (std::size_t h = l + 1; h < s.a1[f].size(); ++h) tail += static_cast<double>(s.a1[f][h]);
  return sample_truncated_beta(e.alpha1 + static_cast<double>(s.a1[f][l]), e.beta1 + tail, e.lambda, rng);
}

inline double draw_u(const SufficientStats& s, const PriorEntry& e, std::size_t f, std::size_t l, Rng& rng) {
  double tail = 0.0;
  for (std::size_t h = l + 1; h < s.a0[f].size(); ++h) tail += static_cast<double>(s.a0[f][h]);
  return sample_beta(e.alpha0 + static_cast<double>(s.a0[f][l]), e.beta0 + tail, rng);
}

// Draws every m and u from their full conditionals, field by field on the field's own stream.
inline void draw_params(ModelParams& phi, const SufficientStats& s, const PriorSpec& prior, std::vector<Rng>& rngs) {
  phi.m.resize(prior.size());
  phi.u.resize(prior.size());
  for (std::size_t f = 0; f < prior.size(); ++f) {
    phi.m[f].resize(prior[f].size());
    phi.u[f].resize(prior[f].size());
    for (std::size_t l = 0; l < prior[f].size(); ++l) phi.m[f][l] = draw_m(s, prior[f][l], f, l, rngs[f]);
    for (std::size_t l = 0; l < prior[f].size(); ++l) phi.u[f][l] = draw_u(s, prior[f][l], f, l, rngs[f]);
  }
}

// Distinct comparison patterns among the pairs of P. Log likelihood ratios are evaluated once
// per pattern after every Phi update instead of once per pair.
struct PatternTable {
  struct Entry {
    std::uint32_t field;
    std::uint8_t level;
  };
  std::vector<std::vector<Entry>> observed;  // per pattern
  std::vector<std::uint32_t> pattern_of;     // per pair of P

  explicit PatternTable(const CandidateGraph& g) {
    std::unordered_map<std::string, std::uint32_t> ids;
    pattern_of.resize(g.comparisons.size());
    std::string key;
    for (std::size_t k = 0; k < g.comparisons.size(); ++k) {
      const auto& cv = g.comparisons[k];
      key.assign(cv.levels.size(), '\xff');
      for (std::size_t f = 0; f < cv.levels.size(); ++f)
        if (cv.levels[f]) key[f] = static_cast<char>(*cv.levels[f]);
      // Trailing missing fields do not change the pattern.
      while (!key.empty() && key.back() == '\xff') key.pop_back();
      auto [it, inserted] = ids.emplace(key, static_cast<std::uint32_t>(observed.size()));
      if (inserted) {
        observed.emplace_back();
        for (std::size_t f = 0; f < cv.levels.size(); ++f)
          if (cv.levels[f]) observed.back().push_back({static_cast<std::uint32_t>(f), *cv.levels[f]});
      }
      pattern_of[k] = it->second;
    }
  }

  std::size_t size() const noexcept { return observed.size(); }
};

// log P(level | p) for every level of every field.
inline std::vector<std::vector<double>> level_log_probs(const std::vector<std::vector<double>>& seq) {
  std::vector<std::vector<double>> out(seq.size());
  for (std::size_t f = 0; f < seq.size(); ++f) {
    out[f].resize(seq[f].size() + 1);
    double survive = 0.0;
    for (std::size_t l = 0; l < seq[f].size(); ++l) {
      out[f][l] = survive + std::log(seq[f][l]);
      survive += std::log1p(-seq[f][l]);
    }
    out[f][seq[f].size()] = survive;
  }
  return out;
}

inline std::vector<double> pattern_log_ratios(const PatternTable& patterns, const ModelParams& phi) {
  auto w1 = level_log_probs(phi.m);
  auto w0 = level_log_probs(phi.u);
  std::vector<double> out(patterns.size());
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    double s = 0.0;
    for (const auto& e : patterns.observed[p]) s += w1[e.field][e.level] - w0[e.field][e.level];
    out[p] = s;
  }
  return out;
}

// Index of a draw from weights proportional to exp(logw).
inline std::size_t sample_log_categorical(const std::vector<double>& logw, Rng& rng) {
  double mx = *std::max_element(logw.begin(), logw.end());
  double total = 0.0;
  thread_local std::vector<double> w;
  w.resize(logw.size());
  for (std::size_t k = 0; k < logw.size(); ++k) total += (w[k] = std::exp(logw[k] - mx));
  double x = uniform01(rng) * total;
  for (std::size_t k = 0; k < w.size(); ++k) {
    x -= w[k];
    if (x < 0.0) return k;
  }
  return w.size() - 1;
}

}  // namespace detail

// One Markov chain over (Z, Phi). Owns all mutable state; not shared between threads.
//
// Label updates follow the conditional of Z_i given the other labels: an occupied cell q gets
// weight prod_{j in q} LR(i, j) when every such pair is a candidate pair and 0 otherwise, and a
// new entity gets weight 1 with its concrete label drawn uniformly among the unused ones.
// Records without candidate partners are never relabeled.
class GibbsChain {
 public:
  GibbsChain(const CandidateGraph& graph, const std::vector<LevelSpec>& specs, const PriorSpec& prior, std::uint64_t seed,
             std::optional<ModelParams> initial = std::nullopt)
      : graph_(graph),
        specs_(specs),
        prior_(prior),
        patterns_(graph),
        label_rng_(make_stream(seed, 0)),
        field_rngs_(detail::field_streams(specs, seed)) {
    validate_prior(prior_, specs_);
    const std::size_t r = graph.r;
    adjacency_.resize(r);
    for (std::size_t k = 0; k < graph.comparisons.size(); ++k) {
      if (!graph.candidate[k]) continue;
      const auto& p = graph.comparisons[k].pair;
      adjacency_[p.i].push_back({p.j, patterns_.pattern_of[k]});
      adjacency_[p.j].push_back({p.i, patterns_.pattern_of[k]});
    }
    for (std::uint32_t i = 0; i < r; ++i) {
      std::sort(adjacency_[i].begin(), adjacency_[i].end(),
                [](const Neighbor& a, const Neighbor& b) { return a.record < b.record; });
      if (!adjacency_[i].empty()) sweep_order_.push_back(i);
    }

    state_.z.resize(r);
    members_.resize(r);
    position_.assign(r, 0);
    free_position_.assign(r, kNone);
    for (std::uint32_t i = 0; i < r; ++i) {
      state_.z[i] = i;
      members_[i] = {i};
    }
    neighbor_pattern_.assign(r, 0);
    accum_.assign(r, 0.0);
    count_.assign(r, 0);

    state_.stats = sufficient_stats(state_.z, graph_, specs_);
    if (initial) {
      set_params(*initial);
    } else {
      update_params();
    }
  }

  const ChainState& state() const noexcept { return state_; }
  const std::vector<std::uint32_t>& sweep_order() const noexcept { return sweep_order_; }
  std::size_t pattern_count() const noexcept { return patterns_.size(); }

  void set_params(const ModelParams& phi) {
    if (phi.m.size() != specs_.size() || phi.u.size() != specs_.size())
      throw std::invalid_argument("parameter vector does not match the comparison fields");
    state_.phi = phi;
    refresh_ratios();
  }

  void update_label(std::uint32_t i) {
    auto& z = state_.z;
    const auto& adj = adjacency_[i];
    if (adj.empty()) return;
    for (const auto& nb : adj) neighbor_pattern_[nb.record] = nb.pattern;

    const std::uint32_t old = z[i];
    for (auto j : members_[old])
      if (j != i) shift_pair(neighbor_pattern_[j], -1);
    remove_member(old, i);
    if (members_[old].empty()) push_free(old);

    touched_.clear();
    for (const auto& nb : adj) {
      const auto c = z[nb.record];
      if (count_[c] == 0) {
        touched_.push_back(c);
        accum_[c] = 0.0;
      }
      accum_[c] += log_ratio_[nb.pattern];
      ++count_[c];
    }
    options_.clear();
    log_weights_.clear();
    for (auto c : touched_) {
      if (count_[c] == members_[c].size()) {
        options_.push_back(c);
        log_weights_.push_back(accum_[c]);
      }
      count_[c] = 0;
    }
    options_.push_back(kNone);
    log_weights_.push_back(0.0);

    std::uint32_t target = options_[detail::sample_log_categorical(log_weights_, label_rng_)];
    if (target == kNone) {
      target = free_labels_[uniform_index(label_rng_, free_labels_.size())];
      pop_free(target);
    }
    for (auto j : members_[target]) shift_pair(neighbor_pattern_[j], +1);
    add_member(target, i);
    z[i] = target;
  }

  void update_m(std::size_t f, std::size_t l) {
    state_.phi.m[f][l] = detail::draw_m(state_.stats, prior_[f][l], f, l, field_rngs_[f]);
  }

  void update_u(std::size_t f, std::size_t l) {
    state_.phi.u[f][l] = detail::draw_u(state_.stats, prior_[f][l], f, l, field_rngs_[f]);
  }

  void update_params() {
    detail::draw_params(state_.phi, state_.stats, prior_, field_rngs_);
    refresh_ratios();
  }

  void sweep(bool with_params = true) {
    if (randomized_scan_) {
      for (std::size_t k = sweep_order_.size(); k > 1; --k)
        std::swap(sweep_order_[k - 1], sweep_order_[uniform_index(label_rng_, k)]);
    }
    for (auto i : sweep_order_) update_label(i);
    if (with_params) update_params();
  }

  void set_randomized_scan(bool on) {
    randomized_scan_ = on;
    if (!on) std::sort(sweep_order_.begin(), sweep_order_.end());
  }

  // True when every cell only merges candidate pairs.
  bool valid() const {
    for (const auto& cell : members_) {
      if (cell.size() < 2) continue;
      for (std::size_t a = 0; a < cell.size(); ++a)
        for (std::size_t b = a + 1; b < cell.size(); ++b)
          if (!is_neighbor(cell[a], cell[b])) return false;
    }
    return true;
  }

  // Recomputes the statistics from scratch; throws if the incremental copy drifted.
  void audit() const {
    if (sufficient_stats(state_.z, graph_, specs_) != state_.stats)
      throw std::logic_error("incremental sufficient statistics diverged from recomputation");
  }

  std::size_t entity_count() const { return graph_.r - free_labels_.size(); }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  struct Neighbor {
    std::uint32_t record;
    std::uint32_t pattern;
  };

  bool is_neighbor(std::uint32_t i, std::uint32_t j) const {
    const auto& adj = adjacency_[i];
    auto it = std::lower_bound(adj.begin(), adj.end(), j, [](const Neighbor& n, std::uint32_t v) { return n.record < v; });
    return it != adj.end() && it->record == j;
  }

  void refresh_ratios() { log_ratio_ = detail::pattern_log_ratios(patterns_, state_.phi); }

  // delta = +1: the pair becomes coreferent; -1: it stops being coreferent.
  void shift_pair(std::uint32_t pattern, int delta) {
    for (const auto& e : patterns_.observed[pattern]) {
      if (delta > 0) {
        ++state_.stats.a1[e.field][e.level];
        --state_.stats.a0[e.field][e.level];
      } else {
        --state_.stats.a1[e.field][e.level];
        ++state_.stats.a0[e.field][e.level];
      }
    }
  }

  void remove_member(std::uint32_t cell, std::uint32_t i) {
    auto& v = members_[cell];
    auto pos = position_[i];
    position_[v.back()] = pos;
    v[pos] = v.back();
    v.pop_back();
  }

  void add_member(std::uint32_t cell, std::uint32_t i) {
    position_[i] = static_cast<std::uint32_t>(members_[cell].size());
    members_[cell].push_back(i);
  }

  void push_free(std::uint32_t label) {
    free_position_[label] = static_cast<std::uint32_t>(free_labels_.size());
    free_labels_.push_back(label);
  }

  void pop_free(std::uint32_t label) {
    auto pos = free_position_[label];
    free_position_[free_labels_.back()] = pos;
    free_labels_[pos] = free_labels_.back();
    free_labels_.pop_back();
    free_position_[label] = kNone;
  }

  const CandidateGraph& graph_;
  std::vector<LevelSpec> specs_;
  PriorSpec prior_;
  detail::PatternTable patterns_;
  Rng label_rng_;
  std::vector<Rng> field_rngs_;
  bool randomized_scan_ = false;

  ChainState state_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::uint32_t> sweep_order_;
  std::vector<double> log_ratio_;  // per pattern

  std::vector<std::vector<std::uint32_t>> members_;  // per label
  std::vector<std::uint32_t> position_;              // index of a record inside its cell
  std::vector<std::uint32_t> free_labels_;
  std::vector<std::uint32_t> free_position_;

  // Scratch for update_label.
  std::vector<std::uint32_t> neighbor_pattern_;
  std::vector<double> accum_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> options_;
  std::vector<double> log_weights_;
};

// Runs one chain: each iteration sweeps the labels of all records with candidate partners in
// ascending order, then redraws every m and u. Keeps post-burn-in, thinned states.
inline PosteriorSample run_chain(const CandidateGraph& graph, const std::vector<LevelSpec>& specs,
                                 const PriorSpec& prior, const SamplerConfig& config,
                                 std::optional<ModelParams> initial = std::nullopt, std::size_t chain = 0) {
  config.validate();
  if (!config.update_params && !initial) throw ConfigError("frozen parameters need an initial parameter vector");
  PosteriorSample out;
  out.r = graph.r;
  out.seed = chain_seed(config.seed, chain);
  GibbsChain gibbs(graph, specs, prior, out.seed, std::move(initial));
  gibbs.set_randomized_scan(config.randomized_scan);
  out.labelings.reserve(config.retained());
  for (std::size_t t = 1; t <= config.iterations; ++t) {
    gibbs.sweep(config.update_params);
    if (config.audit_every && t % config.audit_every == 0) gibbs.audit();
    if (t <= config.burn_in || (t - config.burn_in) % config.thinning != 0) continue;
    if (!gibbs.valid()) throw std::logic_error("sampler produced a labeling outside the candidate constraints");
    out.iterations.push_back(t);
    out.labelings.push_back(canonical_labeling(gibbs.state().z));
    out.params.push_back(gibbs.state().phi);
  }
  return out;
}

// Independent chains with seeds derived from config.seed, run on up to `threads` workers.
inline std::vector<PosteriorSample> run_chains(const CandidateGraph& graph, const std::vector<LevelSpec>& specs,
                                               const PriorSpec& prior, const SamplerConfig& config,
                                               std::optional<ModelParams> initial = std::nullopt,
                                               unsigned threads = 1) {
  config.validate();
  std::vector<PosteriorSample> out(config.chains);
  std::vector<std::exception_ptr> errors(config.chains);
  auto work = [&](std::size_t c) {
    try {
      out[c] = run_chain(graph, specs, prior, config, initial, c);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  threads = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(config.chains));
  for (std::size_t begin = 0; begin < config.chains; begin += threads) {
    std::vector<std::thread> pool;
    for (std::size_t c = begin; c < std::min(config.chains, begin + threads); ++c) pool.emplace_back(work, c);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace dedup
