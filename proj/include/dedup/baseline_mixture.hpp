#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <unordered_set>
#include <vector>

#include "dedup/candidate_graph.hpp"
#include "dedup/gibbs.hpp"
#include "dedup/model.hpp"
#include "dedup/random.hpp"

namespace dedup {

// Pairwise coreference indicators over the candidate pairs, without any transitivity constraint.
struct PairLabelMatrix {
  std::vector<RecordPair> pairs;  // the candidate pairs C
  std::vector<std::uint8_t> delta;
  double p = 0.5;
};

// Triples with exactly two of the three pairwise indicators set. Pairs not listed count as 0,
// so only triples joined by two set edges can qualify; each is counted once at its shared vertex.
inline std::uint64_t count_nontransitive_triplets(std::size_t r, const std::vector<RecordPair>& pairs,
                                                  const std::vector<std::uint8_t>& delta) {
  std::vector<std::vector<std::uint32_t>> linked(r);
  std::unordered_set<std::uint64_t> edges;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!delta[k]) continue;
    linked[pairs[k].i].push_back(pairs[k].j);
    linked[pairs[k].j].push_back(pairs[k].i);
    edges.insert(pair_key(pairs[k].i, pairs[k].j));
  }
  std::uint64_t count = 0;
  for (const auto& nb : linked)
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        count += !edges.count(pair_key(nb[a], nb[b]));
  return count;
}

inline std::uint64_t count_nontransitive_triplets(std::size_t r, const PairLabelMatrix& m) {
  return count_nontransitive_triplets(r, m.pairs, m.delta);
}

// Coreference indicators implied by a partition labeling, for the listed pairs.
inline std::vector<std::uint8_t> indicators_from_labeling(const Labeling& z, const std::vector<RecordPair>& pairs) {
  std::vector<std::uint8_t> d(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) d[k] = z[pairs[k].i] == z[pairs[k].j];
  return d;
}

struct MixtureSample {
  std::vector<std::size_t> iterations;
  std::vector<double> p;
  std::vector<std::uint64_t> nontransitive;  // per retained iteration
  std::vector<PairLabelMatrix> draws;        // kept only when requested
  std::vector<ModelParams> params;
};

struct MixtureOptions {
  bool keep_draws = false;
};

// Two-component mixture: Delta_ij | p ~ Bernoulli(p) independently over C, p ~ Uniform(0, 1),
// and the same m / u priors as the partition model. Each iteration redraws every Delta_ij,
// then p, then Phi.
inline MixtureSample run_mixture_gibbs(const CandidateGraph& graph, const std::vector<LevelSpec>& specs,
                                       const PriorSpec& prior, const SamplerConfig& config,
                                       MixtureOptions options = {}) {
  config.validate();
  validate_prior(prior, specs);
  const std::uint64_t seed = chain_seed(config.seed, 0);
  Rng pair_rng = make_stream(seed, 0);
  auto field_rngs = detail::field_streams(specs, seed);
  detail::PatternTable patterns(graph);

  std::vector<std::size_t> cand;  // indices into P
  for (std::size_t k = 0; k < graph.comparisons.size(); ++k)
    if (graph.candidate[k]) cand.push_back(k);

  PairLabelMatrix state;
  for (auto k : cand) state.pairs.push_back(graph.comparisons[k].pair);
  state.delta.assign(cand.size(), 0);
  state.p = uniform_open01(pair_rng);

  // All Delta = 0 start: every pair of P counts toward a0.
  auto stats = SufficientStats::zeros(specs);
  for (const auto& cv : graph.comparisons)
    for (std::size_t f = 0; f < cv.levels.size(); ++f)
      if (cv.levels[f]) ++stats.a0[f][*cv.levels[f]];

  ModelParams phi;
  detail::draw_params(phi, stats, prior, field_rngs);
  auto log_ratio = detail::pattern_log_ratios(patterns, phi);

  MixtureSample out;
  for (std::size_t t = 1; t <= config.iterations; ++t) {
    std::size_t ones = 0;
    const double log_odds_prior = std::log(state.p) - std::log1p(-state.p);
    for (std::size_t c = 0; c < cand.size(); ++c) {
      const auto pattern = patterns.pattern_of[cand[c]];
      const double log_odds = log_odds_prior + log_ratio[pattern];
      const double prob = 1.0 / (1.0 + std::exp(-log_odds));
      const std::uint8_t next = uniform01(pair_rng) < prob ? 1 : 0;
      if (next != state.delta[c]) {
        for (const auto& e : patterns.observed[pattern]) {
          if (next) {
            ++stats.a1[e.field][e.level];
            --stats.a0[e.field][e.level];
          } else {
            --stats.a1[e.field][e.level];
            ++stats.a0[e.field][e.level];
          }
        }
        state.delta[c] = next;
      }
      ones += next;
    }
    state.p = sample_beta(1.0 + static_cast<double>(ones), 1.0 + static_cast<double>(cand.size() - ones), pair_rng);
    detail::draw_params(phi, stats, prior, field_rngs);
    log_ratio = detail::pattern_log_ratios(patterns, phi);

    if (t <= config.burn_in || (t - config.burn_in) % config.thinning != 0) continue;
    out.iterations.push_back(t);
    out.p.push_back(state.p);
    out.nontransitive.push_back(count_nontransitive_triplets(graph.r, state));
    out.params.push_back(phi);
    if (options.keep_draws) out.draws.push_back(state);
  }
  return out;
}

// CSV trace: iteration,p,nontransitive_triplets.
inline void write_triplet_trace(std::ostream& out, const MixtureSample& s) {
  out << "iteration,p,nontransitive_triplets\n";
  out.precision(17);
  for (std::size_t k = 0; k < s.iterations.size(); ++k)
    out << s.iterations[k] << ',' << s.p[k] << ',' << s.nontransitive[k] << '\n';
}

}  // namespace dedup
