#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "dedup/candidate_graph.hpp"
#include "dedup/comparison.hpp"
#include "dedup/error.hpp"
#include "dedup/partition.hpp"
#include "dedup/truncated_beta.hpp"

namespace dedup {

// Sequential conditional level probabilities per field:
//   m[f][l] = P1(level = l | level > l-1),  u[f][l] = P0(level = l | level > l-1),  l < L_f.
struct ModelParams {
  std::vector<std::vector<double>> m;
  std::vector<std::vector<double>> u;
};

struct PriorEntry {
  double lambda = 0.5;  // m ~ TBeta(alpha1, beta1, lambda, 1)
  double alpha1 = 1.0;
  double beta1 = 1.0;
  double alpha0 = 1.0;  // u ~ Beta(alpha0, beta0)
  double beta0 = 1.0;
};

// prior[f][l] for l < L_f.
using PriorSpec = std::vector<std::vector<PriorEntry>>;

inline void validate_prior(const PriorSpec& prior, const std::vector<LevelSpec>& specs) {
  if (prior.size() != specs.size()) throw ConfigError("prior covers " + std::to_string(prior.size()) +
                                                      " fields, comparison has " + std::to_string(specs.size()));
  for (std::size_t f = 0; f < specs.size(); ++f) {
    if (prior[f].size() != specs[f].max_level())
      throw ConfigError("prior for field '" + specs[f].field + "' needs " + std::to_string(specs[f].max_level()) +
                        " entries");
    for (const auto& e : prior[f]) {
      if (!(e.lambda > 0.0 && e.lambda < 1.0))
        throw ConfigError("prior truncation point for field '" + specs[f].field + "' must lie in (0, 1)");
      if (!(e.alpha1 > 0 && e.beta1 > 0 && e.alpha0 > 0 && e.beta0 > 0))
        throw ConfigError("prior shape parameters for field '" + specs[f].field + "' must be positive");
    }
  }
}

// m ~ Uniform(lambda, 1) and u ~ Uniform(0, 1) for every field and level.
inline PriorSpec uniform_prior(const std::vector<LevelSpec>& specs, double lambda) {
  PriorSpec prior(specs.size());
  for (std::size_t f = 0; f < specs.size(); ++f) prior[f].assign(specs[f].max_level(), PriorEntry{lambda});
  return prior;
}

// Truncation points by field name; fields not listed take `fallback`.
inline PriorSpec prior_from_lambdas(const std::vector<LevelSpec>& specs,
                                    const std::map<std::string, std::vector<double>>& lambdas, double fallback) {
  PriorSpec prior = uniform_prior(specs, fallback);
  for (const auto& [name, values] : lambdas) {
    std::size_t f = 0;
    while (f < specs.size() && specs[f].field != name) ++f;
    if (f == specs.size()) throw ConfigError("prior references uncompared field '" + name + "'");
    if (values.size() == 1) {
      for (auto& e : prior[f]) e.lambda = values[0];
    } else if (values.size() == specs[f].max_level()) {
      for (std::size_t l = 0; l < values.size(); ++l) prior[f][l].lambda = values[l];
    } else {
      throw ConfigError("prior for field '" + name + "' lists " + std::to_string(values.size()) +
                        " truncation points, expected 1 or " + std::to_string(specs[f].max_level()));
    }
  }
  validate_prior(prior, specs);
  return prior;
}

// Truncation points used for the homicide registry: fields given_name, family_name, year,
// month, day, municipality with the usual 4-level (names, dates) and binary (municipality) design.
inline std::map<std::string, std::vector<double>> untc_lambdas() {
  return {
      {"given_name", {0.85, 0.90, 0.99}}, {"family_name", {0.85, 0.90, 0.99}}, {"year", {0.85, 0.90, 0.99}},
      {"month", {0.85, 0.90, 0.99}},      {"day", {0.70, 0.70, 0.70}},         {"municipality", {0.85}},
  };
}

inline PriorSpec untc_prior(const std::vector<LevelSpec>& specs) {
  auto lambdas = untc_lambdas();
  for (const auto& s : specs)
    if (!lambdas.count(s.field)) throw ConfigError("untc preset has no truncation points for field '" + s.field + "'");
  return prior_from_lambdas(specs, lambdas, 0.5);
}

// Level probabilities m*_l from sequential conditionals; the result sums to one.
inline std::vector<double> star_probs(const std::vector<double>& seq) {
  std::vector<double> out(seq.size() + 1);
  double survive = 1.0;
  for (std::size_t l = 0; l < seq.size(); ++l) {
    out[l] = seq[l] * survive;
    survive *= 1.0 - seq[l];
  }
  out[seq.size()] = survive;
  return out;
}

namespace detail {

inline double log_p_obs(const ComparisonVector& v, const std::vector<std::vector<double>>& probs) {
  double lp = 0.0;
  for (std::size_t f = 0; f < v.levels.size(); ++f) {
    if (!v.levels[f]) continue;
    const std::size_t level = *v.levels[f];
    const auto& p = probs[f];
    for (std::size_t l = 0; l < p.size(); ++l) {
      if (level == l) {
        lp += std::log(p[l]);
        break;
      }
      lp += std::log1p(-p[l]);
    }
  }
  return lp;
}

}  // namespace detail

// log P1(observed comparisons | m); unobserved fields contribute nothing.
inline double log_p1_obs(const ComparisonVector& v, const ModelParams& params) { return detail::log_p_obs(v, params.m); }

inline double log_p0_obs(const ComparisonVector& v, const ModelParams& params) { return detail::log_p_obs(v, params.u); }

inline double log_likelihood_ratio(const ComparisonVector& v, const ModelParams& params) {
  return log_p1_obs(v, params) - log_p0_obs(v, params);
}

// a1[f][l] / a0[f][l]: observed level-l comparisons of field f among coreferent / noncoreferent
// pairs of P. Pairs in P \ C always count toward a0.
struct SufficientStats {
  std::vector<std::vector<std::uint64_t>> a1;
  std::vector<std::vector<std::uint64_t>> a0;

  static SufficientStats zeros(const std::vector<LevelSpec>& specs) {
    SufficientStats s;
    for (const auto& spec : specs) {
      s.a1.emplace_back(spec.level_count(), 0);
      s.a0.emplace_back(spec.level_count(), 0);
    }
    return s;
  }

  friend bool operator==(const SufficientStats&, const SufficientStats&) = default;
};

inline SufficientStats sufficient_stats(const Labeling& z, const CandidateGraph& g, const std::vector<LevelSpec>& specs) {
  if (z.size() != g.r) throw std::invalid_argument("labeling size does not match record count");
  if (!is_valid_labeling(z, g.candidate_set())) throw std::invalid_argument("labeling merges a pair outside C");
  auto s = SufficientStats::zeros(specs);
  for (std::size_t k = 0; k < g.comparisons.size(); ++k) {
    const auto& cv = g.comparisons[k];
    const bool coref = g.candidate[k] && z[cv.pair.i] == z[cv.pair.j];
    auto& a = coref ? s.a1 : s.a0;
    for (std::size_t f = 0; f < cv.levels.size(); ++f)
      if (cv.levels[f]) ++a[f][*cv.levels[f]];
  }
  return s;
}

// Sum over fields of sum_l [a_l log p_l + (sum_{h>l} a_h) log(1 - p_l)] for m and u.
inline double log_likelihood(const SufficientStats& s, const ModelParams& params) {
  double ll = 0.0;
  auto add = [&ll](const std::vector<std::uint64_t>& a, const std::vector<double>& p) {
    double tail = 0.0;
    for (auto c : a) tail += static_cast<double>(c);
    for (std::size_t l = 0; l < p.size(); ++l) {
      tail -= static_cast<double>(a[l]);
      if (a[l]) ll += static_cast<double>(a[l]) * std::log(p[l]);
      if (tail > 0.0) ll += tail * std::log1p(-p[l]);
    }
  };
  for (std::size_t f = 0; f < s.a1.size(); ++f) {
    add(s.a1[f], params.m[f]);
    add(s.a0[f], params.u[f]);
  }
  return ll;
}

inline double log_prior(const ModelParams& params, const PriorSpec& prior) {
  double lp = 0.0;
  for (std::size_t f = 0; f < prior.size(); ++f)
    for (std::size_t l = 0; l < prior[f].size(); ++l) {
      const auto& e = prior[f][l];
      lp += truncated_beta_log_pdf(params.m[f][l], e.alpha1, e.beta1, e.lambda);
      lp += beta_log_pdf(params.u[f][l], e.alpha0, e.beta0);
    }
  return lp;
}

// log P(comparisons | Z, Phi) + log pi(Phi); the flat prior over valid partitions adds a
// constant taken as zero. Returns -inf when Phi lies outside the prior support.
inline double log_posterior_unnormalized(const Labeling& z, const ModelParams& params, const CandidateGraph& g,
                                         const std::vector<LevelSpec>& specs, const PriorSpec& prior) {
  double lp = log_prior(params, prior);
  if (!std::isfinite(lp)) return -std::numeric_limits<double>::infinity();
  return lp + log_likelihood(sufficient_stats(z, g, specs), params);
}

}  // namespace dedup
