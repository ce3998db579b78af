#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "dedup/comparison.hpp"
#include "dedup/error.hpp"
#include "dedup/gibbs.hpp"
#include "dedup/partition.hpp"

namespace dedup {

struct PairProbability {
  RecordPair pair;
  double probability = 0.0;
};

// Share of retained partitions grouping each listed pair.
inline std::vector<PairProbability> pairwise_probabilities(const std::vector<Labeling>& sample,
                                                           const std::vector<RecordPair>& pairs) {
  if (sample.empty()) throw std::invalid_argument("pairwise_probabilities: empty sample");
  std::vector<PairProbability> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    std::size_t hits = 0;
    for (const auto& z : sample) hits += z[p.i] == z[p.j];
    out.push_back({p, static_cast<double>(hits) / static_cast<double>(sample.size())});
  }
  return out;
}

// Empirical quantile with linear interpolation between order statistics.
inline double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw std::invalid_argument("quantile of an empty set");
  std::sort(v.begin(), v.end());
  double pos = q * static_cast<double>(v.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  auto hi = static_cast<std::size_t>(std::ceil(pos));
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

struct DuplicateSummary {
  std::size_t r = 0;
  double mean = 0.0;
  double median = 0.0;
  std::size_t min = 0;
  std::size_t max = 0;
  double level = 0.9;
  double lower = 0.0;  // central interval at `level`
  double upper = 0.0;

  static double percentage(double duplicates, std::size_t r) { return 100.0 * duplicates / static_cast<double>(r); }
  double mean_percentage() const { return percentage(mean, r); }
  double lower_percentage() const { return percentage(lower, r); }
  double upper_percentage() const { return percentage(upper, r); }
};

// Distribution of r - n (duplicate count) over the retained partitions.
inline DuplicateSummary duplicate_distribution(const std::vector<Labeling>& sample, std::size_t r, double level = 0.9) {
  if (sample.empty()) throw std::invalid_argument("duplicate_distribution: empty sample");
  std::vector<double> dups;
  dups.reserve(sample.size());
  for (const auto& z : sample) {
    if (z.size() != r) throw DataError("labeling size does not match record count");
    dups.push_back(static_cast<double>(r - cell_count(z)));
  }
  DuplicateSummary s;
  s.r = r;
  s.level = level;
  for (double d : dups) s.mean += d;
  s.mean /= static_cast<double>(dups.size());
  s.median = quantile(dups, 0.5);
  s.min = static_cast<std::size_t>(*std::min_element(dups.begin(), dups.end()));
  s.max = static_cast<std::size_t>(*std::max_element(dups.begin(), dups.end()));
  s.lower = quantile(dups, (1.0 - level) / 2.0);
  s.upper = quantile(dups, (1.0 + level) / 2.0);
  return s;
}

struct ConfusionCounts {
  std::uint64_t b11 = 0;  // coreferent in both
  std::uint64_t b10 = 0;  // coreferent in the estimate only
  std::uint64_t b01 = 0;  // coreferent in the reference only
};

inline std::uint64_t within_cell_pairs(const Partition& p) {
  std::uint64_t n = 0;
  for (const auto& c : p.cells()) n += static_cast<std::uint64_t>(c.size()) * (c.size() - 1) / 2;
  return n;
}

inline ConfusionCounts confusion_counts(const Partition& est, const Partition& ref) {
  if (est.r() != ref.r()) throw DataError("partitions cover different record universes");
  auto ze = est.labeling(), zr = ref.labeling();
  std::unordered_map<std::uint64_t, std::uint64_t> overlap;
  for (std::size_t i = 0; i < ze.size(); ++i) ++overlap[(static_cast<std::uint64_t>(ze[i]) << 32) | zr[i]];
  ConfusionCounts c;
  for (const auto& [key, n] : overlap) c.b11 += n * (n - 1) / 2;
  c.b10 = within_cell_pairs(est) - c.b11;
  c.b01 = within_cell_pairs(ref) - c.b11;
  return c;
}

struct PrecisionRecall {
  double precision = 1.0;
  double recall = 1.0;
};

// Pairwise precision b11/(b11+b10) and recall b11/(b11+b01). An empty denominator yields 1.
inline PrecisionRecall precision_recall(const Partition& est, const Partition& ref) {
  auto c = confusion_counts(est, ref);
  PrecisionRecall pr;
  if (c.b11 + c.b10) pr.precision = static_cast<double>(c.b11) / static_cast<double>(c.b11 + c.b10);
  if (c.b11 + c.b01) pr.recall = static_cast<double>(c.b11) / static_cast<double>(c.b11 + c.b01);
  return pr;
}

struct PartitionFrequency {
  Partition partition;
  double frequency = 0.0;
};

// Distinct partitions by descending frequency; ties keep canonical order.
inline std::vector<PartitionFrequency> partition_frequency_table(const std::vector<Labeling>& sample) {
  std::map<Labeling, std::size_t> counts;
  for (const auto& z : sample) ++counts[canonical_labeling(z)];
  std::vector<PartitionFrequency> out;
  for (const auto& [z, n] : counts)
    out.push_back({Partition(z), static_cast<double>(n) / static_cast<double>(sample.size())});
  std::stable_sort(out.begin(), out.end(),
                   [](const PartitionFrequency& a, const PartitionFrequency& b) { return a.frequency > b.frequency; });
  return out;
}

struct MetricSummary {
  double median = 0.0;
  double p01 = 0.0;
  double p99 = 0.0;
};

struct MetricSummaries {
  MetricSummary precision;
  MetricSummary recall;
};

// Precision and recall of every retained partition against `ref`, summarized by median and
// first / 99th percentiles.
inline MetricSummaries summary_distributions_of_metrics(const std::vector<Labeling>& sample, const Partition& ref) {
  if (sample.empty()) throw std::invalid_argument("summary_distributions_of_metrics: empty sample");
  std::vector<double> prec, rec;
  for (const auto& z : sample) {
    if (z.size() != ref.r()) throw DataError("sample and reference partition cover different record universes");
    auto pr = precision_recall(Partition(z), ref);
    prec.push_back(pr.precision);
    rec.push_back(pr.recall);
  }
  auto summarize = [](const std::vector<double>& v) {
    return MetricSummary{quantile(v, 0.5), quantile(v, 0.01), quantile(v, 0.99)};
  };
  return {summarize(prec), summarize(rec)};
}

inline std::vector<Labeling> pooled_labelings(const std::vector<PosteriorSample>& chains) {
  std::vector<Labeling> out;
  for (const auto& c : chains) out.insert(out.end(), c.labelings.begin(), c.labelings.end());
  return out;
}

inline void write_pairwise_csv(std::ostream& out, const std::vector<PairProbability>& probs) {
  out << "i,j,probability\n";
  for (const auto& p : probs) out << p.pair.i << ',' << p.pair.j << ',' << p.probability << '\n';
}

inline void write_phi_trace(std::ostream& out, const PosteriorSample& sample, const std::vector<LevelSpec>& specs) {
  out << "iteration,field,level,m,u\n";
  out.precision(17);
  for (std::size_t k = 0; k < sample.params.size(); ++k)
    for (std::size_t f = 0; f < specs.size(); ++f)
      for (std::size_t l = 0; l < sample.params[k].m[f].size(); ++l)
        out << sample.iterations[k] << ',' << specs[f].field << ',' << l << ',' << sample.params[k].m[f][l] << ','
            << sample.params[k].u[f][l] << '\n';
}

}  // namespace dedup
