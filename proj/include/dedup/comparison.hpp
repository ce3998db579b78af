#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "dedup/error.hpp"
#include "dedup/record_store.hpp"

namespace dedup {

enum class ComparatorKind { normalized_levenshtein, token_min_levenshtein, absolute_difference, binary_equality };

inline ComparatorKind parse_comparator_kind(std::string_view s) {
  if (s == "normalized_levenshtein") return ComparatorKind::normalized_levenshtein;
  if (s == "token_min_levenshtein") return ComparatorKind::token_min_levenshtein;
  if (s == "absolute_difference") return ComparatorKind::absolute_difference;
  if (s == "binary_equality") return ComparatorKind::binary_equality;
  throw ConfigError("unknown comparator kind '" + std::string(s) + "'");
}

// Ordinal binning of one field's similarity measure.
//
// `cuts[l]` is the closed upper bound of level l for l < L_f; level L_f takes everything above
// cuts.back(). With cuts = {0, 0.25, 0.5} the levels are {0}, (0,0.25], (0.25,0.5], (0.5,1].
// Level 0 is the highest-agreement interval.
struct LevelSpec {
  std::string field;
  std::size_t column = 0;  // index into the DataFile schema
  ComparatorKind kind = ComparatorKind::binary_equality;
  std::vector<double> cuts;

  std::size_t max_level() const noexcept { return cuts.size(); }  // L_f
  std::size_t level_count() const noexcept { return cuts.size() + 1; }
};

inline LevelSpec make_level_spec(const std::vector<FieldSchema>& schema, const std::string& field, ComparatorKind kind,
                                 std::vector<double> cuts) {
  LevelSpec spec;
  spec.field = field;
  spec.kind = kind;
  spec.column = schema.size();
  for (std::size_t f = 0; f < schema.size(); ++f)
    if (schema[f].name == field) spec.column = f;
  if (spec.column == schema.size()) throw ConfigError("comparator references unknown field '" + field + "'");
  if (kind == ComparatorKind::binary_equality && cuts.empty()) cuts = {0.0};
  if (cuts.empty()) throw ConfigError("field '" + field + "': at least one cut point is required");
  if (cuts.size() > 254) throw ConfigError("field '" + field + "': too many levels");
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    if (!std::isfinite(cuts[k]) || cuts[k] < 0.0)
      throw ConfigError("field '" + field + "': cut points must be finite and nonnegative");
    if (k > 0 && !(cuts[k] > cuts[k - 1])) throw ConfigError("field '" + field + "': cut points must ascend");
  }
  bool unit_range = kind == ComparatorKind::normalized_levenshtein || kind == ComparatorKind::token_min_levenshtein ||
                    kind == ComparatorKind::binary_equality;
  if (unit_range && cuts.back() >= 1.0)
    throw ConfigError("field '" + field + "': cut points must lie below 1 for a [0,1] comparator");
  auto kind_of = schema[spec.column].kind;
  if (kind == ComparatorKind::absolute_difference && kind_of != FieldKind::integer)
    throw ConfigError("field '" + field + "': absolute_difference needs an integer field");
  if ((kind == ComparatorKind::normalized_levenshtein || kind == ComparatorKind::token_min_levenshtein) &&
      kind_of == FieldKind::integer)
    throw ConfigError("field '" + field + "': string comparator on an integer field");
  spec.cuts = std::move(cuts);
  return spec;
}

// Plain edit distance (insert, delete, substitute; unit costs), two-row dynamic program.
inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();
  thread_local std::vector<std::size_t> row;
  row.resize(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i + 1;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t up = row[j + 1];
      std::size_t best = diag + (a[i] == b[j] ? 0 : 1);
      best = std::min(best, up + 1);
      best = std::min(best, row[j] + 1);
      row[j + 1] = best;
      diag = up;
    }
  }
  return row[b.size()];
}

// Distance over max length; nullopt when both strings are empty.
inline std::optional<double> normalized_levenshtein(std::string_view a, std::string_view b) {
  std::size_t len = std::max(a.size(), b.size());
  if (len == 0) return std::nullopt;
  return static_cast<double>(levenshtein(a, b)) / static_cast<double>(len);
}

inline std::vector<std::string_view> split_tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    std::size_t start = k;
    while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    if (k > start) out.push_back(s.substr(start, k - start));
  }
  return out;
}

// Levenshtein similarity tolerant of missing name pieces.
//
// Equal token counts compare position by position. Otherwise every token of the shorter name
// is matched to the token of the longer name at minimum edit distance, and that distance is
// normalized by the longer of the two matched tokens. Per-token values are averaged.
inline double token_min_levenshtein(std::string_view a, std::string_view b) {
  auto ta = split_tokens(a);
  auto tb = split_tokens(b);
  if (ta.empty() || tb.empty()) throw DataError("token_min_levenshtein: empty name");
  auto norm = [](std::string_view x, std::string_view y, std::size_t d) {
    return static_cast<double>(d) / static_cast<double>(std::max(x.size(), y.size()));
  };
  double total = 0.0;
  if (ta.size() == tb.size()) {
    for (std::size_t k = 0; k < ta.size(); ++k) total += norm(ta[k], tb[k], levenshtein(ta[k], tb[k]));
    return total / static_cast<double>(ta.size());
  }
  const auto& shorter = ta.size() < tb.size() ? ta : tb;
  const auto& longer = ta.size() < tb.size() ? tb : ta;
  for (auto s : shorter) {
    std::size_t best_d = static_cast<std::size_t>(-1);
    double best = 1.0;
    for (auto l : longer) {
      std::size_t d = levenshtein(s, l);
      double v = norm(s, l, d);
      if (d < best_d || (d == best_d && v < best)) {
        best_d = d;
        best = v;
      }
    }
    total += best;
  }
  return total / static_cast<double>(shorter.size());
}

inline std::int64_t absolute_difference(std::int64_t x, std::int64_t y) noexcept { return x > y ? x - y : y - x; }

inline std::uint8_t bin_level(double s, const LevelSpec& spec) {
  bool unit_range = spec.kind != ComparatorKind::absolute_difference;
  if (std::isnan(s) || s < 0.0 || (unit_range && s > 1.0))
    throw ConfigError("field '" + spec.field + "': similarity " + std::to_string(s) + " outside comparator range");
  for (std::size_t l = 0; l < spec.cuts.size(); ++l)
    if (s <= spec.cuts[l]) return static_cast<std::uint8_t>(l);
  return static_cast<std::uint8_t>(spec.cuts.size());
}

// Similarity measure of two present values under the level spec's comparator.
inline double similarity(const Value& a, const Value& b, const LevelSpec& spec) {
  switch (spec.kind) {
    case ComparatorKind::normalized_levenshtein: {
      auto v = normalized_levenshtein(std::get<std::string>(a), std::get<std::string>(b));
      return v.value_or(0.0);
    }
    case ComparatorKind::token_min_levenshtein:
      return token_min_levenshtein(std::get<std::string>(a), std::get<std::string>(b));
    case ComparatorKind::absolute_difference:
      return static_cast<double>(absolute_difference(std::get<std::int64_t>(a), std::get<std::int64_t>(b)));
    case ComparatorKind::binary_equality:
      return a == b ? 0.0 : 1.0;
  }
  return 0.0;
}

struct RecordPair {
  std::uint32_t i = 0;
  std::uint32_t j = 0;  // i < j

  friend bool operator==(const RecordPair&, const RecordPair&) = default;
  friend auto operator<=>(const RecordPair&, const RecordPair&) = default;
};

inline std::uint64_t pair_key(std::uint32_t i, std::uint32_t j) noexcept {
  if (i > j) std::swap(i, j);
  return (static_cast<std::uint64_t>(i) << 32) | j;
}

// Levels per compared field; an empty optional marks a missing comparison.
struct ComparisonVector {
  RecordPair pair;
  std::vector<std::optional<std::uint8_t>> levels;

  bool observed(std::size_t f) const { return levels[f].has_value(); }
  std::uint8_t level(std::size_t f) const { return *levels[f]; }
};

inline ComparisonVector compare_pair(const Record& a, const Record& b, const std::vector<LevelSpec>& specs) {
  ComparisonVector cv;
  cv.pair = {static_cast<std::uint32_t>(std::min(a.id, b.id)), static_cast<std::uint32_t>(std::max(a.id, b.id))};
  cv.levels.resize(specs.size());
  for (std::size_t f = 0; f < specs.size(); ++f) {
    const auto& va = a.values[specs[f].column];
    const auto& vb = b.values[specs[f].column];
    if (!va || !vb) continue;
    cv.levels[f] = bin_level(similarity(*va, *vb, specs[f]), specs[f]);
  }
  return cv;
}

inline unsigned resolve_threads(unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}

// Compares every listed pair; output order follows `pairs` regardless of thread count.
inline std::vector<ComparisonVector> compare_pairs(const DataFile& df, const std::vector<RecordPair>& pairs,
                                                   const std::vector<LevelSpec>& specs, unsigned threads = 1) {
  std::vector<ComparisonVector> out(pairs.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k)
      out[k] = compare_pair(df.records[pairs[k].i], df.records[pairs[k].j], specs);
  };
  threads = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(1, pairs.size() / 1024)));
  if (threads <= 1) {
    work(0, pairs.size());
    return out;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (pairs.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t b = t * chunk, e = std::min(pairs.size(), b + chunk);
    if (b < e) pool.emplace_back(work, b, e);
  }
  for (auto& th : pool) th.join();
  return out;
}

// Delimited export: pair,i,j,<field levels or NA>.
inline void write_comparisons(std::ostream& out, const std::vector<ComparisonVector>& comps,
                              const std::vector<LevelSpec>& specs) {
  out << "pair,i,j";
  for (const auto& s : specs) out << ',' << s.field;
  out << '\n';
  for (std::size_t k = 0; k < comps.size(); ++k) {
    out << k << ',' << comps[k].pair.i << ',' << comps[k].pair.j;
    for (const auto& lv : comps[k].levels) {
      out << ',';
      if (lv) out << static_cast<int>(*lv);
      else out << "NA";
    }
    out << '\n';
  }
}

}  // namespace dedup
