#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dedup/comparison.hpp"
#include "dedup/error.hpp"
#include "dedup/record_store.hpp"

namespace dedup {

enum class FilterKind { always_compare, categorical_block, integer_gap_exceeds, custom_overlap };

inline FilterKind parse_filter_kind(std::string_view s) {
  if (s == "always_compare") return FilterKind::always_compare;
  if (s == "categorical_block") return FilterKind::categorical_block;
  if (s == "integer_gap_exceeds") return FilterKind::integer_gap_exceeds;
  if (s == "custom_overlap") return FilterKind::custom_overlap;
  throw ConfigError("unknown filter kind '" + std::string(s) + "'");
}

// Unordered pairs of normalized values declared adjacent (e.g. neighboring municipalities).
class NeighborTable {
 public:
  void add(const std::string& a, const std::string& b) {
    auto x = normalize_text(a), y = normalize_text(b);
    if (y < x) std::swap(x, y);
    pairs_.emplace(std::move(x), std::move(y));
  }
  bool adjacent(const std::string& a, const std::string& b) const {
    return a < b ? pairs_.count({a, b}) > 0 : pairs_.count({b, a}) > 0;
  }
  std::size_t size() const noexcept { return pairs_.size(); }

 private:
  std::set<std::pair<std::string, std::string>> pairs_;
};

// One line per adjacency: "municipality_a<TAB>municipality_b".
inline NeighborTable load_neighbor_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open neighbor table '" + path + "'");
  NeighborTable table;
  std::string line;
  std::size_t lineno = 0;
  while (detail::getline_stripped(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(lineno, "neighbors", "expected 'a<TAB>b'");
    table.add(line.substr(0, tab), line.substr(tab + 1));
  }
  return table;
}

inline std::vector<std::string> default_stop_tokens() {
  return {"SAN", "SANTA", "SANTO", "LA", "EL", "LAS", "LOS", "DEL", "DE"};
}

// Cheap pair predicate evaluated on raw field values before any comparator runs.
// A missing value never excludes a pair.
struct FilterRule {
  FilterKind kind = FilterKind::always_compare;
  std::string field;
  std::int64_t gap = 0;                  // integer_gap_exceeds
  NeighborTable neighbors;               // custom_overlap
  std::vector<std::string> stop_tokens;  // custom_overlap
};

namespace detail {

struct BoundFilter {
  const FilterRule* rule;
  std::size_t column;
  std::vector<std::vector<std::string>> tokens;  // custom_overlap: per-record informative tokens
};

inline std::vector<BoundFilter> bind_filters(const DataFile& df, const std::vector<FilterRule>& rules) {
  std::vector<BoundFilter> out;
  for (const auto& rule : rules) {
    BoundFilter b{&rule, 0, {}};
    if (rule.kind == FilterKind::always_compare) {
      out.push_back(std::move(b));
      continue;
    }
    b.column = df.field_index(rule.field);
    auto kind = df.schema[b.column].kind;
    if (rule.kind == FilterKind::integer_gap_exceeds && kind != FieldKind::integer)
      throw ConfigError("integer_gap_exceeds on non-integer field '" + rule.field + "'");
    if (rule.kind == FilterKind::custom_overlap) {
      if (kind == FieldKind::integer) throw ConfigError("custom_overlap on integer field '" + rule.field + "'");
      std::unordered_set<std::string> stop;
      for (const auto& s : rule.stop_tokens) stop.insert(normalize_text(s));
      b.tokens.resize(df.r());
      for (const auto& rec : df.records) {
        if (rec.missing(b.column)) continue;
        for (auto t : split_tokens(rec.text(b.column)))
          if (!stop.count(std::string(t))) b.tokens[rec.id].emplace_back(t);
        std::sort(b.tokens[rec.id].begin(), b.tokens[rec.id].end());
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

inline bool passes(const BoundFilter& b, const Record& x, const Record& y) {
  const FilterRule& rule = *b.rule;
  if (rule.kind == FilterKind::always_compare) return true;
  if (x.missing(b.column) || y.missing(b.column)) return true;
  switch (rule.kind) {
    case FilterKind::categorical_block:
      return *x.values[b.column] == *y.values[b.column];
    case FilterKind::integer_gap_exceeds:
      return absolute_difference(x.integer(b.column), y.integer(b.column)) <= rule.gap;
    case FilterKind::custom_overlap: {
      const auto& a = x.text(b.column);
      const auto& c = y.text(b.column);
      if (a == c || rule.neighbors.adjacent(a, c)) return true;
      const auto& ta = b.tokens[x.id];
      const auto& tc = b.tokens[y.id];
      auto i = ta.begin(), j = tc.begin();
      while (i != ta.end() && j != tc.end()) {
        if (*i == *j) return true;
        if (*i < *j) ++i;
        else ++j;
      }
      return false;
    }
    case FilterKind::always_compare:
      break;
  }
  return true;
}

}  // namespace detail

// The set P: pairs (i<j) passing every filter rule, in lexicographic order.
inline std::vector<RecordPair> build_pairs(const DataFile& df, const std::vector<FilterRule>& rules) {
  auto bound = detail::bind_filters(df, rules);
  std::vector<RecordPair> pairs;
  const auto r = static_cast<std::uint32_t>(df.r());
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = i + 1; j < r; ++j) {
      bool keep = true;
      for (const auto& b : bound)
        if (!detail::passes(b, df.records[i], df.records[j])) {
          keep = false;
          break;
        }
      if (keep) pairs.push_back({i, j});
    }
  return pairs;
}

// |P| without materializing the pairs.
inline std::uint64_t count_pairs(const DataFile& df, const std::vector<FilterRule>& rules) {
  const std::uint64_t r = df.r();
  if (rules.empty()) return r * (r - 1) / 2;
  auto bound = detail::bind_filters(df, rules);
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      n += std::all_of(bound.begin(), bound.end(),
                       [&](const auto& b) { return detail::passes(b, df.records[i], df.records[j]); });
  return n;
}

struct FixCondition {
  std::string field;
  std::size_t spec_index = 0;  // position in the LevelSpec list
  std::uint8_t min_level = 0;
};

// A pair is fixed noncoreferent when every condition holds; an unobserved comparison fails its condition.
struct FixRule {
  std::vector<FixCondition> conditions;

  bool matches(const ComparisonVector& cv) const {
    if (conditions.empty()) return false;
    for (const auto& c : conditions)
      if (!cv.observed(c.spec_index) || cv.level(c.spec_index) < c.min_level) return false;
    return true;
  }
};

inline FixCondition make_fix_condition(const std::vector<LevelSpec>& specs, const std::string& field, int min_level) {
  for (std::size_t f = 0; f < specs.size(); ++f) {
    if (specs[f].field != field) continue;
    if (min_level < 0 || static_cast<std::size_t>(min_level) > specs[f].max_level())
      throw ConfigError("fix rule level " + std::to_string(min_level) + " out of range for field '" + field + "'");
    return {field, f, static_cast<std::uint8_t>(min_level)};
  }
  throw ConfigError("fix rule references uncompared field '" + field + "'");
}

// Undirected components over the given edges; isolated records form singleton components.
// Components are listed by smallest member, members ascending.
inline std::vector<std::vector<std::uint32_t>> connected_components(std::size_t r, const std::vector<RecordPair>& edges) {
  std::vector<std::uint32_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& e : edges) {
    auto a = find(e.i), b = find(e.j);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::uint32_t>> comps;
  std::vector<std::size_t> slot(r, static_cast<std::size_t>(-1));
  for (std::uint32_t v = 0; v < r; ++v) {
    auto root = find(v);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = comps.size();
      comps.emplace_back();
    }
    comps[slot[root]].push_back(v);
  }
  return comps;
}

// P with its comparison data, the candidate subset C, and the fixed remainder P \ C.
struct CandidateGraph {
  std::size_t r = 0;
  std::vector<ComparisonVector> comparisons;  // one per pair in P
  std::vector<char> candidate;                // parallel to comparisons: 1 if in C
  std::vector<std::vector<std::uint32_t>> components;  // components of C with >= 2 records

  std::size_t pair_count() const noexcept { return comparisons.size(); }

  std::vector<RecordPair> candidate_pairs() const {
    std::vector<RecordPair> out;
    for (std::size_t k = 0; k < comparisons.size(); ++k)
      if (candidate[k]) out.push_back(comparisons[k].pair);
    return out;
  }
  std::size_t candidate_count() const {
    return static_cast<std::size_t>(std::count(candidate.begin(), candidate.end(), 1));
  }
  std::size_t fixed_count() const { return pair_count() - candidate_count(); }

  std::unordered_set<std::uint64_t> candidate_set() const {
    std::unordered_set<std::uint64_t> s;
    for (std::size_t k = 0; k < comparisons.size(); ++k)
      if (candidate[k]) s.insert(pair_key(comparisons[k].pair.i, comparisons[k].pair.j));
    return s;
  }
};

inline CandidateGraph fix_noncoreferent(std::size_t r, std::vector<ComparisonVector> comps,
                                        const std::vector<FixRule>& rules) {
  CandidateGraph g;
  g.r = r;
  g.candidate.resize(comps.size());
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto& p = comps[k].pair;
    if (p.i >= p.j || p.j >= r) throw DataError("invalid record pair in comparison set");
    g.candidate[k] = std::none_of(rules.begin(), rules.end(), [&](const FixRule& fr) { return fr.matches(comps[k]); });
  }
  g.comparisons = std::move(comps);
  for (auto& comp : connected_components(r, g.candidate_pairs()))
    if (comp.size() >= 2) g.components.push_back(std::move(comp));
  return g;
}

// Edge list export: i,j,fixed (1 when the pair was fixed noncoreferent).
inline void write_candidate_edges(std::ostream& out, const CandidateGraph& g) {
  out << "i,j,fixed\n";
  for (std::size_t k = 0; k < g.comparisons.size(); ++k)
    out << g.comparisons[k].pair.i << ',' << g.comparisons[k].pair.j << ',' << (g.candidate[k] ? 0 : 1) << '\n';
}

}  // namespace dedup
