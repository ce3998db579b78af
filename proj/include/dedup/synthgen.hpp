#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dedup/comparison.hpp"
#include "dedup/error.hpp"
#include "dedup/partition.hpp"
#include "dedup/random.hpp"
#include "dedup/record_store.hpp"

#ifndef DEDUP_DATA_DIR
#define DEDUP_DATA_DIR "data"
#endif

namespace dedup {

inline constexpr std::string_view kDefaultTablesDir = DEDUP_DATA_DIR;

// Weighted sampling over a list of values by cumulative counts.
class FrequencyTable {
 public:
  void add(std::string value, double count) {
    if (!(count > 0.0)) throw ConfigError("frequency table count must be positive for '" + value + "'");
    values_.push_back(std::move(value));
    cumulative_.push_back((cumulative_.empty() ? 0.0 : cumulative_.back()) + count);
  }

  std::size_t draw_index(Rng& rng) const {
    if (values_.empty()) throw ConfigError("sampling from an empty frequency table");
    double x = uniform01(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), values_.size() - 1);
  }
  const std::string& draw(Rng& rng) const { return values_[draw_index(rng)]; }

  const std::vector<std::string>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<std::string> values_;
  std::vector<double> cumulative_;
};

// Two-way contingency table sampled jointly.
struct JointTable {
  FrequencyTable cells;  // values encoded as index into `pairs`
  std::vector<std::pair<std::string, std::string>> pairs;

  void add(std::string row, std::string col, double count) {
    cells.add(std::to_string(pairs.size()), count);
    pairs.emplace_back(std::move(row), std::move(col));
  }
  const std::pair<std::string, std::string>& draw(Rng& rng) const { return pairs[cells.draw_index(rng)]; }
};

namespace detail {

inline std::vector<std::vector<std::string>> read_csv_rows(const std::string& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table '" + path + "'");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (getline_stripped(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split_line(line, ',');
    if (cells.size() != columns)
      throw ParseError(lineno, path, "expected " + std::to_string(columns) + " columns");
    for (auto& c : cells) c = std::string(trim(c));
    rows.push_back(std::move(cells));
  }
  return rows;
}

inline std::optional<double> parse_count(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

}  // namespace detail

// CSV "value,count"; a header line whose count is not numeric is skipped.
inline FrequencyTable load_frequency_table(const std::string& path) {
  FrequencyTable t;
  auto rows = detail::read_csv_rows(path, 2);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto c = detail::parse_count(rows[k][1]);
    if (!c) {
      if (k == 0) continue;
      throw ParseError(k + 1, path, "count is not numeric");
    }
    t.add(normalize_text(rows[k][0]), *c);
  }
  if (t.size() == 0) throw ConfigError("frequency table '" + path + "' is empty");
  return t;
}

// CSV "row,col,count".
inline JointTable load_joint_table(const std::string& path) {
  JointTable t;
  auto rows = detail::read_csv_rows(path, 3);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto c = detail::parse_count(rows[k][2]);
    if (!c) {
      if (k == 0) continue;
      throw ParseError(k + 1, path, "count is not numeric");
    }
    t.add(normalize_text(rows[k][0]), normalize_text(rows[k][1]), *c);
  }
  if (t.pairs.empty()) throw ConfigError("joint table '" + path + "' is empty");
  return t;
}

// CSV "value,misspelling", several lines per value allowed.
inline std::map<std::string, std::vector<std::string>> load_misspellings(const std::string& path) {
  std::map<std::string, std::vector<std::string>> out;
  auto rows = detail::read_csv_rows(path, 2);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k == 0 && rows[k][0] == "value") continue;
    out[normalize_text(rows[k][0])].push_back(normalize_text(rows[k][1]));
  }
  return out;
}

enum class ErrorKind { missing, edit, ocr, keyboard, phonetic, misspelling };

inline ErrorKind parse_error_kind(std::string_view s) {
  if (s == "missing") return ErrorKind::missing;
  if (s == "edit") return ErrorKind::edit;
  if (s == "ocr") return ErrorKind::ocr;
  if (s == "keyboard") return ErrorKind::keyboard;
  if (s == "phonetic") return ErrorKind::phonetic;
  if (s == "misspelling") return ErrorKind::misspelling;
  throw ConfigError("unknown error kind '" + std::string(s) + "'");
}

struct CorruptionRule {
  std::string field;
  std::vector<ErrorKind> allowed;
};

enum class SourceKind { frequency_table, joint_row, joint_col, uniform_code };

// Where a field's original values come from. Joint tables are drawn once per record and feed
// both their row field and their column field.
struct ValueSource {
  SourceKind kind = SourceKind::frequency_table;
  std::string table;    // table name in SynthTables
  std::string pattern;  // uniform_code: 'D' becomes a random digit, other characters are copied
};

struct GeneratedField {
  FieldSchema schema;
  ValueSource source;
};

struct SynthTables {
  std::map<std::string, FrequencyTable> single;
  std::map<std::string, JointTable> joint;
  std::map<std::string, std::vector<std::string>> misspellings;
};

// Bundled tables: given_names.csv (gender x given name), family_names.csv, postcodes.csv,
// age_occupation.csv (age interval x occupation), family_misspellings.csv.
inline SynthTables load_default_tables(const std::string& dir = std::string(kDefaultTablesDir)) {
  SynthTables t;
  t.joint["given_names"] = load_joint_table(dir + "/given_names.csv");
  t.joint["age_occupation"] = load_joint_table(dir + "/age_occupation.csv");
  t.single["family_names"] = load_frequency_table(dir + "/family_names.csv");
  t.single["postcodes"] = load_frequency_table(dir + "/postcodes.csv");
  t.misspellings = load_misspellings(dir + "/family_misspellings.csv");
  return t;
}

struct GeneratorConfig {
  std::size_t n_originals = 450;
  std::size_t n_duplicates = 50;
  std::size_t errors_per_duplicate = 1;
  std::size_t max_errors_per_field = 2;
  std::uint64_t seed = 1;
  std::vector<GeneratedField> fields;
  std::vector<CorruptionRule> rules;
  bool shuffle = true;  // interleave duplicates with originals in the output file
};

// Gender, given name, family name, age interval, occupation; with seven fields also phone
// number and postal code. Error types per field follow the usual simulation design: names take
// edits/OCR/keyboard/phonetic (plus misspellings for family names), categorical fields only go
// missing, phone and postcode take missing/edits/OCR/keyboard.
inline GeneratorConfig standard_generator_config(std::size_t field_count, std::size_t errors_per_duplicate,
                                                 std::uint64_t seed) {
  if (field_count != 5 && field_count != 7) throw ConfigError("standard generator supports 5 or 7 fields");
  using E = ErrorKind;
  GeneratorConfig c;
  c.errors_per_duplicate = errors_per_duplicate;
  c.seed = seed;
  auto add = [&](std::string name, FieldKind kind, ValueSource src, std::vector<E> errs) {
    c.fields.push_back({{name, kind, name}, std::move(src)});
    c.rules.push_back({std::move(name), std::move(errs)});
  };
  add("gender", FieldKind::categorical, {SourceKind::joint_row, "given_names", ""}, {E::missing});
  add("given_name", FieldKind::string, {SourceKind::joint_col, "given_names", ""},
      {E::edit, E::ocr, E::keyboard, E::phonetic});
  add("family_name", FieldKind::string, {SourceKind::frequency_table, "family_names", ""},
      {E::edit, E::ocr, E::keyboard, E::phonetic, E::misspelling});
  add("age", FieldKind::categorical, {SourceKind::joint_row, "age_occupation", ""}, {E::missing});
  add("occupation", FieldKind::categorical, {SourceKind::joint_col, "age_occupation", ""}, {E::missing});
  if (field_count == 7) {
    add("phone", FieldKind::string, {SourceKind::uniform_code, "", "DD DDDD DDDD"},
        {E::missing, E::edit, E::ocr, E::keyboard});
    add("postcode", FieldKind::string, {SourceKind::frequency_table, "postcodes", ""},
        {E::missing, E::edit, E::ocr, E::keyboard});
  }
  return c;
}

// Comparison design for the standard generator fields: Levenshtein with cuts 0 / 0.25 / 0.5 on
// names, phone and postcode; binary agreement on the categorical fields.
inline std::vector<LevelSpec> standard_level_specs(const std::vector<FieldSchema>& schema) {
  std::vector<LevelSpec> specs;
  for (const auto& f : schema) {
    if (f.kind == FieldKind::categorical)
      specs.push_back(make_level_spec(schema, f.name, ComparatorKind::binary_equality, {0.0}));
    else
      specs.push_back(make_level_spec(schema, f.name, ComparatorKind::normalized_levenshtein, {0.0, 0.25, 0.5}));
  }
  return specs;
}

// Number of duplicates of one original: Poisson(1) truncated to [1, 5].
inline std::array<double, 5> duplicate_count_pmf() {
  std::array<double, 5> p{};
  double total = 0.0, fact = 1.0;
  for (int k = 1; k <= 5; ++k) {
    fact *= k;
    p[k - 1] = 1.0 / fact;  // e^-1 cancels
    total += p[k - 1];
  }
  for (auto& v : p) v /= total;
  return p;
}

inline std::size_t sample_duplicate_count(Rng& rng) {
  static const auto pmf = duplicate_count_pmf();
  double x = uniform01(rng);
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    x -= pmf[k];
    if (x < 0.0) return k + 1;
  }
  return pmf.size();
}

struct EditOp {
  enum Kind { insert, remove, substitute } kind = substitute;
  std::size_t position = 0;
  char ch = 'A';
};

inline std::string apply_edit(std::string s, const EditOp& op) {
  switch (op.kind) {
    case EditOp::insert:
      s.insert(std::min(op.position, s.size()), 1, op.ch);
      break;
    case EditOp::remove:
      if (op.position < s.size()) s.erase(op.position, 1);
      break;
    case EditOp::substitute:
      if (op.position < s.size()) s[op.position] = op.ch;
      break;
  }
  return s;
}

namespace detail {

inline bool numeric_text(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == ' '; });
}

inline char random_char_like(std::string_view s, Rng& rng) {
  if (numeric_text(s)) return static_cast<char>('0' + uniform_index(rng, 10));
  return static_cast<char>('A' + uniform_index(rng, 26));
}

inline std::vector<std::size_t> content_positions(std::string_view s) {
  std::vector<std::size_t> pos;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k] != ' ') pos.push_back(k);
  return pos;
}

inline EditOp random_edit(std::string_view s, Rng& rng) {
  EditOp op;
  auto pos = content_positions(s);
  std::size_t kinds = pos.size() > 1 ? 3 : 2;  // never delete the last character
  auto k = uniform_index(rng, kinds);
  op.kind = k == 0 ? EditOp::insert : (k == 1 ? EditOp::substitute : EditOp::remove);
  if (op.kind == EditOp::insert) {
    op.position = uniform_index(rng, s.size() + 1);
  } else {
    op.position = pos.empty() ? 0 : pos[uniform_index(rng, pos.size())];
  }
  op.ch = random_char_like(s, rng);
  if (op.kind == EditOp::substitute && op.position < s.size() && op.ch == s[op.position])
    op.ch = numeric_text(s) ? static_cast<char>('0' + (op.ch - '0' + 1) % 10) : static_cast<char>('A' + (op.ch - 'A' + 1) % 26);
  return op;
}

inline const std::map<char, std::string>& ocr_confusions() {
  static const std::map<char, std::string> table = {
      {'O', "0QD"}, {'Q', "O"}, {'D', "O"},  {'I', "1L"}, {'L', "I"}, {'S', "5"}, {'B', "8"}, {'Z', "2"},
      {'G', "6C"},  {'C', "G"}, {'E', "F"},  {'F', "E"},  {'U', "V"}, {'V', "U"}, {'M', "N"}, {'N', "M"},
      {'0', "8"},   {'1', "7"}, {'2', "7"},  {'3', "8"},  {'5', "6"}, {'6', "5"}, {'7', "1"}, {'8', "30"},
  };
  return table;
}

inline const std::map<char, std::string>& keyboard_neighbors() {
  static const std::map<char, std::string> table = [] {
    const std::array<std::string_view, 4> rows = {"1234567890", "QWERTYUIOP", "ASDFGHJKL", "ZXCVBNM"};
    std::map<char, std::string> t;
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t k = 0; k < rows[r].size(); ++k) {
        std::string nb;
        if (k > 0) nb += rows[r][k - 1];
        if (k + 1 < rows[r].size()) nb += rows[r][k + 1];
        // Letters also neighbor the keys directly above and below; digits stay digits.
        if (r >= 1) {
          if (r >= 2 && k < rows[r - 1].size()) nb += rows[r - 1][k];
          if (r + 1 < rows.size() && k < rows[r + 1].size()) nb += rows[r + 1][k];
        }
        t[rows[r][k]] = nb;
      }
    return t;
  }();
  return table;
}

struct PhoneticRule {
  std::string_view from;
  std::string_view to;
  std::string_view before;  // required next character class; empty = any
};

inline const std::vector<PhoneticRule>& phonetic_rules() {
  static const std::vector<PhoneticRule> rules = {
      {"PH", "F", ""},   {"F", "PH", ""},  {"CK", "K", ""}, {"C", "K", "AOU"}, {"K", "C", "AOU"},
      {"KN", "N", ""},   {"TH", "T", ""},  {"EE", "I", ""}, {"OU", "U", ""},   {"Z", "S", ""},
      {"X", "KS", ""},   {"GH", "G", ""},  {"Y", "I", ""},  {"IE", "Y", ""},
  };
  return rules;
}

// Substitutes one character at a random eligible position via `table`; nullopt if none applies.
inline std::optional<std::string> table_substitution(const std::string& s, const std::map<char, std::string>& table,
                                                     bool keep_class, Rng& rng) {
  std::vector<std::size_t> eligible;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (table.count(s[k])) eligible.push_back(k);
  if (eligible.empty()) return std::nullopt;
  auto pos = eligible[uniform_index(rng, eligible.size())];
  std::string options = table.at(s[pos]);
  if (keep_class) {
    bool digit = std::isdigit(static_cast<unsigned char>(s[pos]));
    std::erase_if(options, [&](char c) { return bool(std::isdigit(static_cast<unsigned char>(c))) != digit; });
    if (options.empty()) return std::nullopt;
  }
  std::string out = s;
  out[pos] = options[uniform_index(rng, options.size())];
  return out;
}

inline std::optional<std::string> phonetic_variant(const std::string& s, Rng& rng) {
  struct Hit {
    std::size_t pos;
    const PhoneticRule* rule;
  };
  std::vector<Hit> hits;
  for (const auto& rule : phonetic_rules())
    for (std::size_t pos = s.find(rule.from); pos != std::string::npos; pos = s.find(rule.from, pos + 1)) {
      std::size_t next = pos + rule.from.size();
      if (!rule.before.empty() && (next >= s.size() || rule.before.find(s[next]) == std::string_view::npos)) continue;
      hits.push_back({pos, &rule});
    }
  if (hits.empty()) return std::nullopt;
  const auto& h = hits[uniform_index(rng, hits.size())];
  std::string out = s;
  out.replace(h.pos, h.rule->from.size(), h.rule->to);
  return out;
}

}  // namespace detail

// Applies one error of the given kind. Kinds with no applicable rule for the value (no OCR
// confusable character, no phonetic pattern, no known misspelling) fall back to a random edit.
inline std::optional<Value> corrupt_field(const std::optional<Value>& value, ErrorKind kind, Rng& rng,
                                          const std::map<std::string, std::vector<std::string>>* misspellings = nullptr) {
  if (!value || kind == ErrorKind::missing) return std::nullopt;
  const auto* text = std::get_if<std::string>(&*value);
  if (!text) throw ConfigError("only missingness can corrupt an integer value");
  std::optional<std::string> out;
  switch (kind) {
    case ErrorKind::ocr:
      out = detail::table_substitution(*text, detail::ocr_confusions(), detail::numeric_text(*text), rng);
      break;
    case ErrorKind::keyboard:
      out = detail::table_substitution(*text, detail::keyboard_neighbors(), true, rng);
      break;
    case ErrorKind::phonetic:
      out = detail::phonetic_variant(*text, rng);
      break;
    case ErrorKind::misspelling:
      if (misspellings) {
        auto it = misspellings->find(*text);
        if (it != misspellings->end() && !it->second.empty()) out = it->second[uniform_index(rng, it->second.size())];
      }
      break;
    case ErrorKind::edit:
    case ErrorKind::missing:
      break;
  }
  if (!out) out = apply_edit(*text, detail::random_edit(*text, rng));
  auto norm = normalize_text(*out);
  if (norm.empty()) return std::nullopt;
  return Value{std::move(norm)};
}

// Corrupts exactly `errors` distinct fields chosen uniformly among fields with a nonempty rule;
// each chosen field receives 1..max_per_field errors (uniform), each of a uniformly chosen kind.
inline Record allocate_errors(Record dup, std::size_t errors, const std::vector<std::size_t>& rule_columns,
                              const std::vector<CorruptionRule>& rules, std::size_t max_per_field, Rng& rng,
                              const std::map<std::string, std::vector<std::string>>* misspellings = nullptr) {
  std::vector<std::size_t> eligible;
  for (std::size_t k = 0; k < rules.size(); ++k)
    if (!rules[k].allowed.empty()) eligible.push_back(k);
  if (errors > eligible.size())
    throw ConfigError("errors_per_duplicate exceeds the number of corruptible fields");
  for (std::size_t n = 0; n < errors; ++n) {
    std::swap(eligible[n], eligible[n + uniform_index(rng, eligible.size() - n)]);
    const auto& rule = rules[eligible[n]];
    auto& cell = dup.values[rule_columns[eligible[n]]];
    std::size_t count = 1 + uniform_index(rng, std::max<std::size_t>(1, max_per_field));
    for (std::size_t e = 0; e < count && cell; ++e)
      cell = corrupt_field(cell, rule.allowed[uniform_index(rng, rule.allowed.size())], rng, misspellings);
  }
  return dup;
}

struct SyntheticFile {
  DataFile data;
  Labeling truth;  // entity id per record
};

// Samples originals from the tables, allocates duplicates to uniformly chosen originals with
// truncated-Poisson counts, and corrupts each duplicate independently from its original.
inline SyntheticFile generate(const GeneratorConfig& config, const SynthTables& tables) {
  if (config.fields.empty()) throw ConfigError("generator has no fields");
  if (config.n_originals == 0) throw ConfigError("generator needs at least one original record");
  std::vector<FieldSchema> schema;
  for (const auto& f : config.fields) schema.push_back(f.schema);
  validate_schema(schema);

  std::vector<std::size_t> rule_columns;
  for (const auto& rule : config.rules) {
    std::size_t col = schema.size();
    for (std::size_t f = 0; f < schema.size(); ++f)
      if (schema[f].name == rule.field) col = f;
    if (col == schema.size()) throw ConfigError("corruption rule references unknown field '" + rule.field + "'");
    for (auto k : rule.allowed) {
      if (k != ErrorKind::missing && schema[col].kind != FieldKind::string)
        throw ConfigError("field '" + rule.field + "' only admits missing-value errors");
    }
    rule_columns.push_back(col);
  }

  Rng rng = make_stream(config.seed, 0x5e11);
  std::vector<Record> originals(config.n_originals);
  for (std::size_t i = 0; i < config.n_originals; ++i) {
    auto& rec = originals[i];
    rec.values.resize(schema.size());
    std::map<std::string, std::pair<std::string, std::string>> joint_draws;
    for (std::size_t f = 0; f < config.fields.size(); ++f) {
      const auto& src = config.fields[f].source;
      std::string v;
      switch (src.kind) {
        case SourceKind::frequency_table: {
          auto it = tables.single.find(src.table);
          if (it == tables.single.end()) throw ConfigError("unknown frequency table '" + src.table + "'");
          v = it->second.draw(rng);
          break;
        }
        case SourceKind::joint_row:
        case SourceKind::joint_col: {
          auto it = tables.joint.find(src.table);
          if (it == tables.joint.end()) throw ConfigError("unknown joint table '" + src.table + "'");
          auto jt = joint_draws.find(src.table);
          if (jt == joint_draws.end()) jt = joint_draws.emplace(src.table, it->second.draw(rng)).first;
          v = src.kind == SourceKind::joint_row ? jt->second.first : jt->second.second;
          break;
        }
        case SourceKind::uniform_code:
          for (char c : src.pattern) v.push_back(c == 'D' ? static_cast<char>('0' + uniform_index(rng, 10)) : c);
          break;
      }
      if (schema[f].kind == FieldKind::integer) {
        auto n = parse_integer(v);
        if (!n) throw ConfigError("non-integer generated value for field '" + schema[f].name + "'");
        rec.values[f] = *n;
      } else {
        rec.values[f] = normalize_text(v);
      }
    }
  }

  // Duplicate allocation; restarts if the originals run out before n_duplicates are placed.
  std::vector<std::size_t> dup_counts;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 100) throw ConfigError("cannot place n_duplicates with the available originals");
    dup_counts.assign(config.n_originals, 0);
    std::vector<std::size_t> unused(config.n_originals);
    for (std::size_t k = 0; k < unused.size(); ++k) unused[k] = k;
    std::size_t placed = 0;
    while (placed < config.n_duplicates && !unused.empty()) {
      auto pick = uniform_index(rng, unused.size());
      auto orig = unused[pick];
      unused[pick] = unused.back();
      unused.pop_back();
      auto k = std::min(sample_duplicate_count(rng), config.n_duplicates - placed);
      dup_counts[orig] = k;
      placed += k;
    }
    if (placed == config.n_duplicates) break;
  }

  const auto* miss = tables.misspellings.empty() ? nullptr : &tables.misspellings;
  std::vector<Record> records;
  std::vector<std::uint32_t> entity;
  for (std::size_t i = 0; i < config.n_originals; ++i) {
    records.push_back(originals[i]);
    entity.push_back(static_cast<std::uint32_t>(i));
  }
  for (std::size_t i = 0; i < config.n_originals; ++i)
    for (std::size_t d = 0; d < dup_counts[i]; ++d) {
      records.push_back(allocate_errors(originals[i], config.errors_per_duplicate, rule_columns, config.rules,
                                        config.max_errors_per_field, rng, miss));
      entity.push_back(static_cast<std::uint32_t>(i));
    }

  std::vector<std::size_t> order(records.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  if (config.shuffle)
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[uniform_index(rng, k)]);

  SyntheticFile out;
  out.data.schema = schema;
  Labeling z(records.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    Record rec = std::move(records[order[k]]);
    rec.id = k;
    out.data.records.push_back(std::move(rec));
    z[k] = entity[order[k]];
  }
  out.truth = canonical_labeling(z);
  return out;
}

// Ground truth as "record_id,entity_id".
inline void write_truth(std::ostream& out, const Labeling& truth) {
  out << "record_id,entity_id\n";
  for (std::size_t i = 0; i < truth.size(); ++i) out << i << ',' << truth[i] << '\n';
}

inline Labeling read_truth(std::istream& in) {
  std::string line;
  std::vector<std::pair<std::size_t, std::uint64_t>> rows;
  std::size_t lineno = 0;
  while (detail::getline_stripped(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_line(line, ',');
    if (cells.size() != 2) throw ParseError(lineno, "truth", "expected record_id,entity_id");
    auto rid = parse_integer(cells[0]);
    auto eid = parse_integer(cells[1]);
    if (!rid || !eid) {
      if (lineno == 1) continue;
      throw ParseError(lineno, "truth", "non-integer id");
    }
    if (*rid < 0 || *eid < 0) throw ParseError(lineno, "truth", "negative id");
    rows.emplace_back(static_cast<std::size_t>(*rid), static_cast<std::uint64_t>(*eid));
  }
  if (rows.empty()) throw DataError("truth file has no rows");
  std::map<std::uint64_t, std::uint32_t> relabel;
  Labeling z(rows.size(), std::numeric_limits<std::uint32_t>::max());
  for (auto [rid, eid] : rows) {
    if (rid >= z.size() || z[rid] != std::numeric_limits<std::uint32_t>::max())
      throw DataError("truth record ids must be dense and unique in [0, r)");
    z[rid] = relabel.emplace(eid, static_cast<std::uint32_t>(relabel.size())).first->second;
  }
  return canonical_labeling(z);
}

}  // namespace dedup
