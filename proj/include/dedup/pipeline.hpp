#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dedup/baseline_mixture.hpp"
#include "dedup/candidate_graph.hpp"
#include "dedup/comparison.hpp"
#include "dedup/error.hpp"
#include "dedup/gibbs.hpp"
#include "dedup/model.hpp"
#include "dedup/partition.hpp"
#include "dedup/posterior.hpp"
#include "dedup/record_store.hpp"
#include "dedup/synthgen.hpp"

namespace dedup {

inline constexpr std::string_view kVersion = "1.0.0";

namespace fs = std::filesystem;
using json = nlohmann::json;

struct ComparatorConfig {
  std::string field;
  ComparatorKind kind = ComparatorKind::binary_equality;
  std::vector<double> cuts;
};

struct FixConditionConfig {
  std::string field;
  int min_level = 0;
};

struct PriorConfig {
  std::string preset;  // "", "untc" or "uniform"
  std::map<std::string, std::vector<double>> lambdas;
  double default_lambda = 0.5;
  double alpha1 = 1.0, beta1 = 1.0, alpha0 = 1.0, beta0 = 1.0;
};

struct PipelineConfig {
  fs::path base_dir;  // relative paths resolve against the config file's directory
  fs::path input;
  char delimiter = ',';
  std::string missing_token = "NA";
  std::vector<std::string> require_fields;
  std::vector<FieldSchema> schema;
  std::vector<ComparatorConfig> comparators;
  std::vector<FilterRule> filters;
  std::vector<std::vector<FixConditionConfig>> fix_rules;  // OR of ANDs
  PriorConfig prior;
  SamplerConfig sampler;
  unsigned threads = 0;  // 0 = all cores
  fs::path output_dir = "out";
  std::optional<fs::path> truth;  // optional ground truth for metrics
  json raw;                       // config echo for the manifest
};

// Command-line overrides applied on top of the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> burn_in;
  std::optional<unsigned> threads;
  std::optional<fs::path> output_dir;
};

namespace detail {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

inline const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  return j.at(key);
}

inline fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

inline char parse_delimiter(const std::string& s) {
  if (s == "\\t" || s == "tab") return '\t';
  if (s.size() != 1) throw ConfigError("input.delimiter must be a single character");
  return s[0];
}

}  // namespace detail

inline PipelineConfig parse_pipeline_config(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config root must be an object");
  PipelineConfig c;
  c.base_dir = base_dir;
  c.raw = j;
  try {
    const auto& input = detail::require(j, "input", "config");
    c.input = detail::resolve(base_dir, detail::require(input, "path", "input").get<std::string>());
    c.delimiter = detail::parse_delimiter(detail::get_or<std::string>(input, "delimiter", ","));
    c.missing_token = detail::get_or<std::string>(input, "missing", "NA");
    c.require_fields = detail::get_or<std::vector<std::string>>(input, "require_fields", {});
    if (input.contains("truth")) c.truth = detail::resolve(base_dir, input.at("truth").get<std::string>());

    for (const auto& f : detail::require(j, "schema", "config")) {
      FieldSchema fs_;
      fs_.name = detail::require(f, "name", "schema").get<std::string>();
      fs_.kind = parse_field_kind(detail::get_or<std::string>(f, "type", "string"));
      c.schema.push_back(std::move(fs_));
    }
    validate_schema(c.schema);

    for (const auto& cj : detail::require(j, "comparators", "config")) {
      ComparatorConfig cc;
      cc.field = detail::require(cj, "field", "comparators").get<std::string>();
      cc.kind = parse_comparator_kind(detail::require(cj, "kind", "comparators").get<std::string>());
      cc.cuts = detail::get_or<std::vector<double>>(cj, "cuts", {});
      for (auto& f : c.schema)
        if (f.name == cc.field) f.comparator_binding = std::string(cj.at("kind").get<std::string>());
      c.comparators.push_back(std::move(cc));
    }
    if (c.comparators.empty()) throw ConfigError("comparators: at least one compared field is required");

    if (j.contains("filters"))
      for (const auto& fj : j.at("filters")) {
        FilterRule rule;
        rule.kind = parse_filter_kind(detail::require(fj, "kind", "filters").get<std::string>());
        if (rule.kind != FilterKind::always_compare) rule.field = detail::require(fj, "field", "filters").get<std::string>();
        rule.gap = detail::get_or<std::int64_t>(fj, "gap", 0);
        if (rule.gap < 0) throw ConfigError("filters: gap must be nonnegative");
        if (rule.kind == FilterKind::custom_overlap) {
          if (fj.contains("neighbors"))
            rule.neighbors = load_neighbor_table(detail::resolve(base_dir, fj.at("neighbors").get<std::string>()).string());
          rule.stop_tokens = fj.contains("stop_tokens") ? fj.at("stop_tokens").get<std::vector<std::string>>()
                                                        : default_stop_tokens();
        }
        c.filters.push_back(std::move(rule));
      }

    if (j.contains("fix_rules"))
      for (const auto& rj : j.at("fix_rules")) {
        std::vector<FixConditionConfig> rule;
        const json& conds = rj.is_array() ? rj : json::array({rj});
        for (const auto& cj : conds)
          rule.push_back({detail::require(cj, "field", "fix_rules").get<std::string>(),
                          detail::require(cj, "min_level", "fix_rules").get<int>()});
        if (rule.empty()) throw ConfigError("fix_rules: empty rule");
        c.fix_rules.push_back(std::move(rule));
      }

    if (j.contains("prior")) {
      const auto& pj = j.at("prior");
      c.prior.preset = detail::get_or<std::string>(pj, "preset", "");
      if (!c.prior.preset.empty() && c.prior.preset != "untc" && c.prior.preset != "uniform")
        throw ConfigError("prior.preset must be 'untc' or 'uniform'");
      c.prior.default_lambda = detail::get_or<double>(pj, "default_lambda", 0.5);
      if (pj.contains("lambdas"))
        for (const auto& [name, v] : pj.at("lambdas").items())
          c.prior.lambdas[name] = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
      c.prior.alpha1 = detail::get_or<double>(pj, "alpha1", 1.0);
      c.prior.beta1 = detail::get_or<double>(pj, "beta1", 1.0);
      c.prior.alpha0 = detail::get_or<double>(pj, "alpha0", 1.0);
      c.prior.beta0 = detail::get_or<double>(pj, "beta0", 1.0);
    }

    if (j.contains("sampler")) {
      const auto& sj = j.at("sampler");
      c.sampler.iterations = detail::get_or<std::size_t>(sj, "iterations", c.sampler.iterations);
      c.sampler.burn_in = detail::get_or<std::size_t>(sj, "burn_in", c.sampler.burn_in);
      c.sampler.thinning = detail::get_or<std::size_t>(sj, "thinning", c.sampler.thinning);
      c.sampler.seed = detail::get_or<std::uint64_t>(sj, "seed", c.sampler.seed);
      c.sampler.chains = detail::get_or<std::size_t>(sj, "chains", c.sampler.chains);
      c.sampler.randomized_scan = detail::get_or<bool>(sj, "randomized_scan", false);
    }
    c.threads = detail::get_or<unsigned>(j, "threads", 0);
    c.output_dir = detail::resolve(base_dir, detail::get_or<std::string>(j, "output_dir", "out"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

inline json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  try {
    return json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

inline PipelineConfig load_pipeline_config(const fs::path& path) {
  return parse_pipeline_config(read_json_file(path), path.parent_path());
}

inline void apply_overrides(PipelineConfig& c, const Overrides& o) {
  if (o.seed) c.sampler.seed = *o.seed;
  if (o.iterations) c.sampler.iterations = *o.iterations;
  if (o.burn_in) c.sampler.burn_in = *o.burn_in;
  if (o.threads) c.threads = *o.threads;
  if (o.output_dir) c.output_dir = *o.output_dir;
}

// Checks that do not need the data: sampler settings and referenced files.
inline void validate_config(const PipelineConfig& c) {
  c.sampler.validate();
  if (!fs::exists(c.input)) throw ConfigError("input file '" + c.input.string() + "' does not exist");
  if (c.truth && !fs::exists(*c.truth)) throw ConfigError("truth file '" + c.truth->string() + "' does not exist");
}

// Rethrows any error from `fn` with a stage tag, keeping its category.
template <class Fn>
auto staged(const char* stage, Fn&& fn) -> decltype(fn()) {
  const std::string tag = std::string("[") + stage + "] ";
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw ConfigError(tag + e.what());
  } catch (const DataError& e) {
    throw DataError(tag + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(tag + e.what());
  }
}

struct PreparedData {
  DataFile data;
  std::size_t dropped = 0;
  std::vector<LevelSpec> specs;
  std::vector<FixRule> fix_rules;
  CandidateGraph graph;
  PriorSpec prior;
};

inline std::vector<LevelSpec> build_level_specs(const PipelineConfig& c) {
  std::vector<LevelSpec> specs;
  for (const auto& cc : c.comparators) specs.push_back(make_level_spec(c.schema, cc.field, cc.kind, cc.cuts));
  return specs;
}

inline PriorSpec build_prior(const PipelineConfig& c, const std::vector<LevelSpec>& specs) {
  PriorSpec prior;
  if (c.prior.preset == "untc") {
    prior = untc_prior(specs);
    for (const auto& [name, values] : c.prior.lambdas) {
      auto extra = prior_from_lambdas(specs, {{name, values}}, 0.5);
      for (std::size_t f = 0; f < specs.size(); ++f)
        if (specs[f].field == name) prior[f] = extra[f];
    }
  } else {
    prior = prior_from_lambdas(specs, c.prior.lambdas, c.prior.default_lambda);
  }
  for (auto& field : prior)
    for (auto& e : field) {
      e.alpha1 = c.prior.alpha1;
      e.beta1 = c.prior.beta1;
      e.alpha0 = c.prior.alpha0;
      e.beta0 = c.prior.beta0;
    }
  validate_prior(prior, specs);
  return prior;
}

// Ingest, compare, filter, fix. Stops before any sampling.
inline PreparedData prepare(const PipelineConfig& c) {
  staged("config", [&] { validate_config(c); });
  PreparedData p;
  p.data = staged("ingest", [&] { return load_delimited(c.input.string(), c.schema, c.delimiter, c.missing_token); });
  if (!c.require_fields.empty()) {
    p.dropped = staged("ingest", [&] { return drop_incomplete(p.data, c.require_fields); });
    if (p.data.r() == 0) throw DataError("[ingest] no records left after require_fields");
  }
  p.specs = staged("compare", [&] { return build_level_specs(c); });
  p.prior = staged("prior", [&] { return build_prior(c, p.specs); });
  auto pairs = staged("filter", [&] { return build_pairs(p.data, c.filters); });
  auto comps = staged("compare", [&] { return compare_pairs(p.data, pairs, p.specs, c.threads); });
  p.fix_rules = staged("fix", [&] {
    std::vector<FixRule> rules;
    for (const auto& rc : c.fix_rules) {
      FixRule rule;
      for (const auto& cond : rc) rule.conditions.push_back(make_fix_condition(p.specs, cond.field, cond.min_level));
      rules.push_back(std::move(rule));
    }
    return rules;
  });
  p.graph = staged("fix", [&] { return fix_noncoreferent(p.data.r(), std::move(comps), p.fix_rules); });
  return p;
}

struct DedupeResult {
  PreparedData prepared;
  std::vector<PosteriorSample> chains;
  std::vector<Labeling> pooled;
  std::vector<PartitionFrequency> frequencies;
  DuplicateSummary duplicates;
  std::optional<MetricSummaries> metrics;
  double seconds = 0.0;
};

inline DedupeResult run_dedupe(const PipelineConfig& c) {
  auto start = std::chrono::steady_clock::now();
  DedupeResult res;
  res.prepared = prepare(c);
  const auto& p = res.prepared;
  res.chains = staged("sample", [&] { return run_chains(p.graph, p.specs, p.prior, c.sampler, std::nullopt, c.threads); });
  res.pooled = pooled_labelings(res.chains);
  staged("summarize", [&] {
    res.frequencies = partition_frequency_table(res.pooled);
    res.duplicates = duplicate_distribution(res.pooled, p.data.r());
    if (c.truth) {
      std::ifstream in(*c.truth);
      auto truth = read_truth(in);
      res.metrics = summary_distributions_of_metrics(res.pooled, Partition(truth));
    }
  });
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

namespace detail {

inline std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

inline void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

inline json manifest_base(const PipelineConfig& c, const char* command) {
  json m;
  m["tool"] = "dedup";
  m["version"] = std::string(kVersion);
  m["command"] = command;
  m["config"] = c.raw;
  m["effective"] = {{"seed", c.sampler.seed},
                    {"iterations", c.sampler.iterations},
                    {"burn_in", c.sampler.burn_in},
                    {"thinning", c.sampler.thinning},
                    {"chains", c.sampler.chains},
                    {"threads", c.threads},
                    {"output_dir", c.output_dir.string()}};
  return m;
}

inline json graph_summary(const PreparedData& p) {
  return {{"records", p.data.r()},
          {"dropped_records", p.dropped},
          {"compared_pairs", p.graph.pair_count()},
          {"candidate_pairs", p.graph.candidate_count()},
          {"fixed_pairs", p.graph.fixed_count()},
          {"components", p.graph.components.size()}};
}

}  // namespace detail

inline void write_compare_outputs(const PreparedData& p, const fs::path& dir) {
  detail::ensure_dir(dir);
  auto comps = detail::open_output(dir / "comparisons.csv");
  write_comparisons(comps, p.graph.comparisons, p.specs);
  auto edges = detail::open_output(dir / "candidate_edges.csv");
  write_candidate_edges(edges, p.graph);
}

inline json duplicates_json(const DuplicateSummary& d) {
  return {{"records", d.r},
          {"mean_duplicates", d.mean},
          {"median_duplicates", d.median},
          {"min_duplicates", d.min},
          {"max_duplicates", d.max},
          {"interval_level", d.level},
          {"lower_duplicates", d.lower},
          {"upper_duplicates", d.upper},
          {"mean_percentage", d.mean_percentage()},
          {"lower_percentage", d.lower_percentage()},
          {"upper_percentage", d.upper_percentage()}};
}

inline void write_dedupe_outputs(const PipelineConfig& c, const DedupeResult& res) {
  const auto& dir = c.output_dir;
  const auto& p = res.prepared;
  write_compare_outputs(p, dir);
  json chains = json::array();
  for (std::size_t k = 0; k < res.chains.size(); ++k) {
    auto lab = detail::open_output(dir / ("labelings_" + std::to_string(k) + ".txt"));
    for (const auto& z : res.chains[k].labelings) write_labeling_line(lab, z);
    auto phi = detail::open_output(dir / ("phi_trace_" + std::to_string(k) + ".csv"));
    write_phi_trace(phi, res.chains[k], p.specs);
    chains.push_back({{"chain", k}, {"seed", res.chains[k].seed}, {"retained", res.chains[k].size()}});
  }
  auto pw = detail::open_output(dir / "pairwise.csv");
  write_pairwise_csv(pw, pairwise_probabilities(res.pooled, p.graph.candidate_pairs()));

  auto freq = detail::open_output(dir / "partition_frequencies.csv");
  freq << "rank,partition,frequency\n";
  for (std::size_t k = 0; k < res.frequencies.size(); ++k)
    freq << k + 1 << ',' << '"' << res.frequencies[k].partition.to_string() << '"' << ',' << res.frequencies[k].frequency
         << '\n';

  auto dup = detail::open_output(dir / "duplicates.json");
  dup << duplicates_json(res.duplicates).dump(2) << '\n';

  if (res.metrics) {
    auto m = detail::open_output(dir / "metrics.csv");
    m << "metric,median,p01,p99\n";
    m << "precision," << res.metrics->precision.median << ',' << res.metrics->precision.p01 << ','
      << res.metrics->precision.p99 << '\n';
    m << "recall," << res.metrics->recall.median << ',' << res.metrics->recall.p01 << ',' << res.metrics->recall.p99
      << '\n';
  }

  auto manifest = detail::manifest_base(c, "dedupe");
  manifest["graph"] = detail::graph_summary(p);
  manifest["chains"] = chains;
  manifest["seconds"] = res.seconds;
  auto mf = detail::open_output(dir / "manifest.json");
  mf << manifest.dump(2) << '\n';
}

inline PreparedData cmd_compare(const PipelineConfig& c) {
  auto p = prepare(c);
  staged("output", [&] {
    write_compare_outputs(p, c.output_dir);
    auto manifest = detail::manifest_base(c, "compare");
    manifest["graph"] = detail::graph_summary(p);
    auto mf = detail::open_output(c.output_dir / "manifest.json");
    mf << manifest.dump(2) << '\n';
  });
  return p;
}

inline DedupeResult cmd_dedupe(const PipelineConfig& c) {
  auto res = run_dedupe(c);
  staged("output", [&] { write_dedupe_outputs(c, res); });
  return res;
}

struct BaselineResult {
  PreparedData prepared;
  MixtureSample sample;
};

inline BaselineResult cmd_baseline(const PipelineConfig& c) {
  BaselineResult res;
  res.prepared = prepare(c);
  const auto& p = res.prepared;
  res.sample = staged("sample", [&] { return run_mixture_gibbs(p.graph, p.specs, p.prior, c.sampler); });
  staged("output", [&] {
    write_compare_outputs(p, c.output_dir);
    auto trace = detail::open_output(c.output_dir / "triplet_trace.csv");
    write_triplet_trace(trace, res.sample);
    auto manifest = detail::manifest_base(c, "baseline");
    manifest["graph"] = detail::graph_summary(p);
    auto mf = detail::open_output(c.output_dir / "manifest.json");
    mf << manifest.dump(2) << '\n';
  });
  return res;
}

// Synthetic-data command: config holds a "synth" object and an output directory.
struct SynthConfig {
  GeneratorConfig generator;
  fs::path tables_dir = std::string(kDefaultTablesDir);
  fs::path output_dir = "out";
  json raw;
};

inline SynthConfig parse_synth_config(const json& j, const fs::path& base_dir) {
  SynthConfig c;
  c.raw = j;
  try {
    const auto& s = detail::require(j, "synth", "config");
    auto fields = detail::get_or<std::size_t>(s, "fields", 7);
    auto errors = detail::get_or<std::size_t>(s, "errors_per_duplicate", 1);
    auto seed = detail::get_or<std::uint64_t>(s, "seed", 1);
    c.generator = standard_generator_config(fields, errors, seed);
    c.generator.n_originals = detail::get_or<std::size_t>(s, "n_originals", 450);
    c.generator.n_duplicates = detail::get_or<std::size_t>(s, "n_duplicates", 50);
    c.generator.max_errors_per_field = detail::get_or<std::size_t>(s, "max_errors_per_field", 2);
    if (c.generator.max_errors_per_field == 0) throw ConfigError("synth.max_errors_per_field must be positive");
    if (s.contains("tables_dir")) c.tables_dir = detail::resolve(base_dir, s.at("tables_dir").get<std::string>());
    c.output_dir = detail::resolve(base_dir, detail::get_or<std::string>(j, "output_dir", "out"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed synth config: ") + e.what());
  }
  return c;
}

inline SyntheticFile cmd_synth(const SynthConfig& c) {
  auto tables = staged("tables", [&] { return load_default_tables(c.tables_dir.string()); });
  auto file = staged("generate", [&] { return generate(c.generator, tables); });
  staged("output", [&] {
    detail::ensure_dir(c.output_dir);
    auto rec = detail::open_output(c.output_dir / "records.csv");
    write_delimited(rec, file.data);
    auto truth = detail::open_output(c.output_dir / "truth.csv");
    write_truth(truth, file.truth);
    json m;
    m["tool"] = "dedup";
    m["version"] = std::string(kVersion);
    m["command"] = "synth";
    m["config"] = c.raw;
    m["effective"] = {{"seed", c.generator.seed},
                      {"n_originals", c.generator.n_originals},
                      {"n_duplicates", c.generator.n_duplicates},
                      {"errors_per_duplicate", c.generator.errors_per_duplicate},
                      {"records", file.data.r()}};
    auto mf = detail::open_output(c.output_dir / "manifest.json");
    mf << m.dump(2) << '\n';
  });
  return file;
}

struct EvaluationRow {
  std::string sample;
  MetricSummaries metrics;
};

// Metric summaries of each (sample, truth) pair plus their average.
inline std::vector<EvaluationRow> cmd_evaluate(const std::vector<fs::path>& samples, const std::vector<fs::path>& truths) {
  if (samples.empty() || samples.size() != truths.size())
    throw ConfigError("evaluate needs matching numbers of sample and truth files");
  std::vector<EvaluationRow> rows;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    std::ifstream sin(samples[k]), tin(truths[k]);
    if (!sin) throw ConfigError("cannot open sample '" + samples[k].string() + "'");
    if (!tin) throw ConfigError("cannot open truth '" + truths[k].string() + "'");
    auto sample = staged("evaluate", [&] { return read_labelings(sin); });
    auto truth = staged("evaluate", [&] { return read_truth(tin); });
    if (sample.empty()) throw DataError("[evaluate] sample '" + samples[k].string() + "' is empty");
    rows.push_back({samples[k].string(), staged("evaluate", [&] {
                      return summary_distributions_of_metrics(sample, Partition(truth));
                    })});
  }
  return rows;
}

inline MetricSummaries average_metrics(const std::vector<EvaluationRow>& rows) {
  MetricSummaries avg;
  auto add = [](MetricSummary& a, const MetricSummary& b) {
    a.median += b.median;
    a.p01 += b.p01;
    a.p99 += b.p99;
  };
  for (const auto& r : rows) {
    add(avg.precision, r.metrics.precision);
    add(avg.recall, r.metrics.recall);
  }
  const double n = static_cast<double>(rows.size());
  for (auto* m : {&avg.precision, &avg.recall}) {
    m->median /= n;
    m->p01 /= n;
    m->p99 /= n;
  }
  return avg;
}

inline void write_evaluation(std::ostream& out, const std::vector<EvaluationRow>& rows) {
  out << "sample,precision_median,precision_p01,precision_p99,recall_median,recall_p01,recall_p99\n";
  auto line = [&](const std::string& name, const MetricSummaries& m) {
    out << name << ',' << m.precision.median << ',' << m.precision.p01 << ',' << m.precision.p99 << ','
        << m.recall.median << ',' << m.recall.p01 << ',' << m.recall.p99 << '\n';
  };
  for (const auto& r : rows) line(r.sample, r.metrics);
  if (rows.size() > 1) line("average", average_metrics(rows));
}

// 0 success, 2 configuration, 3 data, 4 anything else.
inline int exit_code_for(const std::exception_ptr& e) {
  if (!e) return 0;
  try {
    std::rethrow_exception(e);
  } catch (const ConfigError&) {
    return 2;
  } catch (const DataError&) {
    return 3;
  } catch (...) {
    return 4;
  }
}

}  // namespace dedup
