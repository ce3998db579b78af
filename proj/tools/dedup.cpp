#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dedup/pipeline.hpp"

namespace {

struct Flags {
  std::string config;
  dedup::Overrides overrides;
  std::string output_dir;
};

void add_common(CLI::App* cmd, Flags& f, bool sampler_flags) {
  cmd->add_option("--config", f.config, "JSON configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.overrides.seed, "random seed");
  cmd->add_option("--output-dir", f.output_dir, "directory for output files");
  cmd->add_option("--threads", f.overrides.threads, "worker cap (0 = all cores)");
  if (sampler_flags) {
    cmd->add_option("--iterations", f.overrides.iterations, "Gibbs iterations");
    cmd->add_option("--burn-in", f.overrides.burn_in, "iterations discarded as burn-in");
  }
}

dedup::PipelineConfig pipeline_config(Flags& f) {
  auto c = dedup::load_pipeline_config(f.config);
  if (!f.output_dir.empty()) f.overrides.output_dir = f.output_dir;
  dedup::apply_overrides(c, f.overrides);
  return c;
}

void print_graph(const dedup::PreparedData& p) {
  std::cout << "records: " << p.data.r() << "\n"
            << "compared pairs: " << p.graph.pair_count() << "\n"
            << "candidate pairs: " << p.graph.candidate_count() << "\n";
  if (p.dropped) std::cout << "dropped incomplete records: " << p.dropped << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian duplicate detection over coreference partitions"};
  app.set_version_flag("--version", std::string(dedup::kVersion));
  app.require_subcommand(1);

  Flags dedupe_flags, compare_flags, baseline_flags, synth_flags;
  auto* dedupe = app.add_subcommand("dedupe", "compare, filter, sample partitions and summarize");
  add_common(dedupe, dedupe_flags, true);
  auto* compare = app.add_subcommand("compare", "write comparison data and candidate edges only");
  add_common(compare, compare_flags, false);
  auto* baseline = app.add_subcommand("baseline", "run the independent-pairs mixture and count nontransitive triplets");
  add_common(baseline, baseline_flags, true);
  auto* synth = app.add_subcommand("synth", "generate a synthetic file with ground truth");
  add_common(synth, synth_flags, false);

  std::vector<std::string> samples, truths;
  std::string eval_out;
  auto* evaluate = app.add_subcommand("evaluate", "precision and recall of posterior samples against ground truth");
  evaluate->add_option("--sample", samples, "labelings file (repeatable)")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--truth", truths, "ground-truth file, one per sample")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--output-dir", eval_out, "also write metrics.csv here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (dedupe->parsed()) {
      auto c = pipeline_config(dedupe_flags);
      auto res = dedup::cmd_dedupe(c);
      print_graph(res.prepared);
      std::cout << "retained samples: " << res.pooled.size() << "\n";
      if (!res.frequencies.empty())
        std::cout << "modal partition: " << res.frequencies.front().partition.to_string() << " ("
                  << res.frequencies.front().frequency << ")\n";
      std::cout << "duplicates: mean " << res.duplicates.mean << ", " << res.duplicates.level * 100 << "% interval ["
                << res.duplicates.lower << ", " << res.duplicates.upper << "]\n"
                << "outputs: " << c.output_dir.string() << "\n";
    } else if (compare->parsed()) {
      auto c = pipeline_config(compare_flags);
      print_graph(dedup::cmd_compare(c));
      std::cout << "outputs: " << c.output_dir.string() << "\n";
    } else if (baseline->parsed()) {
      auto c = pipeline_config(baseline_flags);
      auto res = dedup::cmd_baseline(c);
      print_graph(res.prepared);
      std::size_t with = 0;
      for (auto n : res.sample.nontransitive) with += n > 0;
      std::cout << "iterations with nontransitive triplets: " << with << " of " << res.sample.nontransitive.size()
                << "\n"
                << "outputs: " << c.output_dir.string() << "\n";
    } else if (synth->parsed()) {
      auto c = dedup::parse_synth_config(dedup::read_json_file(synth_flags.config),
                                         dedup::fs::path(synth_flags.config).parent_path());
      if (synth_flags.overrides.seed) c.generator.seed = *synth_flags.overrides.seed;
      if (!synth_flags.output_dir.empty()) c.output_dir = synth_flags.output_dir;
      auto file = dedup::cmd_synth(c);
      std::cout << "records: " << file.data.r() << "\n"
                << "entities: " << dedup::cell_count(file.truth) << "\n"
                << "outputs: " << c.output_dir.string() << "\n";
    } else if (evaluate->parsed()) {
      std::vector<dedup::fs::path> s(samples.begin(), samples.end()), t(truths.begin(), truths.end());
      auto rows = dedup::cmd_evaluate(s, t);
      dedup::write_evaluation(std::cout, rows);
      if (!eval_out.empty()) {
        dedup::detail::ensure_dir(eval_out);
        auto out = dedup::detail::open_output(dedup::fs::path(eval_out) / "metrics.csv");
        dedup::write_evaluation(out, rows);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dedup::exit_code_for(std::current_exception());
  }
  return 0;
}
