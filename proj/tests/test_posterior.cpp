#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "dedup/posterior.hpp"
#include "support.hpp"

using namespace dedup;
using Catch::Approx;

namespace {

Partition cells(std::vector<std::vector<std::uint32_t>> c, std::size_t r) { return Partition::from_cells(std::move(c), r); }

// Pair-by-pair reference for the confusion counts.
ConfusionCounts brute_confusion(const Labeling& est, const Labeling& ref) {
  ConfusionCounts c;
  for (std::size_t i = 0; i < est.size(); ++i)
    for (std::size_t j = i + 1; j < est.size(); ++j) {
      bool e = est[i] == est[j], t = ref[i] == ref[j];
      c.b11 += e && t;
      c.b10 += e && !t;
      c.b01 += !e && t;
    }
  return c;
}

Labeling random_labeling(std::size_t r, std::mt19937_64& g) {
  std::uniform_int_distribution<std::uint32_t> d(0, static_cast<std::uint32_t>(r / 2));
  Labeling z(r);
  for (auto& x : z) x = d(g);
  return z;
}

}  // namespace

TEST_CASE("pairwise probabilities", "[posterior]") {
  std::vector<Labeling> same(10, Labeling{0, 0, 1});
  std::vector<RecordPair> pairs = {{0, 1}, {0, 2}};
  auto p = pairwise_probabilities(same, pairs);
  CHECK(p[0].probability == 1.0);
  CHECK(p[1].probability == 0.0);

  std::vector<Labeling> half = {{0, 0, 1}, {0, 1, 2}, {0, 0, 1}, {0, 1, 1}};
  CHECK(pairwise_probabilities(half, {{0, 1}})[0].probability == 0.5);
  REQUIRE_THROWS_AS(pairwise_probabilities({}, pairs), std::invalid_argument);

  std::ostringstream out;
  write_pairwise_csv(out, p);
  CHECK(out.str() == "i,j,probability\n0,1,1\n0,2,0\n");
}

TEST_CASE("duplicate counts", "[posterior]") {
  std::vector<Labeling> singletons(5, Labeling{0, 1, 2, 3});
  auto s = duplicate_distribution(singletons, 4);
  CHECK(s.mean == 0.0);
  CHECK(s.lower == 0.0);
  CHECK(s.upper == 0.0);

  // One entity of size 4 spread over r = 4 gives three duplicates.
  std::vector<Labeling> one(5, Labeling{0, 0, 0, 0});
  CHECK(duplicate_distribution(one, 4).mean == 3.0);

  // 5395 records resolved to 5008 entities.
  CHECK(DuplicateSummary::percentage(5395 - 5008, 5395) == Approx(7.173).margin(0.001));
  double pct = DuplicateSummary::percentage(5395 - 5008, 5395);
  CHECK(pct >= 7.04);
  CHECK(pct <= 7.30);

  std::vector<Labeling> mixed;
  for (int k = 0; k < 100; ++k) mixed.push_back(k < 50 ? Labeling{0, 1, 2, 3} : Labeling{0, 0, 1, 1});
  auto m = duplicate_distribution(mixed, 4);
  CHECK(m.mean == 1.0);
  CHECK(m.min == 0);
  CHECK(m.max == 2);
  CHECK(m.lower == 0.0);
  CHECK(m.upper == 2.0);
  CHECK(m.mean_percentage() == 25.0);
  REQUIRE_THROWS_AS(duplicate_distribution(mixed, 5), DataError);
}

TEST_CASE("quantiles interpolate", "[posterior]") {
  CHECK(quantile({3, 1, 2}, 0.5) == 2.0);
  CHECK(quantile({0, 10}, 0.25) == 2.5);
  CHECK(quantile({7}, 0.99) == 7.0);
  REQUIRE_THROWS_AS(quantile({}, 0.5), std::invalid_argument);
}

TEST_CASE("precision and recall on a worked example", "[posterior]") {
  auto est = cells({{0, 1}, {2}, {3, 4}}, 5);
  auto ref = cells({{0, 1, 2}, {3, 4}}, 5);
  auto c = confusion_counts(est, ref);
  CHECK(c.b11 == 2);
  CHECK(c.b01 == 2);
  CHECK(c.b10 == 0);
  auto pr = precision_recall(est, ref);
  CHECK(pr.precision == 1.0);
  CHECK(pr.recall == 0.5);

  auto swapped = precision_recall(ref, est);
  CHECK(swapped.precision == 0.5);
  CHECK(swapped.recall == 1.0);
}

TEST_CASE("precision and recall conventions for empty denominators", "[posterior]") {
  auto all_alone = cells({{0}, {1}, {2}}, 3);
  auto pair = cells({{0, 1}, {2}}, 3);
  auto a = precision_recall(all_alone, all_alone);
  CHECK(a.precision == 1.0);
  CHECK(a.recall == 1.0);
  auto b = precision_recall(all_alone, pair);
  CHECK(b.precision == 1.0);
  CHECK(b.recall == 0.0);
  auto c = precision_recall(pair, all_alone);
  CHECK(c.precision == 0.0);
  CHECK(c.recall == 1.0);
  REQUIRE_THROWS_AS(confusion_counts(pair, cells({{0}, {1}}, 2)), DataError);
}

TEST_CASE("confusion counts agree with a pairwise scan", "[posterior]") {
  std::mt19937_64 g(11);
  for (int t = 0; t < 300; ++t) {
    std::size_t r = 1 + t % 25;
    auto e = random_labeling(r, g), f = random_labeling(r, g);
    auto fast = confusion_counts(Partition(e), Partition(f));
    auto slow = brute_confusion(e, f);
    REQUIRE(fast.b11 == slow.b11);
    REQUIRE(fast.b10 == slow.b10);
    REQUIRE(fast.b01 == slow.b01);
    // b11 + b01 is the number of coreferent pairs in the reference.
    REQUIRE(fast.b11 + fast.b01 == within_cell_pairs(Partition(f)));
  }
}

TEST_CASE("partition frequencies", "[posterior]") {
  std::vector<Labeling> sample = {{0, 0, 1}, {2, 2, 1}, {0, 1, 2}, {1, 1, 0}};
  auto t = partition_frequency_table(sample);
  REQUIRE(t.size() == 2);
  CHECK(t[0].partition.to_string() == "0,1/2");
  CHECK(t[0].frequency == 0.75);
  CHECK(t[1].frequency == 0.25);
  double sum = 0;
  for (const auto& row : t) sum += row.frequency;
  CHECK(sum == Approx(1.0));
}

TEST_CASE("metric summaries over a sample", "[posterior]") {
  auto ref = cells({{0, 1, 2}, {3, 4}}, 5);
  std::vector<Labeling> sample(100, ref.labeling());
  auto s = summary_distributions_of_metrics(sample, ref);
  CHECK(s.precision.median == 1.0);
  CHECK(s.recall.p01 == 1.0);

  for (int k = 0; k < 50; ++k) sample[k] = cells({{0, 1}, {2}, {3, 4}}, 5).labeling();
  s = summary_distributions_of_metrics(sample, ref);
  CHECK(s.recall.p01 == Approx(0.5));
  CHECK(s.recall.p99 == Approx(1.0));
  CHECK(s.recall.median == Approx(0.75));
  CHECK(s.precision.median == 1.0);

  std::vector<Labeling> wrong(3, Labeling{0, 1});
  REQUIRE_THROWS_AS(summary_distributions_of_metrics(wrong, ref), DataError);
}

TEST_CASE("pooling and trace export", "[posterior]") {
  PosteriorSample a, b;
  a.labelings = {{0, 1}};
  b.labelings = {{0, 0}, {0, 1}};
  CHECK(pooled_labelings({a, b}).size() == 3);

  auto specs = testing::toy_specs();
  PosteriorSample s;
  s.iterations = {10};
  s.labelings = {{0, 1, 2, 3, 4}};
  s.params = {testing::constant_params(specs, 0.9, 0.25)};
  std::ostringstream out;
  write_phi_trace(out, s, specs);
  std::string text = out.str();
  CHECK(text.rfind("iteration,field,level,m,u\n", 0) == 0);
  CHECK(text.find("10,given_name,0,0.90000000000000002,0.25\n") != std::string::npos);
  // 3 levels for each of five fields plus 1 for the binary one, plus the header.
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 5 * 3 + 1);
}
