#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dedup/candidate_graph.hpp"
#include "dedup/comparison.hpp"
#include "dedup/model.hpp"
#include "dedup/partition.hpp"
#include "dedup/record_store.hpp"

namespace testing {

inline const char* kToyCsv =
    "given_name,family_name,year,month,day,municipality\n"
    "JOSE,FLORES,1981,1,29,A\n"
    "JOSE,FLORES,1981,2,NA,A\n"
    "JOSE,FLORES,1981,3,20,A\n"
    "JULIAN ANDRES,RAMOS ROJAS,1986,8,5,B\n"
    "JILIAM,RMAOS,1986,8,5,B\n";

inline std::vector<dedup::FieldSchema> toy_schema() {
  using dedup::FieldKind;
  return {{"given_name", FieldKind::string, ""}, {"family_name", FieldKind::string, ""},
          {"year", FieldKind::integer, ""},      {"month", FieldKind::integer, ""},
          {"day", FieldKind::integer, ""},       {"municipality", FieldKind::categorical, ""}};
}

inline dedup::DataFile toy_file() {
  std::istringstream in(kToyCsv);
  return dedup::read_delimited(in, toy_schema());
}

inline std::vector<dedup::LevelSpec> toy_specs(const std::vector<dedup::FieldSchema>& schema = toy_schema()) {
  using dedup::ComparatorKind;
  return {dedup::make_level_spec(schema, "given_name", ComparatorKind::token_min_levenshtein, {0, 0.25, 0.5}),
          dedup::make_level_spec(schema, "family_name", ComparatorKind::token_min_levenshtein, {0, 0.25, 0.5}),
          dedup::make_level_spec(schema, "year", ComparatorKind::absolute_difference, {0, 1, 3}),
          dedup::make_level_spec(schema, "month", ComparatorKind::absolute_difference, {0, 1, 3}),
          dedup::make_level_spec(schema, "day", ComparatorKind::absolute_difference, {0, 2, 7}),
          dedup::make_level_spec(schema, "municipality", ComparatorKind::binary_equality, {0})};
}

inline std::vector<dedup::FixRule> toy_fix_rules(const std::vector<dedup::LevelSpec>& specs) {
  return {{{dedup::make_fix_condition(specs, "given_name", 3)}},
          {{dedup::make_fix_condition(specs, "family_name", 3)}}};
}

inline dedup::CandidateGraph toy_graph() {
  auto df = toy_file();
  auto specs = toy_specs();
  auto comps = dedup::compare_pairs(df, dedup::build_pairs(df, {}), specs);
  return dedup::fix_noncoreferent(df.r(), comps, toy_fix_rules(specs));
}

// Textbook recursion on suffixes, exponential but exact.
inline std::size_t naive_levenshtein(const std::string& a, const std::string& b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  std::string ta = a.substr(1), tb = b.substr(1);
  std::size_t sub = naive_levenshtein(ta, tb) + (a[0] == b[0] ? 0 : 1);
  std::size_t del = naive_levenshtein(ta, b) + 1;
  std::size_t ins = naive_levenshtein(a, tb) + 1;
  return std::min({sub, del, ins});
}

// Composite Simpson rule on [lo, hi] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int n = 20000) {
  const double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int k = 1; k < n; ++k) s += f(lo + k * h) * (k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Mean of Beta(a, b) restricted to [lambda, 1], by quadrature of the unnormalized kernel.
inline double truncated_beta_mean_quadrature(double a, double b, double lambda) {
  auto kernel = [&](double x) { return std::pow(x, a - 1.0) * std::pow(1.0 - x, b - 1.0); };
  double z = simpson(kernel, lambda, 1.0);
  double m1 = simpson([&](double x) { return x * kernel(x); }, lambda, 1.0);
  return m1 / z;
}

inline double truncated_beta_var_quadrature(double a, double b, double lambda) {
  auto kernel = [&](double x) { return std::pow(x, a - 1.0) * std::pow(1.0 - x, b - 1.0); };
  double z = simpson(kernel, lambda, 1.0);
  double m1 = simpson([&](double x) { return x * kernel(x); }, lambda, 1.0) / z;
  double m2 = simpson([&](double x) { return x * x * kernel(x); }, lambda, 1.0) / z;
  return m2 - m1 * m1;
}

// Pairwise coreference matrix of a labeling; label-free reference for partition checks.
inline std::vector<std::vector<int>> coreference_matrix(const dedup::Labeling& z) {
  std::vector<std::vector<int>> d(z.size(), std::vector<int>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j) d[i][j] = z[i] == z[j];
  return d;
}

inline dedup::ModelParams constant_params(const std::vector<dedup::LevelSpec>& specs, double m, double u) {
  dedup::ModelParams p;
  for (const auto& s : specs) {
    p.m.emplace_back(s.max_level(), m);
    p.u.emplace_back(s.max_level(), u);
  }
  return p;
}

}  // namespace testing
