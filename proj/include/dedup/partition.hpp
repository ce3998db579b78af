#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "dedup/comparison.hpp"
#include "dedup/error.hpp"

namespace dedup {

// Z: entity label per record, 0-based, labels in [0, r). Any injective relabeling denotes the
// same partition.
using Labeling = std::vector<std::uint32_t>;

// Relabels so that cell ids appear in order of each cell's smallest record.
inline Labeling canonical_labeling(const Labeling& z) {
  std::vector<std::uint32_t> remap(z.size(), std::numeric_limits<std::uint32_t>::max());
  Labeling out(z.size());
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] >= z.size()) throw std::out_of_range("label out of range");
    auto& m = remap[z[i]];
    if (m == std::numeric_limits<std::uint32_t>::max()) m = next++;
    out[i] = m;
  }
  return out;
}

inline std::size_t cell_count(const Labeling& z) {
  auto c = canonical_labeling(z);
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

// Coreference partition in canonical form: cells ordered by smallest member, members ascending.
class Partition {
 public:
  Partition() = default;

  explicit Partition(const Labeling& z) {
    auto c = canonical_labeling(z);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == cells_.size()) cells_.emplace_back();
      cells_[c[i]].push_back(static_cast<std::uint32_t>(i));
    }
    r_ = z.size();
  }

  static Partition from_cells(std::vector<std::vector<std::uint32_t>> cells, std::size_t r) {
    Labeling z(r, std::numeric_limits<std::uint32_t>::max());
    for (std::size_t q = 0; q < cells.size(); ++q)
      for (auto i : cells[q]) {
        if (i >= r || z[i] != std::numeric_limits<std::uint32_t>::max())
          throw std::invalid_argument("cells must be disjoint and within [0, r)");
        z[i] = static_cast<std::uint32_t>(q);
      }
    if (std::find(z.begin(), z.end(), std::numeric_limits<std::uint32_t>::max()) != z.end())
      throw std::invalid_argument("cells must cover every record");
    return Partition(z);
  }

  const std::vector<std::vector<std::uint32_t>>& cells() const noexcept { return cells_; }
  std::size_t n() const noexcept { return cells_.size(); }
  std::size_t r() const noexcept { return r_; }
  std::size_t duplicates() const noexcept { return r_ - cells_.size(); }

  Labeling labeling() const {
    Labeling z(r_);
    for (std::size_t q = 0; q < cells_.size(); ++q)
      for (auto i : cells_[q]) z[i] = static_cast<std::uint32_t>(q);
    return z;
  }

  // "0,2/1/3,4"
  std::string to_string() const {
    std::string s;
    for (std::size_t q = 0; q < cells_.size(); ++q) {
      if (q) s += '/';
      for (std::size_t k = 0; k < cells_[q].size(); ++k) {
        if (k) s += ',';
        s += std::to_string(cells_[q][k]);
      }
    }
    return s;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<std::vector<std::uint32_t>> cells_;
  std::size_t r_ = 0;
};

inline Partition labeling_to_partition(const Labeling& z) { return Partition(z); }

inline bool coreferent(const Labeling& z, std::size_t i, std::size_t j) { return z[i] == z[j]; }

// r!/(r-n)!: labelings of one partition with n cells. Throws on 64-bit overflow.
inline std::uint64_t labeling_count(std::uint64_t r, std::uint64_t n) {
  if (n < 1 || n > r) throw std::invalid_argument("labeling_count requires 1 <= n <= r");
  std::uint64_t out = 1;
  for (std::uint64_t k = r - n + 1; k <= r; ++k) {
    if (out > std::numeric_limits<std::uint64_t>::max() / k) throw std::overflow_error("labeling_count overflows 64 bits");
    out *= k;
  }
  return out;
}

// Bell number via the Bell triangle; exact in 64 bits up to r = 25.
inline std::uint64_t bell_number(std::size_t r) {
  if (r > 25) throw std::overflow_error("bell_number: r > 25 overflows 64 bits");
  if (r == 0) return 1;
  std::vector<std::uint64_t> row{1};
  for (std::size_t k = 1; k < r; ++k) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.back();
}

// Z is valid iff no two coreferent records form a pair outside C.
inline bool is_valid_labeling(const Labeling& z, const std::unordered_set<std::uint64_t>& candidates) {
  Partition p(z);
  for (const auto& cell : p.cells())
    for (std::size_t a = 0; a < cell.size(); ++a)
      for (std::size_t b = a + 1; b < cell.size(); ++b)
        if (!candidates.count(pair_key(cell[a], cell[b]))) return false;
  return true;
}

inline constexpr std::size_t kMaxEnumerationRecords = 10;

// Every set partition of {0..r-1} that only merges pairs in C.
inline std::vector<Partition> enumerate_valid_partitions(std::size_t r, const std::vector<RecordPair>& candidates) {
  if (r > kMaxEnumerationRecords)
    throw std::invalid_argument("enumerate_valid_partitions refuses r > " + std::to_string(kMaxEnumerationRecords));
  std::vector<std::vector<char>> allowed(r, std::vector<char>(r, 0));
  for (const auto& p : candidates) {
    if (p.i >= r || p.j >= r) throw std::invalid_argument("candidate pair outside [0, r)");
    allowed[p.i][p.j] = allowed[p.j][p.i] = 1;
  }
  std::vector<Partition> out;
  if (r == 0) return out;
  std::vector<std::vector<std::uint32_t>> blocks;
  std::function<void(std::uint32_t)> place = [&](std::uint32_t k) {
    if (k == r) {
      out.push_back(Partition::from_cells(blocks, r));
      return;
    }
    // Index access: deeper calls push new blocks and may reallocate.
    for (std::size_t q = 0, n = blocks.size(); q < n; ++q) {
      if (!std::all_of(blocks[q].begin(), blocks[q].end(), [&](std::uint32_t m) { return allowed[m][k]; })) continue;
      blocks[q].push_back(k);
      place(k + 1);
      blocks[q].pop_back();
    }
    blocks.push_back({k});
    place(k + 1);
    blocks.pop_back();
  };
  place(0);
  return out;
}

// One labeling per line: space-separated canonical cell ids.
inline void write_labeling_line(std::ostream& out, const Labeling& z) {
  auto c = canonical_labeling(z);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out << ' ';
    out << c[i];
  }
  out << '\n';
}

inline std::vector<Labeling> read_labelings(std::istream& in) {
  std::vector<Labeling> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    Labeling z;
    long long v;
    while (ss >> v) {
      if (v < 0) throw ParseError(lineno, "labeling", "negative cell id");
      z.push_back(static_cast<std::uint32_t>(v));
    }
    if (!ss.eof()) throw ParseError(lineno, "labeling", "non-integer token");
    for (auto l : z)
      if (l >= z.size()) throw ParseError(lineno, "labeling", "cell id out of range");
    if (!out.empty() && z.size() != out.front().size())
      throw ParseError(lineno, "labeling", "inconsistent record count");
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace dedup
