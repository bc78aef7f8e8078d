// Copyright 2026 The dp2 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dp2/kernels.hpp"
#include "dp2/poly.hpp"

namespace dp2 {

inline constexpr int kMaxLevel = 8;

/// Raised before allocation when a table would exceed the memory budget.
class MemoryBudgetError : public std::runtime_error {
 public:
  MemoryBudgetError(uint64_t estimate_bytes, uint64_t budget_bytes);
  uint64_t estimate_bytes() const { return estimate_; }
  uint64_t budget_bytes() const { return budget_; }

 private:
  uint64_t estimate_;
  uint64_t budget_;
};

/// Raised when a matching worker fails; carries how far the run got.
class SearchAborted : public std::runtime_error {
 public:
  SearchAborted(const std::string& cause, uint64_t blocks_done, uint64_t blocks_total);
  uint64_t blocks_done() const { return done_; }
  uint64_t blocks_total() const { return total_; }

 private:
  uint64_t done_;
  uint64_t total_;
};

struct SearchConfig {
  int level = 1;
  unsigned threads = 1;
  /// Number of (x, w) pairs per left-hand-side block.
  uint64_t block_size = uint64_t{1} << 20;
  uint64_t memory_budget = uint64_t{4} << 30;
  /// Fold (y, z) by SL(2, F_3) in the table and (x, w) by sign in the scan.
  bool fold = true;
  std::function<void(uint64_t done, uint64_t total)> progress;
};

/// 3^n for small n.
uint64_t pow3(int n);

// ---------------------------------------------------------------------------
// Right-hand sides

/// One table row; y and z are PolyIndex values.
struct RhsEntry {
  uint64_t value;
  uint32_t y;
  uint32_t z;
  friend bool operator==(const RhsEntry&, const RhsEntry&) = default;
  friend auto operator<=>(const RhsEntry&, const RhsEntry&) = default;
};

struct RhsOptions {
  /// Store one (y, z) per SL(2, F_3)-orbit; y z^3 - y^3 z is invariant under
  /// (y, z) -> (a y + b z, c y + e z) with a e - b c = 1.
  bool fold = true;
  /// Drop values with a nonzero linear coefficient (no admissible left side
  /// can have one).
  bool drop_linear = true;
  uint64_t memory_budget = uint64_t{4} << 30;
};

/// The 24 matrices (a, b, c, e) of SL(2, F_3), identity first.
std::span<const std::array<Gf3, 4>> sl2_f3();

class RhsTable {
 public:
  RhsTable() = default;
  /// Sorts `entries` and builds the probe filter.
  RhsTable(int level, bool folded, bool linear_filtered, std::vector<RhsEntry> entries);

  int level() const { return level_; }
  bool folded() const { return folded_; }
  bool linear_filtered() const { return linear_filtered_; }
  std::span<const RhsEntry> entries() const { return entries_; }

  /// Stored rows with this value (orbit representatives when folded).
  std::span<const RhsEntry> find(uint64_t value) const;
  bool contains(uint64_t value) const { return !find(value).empty(); }
  /// Every (y, z) with deg <= level producing `value`, unfolded, sorted and
  /// without repeats.
  std::vector<std::pair<PackedPoly, PackedPoly>> pairs_for(PackedPoly value) const;

  kernels::ProbeFilterView filter() const { return filter_.view(); }
  uint64_t memory_bytes() const;

 private:
  int level_ = 0;
  bool folded_ = false;
  bool linear_filtered_ = false;
  std::vector<RhsEntry> entries_;
  kernels::ProbeFilter filter_;
};

/// Upper bound on the bytes gen_rhs_table allocates.
uint64_t estimate_rhs_bytes(int level, const RhsOptions& options);

/// Tabulates y z^3 - y^3 z for all deg y, deg z <= level. Throws
/// MemoryBudgetError (before allocating) when the estimate exceeds the budget.
RhsTable gen_rhs_table(int level, const RhsOptions& options = {});

// ---------------------------------------------------------------------------
// Left-hand sides

struct LhsItem {
  PackedPoly x, w, value;
  friend bool operator==(const LhsItem&, const LhsItem&) = default;
};

/// Admissible (x, w): x(0) = w(0) = 0, deg x <= d-1, deg w <= 2d-1.
/// Block k holds every x paired with a contiguous range of w; blocks
/// partition the admissible set.
class LhsBlocks {
 public:
  LhsBlocks(int level, uint64_t block_size);

  int level() const { return level_; }
  uint64_t x_count() const { return x_count_; }
  uint64_t w_count() const { return w_count_; }
  uint64_t admissible_count() const { return x_count_ * w_count_; }
  uint64_t block_count() const { return (w_count_ + w_per_block_ - 1) / w_per_block_; }
  /// Half-open range of w-slots covered by block k.
  std::pair<uint64_t, uint64_t> w_range(uint64_t k) const;

  /// The k-th admissible x or w (slot order = PolyIndex order of x/t, w/t).
  PackedPoly x_at(uint64_t slot) const;
  PackedPoly w_at(uint64_t slot) const;

  std::vector<LhsItem> block(uint64_t k) const;

 private:
  int level_;
  uint64_t x_count_;
  uint64_t w_count_;
  uint64_t w_per_block_;
};

// ---------------------------------------------------------------------------
// Matching and classification

enum class Degeneracy { kKeep, kConstantMap, kReducible };
std::string_view to_string(Degeneracy d);

/// kReducible when some t - c (c in F_3) divides x, y, z and (t - c)^2
/// divides w; otherwise kConstantMap when every defined image point over
/// P^1(F_81) coincides; otherwise kKeep.
Degeneracy degeneracy_filter(const Param& p);

/// deg y = d or deg z = d or deg w = 2d - 1.
bool is_level_exact(const Param& p);

struct MatchStats {
  uint64_t lhs_scanned = 0;
  uint64_t filter_hits = 0;
  uint64_t matched_lhs = 0;
  uint64_t raw = 0;
  uint64_t not_level_exact = 0;
  uint64_t constant_map = 0;
  uint64_t reducible = 0;
  uint64_t kept_raw = 0;
  MatchStats& operator+=(const MatchStats& o);
};

struct SolutionSet {
  int level = 0;
  /// Level-exact, nondegenerate, scalar-normalized; sorted and unique.
  std::vector<Param> params;
  /// Every matched quadruple, sorted; filled only when requested.
  std::vector<Param> raw;
  MatchStats stats;

  uint64_t raw_count() const { return stats.raw; }
  uint64_t degenerate_count() const { return stats.constant_map + stats.reducible; }
};

struct MatchOptions {
  unsigned threads = 1;
  /// Scan only sign representatives of x and w and unfold matches.
  bool fold_signs = true;
  bool collect_raw = false;
  std::function<void(uint64_t done, uint64_t total)> progress;
};

/// Intersects the streamed left sides with the table and reconstructs every
/// (x, y, z, w). Output is independent of thread count and block size.
SolutionSet match(const RhsTable& table, const LhsBlocks& blocks, const MatchOptions& options = {});

/// Reference path over materialized items (no kernels, no folding on the
/// left).
SolutionSet match_items(const RhsTable& table, std::span<const LhsItem> items, bool collect_raw = false);

/// gen_rhs_table + LhsBlocks + match for one level.
SolutionSet search_level(const SearchConfig& config);

struct SymmetryReport {
  bool swap_yz = true;      // (x, z, -y, w)
  bool negate_w = true;     // (x, y, z, -w)
  bool scalar = true;       // (2x, 2y, 2z, w)
  bool all() const { return swap_yz && negate_w && scalar; }
};

/// Checks the normalized solution set is closed under the three symmetries.
SymmetryReport check_symmetries(const SolutionSet& s);

}  // namespace dp2
