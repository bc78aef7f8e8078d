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

#include "dp2/search.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "dp2/orbits.hpp"
#include "dp2/packed.hpp"

namespace dp2 {

namespace {

// Packed word of every polynomial with fewer than `digits` coefficients,
// indexed by PolyIndex.
std::vector<uint64_t> packed_table(int digits) {
  const uint64_t n = pow3(digits);
  std::vector<uint64_t> out(n);
  for (uint64_t i = 1; i < n; ++i) out[i] = (out[i / 3] << 2) | (i % 3);
  return out;
}

uint64_t rhs_word(uint64_t y, uint64_t z) {
  return packed::sub(packed::mul(y, packed::spread3(z)), packed::mul(packed::spread3(y), z));
}

uint64_t pair_key(uint64_t y, uint64_t z) { return (y << 32) | z; }

bool sign_canonical(uint64_t p) {
  return p == 0 || packed::coeff(p, static_cast<unsigned>(packed::degree(p))) == 1;
}

void check_level(int level) {
  if (level < 1 || level > kMaxLevel) {
    throw std::invalid_argument("search level must be in 1.." + std::to_string(kMaxLevel));
  }
}

}  // namespace

MemoryBudgetError::MemoryBudgetError(uint64_t estimate_bytes, uint64_t budget_bytes)
    : std::runtime_error("right-hand-side table needs about " + std::to_string(estimate_bytes >> 20) +
                         " MiB, over the budget of " + std::to_string(budget_bytes >> 20) + " MiB"),
      estimate_(estimate_bytes),
      budget_(budget_bytes) {}

SearchAborted::SearchAborted(const std::string& cause, uint64_t blocks_done, uint64_t blocks_total)
    : std::runtime_error("search aborted after " + std::to_string(blocks_done) + " of " +
                         std::to_string(blocks_total) + " blocks: " + cause),
      done_(blocks_done),
      total_(blocks_total) {}

uint64_t pow3(int n) {
  uint64_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

std::span<const std::array<Gf3, 4>> sl2_f3() {
  static const std::vector<std::array<Gf3, 4>> group = [] {
    std::vector<std::array<Gf3, 4>> out{{Gf3(1), Gf3(0), Gf3(0), Gf3(1)}};
    for (int i = 0; i < 81; ++i) {
      const std::array<Gf3, 4> m{Gf3(i % 3), Gf3(i / 3 % 3), Gf3(i / 9 % 3), Gf3(i / 27)};
      if (m[0] * m[3] - m[1] * m[2] != Gf3(1) || m == out.front()) continue;
      out.push_back(m);
    }
    return out;
  }();
  return group;
}

// ---------------------------------------------------------------------------
// RhsTable

RhsTable::RhsTable(int level, bool folded, bool linear_filtered, std::vector<RhsEntry> entries)
    : level_(level), folded_(folded), linear_filtered_(linear_filtered), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  filter_ = kernels::ProbeFilter(entries_.size());
  for (const RhsEntry& e : entries_) filter_.insert(e.value);
}

std::span<const RhsEntry> RhsTable::find(uint64_t value) const {
  auto lo = std::lower_bound(entries_.begin(), entries_.end(), value,
                             [](const RhsEntry& e, uint64_t v) { return e.value < v; });
  auto hi = lo;
  while (hi != entries_.end() && hi->value == value) ++hi;
  return {lo, hi};
}

std::vector<std::pair<PackedPoly, PackedPoly>> RhsTable::pairs_for(PackedPoly value) const {
  std::vector<std::pair<PackedPoly, PackedPoly>> out;
  if (value.high_word() != 0) return out;
  for (const RhsEntry& e : find(value.low_word())) {
    const PackedPoly y = to_poly(PolyIndex{e.y});
    const PackedPoly z = to_poly(PolyIndex{e.z});
    if (!folded_) {
      out.emplace_back(y, z);
      continue;
    }
    for (const auto& g : sl2_f3()) {
      out.emplace_back(y.scaled(g[0]) + z.scaled(g[1]), y.scaled(g[2]) + z.scaled(g[3]));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

uint64_t RhsTable::memory_bytes() const {
  return entries_.capacity() * sizeof(RhsEntry) + filter_.memory_bytes();
}

uint64_t estimate_rhs_bytes(int level, const RhsOptions& options) {
  check_level(level);
  const uint64_t n = pow3(level + 1);
  uint64_t entries = options.drop_linear ? n * n / 81 * 33 : n * n;
  if (options.fold) entries = entries / 24 + 16 * n + 64;
  // Rows plus a filter of at most 64 bits per row.
  return entries * (sizeof(RhsEntry) + 8);
}

RhsTable gen_rhs_table(int level, const RhsOptions& options) {
  const uint64_t estimate = estimate_rhs_bytes(level, options);
  if (estimate > options.memory_budget) throw MemoryBudgetError(estimate, options.memory_budget);

  const std::vector<uint64_t> polys = packed_table(level + 1);
  const auto group = sl2_f3();
  std::vector<RhsEntry> entries;
  entries.reserve(estimate / (sizeof(RhsEntry) + 8));

  for (uint64_t iy = 0; iy < polys.size(); ++iy) {
    const uint64_t y = polys[iy];
    const unsigned y0 = packed::coeff(y, 0), y1 = packed::coeff(y, 1);
    for (uint64_t iz = 0; iz < polys.size(); ++iz) {
      const uint64_t z = polys[iz];
      if (options.drop_linear) {
        const unsigned z0 = packed::coeff(z, 0), z1 = packed::coeff(z, 1);
        if ((y1 * z0 + 2 * y0 * z1) % 3 != 0) continue;
      }
      if (options.fold) {
        const uint64_t key = pair_key(y, z);
        bool canonical = true;
        for (size_t g = 1; g < group.size() && canonical; ++g) {
          const auto& m = group[g];
          const uint64_t gy = packed::add(packed::scale(y, m[0].value()), packed::scale(z, m[1].value()));
          const uint64_t gz = packed::add(packed::scale(y, m[2].value()), packed::scale(z, m[3].value()));
          canonical = pair_key(gy, gz) >= key;
        }
        if (!canonical) continue;
      }
      entries.push_back({rhs_word(y, z), static_cast<uint32_t>(iy), static_cast<uint32_t>(iz)});
    }
  }
  return RhsTable(level, options.fold, options.drop_linear, std::move(entries));
}

// ---------------------------------------------------------------------------
// LhsBlocks

LhsBlocks::LhsBlocks(int level, uint64_t block_size) : level_(level) {
  check_level(level);
  x_count_ = pow3(level - 1);
  w_count_ = pow3(2 * level - 1);
  w_per_block_ = std::max<uint64_t>(1, block_size / x_count_);
}

std::pair<uint64_t, uint64_t> LhsBlocks::w_range(uint64_t k) const {
  const uint64_t lo = std::min(w_count_, k * w_per_block_);
  return {lo, std::min(w_count_, lo + w_per_block_)};
}

PackedPoly LhsBlocks::x_at(uint64_t slot) const { return to_poly(PolyIndex{slot}).shifted(1); }

PackedPoly LhsBlocks::w_at(uint64_t slot) const { return to_poly(PolyIndex{slot}).shifted(1); }

std::vector<LhsItem> LhsBlocks::block(uint64_t k) const {
  std::vector<LhsItem> out;
  const auto [lo, hi] = w_range(k);
  for (uint64_t ws = lo; ws < hi; ++ws) {
    const PackedPoly w = w_at(ws);
    for (uint64_t xs = 0; xs < x_count_; ++xs) {
      const PackedPoly x = x_at(xs);
      out.push_back({x, w, lhs(x, w)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification

std::string_view to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::kKeep:
      return "keep";
    case Degeneracy::kConstantMap:
      return "constant_map";
    case Degeneracy::kReducible:
      return "reducible";
  }
  return "?";
}

bool is_level_exact(const Param& p) {
  const int d = p.level;
  return p.y.degree() == d || p.z.degree() == d || p.w.degree() == 2 * d - 1;
}

Degeneracy degeneracy_filter(const Param& p) {
  const PackedPoly dw = p.w.derivative();
  for (int c = 0; c < 3; ++c) {
    const Gf3 t(c);
    if (p.x.eval(t).is_zero() && p.y.eval(t).is_zero() && p.z.eval(t).is_zero() && p.w.eval(t).is_zero() &&
        dw.eval(t).is_zero()) {
      return Degeneracy::kReducible;
    }
  }

  // Weighted-projective image points [X:Y:Z:W] ~ [lX:lY:lZ:l^2 W], scaled so
  // the first nonzero of X, Y, Z is 1.
  using Point = std::array<Gf81, 4>;
  auto normalized = [](Point v) -> std::optional<Point> {
    for (size_t i = 0; i < 3; ++i) {
      if (v[i].is_zero()) continue;
      const Gf81 inv = v[i].inverse();
      for (size_t j = 0; j < 3; ++j) v[j] *= inv;
      v[3] *= inv * inv;
      return v;
    }
    if (v[3].is_zero()) return std::nullopt;
    return Point{Gf81(), Gf81(), Gf81(), Gf81::from_int(1)};
  };

  const int d = p.level;
  std::optional<Point> first;
  auto same_as_first = [&](const Point& raw) {
    const auto pt = normalized(raw);
    if (!pt) return true;
    if (!first) {
      first = pt;
      return true;
    }
    return *pt == *first;
  };
  const Point at_infinity{Gf81(p.x.coeff(d)), Gf81(p.y.coeff(d)), Gf81(p.z.coeff(d)), Gf81(p.w.coeff(2 * d))};
  if (!same_as_first(at_infinity)) return Degeneracy::kKeep;
  for (const Gf81& t : gf81_elements()) {
    if (!same_as_first(Point{p.x.eval(t), p.y.eval(t), p.z.eval(t), p.w.eval(t)})) return Degeneracy::kKeep;
  }
  return Degeneracy::kConstantMap;
}

// ---------------------------------------------------------------------------
// Matching

MatchStats& MatchStats::operator+=(const MatchStats& o) {
  lhs_scanned += o.lhs_scanned;
  filter_hits += o.filter_hits;
  matched_lhs += o.matched_lhs;
  raw += o.raw;
  not_level_exact += o.not_level_exact;
  constant_map += o.constant_map;
  reducible += o.reducible;
  kept_raw += o.kept_raw;
  return *this;
}

namespace {

struct Partial {
  std::vector<Param> kept;
  std::vector<Param> raw;
  MatchStats stats;
};

// Emits every (x', y, z, w') for the given sign variants of x and w and every
// (y, z) in the table with this value.
void reconstruct(const RhsTable& table, int level, std::span<const PackedPoly> xs, std::span<const PackedPoly> ws,
                 PackedPoly value, bool collect_raw, Partial& out) {
  const auto pairs = table.pairs_for(value);
  for (const PackedPoly& x : xs) {
    for (const PackedPoly& w : ws) {
      for (const auto& [y, z] : pairs) {
        const Param p{x, y, z, w, level};
        if (!verify_param(p)) throw std::logic_error("reconstructed quadruple fails verification");
        ++out.stats.raw;
        if (collect_raw) out.raw.push_back(p);
        if (!is_level_exact(p)) {
          ++out.stats.not_level_exact;
          continue;
        }
        switch (degeneracy_filter(p)) {
          case Degeneracy::kReducible:
            ++out.stats.reducible;
            break;
          case Degeneracy::kConstantMap:
            ++out.stats.constant_map;
            break;
          case Degeneracy::kKeep:
            ++out.stats.kept_raw;
            out.kept.push_back(scalar_normalize(p));
            break;
        }
      }
    }
  }
}

SolutionSet finish(int level, std::vector<Partial>& parts) {
  SolutionSet s;
  s.level = level;
  for (Partial& part : parts) {
    s.stats += part.stats;
    s.params.insert(s.params.end(), part.kept.begin(), part.kept.end());
    s.raw.insert(s.raw.end(), part.raw.begin(), part.raw.end());
  }
  std::sort(s.params.begin(), s.params.end());
  s.params.erase(std::unique(s.params.begin(), s.params.end()), s.params.end());
  std::sort(s.raw.begin(), s.raw.end());
  return s;
}

std::vector<PackedPoly> sign_variants(PackedPoly p, bool fold) {
  if (!fold || p.is_zero()) return {p};
  return {p, -p};
}

}  // namespace

SolutionSet match(const RhsTable& table, const LhsBlocks& blocks, const MatchOptions& options) {
  if (table.level() != blocks.level()) throw std::invalid_argument("table and blocks built for different levels");
  const int level = blocks.level();
  const bool fold = options.fold_signs;

  std::vector<uint64_t> x_words;
  std::vector<uint64_t> x4_rows;
  for (uint64_t s = 0; s < blocks.x_count(); ++s) {
    const uint64_t x = blocks.x_at(s).low_word();
    if (fold && !sign_canonical(x)) continue;
    x_words.push_back(x);
    x4_rows.push_back(packed::mul(packed::spread3(x), x));
  }

  // w/t has at most 2d - 1 <= 15 digits: two table lookups of 8 digits.
  const std::vector<uint64_t> digits8 = packed_table(8);
  auto w_word = [&](uint64_t slot) { return (digits8[slot % 6561] | (digits8[slot / 6561] << 16)) << 2; };

  const uint64_t total = blocks.block_count();
  const unsigned threads = std::max(1u, options.threads);
  std::vector<Partial> parts(threads);
  std::atomic<uint64_t> next{0};
  std::atomic<uint64_t> done{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::exception_ptr error;
  const kernels::ProbeFilterView filter = table.filter();

  auto worker = [&](unsigned id) {
    Partial& part = parts[id];
    std::vector<kernels::Candidate> candidates;
    try {
      for (uint64_t k = next++; k < total && !failed.load(); k = next++) {
        const auto [lo, hi] = blocks.w_range(k);
        for (uint64_t slot = lo; slot < hi; ++slot) {
          const uint64_t w = w_word(slot);
          if (fold && !sign_canonical(w)) continue;
          const uint64_t w2 = packed::mul(w, w);
          candidates.clear();
          kernels::scan_row(x4_rows, w2, filter, candidates);
          part.stats.lhs_scanned += x4_rows.size();
          part.stats.filter_hits += candidates.size();
          for (const kernels::Candidate& c : candidates) {
            if (!table.contains(c.value)) continue;
            ++part.stats.matched_lhs;
            const auto xs = sign_variants(PackedPoly::from_word(x_words[c.slot]), fold);
            const auto ws = sign_variants(PackedPoly::from_word(w), fold);
            reconstruct(table, level, xs, ws, PackedPoly::from_word(c.value), options.collect_raw, part);
          }
        }
        const uint64_t d = ++done;
        if (options.progress) {
          std::lock_guard<std::mutex> lock(mu);
          options.progress(d, total);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
    for (std::thread& t : pool) t.join();
  }
  if (error) {
    std::string cause = "unknown error";
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      cause = e.what();
    } catch (...) {
    }
    throw SearchAborted(cause, done.load(), total);
  }
  return finish(level, parts);
}

SolutionSet match_items(const RhsTable& table, std::span<const LhsItem> items, bool collect_raw) {
  std::vector<Partial> parts(1);
  for (const LhsItem& item : items) {
    ++parts[0].stats.lhs_scanned;
    if (item.value.high_word() != 0 || !table.contains(item.value.low_word())) continue;
    ++parts[0].stats.matched_lhs;
    const PackedPoly xs[] = {item.x};
    const PackedPoly ws[] = {item.w};
    reconstruct(table, table.level(), xs, ws, item.value, collect_raw, parts[0]);
  }
  return finish(table.level(), parts);
}

SolutionSet search_level(const SearchConfig& config) {
  RhsOptions rhs_options;
  rhs_options.fold = config.fold;
  rhs_options.memory_budget = config.memory_budget;
  const RhsTable table = gen_rhs_table(config.level, rhs_options);
  const LhsBlocks blocks(config.level, config.block_size);
  MatchOptions options;
  options.threads = config.threads;
  options.fold_signs = config.fold;
  options.progress = config.progress;
  return match(table, blocks, options);
}

SymmetryReport check_symmetries(const SolutionSet& s) {
  const std::set<Param> members(s.params.begin(), s.params.end());
  SymmetryReport r;
  for (const Param& p : s.params) {
    r.swap_yz = r.swap_yz && members.count(scalar_normalize({p.x, p.z, -p.y, p.w, p.level})) != 0;
    r.negate_w = r.negate_w && members.count(scalar_normalize({p.x, p.y, p.z, -p.w, p.level})) != 0;
    r.scalar = r.scalar && members.count(scalar_normalize({-p.x, -p.y, -p.z, p.w, p.level})) != 0;
  }
  return r;
}

}  // namespace dp2
