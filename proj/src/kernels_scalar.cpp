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

#include "dp2/kernels.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "dp2/packed.hpp"

namespace dp2::kernels {

ProbeFilter::ProbeFilter(uint64_t expected_keys) {
  const uint64_t want = std::max<uint64_t>(uint64_t{1} << 12, expected_keys * 32);
  log2_bits_ = std::min(32, static_cast<int>(std::bit_width(want - 1)));
  words_.assign(size_t{1} << (log2_bits_ - 6), 0);
}

void ProbeFilter::insert(uint64_t key) {
  const uint64_t s = view().slot(key);
  words_[s >> 6] |= uint64_t{1} << (s & 63);
}

namespace scalar {

void add_broadcast(std::span<const uint64_t> rows, uint64_t addend, std::span<uint64_t> out) {
  if (rows.size() != out.size()) throw std::invalid_argument("add_broadcast: size mismatch");
  for (size_t i = 0; i < rows.size(); ++i) out[i] = packed::add(rows[i], addend);
}

void scan_row(std::span<const uint64_t> rows, uint64_t addend, const ProbeFilterView& filter,
              std::vector<Candidate>& out) {
  for (size_t i = 0; i < rows.size(); ++i) {
    const uint64_t v = packed::add(rows[i], addend);
    if (filter.test(v)) out.push_back({static_cast<uint32_t>(i), v});
  }
}

}  // namespace scalar
}  // namespace dp2::kernels
