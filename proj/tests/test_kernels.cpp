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

#include <doctest.h>

#include <stdexcept>

#include <random>

#include "dp2/kernels.hpp"
#include "dp2/poly.hpp"

namespace k = dp2::kernels;

namespace {

uint64_t random_word(std::mt19937_64& rng, int digits = 32) {
  uint64_t w = 0;
  for (int i = 0; i < digits; ++i) w |= static_cast<uint64_t>(rng() % 3) << (2 * i);
  return w;
}

std::vector<uint64_t> random_rows(std::mt19937_64& rng, size_t n) {
  std::vector<uint64_t> rows(n);
  for (auto& r : rows) r = random_word(rng);
  return rows;
}

}  // namespace

TEST_CASE("scalar add_broadcast is coefficient-wise addition") {
  std::mt19937_64 rng(1);
  const auto rows = random_rows(rng, 257);
  const uint64_t addend = random_word(rng);
  std::vector<uint64_t> out(rows.size());
  k::scalar::add_broadcast(rows, addend, out);
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(dp2::PackedPoly::from_word(out[i]) ==
          dp2::PackedPoly::from_word(rows[i]) + dp2::PackedPoly::from_word(addend));
  }
}

TEST_CASE("scalar scan_row reports exactly the filter hits") {
  std::mt19937_64 rng(2);
  const auto rows = random_rows(rng, 1000);
  const uint64_t addend = random_word(rng);
  k::ProbeFilter filter(64);
  auto sum = [&](size_t i) {
    return (dp2::PackedPoly::from_word(rows[i]) + dp2::PackedPoly::from_word(addend)).low_word();
  };
  for (size_t i = 0; i < rows.size(); i += 7) filter.insert(sum(i));
  std::vector<k::Candidate> got;
  k::scalar::scan_row(rows, addend, filter.view(), got);
  std::vector<k::Candidate> want;
  for (size_t i = 0; i < rows.size(); ++i) {
    const uint64_t v = sum(i);
    if (filter.test(v)) want.push_back({static_cast<uint32_t>(i), v});
  }
  CHECK(got == want);
  // Every inserted key is reported (no false negatives).
  size_t inserted_hits = 0;
  for (const auto& c : got) inserted_hits += c.slot % 7 == 0;
  CHECK(inserted_hits == (rows.size() + 6) / 7);
}

TEST_CASE("probe filter has no false negatives") {
  std::mt19937_64 rng(3);
  k::ProbeFilter filter(5000);
  std::vector<uint64_t> keys(5000);
  for (auto& key : keys) {
    key = random_word(rng, 31);
    filter.insert(key);
  }
  for (uint64_t key : keys) CHECK(filter.test(key));
  size_t false_hits = 0;
  for (int i = 0; i < 100000; ++i) false_hits += filter.test(random_word(rng, 31));
  CHECK(false_hits < 10000);
}

#if defined(DP2_HAVE_AVX2_KERNELS)
TEST_CASE("avx2 kernels match scalar") {
  if (k::detected_isa() != k::Isa::kAvx2) {
    MESSAGE("CPU lacks AVX2; skipping");
    return;
  }
  std::mt19937_64 rng(4);
  for (size_t n : {0u, 1u, 3u, 4u, 5u, 31u, 64u, 1000u, 4099u}) {
    const auto rows = random_rows(rng, n);
    for (int rep = 0; rep < 20; ++rep) {
      const uint64_t addend = random_word(rng);
      std::vector<uint64_t> a(n), b(n);
      k::scalar::add_broadcast(rows, addend, a);
      k::avx2::add_broadcast(rows, addend, b);
      REQUIRE(a == b);

      k::ProbeFilter filter(std::max<size_t>(n / 8, 1));
      for (size_t i = 0; i < n; i += 5) filter.insert(a[i]);
      std::vector<k::Candidate> s, v;
      k::scalar::scan_row(rows, addend, filter.view(), s);
      k::avx2::scan_row(rows, addend, filter.view(), v);
      REQUIRE(s == v);
    }
  }
  // Hash lanes agree with the scalar hash on edge values.
  std::vector<uint64_t> edge{0, ~uint64_t{0} & 0x5555555555555555u, 0xAAAAAAAAAAAAAAAAu, 1, 2, uint64_t{1} << 62};
  k::ProbeFilter filter(4);
  filter.insert(edge[3]);
  std::vector<k::Candidate> s, v;
  k::scalar::scan_row(edge, 0, filter.view(), s);
  k::avx2::scan_row(edge, 0, filter.view(), v);
  CHECK(s == v);
}

TEST_CASE("dispatch selects and switches variants") {
  const k::Isa before = k::active_isa();
  k::set_active_isa(k::Isa::kScalar);
  CHECK(k::active_isa() == k::Isa::kScalar);
  if (k::detected_isa() == k::Isa::kAvx2) {
    k::set_active_isa(k::Isa::kAvx2);
    CHECK(k::active_isa() == k::Isa::kAvx2);
  } else {
    CHECK_THROWS_AS(k::set_active_isa(k::Isa::kAvx2), std::runtime_error);
  }
  k::set_active_isa(before);
}
#endif

TEST_CASE("dispatched entry points agree with scalar") {
  std::mt19937_64 rng(5);
  const auto rows = random_rows(rng, 777);
  const uint64_t addend = random_word(rng);
  std::vector<uint64_t> a(rows.size()), b(rows.size());
  k::scalar::add_broadcast(rows, addend, a);
  k::add_broadcast(rows, addend, b);
  CHECK(a == b);
  k::ProbeFilter filter(100);
  for (size_t i = 0; i < a.size(); i += 9) filter.insert(a[i]);
  std::vector<k::Candidate> s, d;
  k::scalar::scan_row(rows, addend, filter.view(), s);
  k::scan_row(rows, addend, filter.view(), d);
  CHECK(s == d);
  CHECK(k::isa_name(k::Isa::kScalar) == "scalar");
}
