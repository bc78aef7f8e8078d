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

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dp2/search.hpp"

namespace dp2::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,       // check failed, I/O error, inconsistent input
  kMemoryBudget = 2,  // table estimate exceeds --memory-budget
  kUsage = 64,
  kDataError = 65,    // malformed input file
};

struct SearchOptions {
  int degree = 1;
  unsigned threads = 1;
  uint64_t block_size = uint64_t{1} << 20;
  uint64_t memory_budget = uint64_t{4} << 30;
  std::string out;        // empty: standard output
  std::string cache_rhs;  // per-level cache files are <cache_rhs>.d<level>
  bool fold = true;
};

/// Parses "123", "64K", "512M", "4G" (binary multiples). Throws
/// std::invalid_argument.
uint64_t parse_byte_size(const std::string& text);

/// Header, per-level count lines and every solution line. Contains nothing
/// that depends on thread count or block size.
std::string render_search_output(const std::vector<SolutionSet>& levels, int degree, bool fold);

int cmd_search(const SearchOptions& options, std::ostream& out, std::ostream& err);
int cmd_dedup(const std::string& in, const std::string& out_path, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& in, std::ostream& out, std::ostream& err);
int cmd_geometry(bool json, std::ostream& out, std::ostream& err);
int cmd_selftest(std::ostream& out, std::ostream& err);

/// Full command line entry point; reads DP2_THREADS and DP2_MEMORY_BUDGET
/// (flags take precedence).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dp2::cli
