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

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dp2/poly.hpp"
#include "dp2/search.hpp"

namespace dp2 {

/// `d=<d>; x=[..]; y=[..]; z=[..]; w=[..]`
std::string format_param(const Param& p);

struct ParamLine {
  Param param;
  std::optional<int> orbit_size;  // present on curve-list lines
};

/// Parses one solution or curve-list line. Throws ParseError.
ParamLine parse_param_line(std::string_view line);

/// Parse failure with the 1-based line number it happened on.
class LineError : public ParseError {
 public:
  LineError(size_t line, const std::string& what);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

struct ParamFile {
  std::vector<std::string> comments;  // lines starting with '#', without the '#'
  std::vector<ParamLine> lines;
  std::vector<size_t> line_numbers;   // source line of each entry in `lines`
};

/// Reads a solution or curve-list file; blank lines are skipped. Throws
/// LineError on malformed content and std::runtime_error if unreadable.
ParamFile read_param_file(const std::filesystem::path& path);
ParamFile parse_param_text(std::string_view text);

// RHS table cache: "DP2RHS1", u32 level, u32 flags (bit 0 folded, bit 1
// linear filter), u64 entry count, then per entry u64 value, u32 y index,
// u32 z index. All little-endian.
void write_rhs_cache(const std::filesystem::path& path, const RhsTable& table);
/// Throws std::runtime_error on I/O failure or a malformed file.
RhsTable read_rhs_cache(const std::filesystem::path& path);

}  // namespace dp2
