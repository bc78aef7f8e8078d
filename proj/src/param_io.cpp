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

#include "dp2/param_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dp2 {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view field) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("invalid integer for " + std::string(field) + ": '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string format_param(const Param& p) {
  return "d=" + std::to_string(p.level) + "; x=" + to_text(p.x) + "; y=" + to_text(p.y) + "; z=" + to_text(p.z) +
         "; w=" + to_text(p.w);
}

ParamLine parse_param_line(std::string_view line) {
  ParamLine out;
  bool seen[5] = {false, false, false, false, false};
  while (!trim(line).empty()) {
    const size_t semi = line.find(';');
    const std::string_view field = trim(line.substr(0, semi));
    line = semi == std::string_view::npos ? std::string_view{} : line.substr(semi + 1);
    const size_t eq = field.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(field) + "'");
    const std::string_view key = trim(field.substr(0, eq));
    const std::string_view value = trim(field.substr(eq + 1));
    auto mark = [&](int slot) {
      if (seen[slot]) throw ParseError("duplicate field '" + std::string(key) + "'");
      seen[slot] = true;
    };
    if (key == "d") {
      mark(0);
      out.param.level = parse_int(value, "d");
    } else if (key == "x") {
      mark(1);
      out.param.x = parse_poly(value);
    } else if (key == "y") {
      mark(2);
      out.param.y = parse_poly(value);
    } else if (key == "z") {
      mark(3);
      out.param.z = parse_poly(value);
    } else if (key == "w") {
      mark(4);
      out.param.w = parse_poly(value);
    } else if (key == "orbit_size") {
      out.orbit_size = parse_int(value, "orbit_size");
    } else {
      throw ParseError("unknown field '" + std::string(key) + "'");
    }
  }
  for (bool s : seen) {
    if (!s) throw ParseError("line must contain d, x, y, z and w");
  }
  if (out.param.level < 1) throw ParseError("level must be positive");
  return out;
}

LineError::LineError(size_t line, const std::string& what)
    : ParseError("line " + std::to_string(line) + ": " + what), line_(line) {}

ParamFile parse_param_text(std::string_view text) {
  ParamFile out;
  size_t number = 0;
  while (!text.empty()) {
    const size_t nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      out.comments.emplace_back(trim(line.substr(1)));
      continue;
    }
    try {
      out.lines.push_back(parse_param_line(line));
      out.line_numbers.push_back(number);
    } catch (const ParseError& e) {
      throw LineError(number, e.what());
    }
  }
  return out;
}

ParamFile read_param_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read error on " + path.string());
  return parse_param_text(buf.str());
}

namespace {

constexpr char kMagic[7] = {'D', 'P', '2', 'R', 'H', 'S', '1'};

template <class T>
void put_le(std::ostream& out, T v) {
  char bytes[sizeof(T)];
  for (size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes, sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw std::runtime_error("truncated RHS cache");
  T v = 0;
  for (size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(bytes[i]) << (8 * i);
  return v;
}

}  // namespace

void write_rhs_cache(const std::filesystem::path& path, const RhsTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(kMagic, sizeof(kMagic));
  put_le<uint32_t>(out, static_cast<uint32_t>(table.level()));
  put_le<uint32_t>(out, (table.folded() ? 1u : 0u) | (table.linear_filtered() ? 2u : 0u));
  put_le<uint64_t>(out, table.entries().size());
  for (const RhsEntry& e : table.entries()) {
    put_le<uint64_t>(out, e.value);
    put_le<uint32_t>(out, e.y);
    put_le<uint32_t>(out, e.z);
  }
  if (!out.flush()) throw std::runtime_error("write error on " + path.string());
}

RhsTable read_rhs_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) || !std::equal(magic, magic + sizeof(magic), kMagic)) {
    throw std::runtime_error(path.string() + " is not an RHS cache");
  }
  const auto level = get_le<uint32_t>(in);
  const auto flags = get_le<uint32_t>(in);
  const auto count = get_le<uint64_t>(in);
  if (level < 1 || level > static_cast<uint32_t>(kMaxLevel) || (flags & ~3u) != 0) {
    throw std::runtime_error(path.string() + ": bad RHS cache header");
  }
  const uint64_t max_index = pow3(static_cast<int>(level) + 1);
  std::vector<RhsEntry> entries;
  entries.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    RhsEntry e{};
    e.value = get_le<uint64_t>(in);
    e.y = get_le<uint32_t>(in);
    e.z = get_le<uint32_t>(in);
    if (e.y >= max_index || e.z >= max_index) throw std::runtime_error(path.string() + ": index out of range");
    entries.push_back(e);
  }
  return RhsTable(static_cast<int>(level), (flags & 1u) != 0, (flags & 2u) != 0, std::move(entries));
}

}  // namespace dp2
