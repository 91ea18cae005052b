// Copyright 2026 The mtcore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mtc/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace mtc::csv {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // no "-0"
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), res.ptr);
}

void Writer::header(std::initializer_list<std::string_view> columns) {
  for (auto c : columns) field(c);
  end_row();
}

void Writer::separator() {
  if (row_started_) out_ << ',';
  row_started_ = true;
}

Writer& Writer::field(double v) {
  separator();
  out_ << format_double(v);
  return *this;
}

Writer& Writer::field(std::int64_t v) {
  separator();
  out_ << v;
  return *this;
}

Writer& Writer::field(std::uint64_t v) {
  separator();
  out_ << v;
  return *this;
}

Writer& Writer::field(std::string_view v) {
  separator();
  out_ << v;
  return *this;
}

void Writer::end_row() {
  out_ << '\n';
  row_started_ = false;
}

}  // namespace mtc::csv
