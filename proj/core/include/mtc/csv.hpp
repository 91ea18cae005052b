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

#ifndef MTC_CSV_HPP_
#define MTC_CSV_HPP_

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mtc::csv {

// Shortest round-trip decimal representation ('.' separator, locale-free).
std::string format_double(double v);

// Writes comma-separated rows; fields are never quoted, so callers only pass
// numbers and identifiers.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void header(std::initializer_list<std::string_view> columns);

  Writer& field(double v);
  Writer& field(std::int64_t v);
  Writer& field(std::uint64_t v);
  Writer& field(int v) { return field(static_cast<std::int64_t>(v)); }
  Writer& field(unsigned v) { return field(static_cast<std::uint64_t>(v)); }
  Writer& field(std::string_view v);
  Writer& field(const char* v) { return field(std::string_view(v)); }
  Writer& field(bool v) { return field(static_cast<std::int64_t>(v ? 1 : 0)); }
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  bool row_started_ = false;
};

}  // namespace mtc::csv

#endif  // MTC_CSV_HPP_
