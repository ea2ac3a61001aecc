// Copyright 2026 The entx Authors
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

#include "entx/numfmt.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace entx {

std::string format_double(double x, int significant) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                           std::chars_format::general, significant);
  return std::string(buf.data(), res.ptr);
}

namespace {

bool is_scalar(const nlohmann::ordered_json& j) {
  return !j.is_array() && !j.is_object();
}

void write_value(std::ostream& os, const nlohmann::ordered_json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (j.is_number_float()) {
    const double x = j.get<double>();
    // JSON has no representation for non-finite values.
    if (std::isfinite(x)) {
      os << format_double(x);
    } else {
      os << "null";
    }
  } else if (j.is_array()) {
    if (j.empty()) {
      os << "[]";
      return;
    }
    bool flat = true;
    for (const auto& e : j) flat = flat && is_scalar(e);
    if (flat) {
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ", ";
        write_value(os, j[i], indent + 1);
      }
      os << ']';
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << inner;
      write_value(os, j[i], indent + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << ']';
  } else if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      os << inner << nlohmann::ordered_json(it.key()).dump() << ": ";
      write_value(os, it.value(), indent + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << '}';
  } else {
    os << j.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const nlohmann::ordered_json& doc) {
  write_value(os, doc, 0);
  os << '\n';
}

std::string dump_json(const nlohmann::ordered_json& doc) {
  std::ostringstream os;
  write_json(os, doc);
  return os.str();
}

}  // namespace entx
