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

#ifndef ENTX_NUMFMT_HPP
#define ENTX_NUMFMT_HPP

#include <ostream>
#include <string>

#include <json.hpp>

namespace entx {

// Locale-independent "%.*g" rendering. Files use 17 significant digits.
std::string format_double(double x, int significant = 17);

// Writes a JSON document with every floating value at 17 significant digits.
// Arrays whose elements are all scalars are kept on one line.
void write_json(std::ostream& os, const nlohmann::ordered_json& doc);
std::string dump_json(const nlohmann::ordered_json& doc);

}  // namespace entx

#endif  // ENTX_NUMFMT_HPP
