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

#ifndef ENTX_QDM_IO_HPP
#define ENTX_QDM_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "entx/qdm.hpp"

namespace entx {

// Document layout:
//   { "dims": [2, 2, ...], "re": [[...], ...], "im": [[...], ...] }
// with row-major real and imaginary parts.
nlohmann::ordered_json to_document(const DensityOp& rho);

// Throws InputError on a malformed document and ContractError when the
// matrix violates a DensityOp invariant.
DensityOp density_from_document(const nlohmann::json& doc);

std::string serialize(const DensityOp& rho);
DensityOp deserialize_density(const std::string& text);

void save_density(const std::filesystem::path& path, const DensityOp& rho);
DensityOp load_density(const std::filesystem::path& path);

}  // namespace entx

#endif  // ENTX_QDM_IO_HPP
