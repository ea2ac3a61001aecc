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

#include "entx/qdm_io.hpp"

#include <fstream>
#include <sstream>

#include "entx/errors.hpp"
#include "entx/numfmt.hpp"

namespace entx {

nlohmann::ordered_json to_document(const DensityOp& rho) {
  nlohmann::ordered_json doc;
  doc["dims"] = std::vector<int>(static_cast<std::size_t>(rho.num_modes()), 2);
  auto re = nlohmann::ordered_json::array();
  auto im = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < rho.dim(); ++r) {
    std::vector<double> row_re, row_im;
    for (Eigen::Index c = 0; c < rho.dim(); ++c) {
      row_re.push_back(rho(r, c).real());
      row_im.push_back(rho(r, c).imag());
    }
    re.push_back(row_re);
    im.push_back(row_im);
  }
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  return doc;
}

DensityOp density_from_document(const nlohmann::json& doc) {
  try {
    const auto dims = doc.at("dims").get<std::vector<int>>();
    for (int d : dims) {
      if (d != 2) throw InputError("only qubit modes (dimension 2) are supported");
    }
    const Eigen::Index dim = Eigen::Index{1} << dims.size();
    const auto& re = doc.at("re");
    const auto& im = doc.at("im");
    if (static_cast<Eigen::Index>(re.size()) != dim ||
        static_cast<Eigen::Index>(im.size()) != dim) {
      throw InputError("matrix row count does not match dims");
    }
    CMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const auto row_re = re.at(static_cast<std::size_t>(r)).get<std::vector<double>>();
      const auto row_im = im.at(static_cast<std::size_t>(r)).get<std::vector<double>>();
      if (static_cast<Eigen::Index>(row_re.size()) != dim ||
          static_cast<Eigen::Index>(row_im.size()) != dim) {
        throw InputError("matrix column count does not match dims");
      }
      for (Eigen::Index c = 0; c < dim; ++c) {
        m(r, c) = Complex(row_re[static_cast<std::size_t>(c)], row_im[static_cast<std::size_t>(c)]);
      }
    }
    return DensityOp::from_matrix(std::move(m));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed density document: ") + e.what());
  }
}

std::string serialize(const DensityOp& rho) { return dump_json(to_document(rho)); }

DensityOp deserialize_density(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("density document is not valid JSON: ") + e.what());
  }
  return density_from_document(doc);
}

void save_density(const std::filesystem::path& path, const DensityOp& rho) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  write_json(os, to_document(rho));
}

DensityOp load_density(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot read " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return deserialize_density(ss.str());
}

}  // namespace entx
