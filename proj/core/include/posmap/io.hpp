// Copyright 2026 The posmap authors
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

#ifndef POSMAP_IO_HPP
#define POSMAP_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "posmap/bipartite.hpp"
#include "posmap/cmatrix.hpp"
#include "posmap/positivity.hpp"

namespace posmap {

using nlohmann::json;

// Matrix interchange record:
//   {"rows": r, "cols": c, "d1": ..., "d2": ..., "data": [[re, im], ...]}
// data is row-major; d1/d2 are optional factor dimensions.
struct MatrixRecord {
  CMatrix mat;
  std::optional<std::size_t> d1, d2;

  // Requires d1, d2 (or a square matrix of perfect-square size, split evenly).
  BipartiteOperator to_bipartite() const;
};

MatrixRecord matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& m, std::optional<std::size_t> d1 = std::nullopt,
                    std::optional<std::size_t> d2 = std::nullopt);

MatrixRecord read_matrix_file(const std::string& path);
// A JSON array of matrix records (used for Kraus lists).
std::vector<CMatrix> read_kraus_file(const std::string& path);

json witness_to_json(const std::vector<std::pair<std::string, CMatrix>>& witness);

// Accumulates {"verdicts": [...], "tolerances": {...}, "seed": s,
// "runtime_ms": ...}. Key order is alphabetical (nlohmann default), so the
// serialized report is deterministic given the same content.
class ReportBuilder {
 public:
  explicit ReportBuilder(std::uint64_t seed) : seed_(seed) {}

  void add_verdict(const Verdict& v);
  void add_verdict(const std::string& property, const std::string& status,
                   double value, json extra = json::object());
  void add_tolerance(const std::string& name, double value);

  json finish(std::int64_t runtime_ms) const;

 private:
  json verdicts_ = json::array();
  json tolerances_ = json::object();
  std::uint64_t seed_;
};

}  // namespace posmap

#endif  // POSMAP_IO_HPP
