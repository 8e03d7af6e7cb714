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

#include "posmap/io.hpp"

#include <cmath>
#include <fstream>

namespace posmap {
namespace {

std::size_t perfect_sqrt(std::size_t n) {
  const auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r == n ? r : 0;
}

}  // namespace

BipartiteOperator MatrixRecord::to_bipartite() const {
  if (d1 && d2) {
    return BipartiteOperator(mat, *d1, *d2);
  }
  if (!mat.is_square()) {
    throw DimensionError("matrix record: bipartite use requires a square matrix");
  }
  const std::size_t root = perfect_sqrt(mat.rows());
  if (root == 0) {
    throw DimensionError(
        "matrix record: d1/d2 missing and the size is not a perfect square");
  }
  return BipartiteOperator(mat, root, root);
}

MatrixRecord matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix record: expected a JSON object");
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw ParseError("matrix record: rows, cols and data are required");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw ParseError("matrix record: rows/cols must be integers");
  }
  const auto rows_raw = j["rows"].get<std::int64_t>();
  const auto cols_raw = j["cols"].get<std::int64_t>();
  if (rows_raw < 1 || cols_raw < 1) {
    throw ParseError("matrix record: rows/cols must be positive");
  }
  const auto rows = static_cast<std::size_t>(rows_raw);
  const auto cols = static_cast<std::size_t>(cols_raw);

  const json& data = j["data"];
  if (!data.is_array()) throw ParseError("matrix record: data must be an array");
  if (data.size() != rows * cols) {
    throw DimensionError("matrix record: data length differs from rows*cols");
  }
  std::vector<cplx> entries;
  entries.reserve(data.size());
  for (const auto& cell : data) {
    if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
        !cell[1].is_number()) {
      throw ParseError("matrix record: each entry must be a [re, im] pair");
    }
    entries.emplace_back(cell[0].get<double>(), cell[1].get<double>());
  }

  MatrixRecord rec;
  try {
    rec.mat = CMatrix(rows, cols, std::move(entries));
  } catch (const InvalidArgument&) {
    throw ParseError("matrix record: non-finite entry");
  }
  if (j.contains("d1") || j.contains("d2")) {
    if (!j.contains("d1") || !j.contains("d2") || !j["d1"].is_number_integer() ||
        !j["d2"].is_number_integer()) {
      throw ParseError("matrix record: d1 and d2 must both be integers");
    }
    const auto f1 = j["d1"].get<std::int64_t>();
    const auto f2 = j["d2"].get<std::int64_t>();
    if (f1 < 1 || f2 < 1) throw ParseError("matrix record: d1/d2 must be positive");
    if (static_cast<std::size_t>(f1 * f2) != rows || rows != cols) {
      throw DimensionError("matrix record: d1*d2 must equal rows = cols");
    }
    rec.d1 = static_cast<std::size_t>(f1);
    rec.d2 = static_cast<std::size_t>(f2);
  }
  return rec;
}

json matrix_to_json(const CMatrix& m, std::optional<std::size_t> d1,
                    std::optional<std::size_t> d2) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  if (d1) j["d1"] = *d1;
  if (d2) j["d2"] = *d2;
  json data = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    data.push_back(json::array({m[i].real(), m[i].imag()}));
  }
  j["data"] = std::move(data);
  return j;
}

MatrixRecord read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return matrix_from_json(j);
}

std::vector<CMatrix> read_kraus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  if (!j.is_array() || j.empty()) {
    throw ParseError("Kraus file: expected a nonempty JSON array of matrices");
  }
  std::vector<CMatrix> out;
  out.reserve(j.size());
  for (const auto& rec : j) out.push_back(matrix_from_json(rec).mat);
  return out;
}

json witness_to_json(const std::vector<std::pair<std::string, CMatrix>>& witness) {
  json j = json::object();
  for (const auto& [name, m] : witness) j[name] = matrix_to_json(m);
  return j;
}

void ReportBuilder::add_verdict(const Verdict& v) {
  json entry;
  entry["property"] = v.property;
  entry["status"] = to_string(v.status);
  entry["value"] = v.value;
  if (!v.witness.empty()) entry["witness"] = witness_to_json(v.witness);
  verdicts_.push_back(std::move(entry));
}

void ReportBuilder::add_verdict(const std::string& property, const std::string& status,
                                double value, json extra) {
  json entry;
  entry["property"] = property;
  entry["status"] = status;
  entry["value"] = value;
  for (auto& [key, val] : extra.items()) entry[key] = std::move(val);
  verdicts_.push_back(std::move(entry));
}

void ReportBuilder::add_tolerance(const std::string& name, double value) {
  tolerances_[name] = value;
}

json ReportBuilder::finish(std::int64_t runtime_ms) const {
  json report;
  report["verdicts"] = verdicts_;
  report["tolerances"] = tolerances_;
  report["seed"] = seed_;
  report["runtime_ms"] = runtime_ms;
  return report;
}

}  // namespace posmap
