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

#include "posmap/bipartite.hpp"

#include <utility>

namespace posmap {

BipartiteOperator::BipartiteOperator(CMatrix m, std::size_t dim1, std::size_t dim2)
    : mat(std::move(m)), d1(dim1), d2(dim2) {
  if (d1 == 0 || d2 == 0) {
    throw DimensionError("BipartiteOperator: factor dimensions must be positive");
  }
  if (!mat.is_square() || mat.rows() != d1 * d2) {
    throw DimensionError("BipartiteOperator: matrix must be square of size d1*d2");
  }
}

CMatrix partial_trace(const BipartiteOperator& m, int which) {
  const std::size_t d1 = m.d1, d2 = m.d2;
  if (which == 1) {
    CMatrix out(d2, d2);
    for (std::size_t k = 0; k < d2; ++k)
      for (std::size_t l = 0; l < d2; ++l) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < d1; ++i) s += m.mat(i * d2 + k, i * d2 + l);
        out(k, l) = s;
      }
    return out;
  }
  if (which == 2) {
    CMatrix out(d1, d1);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d1; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < d2; ++k) s += m.mat(i * d2 + k, j * d2 + k);
        out(i, j) = s;
      }
    return out;
  }
  throw InvalidArgument("partial_trace: factor selector must be 1 or 2");
}

BipartiteOperator partial_transpose(const BipartiteOperator& m, int which) {
  if (which != 1 && which != 2) {
    throw InvalidArgument("partial_transpose: factor selector must be 1 or 2");
  }
  const std::size_t d1 = m.d1, d2 = m.d2;
  CMatrix out(m.mat.rows(), m.mat.cols());
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t k = 0; k < d2; ++k)
      for (std::size_t j = 0; j < d1; ++j)
        for (std::size_t l = 0; l < d2; ++l) {
          if (which == 1) {
            out(i * d2 + k, j * d2 + l) = m.mat(j * d2 + k, i * d2 + l);
          } else {
            out(i * d2 + k, j * d2 + l) = m.mat(i * d2 + l, j * d2 + k);
          }
        }
  return BipartiteOperator(std::move(out), d1, d2);
}

BipartiteOperator swap_operator(std::size_t d) {
  CMatrix s(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  return BipartiteOperator(std::move(s), d, d);
}

BipartiteOperator unnormalized_max_entangled(std::size_t d) {
  CMatrix b(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) b(i * d + i, j * d + j) = 1.0;
  return BipartiteOperator(std::move(b), d, d);
}

}  // namespace posmap
