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

#ifndef POSMAP_BIPARTITE_HPP
#define POSMAP_BIPARTITE_HPP

#include <cstddef>

#include "posmap/cmatrix.hpp"

namespace posmap {

// Square operator on a tensor-product space with recorded factor dimensions.
// Index convention: basis vector (i, j) maps to flat index i*d2 + j, i.e. the
// first factor is the slow index. Every bipartite routine below assumes it.
struct BipartiteOperator {
  CMatrix mat;
  std::size_t d1 = 0;
  std::size_t d2 = 0;

  BipartiteOperator() = default;
  BipartiteOperator(CMatrix m, std::size_t dim1, std::size_t dim2);

  std::size_t dim() const { return d1 * d2; }
};

// Trace out the selected factor: which=1 leaves a d2 x d2 matrix, which=2 a
// d1 x d1 matrix. Preserves the full trace.
CMatrix partial_trace(const BipartiteOperator& m, int which);

// Transpose the selected factor's indices. An involution; preserves trace
// and Hermiticity.
BipartiteOperator partial_transpose(const BipartiteOperator& m, int which);

// SWAP on C^d (x) C^d: (i,j) -> (j,i). Choi matrix of the transpose map.
BipartiteOperator swap_operator(std::size_t d);

// Sum_ij E_ij (x) E_ij, the unnormalized maximally entangled projector and
// Choi matrix of the identity map.
BipartiteOperator unnormalized_max_entangled(std::size_t d);

}  // namespace posmap

#endif  // POSMAP_BIPARTITE_HPP
