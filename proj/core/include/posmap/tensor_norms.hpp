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

#ifndef POSMAP_TENSOR_NORMS_HPP
#define POSMAP_TENSOR_NORMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posmap/bipartite.hpp"
#include "posmap/cmatrix.hpp"
#include "posmap/qmap.hpp"

namespace posmap {

// Factor-norm assignment is fixed throughout: the first factor carries the
// operator norm, the second the trace norm. This matches the pairing of the
// bounded operators with the trace class used everywhere else.

struct NormSearchParams {
  int restarts = 16;
  int max_iters = 80;
  double rel_tol = 1e-13;  // relative per-sweep improvement cutoff
  int r_max = 0;           // decomposition terms; 0 means n^2 (always enough)
  int opt_passes = 40;     // greedy passes over decomposition mixings
  std::uint64_t seed = 0;
};

// Certified interval [lower, upper] plus the witnesses achieving each side.
// The lower witness re-evaluates to `lower` within 1e-9; the upper witness
// (when present) is an explicit decomposition whose factor-norm sum is
// `upper`.
struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<std::pair<std::string, CMatrix>> lower_witness;
  std::optional<TensorElement> upper_witness;
  int iterations = 0;
};

// Injective norm: sup |sum_i f(x_i) g(y_i)| over unit dual functionals,
// realized through their extreme points f = <a|.|b> and g = Tr(U .).
NormEstimate epsilon_norm(const BipartiteOperator& u,
                          const NormSearchParams& params = {});
NormEstimate epsilon_norm(const TensorElement& u,
                          const NormSearchParams& params = {});

// Projective norm: inf sum_i |x_i|_op |y_i|_tr over decompositions. Upper
// bound from operator-Schmidt initialization plus greedy mixing; lower bound
// by weak duality through elementary probe functionals.
NormEstimate pi_norm(const BipartiteOperator& u,
                     const NormSearchParams& params = {});
NormEstimate pi_norm(const TensorElement& u, const NormSearchParams& params = {});

// Dual norm to pi on density-matrix-side elements:
//   alpha(rho) = sup_{c,d unit} |(I (x) <d|) rho (I (x) |c>)|_tr,
// by alternating ascent over (c, d). Lower bound is the best value found
// (plus the |Tr rho|/n probe); upper bound is the crude trace-norm bound.
NormEstimate alpha_norm(const BipartiteOperator& rho,
                        const NormSearchParams& params = {});

// The raw Definition-style quotient |Tr(rho a)| / pi_upper(a) for a probe a.
// Kept as the validation oracle for the reduction above, never the
// production path.
double alpha_quotient(const BipartiteOperator& rho, const BipartiteOperator& probe,
                      const NormSearchParams& params = {});

struct DualityGapReport {
  // |Tr(rho u)| <= alpha_upper(rho) * pi_upper(u) + slack
  double pairing_value = 0.0;
  double pairing_bound = 0.0;
  bool pairing_ok = false;
  // alpha(rho) >= |Tr rho| / n - slack
  double alpha_lower = 0.0;
  double trace_over_n = 0.0;
  bool lower_ok = false;
  // Tr rho <= n * alpha(rho) + slack (meaningful for block-positive rho)
  double trace_value = 0.0;
  double n_alpha = 0.0;
  bool upper_ok = false;
};

DualityGapReport duality_gap_report(const BipartiteOperator& rho,
                                    const BipartiteOperator& u,
                                    const NormSearchParams& params = {},
                                    double slack = 1e-6);

}  // namespace posmap

#endif  // POSMAP_TENSOR_NORMS_HPP
