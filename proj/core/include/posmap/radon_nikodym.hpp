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

#ifndef POSMAP_RADON_NIKODYM_HPP
#define POSMAP_RADON_NIKODYM_HPP

#include <optional>

#include "posmap/cmatrix.hpp"
#include "posmap/qmap.hpp"

namespace posmap {

// Finite-dimensional surrogate of complete absolute continuity between CP
// maps: inclusion of Choi ranges. This collapses the sequential definition to
// a support test and is documented as a surrogate, not an equivalent.
struct CacReport {
  bool absolutely_continuous = false;
  double off_support_mass = 0.0;  // |(I - P) C_phi (I - P)|_max
  std::size_t support_rank = 0;   // rank of the reference Choi matrix
};

CacReport cac_test(const QMap& phi, const QMap& psi, double tol = 1e-10);

// Choi-level derivative D = S+ C_phi S+ with S = pseudo_sqrt(C_psi); the
// reconstruction C_phi = S D S holds on the support whenever cac_test passes.
struct RNDerivative {
  CMatrix d;
  std::size_t support_rank = 0;
  double reconstruction_residual = 0.0;
};

RNDerivative rn_derivative(const QMap& phi, const QMap& psi, double tol = 1e-10);

// Smallest t with C_phi <= t C_psi, when the pair is dominated; equals the
// operator norm of the derivative. nullopt when cac_test fails.
std::optional<double> domination_bound(const QMap& phi, const QMap& psi,
                                       double tol = 1e-10);

}  // namespace posmap

#endif  // POSMAP_RADON_NIKODYM_HPP
