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

#ifndef POSMAP_ENTANGLE_HPP
#define POSMAP_ENTANGLE_HPP

#include <cstdint>

#include "posmap/bipartite.hpp"
#include "posmap/cmatrix.hpp"
#include "posmap/linalg.hpp"
#include "posmap/positivity.hpp"
#include "posmap/qmap.hpp"

namespace posmap {

// T_zeta: K -> H (x) K, eta -> zeta (x) eta, as a (dH*dK) x dK matrix.
CMatrix t_operator(const CMatrix& zeta, std::size_t dk);

// The entanglement operator H: H -> H (x) K (x) K built from the spectral
// decomposition of a state rho,
//   H zeta = sum_i sqrt(lambda_i) (J_HK (x) T*_{J_H zeta}) e_i (x) e_i.
// Both conjugations default to the standard (coordinate) basis; the
// composition of the two antilinear pieces makes H linear in zeta, so it is
// stored as a plain matrix whose columns are the images of basis vectors.
struct EntanglementOperator {
  CMatrix h;  // (dH*dK*dK) x dH
  BipartiteOperator source;
  ConjugationSpec j_hk;
  ConjugationSpec j_h;
  std::vector<double> kept_eigenvalues;
};

EntanglementOperator entanglement_operator(const BipartiteOperator& rho,
                                           const ConjugationSpec& j_hk,
                                           const ConjugationSpec& j_h,
                                           double eig_tol = 1e-12);
EntanglementOperator entanglement_operator(const BipartiteOperator& rho,
                                           double eig_tol = 1e-12);

// phi(b) = (H* (1 (x) b) H)^t; agrees with J_H H* (1 (x) b)* H J_H, and both
// are checked against each other on every call.
CMatrix phi_of(const EntanglementOperator& e, const CMatrix& b);

// phi*(a) = Tr_{H (x) K} [H a^t H*]: trace over the first two tensor slots of
// the three-factor space leaves a dK x dK matrix.
CMatrix phi_star_of(const EntanglementOperator& e, const CMatrix& a);

// phi and phi* packaged as maps (Choi built column by column through H).
struct EntanglingPair {
  QMap phi;       // B(K) -> T(H)
  QMap phi_star;  // B(H) -> T(K)
};
EntanglingPair entangling_pair(const EntanglementOperator& e);

// omega(a (x) b) = Tr_H[a phi(b)] = Tr_K[b phi*(a)] on the matrix-unit
// spanning set plus `samples` random Hermitian pairs.
struct IdentityReport {
  double max_residual = 0.0;
  int pairs_checked = 0;
};
IdentityReport verify_identity(const EntanglementOperator& e, int samples,
                               std::uint64_t seed);

// PPT decision through two independent routes that must agree:
//   A. smallest eigenvalue of the partial transpose of rho;
//   B. the entanglement mapping phi* is both CP and co-CP.
// Disagreement throws InternalConsistencyError with both matrices dumped.
struct PptReport {
  bool ppt = false;
  double route_a_min_eig = 0.0;
  Status route_a = Status::inconclusive;
  Status route_b_cp = Status::inconclusive;
  Status route_b_co_cp = Status::inconclusive;
  double route_b_cp_min_eig = 0.0;
  double route_b_co_cp_min_eig = 0.0;
  bool routes_agree = false;
};
PptReport ppt_check(const BipartiteOperator& rho, double tol = 1e-9);

// Convex combination of N random pure product states with normalized
// exponential weights; always PPT. Deterministic in the seed.
BipartiteOperator make_separable(std::uint64_t seed, int n_terms, std::size_t dh,
                                 std::size_t dk);

// Ginibre-induced state G G* / Tr(G G*).
BipartiteOperator make_random_state(std::uint64_t seed, std::size_t dh,
                                    std::size_t dk);

// rho_p = p |singlet><singlet| + (1-p) I/4 on C^2 (x) C^2.
BipartiteOperator werner_state(double p);

}  // namespace posmap

#endif  // POSMAP_ENTANGLE_HPP
