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

#include "posmap/radon_nikodym.hpp"

#include "posmap/linalg.hpp"

namespace posmap {
namespace {

void check_cp_pair(const QMap& phi, const QMap& psi, double tol, const char* where) {
  if (phi.din() != psi.din() || phi.dout() != psi.dout()) {
    throw DimensionError(std::string(where) + ": maps must share dimensions");
  }
  if (psd_min_eig(phi.choi().mat) < -tol) {
    throw NotCP(std::string(where) + ": phi is not completely positive");
  }
  if (psd_min_eig(psi.choi().mat) < -tol) {
    throw NotCP(std::string(where) + ": psi is not completely positive");
  }
}

}  // namespace

CacReport cac_test(const QMap& phi, const QMap& psi, double tol) {
  check_cp_pair(phi, psi, tol, "cac_test");
  const CMatrix proj = support_projector(psi.choi().mat, tol);
  const CMatrix complement = CMatrix::identity(proj.rows()) - proj;
  const CMatrix leak = complement * phi.choi().mat * complement;

  CacReport rep;
  rep.support_rank = support_rank(psi.choi().mat, tol);
  rep.off_support_mass = leak.max_abs();
  rep.absolutely_continuous = rep.off_support_mass <= tol;
  return rep;
}

RNDerivative rn_derivative(const QMap& phi, const QMap& psi, double tol) {
  const CacReport cac = cac_test(phi, psi, tol);
  if (!cac.absolutely_continuous) {
    throw NotAbsolutelyContinuous(
        "rn_derivative: the Choi range of phi leaves the support of psi");
  }
  const CMatrix s = pseudo_sqrt(psi.choi().mat, tol);
  const CMatrix s_inv = pseudo_inv_sqrt(psi.choi().mat, tol);

  RNDerivative out;
  out.d = s_inv * phi.choi().mat * s_inv;
  // Kill rounding asymmetry so downstream spectral calls see a clean input.
  out.d = 0.5 * (out.d + out.d.adjoint());
  out.support_rank = cac.support_rank;
  out.reconstruction_residual = max_abs_diff(s * out.d * s, phi.choi().mat);
  return out;
}

std::optional<double> domination_bound(const QMap& phi, const QMap& psi, double tol) {
  const CacReport cac = cac_test(phi, psi, tol);
  if (!cac.absolutely_continuous) return std::nullopt;
  return operator_norm(rn_derivative(phi, psi, tol).d);
}

}  // namespace posmap
