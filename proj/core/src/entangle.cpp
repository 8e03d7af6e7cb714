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

#include "posmap/entangle.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "posmap/rng.hpp"

namespace posmap {
namespace {

void check_state(const BipartiteOperator& rho, double eig_tol, const char* where) {
  if (std::abs(rho.mat.trace().real() - 1.0) > 1e-9 ||
      std::abs(rho.mat.trace().imag()) > 1e-9) {
    throw NotAState(std::string(where) + ": trace differs from 1");
  }
  if (rho.mat.hermiticity_defect() > kHermTol) {
    throw NotAState(std::string(where) + ": not Hermitian");
  }
  if (psd_min_eig(rho.mat) < -std::max(eig_tol, 1e-12)) {
    throw NotAState(std::string(where) + ": not positive semidefinite");
  }
}

std::string dump_matrix(const CMatrix& m) {
  std::ostringstream os;
  os.precision(17);
  os << "[" << m.rows() << "x" << m.cols() << "]";
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << " (" << m[i].real() << "," << m[i].imag() << ")";
  }
  return os.str();
}

}  // namespace

CMatrix t_operator(const CMatrix& zeta, std::size_t dk) {
  if (dk < 1) throw InvalidArgument("t_operator: dK must be at least 1");
  if (!zeta.is_column()) throw DimensionError("t_operator: zeta must be a column vector");
  const std::size_t dh = zeta.rows();
  CMatrix t(dh * dk, dk);
  for (std::size_t i = 0; i < dh; ++i)
    for (std::size_t k = 0; k < dk; ++k) t(i * dk + k, k) = zeta[i];
  return t;
}

EntanglementOperator entanglement_operator(const BipartiteOperator& rho,
                                           const ConjugationSpec& j_hk,
                                           const ConjugationSpec& j_h,
                                           double eig_tol) {
  check_state(rho, eig_tol, "entanglement_operator");
  const std::size_t dh = rho.d1, dk = rho.d2;
  if (j_hk.basis.rows() != dh * dk || j_h.basis.rows() != dh) {
    throw DimensionError("entanglement_operator: conjugation bases do not match rho");
  }

  const auto eig = herm_eig(rho.mat);

  EntanglementOperator out{CMatrix(dh * dk * dk, dh), rho, j_hk, j_h, {}};
  for (std::size_t s = 0; s < eig.eigenvalues.size(); ++s) {
    if (eig.eigenvalues[s] <= eig_tol) continue;
    out.kept_eigenvalues.push_back(eig.eigenvalues[s]);
    const double w = std::sqrt(eig.eigenvalues[s]);

    CMatrix ei(dh * dk, 1);
    for (std::size_t x = 0; x < dh * dk; ++x) ei[x] = eig.eigenvectors(x, s);
    const CMatrix ei_conj = conjugate_in_basis(ei, j_hk);  // J_HK e_i

    // Column per basis vector zeta = e_c of H. With xi = J_H zeta,
    // (T*_xi e_i)[k] = sum_h conj(xi[h]) e_i[h*dK + k]; antilinearity of J_H
    // makes the whole column linear in zeta.
    for (std::size_t c = 0; c < dh; ++c) {
      CMatrix zeta(dh, 1);
      zeta[c] = 1.0;
      const CMatrix xi = conjugate_in_basis(zeta, j_h);
      CMatrix tail(dk, 1);
      for (std::size_t k = 0; k < dk; ++k) {
        cplx acc = 0.0;
        for (std::size_t h = 0; h < dh; ++h)
          acc += std::conj(xi[h]) * ei[h * dk + k];
        tail[k] = acc;
      }
      for (std::size_t x = 0; x < dh * dk; ++x)
        for (std::size_t k = 0; k < dk; ++k)
          out.h(x * dk + k, c) += w * ei_conj[x] * tail[k];
    }
  }
  return out;
}

EntanglementOperator entanglement_operator(const BipartiteOperator& rho,
                                           double eig_tol) {
  return entanglement_operator(rho, ConjugationSpec::standard(rho.d1 * rho.d2),
                               ConjugationSpec::standard(rho.d1), eig_tol);
}

namespace {

// (1_{H (x) K} (x) b) H without materializing the Kronecker lift: b acts on
// the last tensor slot, i.e. blockwise on the fastest index of H's rows.
CMatrix lift_apply(const CMatrix& h, const CMatrix& b, std::size_t blocks) {
  const std::size_t dk = b.rows();
  CMatrix out(h.rows(), h.cols());
  for (std::size_t x = 0; x < blocks; ++x)
    for (std::size_t k = 0; k < dk; ++k)
      for (std::size_t l = 0; l < dk; ++l) {
        const cplx w = b(k, l);
        if (w == 0.0) continue;
        for (std::size_t c = 0; c < h.cols(); ++c)
          out(x * dk + k, c) += w * h(x * dk + l, c);
      }
  return out;
}

}  // namespace

CMatrix phi_of(const EntanglementOperator& e, const CMatrix& b) {
  const std::size_t dh = e.source.d1, dk = e.source.d2;
  if (!b.is_square() || b.rows() != dk) {
    throw DimensionError("phi_of: argument must be dK x dK");
  }
  // (1 (x) b) acts on the last tensor slot of H (x) K (x) K.
  const CMatrix sandwich = e.h.adjoint() * lift_apply(e.h, b, dh * dk);
  const CMatrix primary = sandwich.transpose();

  // Second branch of the defining identity: J_H H* (1 (x) b)* H J_H. With a
  // coordinate conjugation this is the entrywise conjugate of the adjoint
  // sandwich; evaluated through conjugate_in_basis to honor a custom basis.
  const CMatrix sandwich_adj = e.h.adjoint() * lift_apply(e.h, b.adjoint(), dh * dk);
  CMatrix second(dh, dh);
  for (std::size_t c = 0; c < dh; ++c) {
    CMatrix basis_vec(dh, 1);
    basis_vec[c] = 1.0;
    const CMatrix inner = sandwich_adj * conjugate_in_basis(basis_vec, e.j_h);
    const CMatrix col = conjugate_in_basis(inner, e.j_h);
    for (std::size_t r = 0; r < dh; ++r) second(r, c) = col[r];
  }
  if (max_abs_diff(primary, second) > 1e-10) {
    throw InternalConsistencyError("phi_of: the two formula branches disagree");
  }
  return primary;
}

CMatrix phi_star_of(const EntanglementOperator& e, const CMatrix& a) {
  const std::size_t dh = e.source.d1, dk = e.source.d2;
  if (!a.is_square() || a.rows() != dh) {
    throw DimensionError("phi_star_of: argument must be dH x dH");
  }
  // Tr over the first two slots of H a^t H*; columns of H are indexed by the
  // flat (h, k1, k2) triple with k2 fastest.
  const CMatrix at = a.transpose();
  CMatrix out(dk, dk);
  for (std::size_t k2 = 0; k2 < dk; ++k2)
    for (std::size_t k2p = 0; k2p < dk; ++k2p) {
      cplx acc = 0.0;
      for (std::size_t h = 0; h < dh; ++h)
        for (std::size_t k1 = 0; k1 < dk; ++k1) {
          const std::size_t row = (h * dk + k1) * dk + k2;
          const std::size_t rowp = (h * dk + k1) * dk + k2p;
          for (std::size_t s = 0; s < dh; ++s)
            for (std::size_t t = 0; t < dh; ++t)
              acc += e.h(row, s) * at(s, t) * std::conj(e.h(rowp, t));
        }
      out(k2, k2p) = acc;
    }
  return out;
}

EntanglingPair entangling_pair(const EntanglementOperator& e) {
  const std::size_t dh = e.source.d1, dk = e.source.d2;
  CMatrix choi_phi(dk * dh, dk * dh);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      const CMatrix img = phi_of(e, CMatrix::unit(dk, i, j));
      for (std::size_t r = 0; r < dh; ++r)
        for (std::size_t c = 0; c < dh; ++c)
          choi_phi(i * dh + r, j * dh + c) = img(r, c);
    }
  CMatrix choi_star(dh * dk, dh * dk);
  for (std::size_t i = 0; i < dh; ++i)
    for (std::size_t j = 0; j < dh; ++j) {
      const CMatrix img = phi_star_of(e, CMatrix::unit(dh, i, j));
      for (std::size_t r = 0; r < dk; ++r)
        for (std::size_t c = 0; c < dk; ++c)
          choi_star(i * dk + r, j * dk + c) = img(r, c);
    }
  return EntanglingPair{
      QMap::from_choi(BipartiteOperator(std::move(choi_phi), dk, dh)),
      QMap::from_choi(BipartiteOperator(std::move(choi_star), dh, dk))};
}

IdentityReport verify_identity(const EntanglementOperator& e, int samples,
                               std::uint64_t seed) {
  const std::size_t dh = e.source.d1, dk = e.source.d2;
  IdentityReport rep;

  // Matrix-unit spanning set, with the unit images precomputed once. For
  // a = E_ij, b = E_kl the three expressions collapse to single entries:
  //   omega(E_ij (x) E_kl) = rho[(j,l),(i,k)],
  //   Tr(E_ij phi(E_kl)) = phi(E_kl)[j,i],  Tr(E_kl phi*(E_ij)) = phi*(E_ij)[l,k].
  std::vector<CMatrix> phi_units(dk * dk), star_units(dh * dh);
  for (std::size_t k = 0; k < dk; ++k)
    for (std::size_t l = 0; l < dk; ++l)
      phi_units[k * dk + l] = phi_of(e, CMatrix::unit(dk, k, l));
  for (std::size_t i = 0; i < dh; ++i)
    for (std::size_t j = 0; j < dh; ++j)
      star_units[i * dh + j] = phi_star_of(e, CMatrix::unit(dh, i, j));

  for (std::size_t i = 0; i < dh; ++i)
    for (std::size_t j = 0; j < dh; ++j)
      for (std::size_t k = 0; k < dk; ++k)
        for (std::size_t l = 0; l < dk; ++l) {
          const cplx omega = e.source.mat(j * dk + l, i * dk + k);
          const cplx via_phi = phi_units[k * dk + l](j, i);
          const cplx via_star = star_units[i * dh + j](l, k);
          rep.max_residual = std::max(rep.max_residual, std::abs(omega - via_phi));
          rep.max_residual = std::max(rep.max_residual, std::abs(omega - via_star));
          ++rep.pairs_checked;
        }

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const CMatrix a = random_hermitian(rng, dh);
    const CMatrix b = random_hermitian(rng, dk);
    const cplx omega = (kron(a, b) * e.source.mat).trace();
    const cplx via_phi = (a * phi_of(e, b)).trace();
    const cplx via_star = (b * phi_star_of(e, a)).trace();
    rep.max_residual = std::max(rep.max_residual, std::abs(omega - via_phi));
    rep.max_residual = std::max(rep.max_residual, std::abs(omega - via_star));
    ++rep.pairs_checked;
  }
  return rep;
}

PptReport ppt_check(const BipartiteOperator& rho, double tol) {
  check_state(rho, 1e-9, "ppt_check");
  PptReport rep;

  // Route A: spectrum of the partial transpose.
  rep.route_a_min_eig = psd_min_eig(partial_transpose(rho, 2).mat);
  const bool a_ppt = rep.route_a_min_eig >= -tol;
  rep.route_a = a_ppt ? Status::certified_yes : Status::certified_no;

  // Route B: the entanglement mapping phi*, built through H, must be both CP
  // and co-CP.
  const EntanglementOperator e = entanglement_operator(rho);
  const QMap phi_star = entangling_pair(e).phi_star;
  const Verdict cp = is_cp(phi_star.choi(), tol);
  const Verdict cocp = is_co_cp(phi_star.choi(), tol);
  rep.route_b_cp = cp.status;
  rep.route_b_co_cp = cocp.status;
  rep.route_b_cp_min_eig = cp.value;
  rep.route_b_co_cp_min_eig = cocp.value;
  const bool b_ppt = cp.status == Status::certified_yes &&
                     cocp.status == Status::certified_yes;

  rep.routes_agree = a_ppt == b_ppt;
  if (!rep.routes_agree) {
    throw InternalConsistencyError(
        "ppt_check: partial-transpose route and entanglement-mapping route "
        "disagree; rho^Gamma = " +
        dump_matrix(partial_transpose(rho, 2).mat) +
        "; Choi(phi*) = " + dump_matrix(phi_star.choi().mat));
  }
  rep.ppt = a_ppt;
  return rep;
}

BipartiteOperator make_separable(std::uint64_t seed, int n_terms, std::size_t dh,
                                 std::size_t dk) {
  if (n_terms < 1) throw InvalidArgument("make_separable: need at least one term");
  Rng rng(seed);
  std::vector<double> weights(static_cast<std::size_t>(n_terms));
  double total = 0.0;
  for (auto& w : weights) {
    // Exponential weights normalize to a flat Dirichlet sample.
    w = -std::log(1.0 - rng.uniform());
    total += w;
  }
  CMatrix acc(dh * dk, dh * dk);
  for (const double w : weights) {
    const CMatrix u = rng.unit_vector(dh);
    const CMatrix v = rng.unit_vector(dk);
    acc += cplx(w / total, 0.0) * kron(outer(u, u), outer(v, v));
  }
  return BipartiteOperator(std::move(acc), dh, dk);
}

BipartiteOperator make_random_state(std::uint64_t seed, std::size_t dh,
                                    std::size_t dk) {
  Rng rng(seed);
  const CMatrix g = rng.ginibre(dh * dk, dh * dk);
  CMatrix rho = g * g.adjoint();
  rho *= cplx(1.0 / rho.trace().real(), 0.0);
  return BipartiteOperator(std::move(rho), dh, dk);
}

BipartiteOperator werner_state(double p) {
  // singlet (|01> - |10>)/sqrt(2)
  CMatrix psi(4, 1);
  psi[1] = 1.0 / std::sqrt(2.0);
  psi[2] = -1.0 / std::sqrt(2.0);
  CMatrix rho = cplx(p, 0.0) * outer(psi, psi);
  rho += cplx((1.0 - p) / 4.0, 0.0) * CMatrix::identity(4);
  return BipartiteOperator(std::move(rho), 2, 2);
}

}  // namespace posmap
