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

#include <cmath>

#include <doctest.h>

#include "posmap/entangle.hpp"
#include "posmap/linalg.hpp"
#include "posmap/rng.hpp"

using namespace posmap;

namespace {

// The unique solutions of the reconstruction identity, straight from the
// definition of the partial traces.
CMatrix phi_oracle(const BipartiteOperator& rho, const CMatrix& b) {
  return partial_trace(
      BipartiteOperator(kron(CMatrix::identity(rho.d1), b) * rho.mat, rho.d1, rho.d2),
      2);
}

CMatrix phi_star_oracle(const BipartiteOperator& rho, const CMatrix& a) {
  return partial_trace(
      BipartiteOperator(kron(a, CMatrix::identity(rho.d2)) * rho.mat, rho.d1, rho.d2),
      1);
}

BipartiteOperator bell_state(std::size_t d) {
  CMatrix m = unnormalized_max_entangled(d).mat;
  m *= cplx(1.0 / static_cast<double>(d), 0.0);
  return BipartiteOperator(std::move(m), d, d);
}

}  // namespace

TEST_CASE("t_operator") {
  CMatrix zeta(2, 1);
  zeta[0] = 1.0;
  const CMatrix t = t_operator(zeta, 2);
  CHECK(t.rows() == 4);
  CHECK(t.cols() == 2);

  CMatrix eta(2, 1);
  eta[1] = 1.0;
  const CMatrix mapped = t * eta;  // e0 (x) e1 sits at flat index 1
  CHECK(mapped[1] == cplx(1.0, 0.0));
  CHECK(norm2(mapped) == doctest::Approx(1.0));

  Rng rng(137);
  const CMatrix z = rng.ginibre(3, 1);
  const CMatrix tz = t_operator(z, 2);
  // T*T = |zeta|^2 I and the operator norm equals |zeta|.
  const double zz = norm2(z) * norm2(z);
  CMatrix scaled_id = CMatrix::identity(2);
  scaled_id *= cplx(zz, 0.0);
  CHECK(max_abs_diff(tz.adjoint() * tz, scaled_id) < 1e-12);
  CHECK(operator_norm(tz) == doctest::Approx(norm2(z)).epsilon(1e-12));

  // Adjoint relation <T eta, xi> = <eta, T* xi> on random vectors.
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix e = rng.ginibre(2, 1), xi = rng.ginibre(6, 1);
    const cplx lhs = dot(tz * e, xi);
    const cplx rhs = dot(e, tz.adjoint() * xi);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }

  CHECK_THROWS_AS(t_operator(zeta, 0), InvalidArgument);
}

TEST_CASE("entanglement operator on canonical states") {
  Rng rng(139);

  // Pure product state: phi*(a) = <e0|a|e0> |e0><e0|, rank one.
  CMatrix pure(4, 4);
  pure(0, 0) = 1.0;
  const BipartiteOperator rho_prod(pure, 2, 2);
  const auto ent_prod = entanglement_operator(rho_prod);
  for (int trial = 0; trial < 4; ++trial) {
    const CMatrix a = random_hermitian(rng, 2);
    const CMatrix img = phi_star_of(ent_prod, a);
    CMatrix expected = CMatrix::unit(2, 0, 0);
    expected *= a(0, 0);
    CHECK(max_abs_diff(img, expected) < 1e-12);
    CHECK(max_abs_diff(img, phi_star_oracle(rho_prod, a)) < 1e-12);
  }

  // Maximally mixed state: phi*(a) = Tr(a) I/4.
  CMatrix mixed = CMatrix::identity(4);
  mixed *= cplx(0.25, 0.0);
  const BipartiteOperator rho_mixed(mixed, 2, 2);
  const auto ent_mixed = entanglement_operator(rho_mixed);
  for (int trial = 0; trial < 4; ++trial) {
    const CMatrix a = random_hermitian(rng, 2);
    CMatrix expected = CMatrix::identity(2);
    expected *= a.trace() * cplx(0.25, 0.0);
    CHECK(max_abs_diff(phi_star_of(ent_mixed, a), expected) < 1e-12);
  }

  // Bell state: phi*(a) = a^t / 2, the canonical maximally entangled case.
  const auto rho_bell = bell_state(2);
  const auto ent_bell = entanglement_operator(rho_bell);
  for (int trial = 0; trial < 4; ++trial) {
    const CMatrix a = random_hermitian(rng, 2);
    CMatrix expected = a.transpose();
    expected *= cplx(0.5, 0.0);
    CHECK(max_abs_diff(phi_star_of(ent_bell, a), expected) < 1e-12);
    CHECK(max_abs_diff(phi_star_of(ent_bell, a), phi_star_oracle(rho_bell, a)) < 1e-12);
  }

  // Normalization inherited from the eigenvalue sum.
  const CMatrix hh = ent_bell.h.adjoint() * ent_bell.h;
  CHECK(std::abs(hh.trace().real() - 1.0) < 1e-9);
}

TEST_CASE("entanglement operator with a custom conjugation pair") {
  // The normalization Tr(H*H) = Tr(rho) only needs the conjugations to be
  // isometric, so it must survive an arbitrary CONS; the reconstruction
  // identity itself is tied to the default coordinate conjugations.
  Rng rng(141);
  const auto rho = make_random_state(31, 2, 2);
  const ConjugationSpec j_hk(herm_eig(random_hermitian(rng, 4)).eigenvectors);
  const ConjugationSpec j_h(herm_eig(random_hermitian(rng, 2)).eigenvectors);
  const auto ent = entanglement_operator(rho, j_hk, j_h, 1e-12);
  CHECK(ent.h.rows() == 8);
  CHECK(ent.h.cols() == 2);
  const CMatrix hh = ent.h.adjoint() * ent.h;
  CHECK(std::abs(hh.trace().real() - 1.0) < 1e-9);

  // Mismatched basis dimensions are rejected.
  CHECK_THROWS_AS(entanglement_operator(rho, j_h, j_h, 1e-12), DimensionError);
}

TEST_CASE("entanglement operator rejects non-states") {
  CMatrix not_norm = CMatrix::identity(4);  // trace 4
  CHECK_THROWS_AS(entanglement_operator(BipartiteOperator(not_norm, 2, 2)), NotAState);

  CMatrix indef = CMatrix::diag({1.5, -0.5, 0.0, 0.0});
  CHECK_THROWS_AS(entanglement_operator(BipartiteOperator(indef, 2, 2)), NotAState);
}

TEST_CASE("phi_of") {
  Rng rng(149);

  // b = I recovers the reduced state on the first factor.
  const auto rho = make_random_state(7, 2, 3);
  const auto ent = entanglement_operator(rho);
  CHECK(max_abs_diff(phi_of(ent, CMatrix::identity(3)), partial_trace(rho, 2)) < 1e-9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const CMatrix b = CMatrix::unit(3, i, j);
      CHECK(max_abs_diff(phi_of(ent, b), phi_oracle(rho, b)) < 1e-9);
    }

  // Product state sigma (x) tau: phi(b) = Tr(tau b) sigma.
  const CMatrix gs = rng.ginibre(2, 2), gt = rng.ginibre(3, 3);
  CMatrix sigma = gs * gs.adjoint();
  sigma *= cplx(1.0 / sigma.trace().real(), 0.0);
  CMatrix tau = gt * gt.adjoint();
  tau *= cplx(1.0 / tau.trace().real(), 0.0);
  const BipartiteOperator prod(kron(sigma, tau), 2, 3);
  const auto ent_prod = entanglement_operator(prod);
  for (int trial = 0; trial < 4; ++trial) {
    const CMatrix b = random_hermitian(rng, 3);
    CMatrix expected = sigma;
    expected *= (tau * b).trace();
    CHECK(max_abs_diff(phi_of(ent_prod, b), expected) < 1e-9);
  }

  // Bell: phi(b) = b^t / 2.
  const auto ent_bell = entanglement_operator(bell_state(2));
  for (int trial = 0; trial < 4; ++trial) {
    const CMatrix b = rng.ginibre(2, 2);
    CMatrix expected = b.transpose();
    expected *= cplx(0.5, 0.0);
    CHECK(max_abs_diff(phi_of(ent_bell, b), expected) < 1e-10);
  }
}

TEST_CASE("positivity transport and Hermiticity of the entangling pair") {
  Rng rng(151);
  const auto rho = make_random_state(11, 2, 2);
  const auto ent = entanglement_operator(rho);

  for (int trial = 0; trial < 6; ++trial) {
    const CMatrix u = rng.unit_vector(2);
    const CMatrix img = phi_star_of(ent, outer(u, u));
    CHECK(img.hermiticity_defect() < 1e-10);
    CHECK(psd_min_eig(img) >= -1e-10);

    const CMatrix b = rng.ginibre(2, 2);
    CHECK(max_abs_diff(phi_of(ent, b.adjoint()), phi_of(ent, b).adjoint()) < 1e-10);
  }

  // a = I recovers the reduced state on the second factor, so in particular
  // Tr phi*(I) = Tr rho = 1.
  CHECK(max_abs_diff(phi_star_of(ent, CMatrix::identity(2)), partial_trace(rho, 1)) <
        1e-9);
  CHECK(std::abs(phi_star_of(ent, CMatrix::identity(2)).trace().real() - 1.0) < 1e-10);
}

TEST_CASE("reconstruction identity") {
  // (a, b) = (I, I) gives the state normalization on every input.
  const auto rho = make_random_state(13, 2, 2);
  const auto ent = entanglement_operator(rho);
  const cplx via_phi = (phi_of(ent, CMatrix::identity(2))).trace();
  CHECK(std::abs(via_phi - cplx(1.0, 0.0)) < 1e-10);

  // Bell state against the symmetric flip on both sides.
  const auto ent_bell = entanglement_operator(bell_state(2));
  CMatrix flip(2, 2);
  flip(0, 1) = 1.0;
  flip(1, 0) = 1.0;
  const cplx omega = (kron(flip, flip) * bell_state(2).mat).trace();
  const cplx lhs = (flip * phi_of(ent_bell, flip)).trace();
  CHECK(std::abs(omega - lhs) < 1e-12);

  // Spanning set plus random samples across dimension pairs.
  for (const auto& [dh, dk] : std::vector<std::pair<std::size_t, std::size_t>>{
           {2, 2}, {2, 3}, {3, 3}}) {
    const auto state = make_random_state(17 + dh * 10 + dk, dh, dk);
    const auto rep = verify_identity(entanglement_operator(state), 50, 23);
    CHECK(rep.max_residual < 1e-9);
    CHECK(rep.pairs_checked == static_cast<int>(dh * dh * dk * dk) + 50);
  }
}

TEST_CASE("ppt_check on canonical families") {
  // Bell state: not PPT, partial-transpose minimum eigenvalue exactly -1/2.
  const auto bell_rep = ppt_check(bell_state(2), 1e-9);
  CHECK_FALSE(bell_rep.ppt);
  CHECK(bell_rep.routes_agree);
  CHECK(bell_rep.route_a_min_eig == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(bell_rep.route_b_cp == Status::certified_no);

  // Separable mixtures are PPT through both routes.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto sep = make_separable(seed, 5, 2, 2);
    const auto rep = ppt_check(sep, 1e-9);
    CHECK(rep.ppt);
    CHECK(rep.routes_agree);
    CHECK(rep.route_b_cp == Status::certified_yes);
    CHECK(rep.route_b_co_cp == Status::certified_yes);
  }

  // Werner family: PPT exactly for p <= 1/3.
  CHECK(ppt_check(werner_state(0.25), 1e-9).ppt);
  CHECK_FALSE(ppt_check(werner_state(0.5), 1e-9).ppt);
  // The partial-transpose eigenvalue is (1 - 3p)/4.
  const auto w = ppt_check(werner_state(0.5), 1e-9);
  CHECK(w.route_a_min_eig == doctest::Approx((1.0 - 1.5) / 4.0).epsilon(1e-12));

  CHECK_THROWS_AS(ppt_check(BipartiteOperator(CMatrix::identity(4), 2, 2), 1e-9),
                  NotAState);
}

TEST_CASE("state generators") {
  // Seeded calls are bit-identical.
  const auto a = make_random_state(42, 2, 3);
  const auto b = make_random_state(42, 2, 3);
  CHECK(max_abs_diff(a.mat, b.mat) == 0.0);
  const auto sa = make_separable(42, 4, 2, 2);
  const auto sb = make_separable(42, 4, 2, 2);
  CHECK(max_abs_diff(sa.mat, sb.mat) == 0.0);

  // Valid states: PSD with unit trace.
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto s = make_random_state(seed, 3, 3);
    CHECK(std::abs(s.mat.trace().real() - 1.0) < 1e-12);
    CHECK(psd_min_eig(s.mat) >= -1e-12);
    const auto sep = make_separable(seed, 3, 2, 3);
    CHECK(std::abs(sep.mat.trace().real() - 1.0) < 1e-12);
    CHECK(psd_min_eig(sep.mat) >= -1e-12);
  }

  // N = 1 is a pure product state, always PPT.
  const auto product = make_separable(5, 1, 2, 2);
  CHECK(ppt_check(product, 1e-9).ppt);
  CHECK_THROWS_AS(make_separable(5, 0, 2, 2), InvalidArgument);
}

TEST_CASE("entangling pair as maps") {
  const auto rho = make_random_state(19, 2, 2);
  const auto ent = entanglement_operator(rho);
  const auto pair = entangling_pair(ent);
  CHECK(pair.phi.din() == 2);
  CHECK(pair.phi.dout() == 2);

  Rng rng(157);
  const CMatrix b = rng.ginibre(2, 2);
  CHECK(max_abs_diff(pair.phi.apply(b), phi_of(ent, b)) < 1e-11);
  const CMatrix a = rng.ginibre(2, 2);
  CHECK(max_abs_diff(pair.phi_star.apply(a), phi_star_of(ent, a)) < 1e-11);

  // The Choi matrix of phi* is the first-factor partial transpose of rho.
  CHECK(max_abs_diff(pair.phi_star.choi().mat, partial_transpose(rho, 1).mat) < 1e-10);
}
