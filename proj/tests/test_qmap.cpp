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

#include "posmap/linalg.hpp"
#include "posmap/qmap.hpp"
#include "posmap/rng.hpp"

using namespace posmap;

namespace {

// Choi oracle: assemble sum_ij E_ij (x) phi(E_ij) from a callable phi.
template <typename Phi>
CMatrix choi_oracle(std::size_t din, std::size_t dout, Phi&& phi) {
  CMatrix c(din * dout, din * dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t j = 0; j < din; ++j) {
      const CMatrix img = phi(CMatrix::unit(din, i, j));
      for (std::size_t r = 0; r < dout; ++r)
        for (std::size_t s = 0; s < dout; ++s)
          c(i * dout + r, j * dout + s) = img(r, s);
    }
  return c;
}

TensorElement random_element(Rng& rng, std::size_t n, std::size_t terms) {
  std::vector<std::pair<CMatrix, CMatrix>> t;
  for (std::size_t s = 0; s < terms; ++s)
    t.emplace_back(rng.ginibre(n, n), rng.ginibre(n, n));
  return TensorElement(std::move(t));
}

}  // namespace

TEST_CASE("degenerate constructions are rejected") {
  CHECK_THROWS_AS(QMap::from_kraus({}), InvalidArgument);
  CHECK_THROWS_AS(TensorElement({}), InvalidArgument);
  CHECK_THROWS_AS(TensorElement({{CMatrix::identity(2), CMatrix::identity(3)},
                                 {CMatrix::identity(2), CMatrix::identity(2)}}),
                  DimensionError);
  // Kraus operators of mismatched shapes.
  CHECK_THROWS_AS(QMap::from_kraus({CMatrix::identity(2), CMatrix(3, 2)}),
                  DimensionError);
}

TEST_CASE("choi matrices of canonical maps") {
  const QMap id2 = QMap::identity(2);
  CHECK(max_abs_diff(id2.choi().mat, unnormalized_max_entangled(2).mat) == 0.0);
  const auto eig = herm_eig(id2.choi().mat);
  CHECK(eig.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-13));
  for (std::size_t s = 1; s < 4; ++s)
    CHECK(eig.eigenvalues[s] == doctest::Approx(0.0).epsilon(1e-13));

  const QMap tau2 = QMap::transpose_map(2);
  CHECK(max_abs_diff(tau2.choi().mat, swap_operator(2).mat) == 0.0);

  // a -> Tr(a) I/2: Choi oracle evaluated entrywise.
  const QMap dep = QMap::depolarizing(2);
  const CMatrix oracle = choi_oracle(2, 2, [](const CMatrix& a) {
    CMatrix out = CMatrix::identity(2);
    out *= a.trace() * cplx(0.5, 0.0);
    return out;
  });
  CHECK(max_abs_diff(dep.choi().mat, oracle) < 1e-15);
  CHECK(max_abs_diff(dep.choi().mat, 0.5 * CMatrix::identity(4)) < 1e-15);
}

TEST_CASE("kraus_from_choi") {
  // I4/2 factors into four matrix-unit Kraus operators over sqrt(2).
  const auto kraus = kraus_from_choi(QMap::depolarizing(2).choi(), 1e-10);
  CHECK(kraus.size() == 4);
  CHECK(max_abs_diff(choi_from_kraus(kraus).mat, 0.5 * CMatrix::identity(4)) < 1e-9);

  const auto id_kraus = kraus_from_choi(QMap::identity(2).choi(), 1e-10);
  REQUIRE(id_kraus.size() == 1);
  // Single Kraus operator equal to the identity up to phase.
  const cplx phase = id_kraus[0](0, 0);
  CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
  CHECK(max_abs_diff(id_kraus[0], phase * CMatrix::identity(2)) < 1e-10);

  CHECK_THROWS_AS(kraus_from_choi(swap_operator(2), 1e-10), NotCP);
}

TEST_CASE("kraus -> choi -> kraus round trip") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const QMap chan = random_cp_channel(seed, 3, 2, 2);
    const auto kraus = kraus_from_choi(chan.choi(), 1e-10);
    CHECK(max_abs_diff(choi_from_kraus(kraus).mat, chan.choi().mat) < 1e-9);
  }
}

TEST_CASE("apply across representations") {
  const QMap id2 = QMap::identity(2);
  Rng rng(41);
  const CMatrix a = rng.ginibre(2, 2);
  CHECK(max_abs_diff(id2.apply(a), a) < 1e-12);

  const QMap tau2 = QMap::transpose_map(2);
  CHECK(max_abs_diff(tau2.apply(CMatrix::unit(2, 0, 1)), CMatrix::unit(2, 1, 0)) == 0.0);

  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const QMap chan = random_cp_channel(seed, 2, 3, 2);  // has a Kraus list
    const QMap via_choi = QMap::from_choi(chan.choi());  // Choi-only path
    const QMap via_superop = QMap::from_superop(chan.superop(), 2, 3);
    const CMatrix x = rng.ginibre(2, 2);
    CHECK(max_abs_diff(chan.apply(x), via_choi.apply(x)) < 1e-10);
    CHECK(max_abs_diff(chan.apply(x), via_superop.apply(x)) < 1e-10);
    CHECK(max_abs_diff(via_superop.choi().mat, chan.choi().mat) < 1e-10);
  }

  CHECK_THROWS_AS(id2.apply(CMatrix::identity(3)), DimensionError);
}

TEST_CASE("pairing") {
  const QMap id2 = QMap::identity(2);
  const auto u = TensorElement::elementary(CMatrix::unit(2, 0, 0), CMatrix::unit(2, 0, 0));
  CHECK(std::abs(pairing(id2, u) - cplx(1.0, 0.0)) < 1e-14);

  // Bilinearity: two decompositions of the same element pair equally.
  Rng rng(43);
  const CMatrix a = rng.ginibre(2, 2), a2 = rng.ginibre(2, 2), b = rng.ginibre(2, 2);
  const QMap chan = random_cp_channel(99, 2, 2, 3);
  const TensorElement joined = TensorElement::elementary(a + a2, b);
  const TensorElement split({{a, b}, {a2, b}});
  CHECK(std::abs(pairing(chan, joined) - pairing(chan, split)) < 1e-12);

  // Choi-contraction oracle: pairing = Tr(C_phi * sum_i a_i^t (x) b_i^t).
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const QMap map = random_hermitian_map(seed, 2);
    const TensorElement u2 = random_element(rng, 2, 3);
    CMatrix contracted(4, 4);
    for (const auto& [x, y] : u2.terms)
      contracted += kron(x.transpose(), y.transpose());
    const cplx oracle = (map.choi().mat * contracted).trace();
    CHECK(std::abs(pairing(map, u2) - oracle) < 1e-10);
  }

  // Linearity in the map: mixing Choi matrices mixes pairings.
  const QMap m1 = random_hermitian_map(1, 2), m2 = random_hermitian_map(2, 2);
  CMatrix mixed = m1.choi().mat;
  mixed *= cplx(0.25, 0.0);
  CMatrix part = m2.choi().mat;
  part *= cplx(0.75, 0.0);
  mixed += part;
  const QMap mmix = QMap::from_choi(BipartiteOperator(mixed, 2, 2));
  const TensorElement probe = random_element(rng, 2, 2);
  const cplx expected = 0.25 * pairing(m1, probe) + 0.75 * pairing(m2, probe);
  CHECK(std::abs(pairing(mmix, probe) - expected) < 1e-12);
}

TEST_CASE("trace functional") {
  const auto unit = TensorElement::elementary(CMatrix::identity(2), CMatrix::identity(2));
  CHECK(std::abs(trace_functional(unit) - cplx(2.0, 0.0)) < 1e-14);

  Rng rng(47);
  const CMatrix a = rng.ginibre(3, 3), b = rng.ginibre(3, 3);
  CHECK(std::abs(trace_functional(TensorElement::elementary(a, b)) - (a * b).trace()) <
        1e-12);

  // Representation independence via the flat-tensor contraction oracle.
  for (int trial = 0; trial < 6; ++trial) {
    const TensorElement u = random_element(rng, 2, 2);
    const auto flat = u.flatten();
    cplx oracle = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k) oracle += flat.mat(i * 2 + k, k * 2 + i);
    CHECK(std::abs(trace_functional(u) - oracle) < 1e-12);

    // A rebased decomposition of the same element.
    std::vector<std::pair<CMatrix, CMatrix>> alt = u.terms;
    alt[0].first += alt[1].first;
    alt.push_back({alt[1].first * cplx(-1.0, 0.0), alt[0].second});
    const TensorElement v(alt);
    CHECK(max_abs_diff(v.flatten().mat, flat.mat) < 1e-12);
    CHECK(std::abs(trace_functional(v) - trace_functional(u)) < 1e-12);
  }
}

TEST_CASE("adjoint and transpose composition") {
  Rng rng(53);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const QMap map = random_cp_channel(seed, 2, 3, 2);
    const QMap adj = map.adjoint();
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix a = rng.ginibre(2, 2), b = rng.ginibre(3, 3);
      const cplx lhs = (map.apply(a) * b).trace();
      const cplx rhs = (a * adj.apply(b)).trace();
      CHECK(std::abs(lhs - rhs) < 1e-11);
    }

    const QMap comp = map.compose_transpose();
    CHECK(max_abs_diff(comp.choi().mat, partial_transpose(map.choi(), 1).mat) == 0.0);
    const CMatrix x = rng.ginibre(2, 2);
    CHECK(max_abs_diff(comp.apply(x), map.apply(x.transpose())) < 1e-11);
  }
}

TEST_CASE("unitality and trace preservation") {
  const QMap id2 = QMap::identity(2);
  CHECK(id2.unitality().holds);
  CHECK(id2.trace_preserving().holds);

  // a -> Tr(a) E00 is trace preserving but not unital: phi(1) = 2 E00.
  const QMap peaked = QMap::from_choi(BipartiteOperator(
      [] {
        CMatrix c(4, 4);
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j) {
            const CMatrix img = CMatrix::unit(2, 0, 0) * CMatrix::unit(2, i, j).trace();
            for (std::size_t r = 0; r < 2; ++r)
              for (std::size_t s = 0; s < 2; ++s) c(i * 2 + r, j * 2 + s) = img(r, s);
          }
        return c;
      }(),
      2, 2));
  CHECK(peaked.trace_preserving().holds);
  CHECK_FALSE(peaked.unitality().holds);
  CMatrix two_e00 = CMatrix::unit(2, 0, 0);
  two_e00 *= cplx(2.0, 0.0);
  CHECK(max_abs_diff(partial_trace(peaked.choi(), 1), two_e00) < 1e-14);

  // Unital positive maps have Tr C = n.
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const QMap uni = random_unital_cp(seed, 3, 2);
    CHECK(uni.unitality(1e-9).holds);
    CHECK(std::abs(uni.choi().mat.trace().real() - 3.0) < 1e-8);
  }
}

TEST_CASE("CP maps pair nonnegatively on the product cone") {
  Rng rng(59);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const QMap chan = random_cp_channel(seed, 2, 2, 2);
    for (int trial = 0; trial < 40; ++trial) {
      const CMatrix ga = rng.ginibre(2, 2), gb = rng.ginibre(2, 2);
      const auto u = TensorElement::elementary(ga * ga.adjoint(), gb * gb.adjoint());
      const cplx val = pairing(chan, u);
      CHECK(val.real() >= -1e-8);
      CHECK(std::abs(val.imag()) < 1e-9);
    }
  }

  // A block-positivity violation surfaces as a negative product-cone pairing:
  // C = diag(1,1,1,-1) evaluated at conjugated rank-one factors.
  CMatrix c = CMatrix::diag({1.0, 1.0, 1.0, -1.0});
  const QMap bad = QMap::from_choi(BipartiteOperator(c, 2, 2));
  const CMatrix e1 = CMatrix::column({0.0, 1.0});
  const auto witness =
      TensorElement::elementary(outer(e1, e1).conjugate(), outer(e1, e1).conjugate());
  CHECK(pairing(bad, witness).real() == doctest::Approx(-1.0).epsilon(1e-13));
}
