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

#ifndef POSMAP_QMAP_HPP
#define POSMAP_QMAP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "posmap/bipartite.hpp"
#include "posmap/cmatrix.hpp"

namespace posmap {

// Finite sum of elementary tensors sum_i a_i (x) b_i with square factors of a
// common dimension per side.
struct TensorElement {
  std::vector<std::pair<CMatrix, CMatrix>> terms;

  explicit TensorElement(std::vector<std::pair<CMatrix, CMatrix>> t);
  static TensorElement elementary(CMatrix a, CMatrix b);

  std::size_t dim_left() const { return terms.front().first.rows(); }
  std::size_t dim_right() const { return terms.front().second.rows(); }
  // Sum of Kronecker products, as an operator on the product space.
  BipartiteOperator flatten() const;
};

// Linear map phi: M_din -> M_dout. The Choi matrix
//   C_phi = sum_ij E_ij (x) phi(E_ij),   d1 = din, d2 = dout,
// is the canonical internal representation; Kraus and superoperator forms
// are converted to it eagerly on construction, and a Kraus list is retained
// when one was supplied. Immutable after construction.
class QMap {
 public:
  static QMap from_choi(BipartiteOperator choi);
  static QMap from_kraus(std::vector<CMatrix> kraus);
  // s is (dout^2) x (din^2), acting on row-major vectorizations.
  static QMap from_superop(const CMatrix& s, std::size_t din, std::size_t dout);

  static QMap identity(std::size_t n);
  static QMap transpose_map(std::size_t n);
  // a -> Tr(a) * I/n on M_n (the fully depolarizing channel).
  static QMap depolarizing(std::size_t n);

  std::size_t din() const { return din_; }
  std::size_t dout() const { return dout_; }
  const BipartiteOperator& choi() const { return choi_; }
  const std::optional<std::vector<CMatrix>>& kraus() const { return kraus_; }
  CMatrix superop() const;

  // phi(a); uses the Kraus list when present, the Choi contraction otherwise.
  CMatrix apply(const CMatrix& a) const;

  // phi-dagger for the bilinear pairing Tr(phi(a) b) = Tr(a phid(b)).
  QMap adjoint() const;
  // phi composed with the (standard-basis) transposition on the input side;
  // its Choi matrix is the partial transpose of C_phi over the first factor.
  QMap compose_transpose() const;

  struct StructureReport {
    bool holds;
    double residual;  // max-entry distance from the identity
  };
  StructureReport unitality(double tol = 1e-9) const;
  StructureReport trace_preserving(double tol = 1e-9) const;

 private:
  QMap(std::size_t din, std::size_t dout, BipartiteOperator choi,
       std::optional<std::vector<CMatrix>> kraus);

  std::size_t din_, dout_;
  BipartiteOperator choi_;
  std::optional<std::vector<CMatrix>> kraus_;
};

// Eigen-decompose a PSD Choi matrix into Kraus operators; the rebuilt Choi
// matches within 1e-9. Throws NotCP when the Choi matrix fails the PSD gate.
std::vector<CMatrix> kraus_from_choi(const BipartiteOperator& choi, double tol);

// The Choi matrix assembled from a Kraus list (free-standing form of the
// conversion used by QMap).
BipartiteOperator choi_from_kraus(const std::vector<CMatrix>& kraus);

// Functional pairing (phi~)(sum_i a_i (x) b_i) = sum_i Tr(phi(a_i) b_i^t).
// Representation independent: equals Tr(C_phi * sum_i a_i^t (x) b_i^t).
cplx pairing(const QMap& map, const TensorElement& u);

// sum_i Tr(x_i y_i), the trace of u; independent of the representation of u.
cplx trace_functional(const TensorElement& u);

// Random map constructors (deterministic in the seed).
QMap random_cp_channel(std::uint64_t seed, std::size_t din, std::size_t dout,
                       std::size_t kraus_count);
// Unital CP map: Kraus normalized so that sum_k K_k K_k* = I.
QMap random_unital_cp(std::uint64_t seed, std::size_t n, std::size_t kraus_count);
// Random map with a Hermitian (generally non-PSD) Choi matrix.
QMap random_hermitian_map(std::uint64_t seed, std::size_t n);

}  // namespace posmap

#endif  // POSMAP_QMAP_HPP
