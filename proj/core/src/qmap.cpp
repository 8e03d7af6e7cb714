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

#include "posmap/qmap.hpp"

#include <cmath>
#include <utility>

#include "posmap/linalg.hpp"
#include "posmap/rng.hpp"

namespace posmap {

TensorElement::TensorElement(std::vector<std::pair<CMatrix, CMatrix>> t)
    : terms(std::move(t)) {
  if (terms.empty()) throw InvalidArgument("TensorElement: no terms");
  const std::size_t nl = terms.front().first.rows();
  const std::size_t nr = terms.front().second.rows();
  for (const auto& [a, b] : terms) {
    if (!a.is_square() || !b.is_square() || a.rows() != nl || b.rows() != nr) {
      throw DimensionError("TensorElement: inconsistent term dimensions");
    }
  }
}

TensorElement TensorElement::elementary(CMatrix a, CMatrix b) {
  std::vector<std::pair<CMatrix, CMatrix>> t;
  t.emplace_back(std::move(a), std::move(b));
  return TensorElement(std::move(t));
}

BipartiteOperator TensorElement::flatten() const {
  const std::size_t nl = dim_left(), nr = dim_right();
  CMatrix flat(nl * nr, nl * nr);
  for (const auto& [a, b] : terms) flat += kron(a, b);
  return BipartiteOperator(std::move(flat), nl, nr);
}

QMap::QMap(std::size_t din, std::size_t dout, BipartiteOperator choi,
           std::optional<std::vector<CMatrix>> kraus)
    : din_(din), dout_(dout), choi_(std::move(choi)), kraus_(std::move(kraus)) {}

QMap QMap::from_choi(BipartiteOperator choi) {
  const std::size_t din = choi.d1, dout = choi.d2;
  return QMap(din, dout, std::move(choi), std::nullopt);
}

BipartiteOperator choi_from_kraus(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) throw InvalidArgument("choi_from_kraus: empty Kraus list");
  const std::size_t dout = kraus.front().rows(), din = kraus.front().cols();
  CMatrix choi(din * dout, din * dout);
  for (const auto& k : kraus) {
    if (k.rows() != dout || k.cols() != din) {
      throw DimensionError("choi_from_kraus: inconsistent Kraus shapes");
    }
    // C += w w* with w[(i*dout)+r] = K[r,i]: the row-major flattening of K^T.
    CMatrix w(din * dout, 1);
    for (std::size_t i = 0; i < din; ++i)
      for (std::size_t r = 0; r < dout; ++r) w[i * dout + r] = k(r, i);
    choi += outer(w, w);
  }
  return BipartiteOperator(std::move(choi), din, dout);
}

QMap QMap::from_kraus(std::vector<CMatrix> kraus) {
  BipartiteOperator choi = choi_from_kraus(kraus);
  const std::size_t din = choi.d1, dout = choi.d2;
  return QMap(din, dout, std::move(choi), std::move(kraus));
}

QMap QMap::from_superop(const CMatrix& s, std::size_t din, std::size_t dout) {
  if (s.rows() != dout * dout || s.cols() != din * din) {
    throw DimensionError("from_superop: expected (dout^2) x (din^2) matrix");
  }
  // S[(r*dout+c),(i*din+j)] = phi(E_ij)[r,c]  ->  C[(i*dout+r),(j*dout+c)].
  CMatrix choi(din * dout, din * dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t j = 0; j < din; ++j)
      for (std::size_t r = 0; r < dout; ++r)
        for (std::size_t c = 0; c < dout; ++c)
          choi(i * dout + r, j * dout + c) = s(r * dout + c, i * din + j);
  return QMap(din, dout, BipartiteOperator(std::move(choi), din, dout),
              std::nullopt);
}

QMap QMap::identity(std::size_t n) {
  return from_choi(unnormalized_max_entangled(n));
}

QMap QMap::transpose_map(std::size_t n) { return from_choi(swap_operator(n)); }

QMap QMap::depolarizing(std::size_t n) {
  CMatrix choi = CMatrix::identity(n * n);
  choi *= cplx(1.0 / static_cast<double>(n), 0.0);
  return from_choi(BipartiteOperator(std::move(choi), n, n));
}

CMatrix QMap::superop() const {
  CMatrix s(dout_ * dout_, din_ * din_);
  for (std::size_t i = 0; i < din_; ++i)
    for (std::size_t j = 0; j < din_; ++j)
      for (std::size_t r = 0; r < dout_; ++r)
        for (std::size_t c = 0; c < dout_; ++c)
          s(r * dout_ + c, i * din_ + j) = choi_.mat(i * dout_ + r, j * dout_ + c);
  return s;
}

CMatrix QMap::apply(const CMatrix& a) const {
  if (!a.is_square() || a.rows() != din_) {
    throw DimensionError("QMap::apply: argument must be din x din");
  }
  if (kraus_) {
    CMatrix out(dout_, dout_);
    for (const auto& k : *kraus_) out += k * a * k.adjoint();
    return out;
  }
  // phi(a)[r,c] = sum_ij a[i,j] * C[(i*dout+r),(j*dout+c)].
  CMatrix out(dout_, dout_);
  for (std::size_t i = 0; i < din_; ++i)
    for (std::size_t j = 0; j < din_; ++j) {
      const cplx aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t r = 0; r < dout_; ++r)
        for (std::size_t c = 0; c < dout_; ++c)
          out(r, c) += aij * choi_.mat(i * dout_ + r, j * dout_ + c);
    }
  return out;
}

QMap QMap::adjoint() const {
  // C_adj[(r*din+i),(c*din+j)] = C[(j*dout+c),(i*dout+r)].
  const std::size_t n = din_, m = dout_;
  CMatrix adj(n * m, n * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          adj(r * n + i, c * n + j) = choi_.mat(j * m + c, i * m + r);
  return from_choi(BipartiteOperator(std::move(adj), m, n));
}

QMap QMap::compose_transpose() const {
  return from_choi(partial_transpose(choi_, 1));
}

QMap::StructureReport QMap::unitality(double tol) const {
  const CMatrix img = partial_trace(choi_, 1);  // = phi(1)
  const double res = max_abs_diff(img, CMatrix::identity(dout_));
  return {res <= tol, res};
}

QMap::StructureReport QMap::trace_preserving(double tol) const {
  const CMatrix tr = partial_trace(choi_, 2);  // [i,j] = Tr phi(E_ij)
  const double res = max_abs_diff(tr, CMatrix::identity(din_));
  return {res <= tol, res};
}

std::vector<CMatrix> kraus_from_choi(const BipartiteOperator& choi, double tol) {
  const auto eig = herm_eig(choi.mat);
  if (eig.eigenvalues.back() < -tol) {
    throw NotCP("kraus_from_choi: Choi matrix is not PSD within tol");
  }
  const std::size_t din = choi.d1, dout = choi.d2;
  std::vector<CMatrix> kraus;
  for (std::size_t s = 0; s < eig.eigenvalues.size(); ++s) {
    const double lam = eig.eigenvalues[s];
    if (lam <= tol) continue;
    const double w = std::sqrt(lam);
    CMatrix k(dout, din);
    for (std::size_t i = 0; i < din; ++i)
      for (std::size_t r = 0; r < dout; ++r)
        k(r, i) = w * eig.eigenvectors(i * dout + r, s);
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) kraus.push_back(CMatrix(dout, din));  // zero map
  return kraus;
}

cplx pairing(const QMap& map, const TensorElement& u) {
  if (u.dim_left() != map.din()) {
    throw DimensionError("pairing: element does not match map input dimension");
  }
  if (u.dim_right() != map.dout()) {
    throw DimensionError("pairing: element does not match map output dimension");
  }
  cplx s = 0.0;
  for (const auto& [a, b] : u.terms) {
    s += (map.apply(a) * b.transpose()).trace();
  }
  return s;
}

cplx trace_functional(const TensorElement& u) {
  if (u.dim_left() != u.dim_right()) {
    throw DimensionError("trace_functional: factors must share one dimension");
  }
  cplx s = 0.0;
  for (const auto& [x, y] : u.terms) s += (x * y).trace();
  return s;
}

QMap random_cp_channel(std::uint64_t seed, std::size_t din, std::size_t dout,
                       std::size_t kraus_count) {
  Rng rng(seed);
  std::vector<CMatrix> raw;
  raw.reserve(kraus_count);
  CMatrix total(din, din);
  for (std::size_t s = 0; s < kraus_count; ++s) {
    raw.push_back(rng.ginibre(dout, din));
    total += raw.back().adjoint() * raw.back();
  }
  // Normalize so that sum_k K_k* K_k = I (trace preserving).
  const CMatrix scale = pseudo_inv_sqrt(total, 1e-12);
  for (auto& k : raw) k = k * scale;
  return QMap::from_kraus(std::move(raw));
}

QMap random_unital_cp(std::uint64_t seed, std::size_t n, std::size_t kraus_count) {
  Rng rng(seed);
  std::vector<CMatrix> raw;
  raw.reserve(kraus_count);
  CMatrix total(n, n);
  for (std::size_t s = 0; s < kraus_count; ++s) {
    raw.push_back(rng.ginibre(n, n));
    total += raw.back() * raw.back().adjoint();
  }
  // Normalize so that sum_k K_k K_k* = I (unital).
  const CMatrix scale = pseudo_inv_sqrt(total, 1e-12);
  for (auto& k : raw) k = scale * k;
  return QMap::from_kraus(std::move(raw));
}

QMap random_hermitian_map(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  CMatrix h = random_hermitian(rng, n * n);
  return QMap::from_choi(BipartiteOperator(std::move(h), n, n));
}

}  // namespace posmap
