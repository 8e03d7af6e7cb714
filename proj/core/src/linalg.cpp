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

#include "posmap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace posmap {
namespace {

// One two-sided Jacobi rotation zeroing A(p,q). The 2x2 pivot block is first
// phase-rotated to make the off-diagonal entry real, then annihilated with
// the classic symmetric Schur rotation. A <- R* A R, V <- V R.
void jacobi_rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q,
                   bool want_vectors) {
  const cplx apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cplx phase = apq / r;  // a(p,q) = r * phase
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double beta = (aqq - app) / (2.0 * r);
  double t;
  if (beta >= 0.0) {
    t = 1.0 / (beta + std::sqrt(1.0 + beta * beta));
  } else {
    t = -1.0 / (-beta + std::sqrt(1.0 + beta * beta));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // Column rotation R has R(p,p)=c, R(p,q)=s, R(q,p)=-s*conj(phase),
  // R(q,q)=c*conj(phase).
  const cplx rqp = -s * std::conj(phase);
  const cplx rqq = c * std::conj(phase);
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp + rqp * akq;
    a(k, q) = s * akp + rqq * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk + std::conj(rqp) * aqk;
    a(q, k) = s * apk + std::conj(rqq) * aqk;
  }
  if (want_vectors) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx vkp = v(k, p), vkq = v(k, q);
      v(k, p) = c * vkp + rqp * vkq;
      v(k, q) = s * vkp + rqq * vkq;
    }
  }
  // The pivot is zero by construction; pin it to kill rounding residue.
  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

double off_dilevel(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Raw Jacobi output: unsorted eigenvalues on the diagonal, accumulated
// unitary in v. Input must already have passed the Hermiticity gate. The
// value trajectory is identical with or without vector accumulation.
void jacobi_diagonalize(CMatrix& a, CMatrix& v, bool want_vectors = true) {
  const std::size_t n = a.rows();
  if (want_vectors) v = CMatrix::identity(n);
  if (n < 2) return;

  // Work on the exact Hermitian part so rounding asymmetry cannot drift.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = m;
      a(j, i) = std::conj(m);
    }
    a(i, i) = a(i, i).real();
  }

  const double scale = std::max(a.max_abs(), 1e-300);
  const double stop = 1e-15 * scale * static_cast<double>(n);
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_dilevel(a) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > 1e-300) jacobi_rotate(a, v, p, q, want_vectors);
  }
}

void check_hermitian(const CMatrix& m, const char* where) {
  if (!m.is_square()) throw DimensionError(std::string(where) + ": non-square input");
  if (m.hermiticity_defect() > kHermTol) {
    throw NotHermitian(std::string(where) + ": input exceeds the 1e-10 Hermiticity gate");
  }
}

}  // namespace

CMatrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  CMatrix out(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vi = eigenvectors(i, s) * eigenvalues[s];
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += vi * std::conj(eigenvectors(j, s));
    }
  }
  return out;
}

SpectralDecomposition herm_eig(const CMatrix& m) {
  check_hermitian(m, "herm_eig");
  CMatrix a = m;
  CMatrix v;
  jacobi_diagonalize(a, v);

  const std::size_t n = m.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    out.eigenvalues[s] = a(order[s], order[s]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, s) = v(i, order[s]);
  }
  return out;
}

double psd_min_eig(const CMatrix& m) {
  const auto eig = herm_eig(m);
  return eig.eigenvalues.back();
}

std::pair<double, CMatrix> lowest_eigenpair(const CMatrix& m) {
  check_hermitian(m, "lowest_eigenpair");
  CMatrix a = m;
  CMatrix v;
  jacobi_diagonalize(a, v);

  const std::size_t n = m.rows();
  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    if (a(s, s).real() < a(best, best).real()) best = s;
  }
  CMatrix vec(n, 1);
  for (std::size_t i = 0; i < n; ++i) vec[i] = v(i, best);
  return {a(best, best).real(), vec};
}

CMatrix pseudo_sqrt(const CMatrix& m, double rank_tol) {
  const auto eig = herm_eig(m);
  if (eig.eigenvalues.back() < -rank_tol) {
    throw NotPSD("pseudo_sqrt: smallest eigenvalue below -rank_tol");
  }
  SpectralDecomposition root = eig;
  for (auto& lam : root.eigenvalues) lam = lam > rank_tol ? std::sqrt(lam) : 0.0;
  return root.reconstruct();
}

CMatrix pseudo_inv_sqrt(const CMatrix& m, double rank_tol) {
  const auto eig = herm_eig(m);
  if (eig.eigenvalues.back() < -rank_tol) {
    throw NotPSD("pseudo_inv_sqrt: smallest eigenvalue below -rank_tol");
  }
  SpectralDecomposition inv = eig;
  for (auto& lam : inv.eigenvalues) lam = lam > rank_tol ? 1.0 / std::sqrt(lam) : 0.0;
  return inv.reconstruct();
}

CMatrix support_projector(const CMatrix& m, double tol) {
  SpectralDecomposition proj = herm_eig(m);
  for (auto& lam : proj.eigenvalues) lam = lam > tol ? 1.0 : 0.0;
  return proj.reconstruct();
}

std::size_t support_rank(const CMatrix& m, double tol) {
  const auto eig = herm_eig(m);
  std::size_t r = 0;
  for (double lam : eig.eigenvalues) r += lam > tol ? 1 : 0;
  return r;
}

CMatrix psd_clip(const CMatrix& m) {
  SpectralDecomposition clip = herm_eig(m);
  for (auto& lam : clip.eigenvalues) lam = std::max(lam, 0.0);
  return clip.reconstruct();
}

Svd svd(const CMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const CMatrix gram = m.adjoint() * m;  // cols x cols, PSD
  const auto eig = herm_eig(gram);

  Svd out;
  out.v = eig.eigenvectors;
  out.sigma.resize(std::min(rows, cols));
  std::vector<double> all_sigma(cols);
  // Gram eigenvalues at the rounding floor are indistinguishable from zero;
  // zero them before the square root amplifies the noise.
  const double lam_max = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
  const double floor = 64.0 * 2.220446049250313e-16 * lam_max * static_cast<double>(cols);
  for (std::size_t s = 0; s < cols; ++s) {
    const double lam = eig.eigenvalues[s];
    all_sigma[s] = lam > floor ? std::sqrt(lam) : 0.0;
  }
  for (std::size_t s = 0; s < out.sigma.size(); ++s) out.sigma[s] = all_sigma[s];

  // Left vectors on the support, then a deterministic Gram-Schmidt completion
  // from standard basis vectors.
  const double cutoff = all_sigma.empty() ? 0.0 : 1e-14 * std::max(all_sigma[0], 1.0);
  out.u = CMatrix(rows, rows);
  std::size_t filled = 0;
  for (std::size_t s = 0; s < cols && filled < rows; ++s) {
    if (all_sigma[s] <= cutoff) break;
    for (std::size_t i = 0; i < rows; ++i) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j < cols; ++j) acc += m(i, j) * out.v(j, s);
      out.u(i, filled) = acc / all_sigma[s];
    }
    ++filled;
  }
  for (std::size_t e = 0; e < rows && filled < rows; ++e) {
    CMatrix cand(rows, 1);
    cand[e] = 1.0;
    for (std::size_t s = 0; s < filled; ++s) {
      cplx overlap = 0.0;
      for (std::size_t i = 0; i < rows; ++i)
        overlap += std::conj(out.u(i, s)) * cand[i];
      for (std::size_t i = 0; i < rows; ++i) cand[i] -= overlap * out.u(i, s);
    }
    const double nn = norm2(cand);
    if (nn < 1e-8) continue;
    for (std::size_t i = 0; i < rows; ++i) out.u(i, filled) = cand[i] / nn;
    ++filled;
  }
  return out;
}

namespace {

// Singular values only: the Jacobi value trajectory does not depend on
// eigenvector accumulation, so this matches svd().sigma exactly.
std::vector<double> singular_values(const CMatrix& m) {
  CMatrix gram = m.adjoint() * m;
  const std::size_t n = gram.rows();
  CMatrix scratch_v;
  jacobi_diagonalize(gram, scratch_v, /*want_vectors=*/false);
  std::vector<double> lams(n);
  for (std::size_t i = 0; i < n; ++i) lams[i] = gram(i, i).real();
  std::sort(lams.begin(), lams.end(), std::greater<>());

  const double lam_max = lams.empty() ? 0.0 : std::max(lams.front(), 0.0);
  const double floor = 64.0 * 2.220446049250313e-16 * lam_max * static_cast<double>(n);
  std::vector<double> sigma(std::min(m.rows(), m.cols()));
  for (std::size_t s = 0; s < sigma.size(); ++s)
    sigma[s] = lams[s] > floor ? std::sqrt(lams[s]) : 0.0;
  return sigma;
}

}  // namespace

double operator_norm(const CMatrix& m) {
  const auto sigma = singular_values(m);
  return sigma.empty() ? 0.0 : sigma.front();
}

double trace_norm(const CMatrix& m) {
  double s = 0.0;
  for (double sv : singular_values(m)) s += sv;
  return s;
}

CMatrix trace_norm_maximizer(const CMatrix& m) {
  if (!m.is_square()) {
    throw DimensionError("trace_norm_maximizer: square input required");
  }
  // m = U S V*, so Tr(V U* m) = Tr(S); the choice on the kernel is free.
  const auto dec = svd(m);
  return dec.v * dec.u.adjoint();
}

ConjugationSpec::ConjugationSpec(CMatrix b) : basis(std::move(b)) {
  if (!basis.is_square()) {
    throw DimensionError("ConjugationSpec: basis matrix must be square");
  }
  const CMatrix gram = basis.adjoint() * basis;
  if (max_abs_diff(gram, CMatrix::identity(basis.rows())) > 1e-10) {
    throw InvalidArgument("ConjugationSpec: columns are not orthonormal");
  }
}

ConjugationSpec ConjugationSpec::standard(std::size_t n) {
  return ConjugationSpec(CMatrix::identity(n));
}

CMatrix conjugate_in_basis(const CMatrix& v, const ConjugationSpec& j) {
  if (!v.is_column() || v.rows() != j.basis.rows()) {
    throw DimensionError("conjugate_in_basis: vector does not match basis dimension");
  }
  const std::size_t n = v.rows();
  CMatrix out(n, 1);
  for (std::size_t s = 0; s < n; ++s) {
    cplx coeff = 0.0;  // <e_s, v>
    for (std::size_t i = 0; i < n; ++i) coeff += std::conj(j.basis(i, s)) * v[i];
    const cplx cc = std::conj(coeff);
    for (std::size_t i = 0; i < n; ++i) out[i] += cc * j.basis(i, s);
  }
  return out;
}

}  // namespace posmap
