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

#ifndef POSMAP_LINALG_HPP
#define POSMAP_LINALG_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "posmap/cmatrix.hpp"

namespace posmap {

// Max-entry Hermiticity gate applied by every eigen routine. Fixed; callers
// may not override, so all modules share the same notion of "Hermitian".
inline constexpr double kHermTol = 1e-10;

// Eigenvalues sorted descending; eigenvectors the matching orthonormal
// columns. reconstruct() = sum_i lambda_i v_i v_i*.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  CMatrix eigenvectors;

  CMatrix reconstruct() const;
};

// Cyclic complex Jacobi with a fixed sweep order; deterministic for a given
// input. Throws NotHermitian if the max-entry defect of M - M* exceeds 1e-10.
SpectralDecomposition herm_eig(const CMatrix& m);

// Smallest eigenvalue; the caller compares against its own tolerance.
double psd_min_eig(const CMatrix& m);

// Eigenpair of the smallest eigenvalue. Ties resolved toward the smallest
// index in the raw Jacobi output, so the result is reproducible.
std::pair<double, CMatrix> lowest_eigenpair(const CMatrix& m);

// PSD S with S*S = M on the support; eigenvalues below rank_tol are treated
// as zero. Throws NotPSD if the smallest eigenvalue is below -rank_tol.
CMatrix pseudo_sqrt(const CMatrix& m, double rank_tol);

// Moore-Penrose inverse of pseudo_sqrt(m, rank_tol) on the same support.
CMatrix pseudo_inv_sqrt(const CMatrix& m, double rank_tol);

// Orthogonal projector onto the span of eigenvectors with eigenvalue > tol.
CMatrix support_projector(const CMatrix& m, double tol);

// Returns the number of eigenvalues > tol.
std::size_t support_rank(const CMatrix& m, double tol);

// Clip negative eigenvalues to zero: the Frobenius projection onto the PSD cone.
CMatrix psd_clip(const CMatrix& m);

// Thin SVD m = U diag(sigma) V*. Singular values are square roots of the
// eigenvalues of m* m, sorted descending; U is completed deterministically on
// the cokernel so it is always a full unitary basis of the row space side.
struct Svd {
  CMatrix u;                   // rows(m) x rows(m), unitary
  std::vector<double> sigma;   // min(rows, cols) values, descending
  CMatrix v;                   // cols(m) x cols(m), unitary
};
Svd svd(const CMatrix& m);

double operator_norm(const CMatrix& m);  // largest singular value
double trace_norm(const CMatrix& m);     // sum of singular values

// Unitary W maximizing |Tr(W m)|, i.e. Tr(W m) = trace_norm(m).
CMatrix trace_norm_maximizer(const CMatrix& m);

// Antilinear conjugation J f = sum_i conj(<e_i, f>) e_i in the CONS given by
// the columns of `basis`. The standard basis (identity matrix) gives the
// entrywise complex conjugate.
struct ConjugationSpec {
  CMatrix basis;

  explicit ConjugationSpec(CMatrix b);
  static ConjugationSpec standard(std::size_t n);
};

CMatrix conjugate_in_basis(const CMatrix& v, const ConjugationSpec& j);

}  // namespace posmap

#endif  // POSMAP_LINALG_HPP
