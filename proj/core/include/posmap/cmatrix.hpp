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

#ifndef POSMAP_CMATRIX_HPP
#define POSMAP_CMATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "posmap/errors.hpp"

namespace posmap {

using cplx = std::complex<double>;

// Dense complex matrix, row-major storage. The universal carrier for
// operators, vectors (n x 1) and superoperator blocks. All entries are
// required to be finite; construction from external data enforces this.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);

  static CMatrix identity(std::size_t n);
  // Matrix unit E_ij in M_n (1 at row i, col j).
  static CMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  static CMatrix column(std::vector<cplx> entries);
  static CMatrix diag(const std::vector<double>& values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_column() const { return cols_ == 1; }
  std::size_t size() const { return data_.size(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  cplx& operator[](std::size_t flat) { return data_[flat]; }
  const cplx& operator[](std::size_t flat) const { return data_[flat]; }
  const std::vector<cplx>& data() const { return data_; }

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(cplx scalar);

  CMatrix transpose() const;
  CMatrix conjugate() const;
  CMatrix adjoint() const;
  cplx trace() const;

  double max_abs() const;
  double frobenius_norm() const;
  // Max-entry deviation of M - M*.
  double hermiticity_defect() const;

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator*(cplx scalar, CMatrix m);
CMatrix operator*(CMatrix m, cplx scalar);

// (A (x) B)[(i*rB+k),(j*cB+l)] = A[i,j] * B[k,l]; first factor is the slow index.
CMatrix kron(const CMatrix& a, const CMatrix& b);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

// Column-vector helpers.
cplx dot(const CMatrix& x, const CMatrix& y);  // <x, y>, conjugate-linear in x
double norm2(const CMatrix& x);
CMatrix normalized(const CMatrix& x);
// x y* as a rows(x) x rows(y) matrix.
CMatrix outer(const CMatrix& x, const CMatrix& y);

}  // namespace posmap

#endif  // POSMAP_CMATRIX_HPP
