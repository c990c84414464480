// Copyright 2026 The qcapax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCAPAX_LINALG_HPP
#define QCAPAX_LINALG_HPP

#include <array>
#include <complex>
#include <cstddef>

namespace qcapax {

using cplx = std::complex<double>;

/// Largest matrix dimension the library ever needs (two-qubit Choi matrix).
inline constexpr int kMaxDim = 4;

/// Dense complex square matrix of runtime dimension n <= 4, stored inline.
///
/// Every matrix in this library is either a qubit operator (2x2), a Choi
/// matrix (4x4) or an environment state of at most four Kraus outputs, so a
/// fixed 16-entry buffer avoids heap traffic in the oracle's inner loops.
class SmallMatrix {
 public:
  SmallMatrix() = default;
  explicit SmallMatrix(int n);

  static SmallMatrix zero(int n) { return SmallMatrix(n); }
  static SmallMatrix identity(int n);
  /// Row-major 2x2 construction.
  static SmallMatrix of2(cplx a00, cplx a01, cplx a10, cplx a11);

  int dim() const { return n_; }

  cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * kMaxDim + j)]; }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i * kMaxDim + j)];
  }

  SmallMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  /// Largest |A_ij - conj(A_ji)|.
  double hermiticity_defect() const;

  SmallMatrix& operator+=(const SmallMatrix& rhs);
  SmallMatrix& operator-=(const SmallMatrix& rhs);
  SmallMatrix& operator*=(cplx s);

 private:
  int n_ = 0;
  std::array<cplx, kMaxDim * kMaxDim> a_{};
};

SmallMatrix operator+(SmallMatrix lhs, const SmallMatrix& rhs);
SmallMatrix operator-(SmallMatrix lhs, const SmallMatrix& rhs);
SmallMatrix operator*(const SmallMatrix& lhs, const SmallMatrix& rhs);
SmallMatrix operator*(cplx s, SmallMatrix m);
SmallMatrix operator*(double s, SmallMatrix m);

/// Kronecker product; the result must fit in kMaxDim.
SmallMatrix kron(const SmallMatrix& a, const SmallMatrix& b);

struct EigenDecomposition {
  int n = 0;
  std::array<double, kMaxDim> values{};  // ascending
  SmallMatrix vectors;                   // column k belongs to values[k]
  int sweeps = 0;
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices of dimension <= 4.
///
/// Iterates full sweeps over all (p, q) pivots until the off-diagonal
/// Frobenius norm drops below 1e-13 (relative to max(1, ||A||_F)).
/// Throws InvalidInput if the input deviates from Hermitian by more than
/// `hermitian_tol`.
EigenDecomposition hermitian_eig(const SmallMatrix& m, double hermitian_tol = 1e-10);

/// Only the ascending eigenvalues; skips eigenvector accumulation.
std::array<double, kMaxDim> hermitian_eigenvalues(const SmallMatrix& m,
                                                  double hermitian_tol = 1e-10);

}  // namespace qcapax

#endif  // QCAPAX_LINALG_HPP
