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

#include "qcapax/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcapax/errors.hpp"

namespace qcapax {

SmallMatrix::SmallMatrix(int n) : n_(n) {
  if (n < 0 || n > kMaxDim) {
    throw InvalidInput("SmallMatrix dimension must lie in [0, 4], got " + std::to_string(n));
  }
}

SmallMatrix SmallMatrix::identity(int n) {
  SmallMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SmallMatrix SmallMatrix::of2(cplx a00, cplx a01, cplx a10, cplx a11) {
  SmallMatrix m(2);
  m(0, 0) = a00;
  m(0, 1) = a01;
  m(1, 0) = a10;
  m(1, 1) = a11;
  return m;
}

SmallMatrix SmallMatrix::adjoint() const {
  SmallMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

cplx SmallMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SmallMatrix::frobenius_norm() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += std::norm((*this)(i, j));
  return std::sqrt(s);
}

double SmallMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

SmallMatrix& SmallMatrix::operator+=(const SmallMatrix& rhs) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) += rhs(i, j);
  return *this;
}

SmallMatrix& SmallMatrix::operator-=(const SmallMatrix& rhs) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) -= rhs(i, j);
  return *this;
}

SmallMatrix& SmallMatrix::operator*=(cplx s) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) *= s;
  return *this;
}

SmallMatrix operator+(SmallMatrix lhs, const SmallMatrix& rhs) { return lhs += rhs; }
SmallMatrix operator-(SmallMatrix lhs, const SmallMatrix& rhs) { return lhs -= rhs; }
SmallMatrix operator*(cplx s, SmallMatrix m) { return m *= s; }
SmallMatrix operator*(double s, SmallMatrix m) { return m *= cplx(s, 0.0); }

SmallMatrix operator*(const SmallMatrix& lhs, const SmallMatrix& rhs) {
  const int n = lhs.dim();
  SmallMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cplx a = lhs(i, k);
      if (a == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) r(i, j) += a * rhs(k, j);
    }
  return r;
}

SmallMatrix kron(const SmallMatrix& a, const SmallMatrix& b) {
  const int na = a.dim();
  const int nb = b.dim();
  SmallMatrix r(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return r;
}

namespace {

constexpr double kOffDiagonalTol = 1e-13;
constexpr int kMaxSweeps = 64;

double off_diagonal_norm(const SmallMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Zeroes a(p, q) with the unitary U = D(phase) * R(c, s) restricted to the
// (p, q) plane: D removes the phase of a(p, q), R is the classic real Jacobi
// rotation. Applies A <- U^H A U and, optionally, V <- V U.
void rotate(SmallMatrix& a, SmallMatrix* v, int p, int q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const cplx phase = apq / mag;
  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const cplx upp = c;
  const cplx upq = s;
  const cplx uqp = -s * std::conj(phase);
  const cplx uqq = c * std::conj(phase);

  const int n = a.dim();
  for (int k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  for (int k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  if (v != nullptr) {
    for (int k = 0; k < n; ++k) {
      const cplx vkp = (*v)(k, p);
      const cplx vkq = (*v)(k, q);
      (*v)(k, p) = vkp * upp + vkq * uqp;
      (*v)(k, q) = vkp * upq + vkq * uqq;
    }
  }
}

SmallMatrix checked_copy(const SmallMatrix& m, double hermitian_tol) {
  if (m.dim() < 1) throw InvalidInput("hermitian_eig: empty matrix");
  const double scale = std::max(1.0, m.frobenius_norm());
  if (!(m.hermiticity_defect() <= hermitian_tol * scale)) {
    throw InvalidInput("hermitian_eig: matrix is not Hermitian (defect " +
                       std::to_string(m.hermiticity_defect()) + ")");
  }
  // Symmetrize before the rotations.
  SmallMatrix a(m.dim());
  for (int i = 0; i < m.dim(); ++i) {
    a(i, i) = m(i, i).real();
    for (int j = i + 1; j < m.dim(); ++j) {
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  return a;
}

int jacobi(SmallMatrix& a, SmallMatrix* v) {
  const double scale = std::max(1.0, a.frobenius_norm());
  const int n = a.dim();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < kOffDiagonalTol * scale) return sweep;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }
  if (off_diagonal_norm(a) < kOffDiagonalTol * scale) return kMaxSweeps;
  throw NumericalFailure("hermitian_eig: Jacobi sweeps did not converge");
}

}  // namespace

EigenDecomposition hermitian_eig(const SmallMatrix& m, double hermitian_tol) {
  SmallMatrix a = checked_copy(m, hermitian_tol);
  const int n = a.dim();
  SmallMatrix v = SmallMatrix::identity(n);
  const int sweeps = jacobi(a, &v);

  std::array<int, kMaxDim> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  std::sort(order.begin(), order.begin() + n,
            [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.n = n;
  out.sweeps = sweeps;
  out.vectors = SmallMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.values[static_cast<std::size_t>(k)] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
    for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[static_cast<std::size_t>(k)]);
  }
  return out;
}

std::array<double, kMaxDim> hermitian_eigenvalues(const SmallMatrix& m, double hermitian_tol) {
  SmallMatrix a = checked_copy(m, hermitian_tol);
  const int n = a.dim();
  jacobi(a, nullptr);
  std::array<double, kMaxDim> values{};
  for (int k = 0; k < n; ++k) values[static_cast<std::size_t>(k)] = a(k, k).real();
  std::sort(values.begin(), values.begin() + n);
  return values;
}

}  // namespace qcapax
