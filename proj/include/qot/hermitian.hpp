// Copyright 2026 The qot authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "qot/complex_matrix.hpp"

namespace qot {

// Square complex matrix kept numerically Hermitian: construction symmetrizes
// the input as (A + A')/2, so entry (i,j) always equals conj(entry (j,i)).
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("hermitian matrix must be square");
    mat_ = ComplexMatrix(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
      mat_(i, i) = 0.5 * (a(i, i) + std::conj(a(i, i)));
      for (int j = i + 1; j < a.cols(); ++j) {
        const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
        mat_(i, j) = v;
        mat_(j, i) = std::conj(v);
      }
    }
  }

  static HermitianMatrix identity(int n) { return HermitianMatrix(ComplexMatrix::identity(n)); }
  static HermitianMatrix zero(int n) { return HermitianMatrix(ComplexMatrix(n, n)); }

  int dim() const { return mat_.rows(); }
  const ComplexMatrix& mat() const { return mat_; }
  const cplx& operator()(int i, int j) const { return mat_(i, j); }

  double trace() const { return mat_.trace().real(); }
  double frobenius_norm() const { return mat_.frobenius_norm(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o) {
    mat_ += o.mat_;
    return *this;
  }
  HermitianMatrix& operator-=(const HermitianMatrix& o) {
    mat_ -= o.mat_;
    return *this;
  }
  HermitianMatrix& operator*=(double s) {
    mat_ *= cplx(s, 0.0);
    return *this;
  }
  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

 private:
  ComplexMatrix mat_;
};

// Real Hilbert-Schmidt inner product Re Tr(a b) of two Hermitian matrices.
inline double inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("inner product dimension mismatch");
  double s = 0.0;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx& x = a(i, j);
      const cplx& y = b(j, i);
      s += x.real() * y.real() - x.imag() * y.imag();
    }
  return s;
}

inline HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(kron(a.mat(), b.mat()));
}

enum class Subsystem { a, b };  // a = slow (left) factor, b = fast (right) factor

// Partial trace over the chosen factor of a (dim_a*dim_b)-dimensional matrix.
inline HermitianMatrix partial_trace(const HermitianMatrix& m, int dim_a, int dim_b,
                                     Subsystem traced_out) {
  if (m.dim() != dim_a * dim_b) throw DimensionError("partial trace factor mismatch");
  if (traced_out == Subsystem::b) {
    ComplexMatrix out(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j) {
        cplx s = 0.0;
        for (int k = 0; k < dim_b; ++k) s += m(i * dim_b + k, j * dim_b + k);
        out(i, j) = s;
      }
    return HermitianMatrix(out);
  }
  ComplexMatrix out(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < dim_a; ++k) s += m(k * dim_b + i, k * dim_b + j);
      out(i, j) = s;
    }
  return HermitianMatrix(out);
}

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unitary, eigenvectors in columns
};

// Cyclic complex Jacobi eigensolver. Deterministic: fixed row-cyclic sweep
// order, no pivot search. Stops when the off-diagonal Frobenius norm falls
// below tol.eigh_offdiag relative to the input norm (floor 1); throws
// NumericalError with the residual if the sweep cap is hit first.
inline EigenDecomposition eigh(const HermitianMatrix& h) {
  const Tolerances& tol = tolerances();
  const int n = h.dim();
  ComplexMatrix a = h.mat();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = a.frobenius_norm();
  const double stop = tol.eigh_offdiag * std::max(1.0, scale);
  const double skip = stop / std::max(1, n);

  auto off_norm = [&]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) s += 2.0 * std::norm(a(p, q));
    return std::sqrt(s);
  };

  double off = off_norm();
  int sweep = 0;
  while (off > stop) {
    if (++sweep > tol.eigh_max_sweeps) {
      std::ostringstream msg;
      msg << "jacobi eigensolver did not converge: off-diagonal residual " << off
          << " after " << tol.eigh_max_sweeps << " sweeps (dim " << n << ")";
      throw NumericalError(msg.str());
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= skip) continue;
        const cplx phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double sg = tau >= 0.0 ? 1.0 : -1.0;
        const double t = -sg / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const double npp = c * c * app + 2.0 * c * s * mag + s * s * aqq;
        const double nqq = s * s * app - 2.0 * c * s * mag + c * c * aqq;
        a(p, p) = npp;
        a(q, q) = nqq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        const cplx se_m = s * std::conj(phase);  // s e^{-i alpha}
        const cplx se_p = s * phase;             // s e^{+i alpha}
        for (int k = 0; k < n; ++k) {
          if (k != p && k != q) {
            const cplx akp = a(k, p);
            const cplx akq = a(k, q);
            const cplx nkp = c * akp + se_m * akq;
            const cplx nkq = -se_p * akp + c * akq;
            a(k, p) = nkp;
            a(p, k) = std::conj(nkp);
            a(k, q) = nkq;
            a(q, k) = std::conj(nkq);
          }
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp + se_m * vkq;
          v(k, q) = -se_p * vkp + c * vkq;
        }
      }
    }
    off = off_norm();
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition d;
  d.eigenvalues.resize(n);
  d.eigenvectors = ComplexMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    d.eigenvalues[j] = a(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) d.eigenvectors(i, j) = v(i, order[j]);
  }
  return d;
}

inline double min_eigenvalue(const HermitianMatrix& h) {
  return eigh(h).eigenvalues.front();
}

inline bool is_psd(const HermitianMatrix& h, double floor = tolerances().psd_check) {
  return min_eigenvalue(h) >= -floor;
}

// V f(lambda) V' for a real function f applied to the spectrum.
inline HermitianMatrix matrix_function(const HermitianMatrix& h,
                                       const std::function<double(double)>& f) {
  const EigenDecomposition d = eigh(h);
  const int n = h.dim();
  ComplexMatrix scaled = d.eigenvectors;
  for (int j = 0; j < n; ++j) {
    const double fj = f(d.eigenvalues[j]);
    for (int i = 0; i < n; ++i) scaled(i, j) *= fj;
  }
  return HermitianMatrix(scaled * d.eigenvectors.adjoint());
}

// Pseudo-inverse square root of a PSD matrix: eigenvalues above the cutoff
// map to 1/sqrt(lambda), the rest to 0. Eigenvalues below -psd_check error.
inline HermitianMatrix psd_inverse_sqrt(const HermitianMatrix& h,
                                        double cutoff = tolerances().pinv_cutoff) {
  const EigenDecomposition d = eigh(h);
  if (d.eigenvalues.front() < -tolerances().psd_check) {
    std::ostringstream msg;
    msg << "psd_inverse_sqrt: matrix has negative eigenvalue " << d.eigenvalues.front();
    throw NumericalError(msg.str());
  }
  const int n = h.dim();
  ComplexMatrix scaled = d.eigenvectors;
  for (int j = 0; j < n; ++j) {
    const double lj = d.eigenvalues[j];
    const double fj = lj > cutoff ? 1.0 / std::sqrt(lj) : 0.0;
    for (int i = 0; i < n; ++i) scaled(i, j) *= fj;
  }
  return HermitianMatrix(scaled * d.eigenvectors.adjoint());
}

// Lower-triangular Cholesky factor (A = L L'); nullopt if A is not positive
// definite. Deterministic.
inline std::optional<ComplexMatrix> cholesky(const HermitianMatrix& h) {
  const int n = h.dim();
  ComplexMatrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double diag = h(j, j).real();
    for (int k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (!(diag > 0.0)) return std::nullopt;
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      cplx s = h(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

}  // namespace qot
