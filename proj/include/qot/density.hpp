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

#include <cmath>
#include <sstream>

#include "qot/hermitian.hpp"
#include "qot/rng.hpp"

namespace qot {

// Quantum state: Hermitian, unit trace, PSD. Construction symmetrizes,
// checks the trace is within the accepted window, rescales it to exactly 1,
// and (unless the caller vouches for positivity) checks the spectrum floor.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  explicit DensityMatrix(const HermitianMatrix& m, bool trust_psd = false) : mat_(m) {
    const Tolerances& tol = tolerances();
    const double tr = mat_.trace();
    if (std::abs(tr - 1.0) > tol.density_trace_window) {
      std::ostringstream msg;
      msg << "density matrix trace " << tr << " outside accepted window";
      throw DimensionError(msg.str());
    }
    mat_ *= 1.0 / tr;
    if (!trust_psd) {
      const double lo = min_eigenvalue(mat_);
      if (lo < -tol.density_psd_floor) {
        std::ostringstream msg;
        msg << "density matrix has negative eigenvalue " << lo;
        throw NumericalError(msg.str());
      }
    }
  }

  int dim() const { return mat_.dim(); }
  const HermitianMatrix& herm() const { return mat_; }
  const ComplexMatrix& mat() const { return mat_.mat(); }
  const cplx& operator()(int i, int j) const { return mat_(i, j); }

  static DensityMatrix maximally_mixed(int n) {
    return DensityMatrix(HermitianMatrix::identity(n) * (1.0 / n), true);
  }

  // Pure state |v><v| / <v|v>.
  static DensityMatrix pure(const std::vector<cplx>& v) {
    const int n = static_cast<int>(v.size());
    double nrm = 0.0;
    for (const auto& z : v) nrm += std::norm(z);
    if (nrm <= 0.0) throw DimensionError("pure state from zero vector");
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]) / nrm;
    return DensityMatrix(HermitianMatrix(m), true);
  }

 private:
  HermitianMatrix mat_;
};

// Random rank-k state: X X' / Tr(X X') with X an n-by-k matrix of standard
// complex gaussian entries.
inline DensityMatrix random_state(int n, int k, RngStream& rng) {
  if (k < 1 || k > n) throw DimensionError("state rank must lie in [1, dim]");
  ComplexMatrix x(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) x(i, j) = rng.complex_gaussian();
  ComplexMatrix g = x * x.adjoint();
  const double tr = g.trace().real();
  g *= cplx(1.0 / tr, 0.0);
  return DensityMatrix(HermitianMatrix(g), true);
}

inline const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m = [] {
    ComplexMatrix p(2, 2);
    p(0, 1) = 1.0;
    p(1, 0) = 1.0;
    return p;
  }();
  return m;
}

inline const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m = [] {
    ComplexMatrix p(2, 2);
    p(0, 1) = cplx(0.0, -1.0);
    p(1, 0) = cplx(0.0, 1.0);
    return p;
  }();
  return m;
}

inline const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m = [] {
    ComplexMatrix p(2, 2);
    p(0, 0) = 1.0;
    p(1, 1) = -1.0;
    return p;
  }();
  return m;
}

// Qubit state on the x-z disc of the Bloch ball: radius |2r - 1| with
// r in [0, 1], polar angle theta in [0, pi) measured from the z axis.
struct BlochState {
  double r = 0.5;
  double theta = 0.0;

  BlochState() = default;
  BlochState(double r_, double theta_) : r(r_), theta(theta_) {
    if (r < 0.0 || r > 1.0) throw DimensionError("bloch radius parameter outside [0, 1]");
    if (theta < 0.0 || theta >= M_PI) throw DimensionError("bloch angle outside [0, pi)");
  }

  DensityMatrix to_density() const {
    const double w = 2.0 * r - 1.0;
    ComplexMatrix m = ComplexMatrix::identity(2);
    m += (w * std::sin(theta)) * pauli_x();
    m += (w * std::cos(theta)) * pauli_z();
    m *= cplx(0.5, 0.0);
    return DensityMatrix(HermitianMatrix(m), true);
  }

  // Inverse of to_density for states on the x-z disc with r != 1/2.
  static BlochState from_density(const DensityMatrix& d) {
    if (d.dim() != 2) throw DimensionError("bloch parametrization needs a qubit");
    const double bx = 2.0 * d(0, 1).real();
    const double bz = (d(0, 0) - d(1, 1)).real();
    const double len = std::hypot(bx, bz);
    if (len == 0.0) return BlochState(0.5, 0.0);
    if (bx > 0.0) return BlochState((1.0 + len) / 2.0, std::atan2(bx, bz));
    if (bx < 0.0) return BlochState((1.0 - len) / 2.0, std::atan2(-bx, -bz));
    return BlochState(bz > 0.0 ? (1.0 + len) / 2.0 : (1.0 - len) / 2.0, 0.0);
  }
};

}  // namespace qot
