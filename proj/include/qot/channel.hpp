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

#include <array>
#include <optional>
#include <sstream>
#include <vector>

#include "qot/density.hpp"

namespace qot {

// Completely positive trace-preserving map with equal input and output
// dimension. The Kraus list is always populated and is the authoritative
// representation; the Choi state (trace-normalized) is kept when the channel
// was built from or validated against one.
//
// Choi convention: vec stacks the output (slow) index over the input (fast)
// index, so the unnormalized Choi operator is sum_k vec(K_k) vec(K_k)' and
// tracing out the slow factor of it gives the identity for a TP map.
struct QuantumChannel {
  int dim_in = 0;
  int dim_out = 0;
  std::vector<ComplexMatrix> kraus;
  std::optional<DensityMatrix> choi;
};

namespace detail {

inline ComplexMatrix vec_row_major(const ComplexMatrix& k) {
  ComplexMatrix v(k.rows() * k.cols(), 1);
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j) v(i * k.cols() + j, 0) = k(i, j);
  return v;
}

inline void check_completeness(const std::vector<ComplexMatrix>& kraus, int n) {
  ComplexMatrix s(n, n);
  for (const auto& k : kraus) s += k.adjoint() * k;
  s -= ComplexMatrix::identity(n);
  if (s.frobenius_norm() > tolerances().kraus_completeness) {
    std::ostringstream msg;
    msg << "kraus completeness violated by " << s.frobenius_norm();
    throw DimensionError(msg.str());
  }
}

}  // namespace detail

// Unnormalized Choi operator (trace n) assembled from the Kraus list.
inline HermitianMatrix choi_operator(const QuantumChannel& ch) {
  const int nn = ch.dim_in * ch.dim_out;
  ComplexMatrix d(nn, nn);
  for (const auto& k : ch.kraus) {
    const ComplexMatrix v = detail::vec_row_major(k);
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j < nn; ++j) d(i, j) += v(i, 0) * std::conj(v(j, 0));
  }
  return HermitianMatrix(d);
}

inline QuantumChannel channel_from_kraus(std::vector<ComplexMatrix> kraus) {
  if (kraus.empty()) throw DimensionError("channel needs at least one kraus operator");
  const int n = kraus.front().rows();
  for (const auto& k : kraus)
    if (k.rows() != n || k.cols() != n)
      throw DimensionError("kraus operators must be square and share a dimension");
  detail::check_completeness(kraus, n);
  return QuantumChannel{n, n, std::move(kraus), std::nullopt};
}

// Kraus extraction: eigendecompose the unnormalized Choi operator and keep
// every eigenpair above the cutoff, reshaping sqrt(lambda) w with the slow
// index as the output row. Largest eigenvalue first.
inline std::vector<ComplexMatrix> kraus_from_choi_operator(const HermitianMatrix& d, int n) {
  const EigenDecomposition e = eigh(d);
  std::vector<ComplexMatrix> kraus;
  for (int j = n * n - 1; j >= 0; --j) {
    const double lam = e.eigenvalues[j];
    if (lam <= tolerances().kraus_eig_cutoff) break;
    const double w = std::sqrt(lam);
    ComplexMatrix k(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) k(a, b) = w * e.eigenvectors(a * n + b, j);
    kraus.push_back(std::move(k));
  }
  return kraus;
}

inline QuantumChannel channel_from_choi(const DensityMatrix& choi_state, int n) {
  if (choi_state.dim() != n * n) throw DimensionError("choi state dimension mismatch");
  HermitianMatrix d = choi_state.herm() * static_cast<double>(n);
  const HermitianMatrix marg = partial_trace(d, n, n, Subsystem::a);
  HermitianMatrix dev = marg - HermitianMatrix::identity(n);
  if (dev.frobenius_norm() > tolerances().choi_agreement) {
    std::ostringstream msg;
    msg << "choi state is not trace-preserving: marginal deviates by " << dev.frobenius_norm();
    throw DimensionError(msg.str());
  }
  std::vector<ComplexMatrix> kraus = kraus_from_choi_operator(d, n);
  detail::check_completeness(kraus, n);
  return QuantumChannel{n, n, std::move(kraus), choi_state};
}

inline QuantumChannel identity_channel(int n) {
  return QuantumChannel{n, n, {ComplexMatrix::identity(n)}, std::nullopt};
}

inline QuantumChannel unitary_channel(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitary channel needs a square matrix");
  std::vector<ComplexMatrix> kraus{u};
  detail::check_completeness(kraus, u.rows());
  return QuantumChannel{u.rows(), u.rows(), std::move(kraus), std::nullopt};
}

inline DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_in) throw DimensionError("channel input dimension mismatch");
  ComplexMatrix out(ch.dim_out, ch.dim_out);
  for (const auto& k : ch.kraus) out += k * rho.mat() * k.adjoint();
  return DensityMatrix(HermitianMatrix(out), true);
}

// Choi-path application n * Tr_b[choi (1 tensor rho^T)]; must agree with the
// Kraus path. Kept separate so the agreement is testable.
inline DensityMatrix apply_choi(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_in) throw DimensionError("channel input dimension mismatch");
  const HermitianMatrix d =
      ch.choi ? ch.choi->herm() * static_cast<double>(ch.dim_in) : choi_operator(ch);
  const ComplexMatrix m = d.mat() * kron(ComplexMatrix::identity(ch.dim_out),
                                         rho.mat().transpose());
  const int n_out = ch.dim_out;
  const int n_in = ch.dim_in;
  ComplexMatrix out(n_out, n_out);
  for (int i = 0; i < n_out; ++i)
    for (int j = 0; j < n_out; ++j) {
      cplx s = 0.0;
      for (int b = 0; b < n_in; ++b) s += m(i * n_in + b, j * n_in + b);
      out(i, j) = s;
    }
  return DensityMatrix(HermitianMatrix(out));
}

// Adjoint (dual, unital) map sum_k K' sigma K.
inline HermitianMatrix dual_apply(const QuantumChannel& ch, const HermitianMatrix& sigma) {
  if (sigma.dim() != ch.dim_out) throw DimensionError("dual map input dimension mismatch");
  ComplexMatrix out(ch.dim_in, ch.dim_in);
  for (const auto& k : ch.kraus) out += k.adjoint() * sigma.mat() * k;
  return HermitianMatrix(out);
}

// Random channel with a Choi operator of rank k: sandwich a rank-k complex
// Wishart matrix so its input-side marginal becomes the identity.
inline QuantumChannel random_channel_choi(int n, int k, RngStream& rng) {
  if (k < 1 || k > n * n) throw DimensionError("choi rank must lie in [1, dim^2]");
  const int nn = n * n;
  for (int attempt = 0; attempt < 16; ++attempt) {
    ComplexMatrix x(nn, k);
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j < k; ++j) x(i, j) = rng.complex_gaussian();
    const HermitianMatrix gram(x * x.adjoint());
    const HermitianMatrix y = partial_trace(gram, n, n, Subsystem::a);
    if (min_eigenvalue(y) < 1e-9 * y.trace()) continue;  // nearly singular marginal: redraw
    const HermitianMatrix yinv = psd_inverse_sqrt(y);
    const ComplexMatrix s = kron(ComplexMatrix::identity(n), yinv.mat());
    const HermitianMatrix d(s * gram.mat() * s);
    DensityMatrix choi_state(d * (1.0 / n), true);
    std::vector<ComplexMatrix> kraus = kraus_from_choi_operator(d, n);
    detail::check_completeness(kraus, n);
    return QuantumChannel{n, n, std::move(kraus), std::move(choi_state)};
  }
  throw NumericalError("random_channel_choi: marginal persistently singular");
}

// Extremal qubit channel parameters; u in [0, 2pi), v in [0, pi).
struct ExtremalQubitParams {
  double u = 0.0;
  double v = 0.0;
};

inline QuantumChannel extremal_qubit_channel(const ExtremalQubitParams& p) {
  const double cu = std::cos(p.u / 2.0), su = std::sin(p.u / 2.0);
  const double cv = std::cos(p.v / 2.0), sv = std::sin(p.v / 2.0);
  ComplexMatrix k1 = ComplexMatrix::identity(2) * cplx(cv * cu, 0.0);
  k1 += (sv * su) * pauli_z();
  ComplexMatrix k2 = (sv * cu) * pauli_x();
  k2 += cplx(0.0, 1.0) * ((cv * su) * pauli_y());
  std::vector<ComplexMatrix> kraus{std::move(k1), std::move(k2)};
  detail::check_completeness(kraus, 2);
  return QuantumChannel{2, 2, std::move(kraus), std::nullopt};
}

namespace detail {

inline ComplexMatrix permutation_matrix(int n, const std::vector<int>& image) {
  ComplexMatrix p(n, n);
  for (int j = 0; j < n; ++j) p(image[j], j) = 1.0;
  return p;
}

inline ComplexMatrix diag_matrix(const std::vector<double>& d) {
  const int n = static_cast<int>(d.size());
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

}  // namespace detail

// Extremal qutrit channel: K_i = U_i D_i with fixed transposition unitaries
// and nonnegative diagonals satisfying D1^2 + D2^2 + D3^2 = 1. The first two
// diagonals are (a, b, c) and (d, e, f).
inline QuantumChannel extremal_qutrit_channel(const std::array<double, 6>& p) {
  std::vector<double> d1{p[0], p[1], p[2]};
  std::vector<double> d2{p[3], p[4], p[5]};
  std::vector<double> d3(3);
  for (int i = 0; i < 3; ++i) {
    const double rem = 1.0 - d1[i] * d1[i] - d2[i] * d2[i];
    if (rem < -1e-12) throw DimensionError("extremal qutrit diagonals exceed unit budget");
    d3[i] = std::sqrt(std::max(0.0, rem));
  }
  const ComplexMatrix u1 = detail::permutation_matrix(3, {0, 2, 1});
  const ComplexMatrix u2 = detail::permutation_matrix(3, {2, 1, 0});
  const ComplexMatrix u3 = detail::permutation_matrix(3, {1, 0, 2});
  std::vector<ComplexMatrix> kraus{u1 * detail::diag_matrix(d1), u2 * detail::diag_matrix(d2),
                                   u3 * detail::diag_matrix(d3)};
  detail::check_completeness(kraus, 3);
  return QuantumChannel{3, 3, std::move(kraus), std::nullopt};
}

// Four-dimensional analogue: K_i = P^(i-1) D_i with P the cyclic shift and
// per-position squared diagonals summing to 1 across the four operators.
inline QuantumChannel extremal_ququart_channel(const std::array<std::array<double, 4>, 4>& sq) {
  const ComplexMatrix p = detail::permutation_matrix(4, {1, 2, 3, 0});
  std::vector<ComplexMatrix> kraus;
  ComplexMatrix shift = ComplexMatrix::identity(4);
  for (int i = 0; i < 4; ++i) {
    std::vector<double> d(4);
    for (int j = 0; j < 4; ++j) {
      if (sq[i][j] < -1e-12) throw DimensionError("negative squared diagonal");
      d[j] = std::sqrt(std::max(0.0, sq[i][j]));
    }
    kraus.push_back(shift * detail::diag_matrix(d));
    shift = p * shift;
  }
  detail::check_completeness(kraus, 4);
  return QuantumChannel{4, 4, std::move(kraus), std::nullopt};
}

// Uniform draw from the extremal family of the given dimension (2, 3 or 4):
// qubit angles uniform on their ranges, larger dimensions draw each
// position's squared diagonal entries uniformly from the simplex.
inline QuantumChannel sample_extremal_channel(int n, RngStream& rng) {
  if (n == 2) {
    ExtremalQubitParams p;
    p.u = rng.uniform(0.0, 2.0 * M_PI);
    p.v = rng.uniform(0.0, M_PI);
    return extremal_qubit_channel(p);
  }
  if (n == 3) {
    std::array<double, 6> p{};
    for (int pos = 0; pos < 3; ++pos) {
      const std::vector<double> w = rng.simplex(3);
      p[pos] = std::sqrt(w[0]);
      p[3 + pos] = std::sqrt(w[1]);
    }
    return extremal_qutrit_channel(p);
  }
  if (n == 4) {
    std::array<std::array<double, 4>, 4> sq{};
    for (int pos = 0; pos < 4; ++pos) {
      const std::vector<double> w = rng.simplex(4);
      for (int i = 0; i < 4; ++i) sq[i][pos] = w[i];
    }
    return extremal_ququart_channel(sq);
  }
  throw DimensionError("extremal family implemented for dimensions 2, 3, 4");
}

// Haar-distributed unitary: QR of a complex gaussian matrix via modified
// Gram-Schmidt, whose R has a positive real diagonal by construction.
inline ComplexMatrix haar_unitary(int n, RngStream& rng) {
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      cplx proj = 0.0;
      for (int i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
      for (int i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
    }
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    for (int i = 0; i < n; ++i) g(i, j) /= nrm;
  }
  return g;
}

// Random mixed-unitary channel: sqrt(p_i) U_i with Haar unitaries and
// simplex-uniform weights.
inline QuantumChannel mixed_unitary_channel(int n, int terms, RngStream& rng) {
  if (terms < 1) throw DimensionError("mixed-unitary channel needs at least one term");
  const std::vector<double> w = rng.simplex(terms);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(terms);
  for (int i = 0; i < terms; ++i)
    kraus.push_back(haar_unitary(n, rng) * cplx(std::sqrt(w[i]), 0.0));
  detail::check_completeness(kraus, n);
  return QuantumChannel{n, n, std::move(kraus), std::nullopt};
}

}  // namespace qot
