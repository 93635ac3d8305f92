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
#include <optional>
#include <vector>

#include "qot/hermitian.hpp"

namespace qot {

// Symmetric classical cost table with zero diagonal and nonnegative entries.
struct ClassicalCost {
  int n = 0;
  std::vector<double> e;  // row-major n*n

  ClassicalCost() = default;
  ClassicalCost(int n_, std::vector<double> e_) : n(n_), e(std::move(e_)) {
    if (static_cast<int>(e.size()) != n * n) throw DimensionError("cost table size mismatch");
    for (int i = 0; i < n; ++i) {
      if (e[i * n + i] != 0.0) throw DimensionError("cost table diagonal must be zero");
      for (int j = 0; j < n; ++j) {
        if (e[i * n + j] < 0.0) throw DimensionError("cost table entries must be nonnegative");
        if (e[i * n + j] != e[j * n + i]) throw DimensionError("cost table must be symmetric");
      }
    }
  }

  double operator()(int i, int j) const { return e[i * n + j]; }
};

// Quantum cost operator on the doubled space, supported on the antisymmetric
// subspace. kind records whether the operator is a projector (mat^2 = mat).
struct CostMatrix {
  int n = 0;
  HermitianMatrix mat;  // dim n*n
  bool projector = false;
  std::optional<ClassicalCost> seed;
};

// Swap operator S |i>|j> = |j>|i>.
inline HermitianMatrix swap_operator(int n) {
  ComplexMatrix s(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  return HermitianMatrix(s);
}

// Projector onto the antisymmetric subspace, (1 - S)/2.
inline CostMatrix projector_cost(int n) {
  HermitianMatrix m = (HermitianMatrix::identity(n * n) - swap_operator(n)) * 0.5;
  return CostMatrix{n, std::move(m), true, std::nullopt};
}

// Weighted sum of singlet projectors: sum_{i<j} E_ij^power P_ij with
// P_ij the projector onto (|ij> - |ji>)/sqrt(2).
inline CostMatrix cost_from_classical(const ClassicalCost& e, double power = 1.0) {
  const int n = e.n;
  ComplexMatrix m(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double w = std::pow(e(i, j), power) * 0.5;
      if (w == 0.0) continue;
      const int ij = i * n + j;
      const int ji = j * n + i;
      m(ij, ij) += w;
      m(ji, ji) += w;
      m(ij, ji) -= w;
      m(ji, ij) -= w;
    }
  HermitianMatrix h(m);
  const HermitianMatrix sq(h.mat() * h.mat());
  const bool proj = (sq - h).frobenius_norm() <= 1e-12 * std::max(1.0, h.frobenius_norm());
  return CostMatrix{n, std::move(h), proj, e};
}

// All-pairs unit cost; its quantum cost operator equals projector_cost(n).
inline ClassicalCost simplex_cost(int n) {
  std::vector<double> e(static_cast<size_t>(n) * n, 1.0);
  for (int i = 0; i < n; ++i) e[i * n + i] = 0.0;
  return ClassicalCost(n, std::move(e));
}

}  // namespace qot
