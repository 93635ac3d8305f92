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

#include <stdexcept>
#include <string>

namespace qot {

// Thrown when an iterative routine fails to converge or a matrix violates a
// numerical precondition (e.g. a supposedly PSD matrix with a clearly
// negative eigenvalue).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown on shape/domain violations (dimension mismatch, parameter out of
// its documented range, malformed input).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Central tolerance configuration. Every fixed numerical threshold used by
// the library lives here so the values can be audited in one place.
struct Tolerances {
  // hermitian / eigensolver
  double eigh_offdiag = 1e-14;  // off-diagonal Frobenius stop, relative to ||A||_F (floor 1)
  int eigh_max_sweeps = 100;
  double pinv_cutoff = 1e-12;   // eigenvalue cutoff for pseudo-inverse square root
  double psd_check = 1e-10;     // default floor for is_psd / min-eigenvalue checks

  // quantum objects
  double density_trace_window = 1e-8;  // |Tr - 1| accepted before normalization
  double density_psd_floor = 1e-9;     // most negative eigenvalue accepted
  double kraus_completeness = 1e-10;   // ||sum K'K - 1||_F
  double choi_agreement = 1e-9;        // Choi path vs Kraus path
  double kraus_eig_cutoff = 1e-12;     // Choi eigenvalue kept as a Kraus operator

  // dual feasibility
  double dual_feasibility_floor = 1e-8;  // min eigenvalue accepted by check_dual_feasible

  // 1-D maximizations on the circle
  int phi_grid_points = 4096;
  double phi_refine = 1e-12;  // golden-section bracket width in phi

  // monotonicity campaigns
  double violation_tol = 1e-7;  // delta < -tol counts as a violation
};

inline const Tolerances& tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace qot
