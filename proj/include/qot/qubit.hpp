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
#include <limits>
#include <utility>
#include <vector>

#include "qot/channel.hpp"
#include "qot/density.hpp"
#include "qot/rng.hpp"

namespace qot {

// Closed-form and semi-analytic qubit machinery: the one-parameter transport
// maximization, commuting/isospectral special cases, the metric derivative G
// in the (r, theta) Bloch chart, its non-Riemannian witness, and the
// positivity transfer of diagonal dual pairs through extremal channels.

namespace detail {

struct CircleMax {
  double arg = 0.0;
  double value = 0.0;
};

// Dense scan over [0, 2pi) followed by golden-section refinement of the best
// bracket. The refined result never loses to the grid value.
template <typename F>
CircleMax maximize_on_circle(F&& f) {
  const int grid = tolerances().phi_grid_points;
  const double two_pi = 2.0 * M_PI;
  double best_phi = 0.0;
  double best = f(0.0);
  for (int i = 1; i < grid; ++i) {
    const double phi = two_pi * i / grid;
    const double val = f(phi);
    if (val > best) {
      best = val;
      best_phi = phi;
    }
  }
  double a = best_phi - two_pi / grid;
  double b = best_phi + two_pi / grid;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tolerances().phi_refine) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fm = f(mid);
  if (fm >= best) return {mid, fm};
  return {best_phi, best};
}

inline void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw DimensionError(std::string(name) + " must lie in [0,1]");
}

}  // namespace detail

// Transport cost between the qubit states with Bloch data (s, 0) and
// (r, theta): max over phi of
//   (1/4) (sqrt(1+(2s-1)cos phi) - sqrt(1+(2r-1)cos(theta+phi)))^2.
inline double tq_semianalytic(double s, double r, double theta) {
  detail::require_unit_interval(s, "s");
  detail::require_unit_interval(r, "r");
  const double as = 2.0 * s - 1.0;
  const double ar = 2.0 * r - 1.0;
  const auto f = [&](double phi) {
    const double qa = std::max(0.0, 1.0 + as * std::cos(phi));
    const double qb = std::max(0.0, 1.0 + ar * std::cos(theta + phi));
    const double diff = std::sqrt(qa) - std::sqrt(qb);
    return 0.25 * diff * diff;
  };
  return detail::maximize_on_circle(f).value;
}

// Commuting states (shared eigenbasis, spectra {s, 1-s} and {r, 1-r}).
inline double tq_commuting(double s, double r) {
  detail::require_unit_interval(s, "s");
  detail::require_unit_interval(r, "r");
  const double d1 = std::sqrt(r) - std::sqrt(s);
  const double d2 = std::sqrt(1.0 - r) - std::sqrt(1.0 - s);
  return 0.5 * std::max(d1 * d1, d2 * d2);
}

// Isospectral states, eigenbases tilted by theta.
inline double tq_isospectral(double r, double theta) {
  detail::require_unit_interval(r, "r");
  const double st = std::sin(0.5 * theta);
  return (0.5 - std::sqrt(r * (1.0 - r))) * st * st;
}

struct TangentVector {
  double v1 = 0.0;  // radial component (along r)
  double v2 = 0.0;  // angular component (along theta)
};

// Quadratic-order coefficient of the transport cost along the tangent v at
// the Bloch point (r, 0):
//   G(r, v) = max over phi of (2 v1 cos phi - (2r-1) v2 sin phi)^2
//                              / (16 (1 + (2r-1) cos phi)).
inline double metric_derivative_g(double r, const TangentVector& v) {
  if (!(r > 0.0 && r < 1.0))
    throw DimensionError("metric derivative needs r strictly inside (0,1)");
  const double a = 2.0 * r - 1.0;
  const auto f = [&](double phi) {
    const double num = 2.0 * v.v1 * std::cos(phi) - a * v.v2 * std::sin(phi);
    const double den = 16.0 * (1.0 + a * std::cos(phi));
    return num * num / den;
  };
  return detail::maximize_on_circle(f).value;
}

// Closed forms for the two coordinate directions.
inline double metric_g11(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DimensionError("g11 needs r strictly inside (0,1)");
  return 0.125 * std::max(1.0 / r, 1.0 / (1.0 - r));
}

inline double metric_g22(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DimensionError("g22 needs r strictly inside (0,1)");
  return 0.125 * (1.0 - 2.0 * std::sqrt(r * (1.0 - r)));
}

// Deviation of G(r,(1,v2)) from the quadratic form predicted by the two
// diagonal coefficients; identically zero would make the metric Riemannian.
inline double riemann_witness(double r, double v2) {
  return metric_derivative_g(r, {1.0, v2}) - metric_g11(r) - metric_g22(r) * v2 * v2;
}

struct RiemannPoint {
  double v2 = 0.0;
  double g = 0.0;  // G(r, (1, v2))
  double h = 0.0;  // witness value
};

inline std::vector<RiemannPoint> riemann_table(double r, const std::vector<double>& grid) {
  const double g11 = metric_g11(r);
  const double g22 = metric_g22(r);
  std::vector<RiemannPoint> out;
  out.reserve(grid.size());
  for (double v2 : grid) {
    const double g = metric_derivative_g(r, {1.0, v2});
    out.push_back({v2, g, g - g11 - g22 * v2 * v2});
  }
  return out;
}

inline std::vector<double> symmetric_grid(double half_width, int points) {
  if (points < 2) throw DimensionError("grid needs at least two points");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = -half_width + 2.0 * half_width * i / (points - 1);
  return g;
}

// Max residual of the least-squares affine fit h ~ a + b*v2 over the table.
inline double affine_fit_residual(const std::vector<RiemannPoint>& table) {
  const size_t n = table.size();
  if (n < 2) throw DimensionError("affine fit needs at least two points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& p : table) {
    sx += p.v2;
    sy += p.h;
    sxx += p.v2 * p.v2;
    sxy += p.v2 * p.h;
  }
  const double det = n * sxx - sx * sx;
  const double slope = det != 0.0 ? (n * sxy - sx * sy) / det : 0.0;
  const double intercept = (sy - slope * sx) / n;
  double worst = 0.0;
  for (const auto& p : table)
    worst = std::max(worst, std::abs(p.h - intercept - slope * p.v2));
  return worst;
}

// Finite-difference estimate of G: evaluates T(rho(r,0), rho(r+v1 t, v2 t))
// / t^2 on the given shrinking t values and extrapolates to t -> 0 with a
// least-squares fit of the error model G + a t + b t^2 (exact interpolation
// for three points).
inline double finite_difference_g(double r, const TangentVector& v,
                                  const std::vector<double>& t_list = {1e-2, 5e-3, 2.5e-3}) {
  if (!(r > 0.0 && r < 1.0))
    throw DimensionError("finite difference needs r strictly inside (0,1)");
  if (t_list.size() < 3) throw DimensionError("extrapolation needs at least three t values");
  std::vector<double> fs;
  fs.reserve(t_list.size());
  for (double t : t_list) {
    if (!(t > 0.0)) throw DimensionError("t values must be positive");
    const double r2 = r + v.v1 * t;
    if (!(r2 >= 0.0 && r2 <= 1.0)) throw DimensionError("step leaves the Bloch ball");
    const double theta = std::abs(v.v2) * t;  // cost is even in the angle
    fs.push_back(tq_semianalytic(r, r2, theta) / (t * t));
  }
  // normal equations for [1, t, t^2] coefficients
  double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double rhs[3] = {0, 0, 0};
  for (size_t i = 0; i < t_list.size(); ++i) {
    const double t = t_list[i];
    const double row[3] = {1.0, t, t * t};
    for (int a = 0; a < 3; ++a) {
      rhs[a] += row[a] * fs[i];
      for (int b = 0; b < 3; ++b) m[a][b] += row[a] * row[b];
    }
  }
  // Gaussian elimination with partial pivoting on the 3x3 system
  int perm[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int rw = col + 1; rw < 3; ++rw)
      if (std::abs(m[perm[rw]][col]) > std::abs(m[perm[piv]][col])) piv = rw;
    std::swap(perm[col], perm[piv]);
    const double p = m[perm[col]][col];
    if (p == 0.0) throw NumericalError("degenerate t grid in extrapolation");
    for (int rw = col + 1; rw < 3; ++rw) {
      const double fac = m[perm[rw]][col] / p;
      for (int cc = col; cc < 3; ++cc) m[perm[rw]][cc] -= fac * m[perm[col]][cc];
      rhs[perm[rw]] -= fac * rhs[perm[col]];
    }
  }
  double coef[3];
  for (int rw = 2; rw >= 0; --rw) {
    double s = rhs[perm[rw]];
    for (int cc = rw + 1; cc < 3; ++cc) s -= m[perm[rw]][cc] * coef[cc];
    coef[rw] = s / m[perm[rw]][rw];
  }
  return coef[0];
}

// ---------------------------------------------------------------------------
// Diagonal dual pairs for the qubit projector cost. The pair is encoded by
//   c = Tr(sigma_a sigma_z), d = Tr(sigma_b sigma_z), x = Tr(sigma_a + sigma_b),
// and feasibility of C - sigma_a(x)1 - 1(x)sigma_b reduces to scalar
// inequalities in (c, d, x).

struct LemmaFParams {
  double c = 0.0;
  double d = 0.0;
  double x = 0.0;
};

inline bool lemma_f_admissible(const LemmaFParams& p) {
  return p.x <= 0.0 && std::abs(p.c + p.d) <= -p.x && std::abs(p.c - p.d) <= 1.0 - p.x &&
         (p.c - p.d) * (p.c - p.d) <= p.x * (p.x - 2.0);
}

// F = C - sigma_a (x) 1 - 1 (x) sigma_b in the product basis {00,01,10,11}.
inline HermitianMatrix lemma_f_matrix(const LemmaFParams& p) {
  ComplexMatrix m(4, 4);
  m(0, 0) = -(p.c + p.d + p.x);
  m(1, 1) = 1.0 - p.c + p.d - p.x;
  m(1, 2) = -1.0;
  m(2, 1) = -1.0;
  m(2, 2) = 1.0 + p.c - p.d - p.x;
  m(3, 3) = p.c + p.d - p.x;
  m *= cplx(0.5, 0.0);
  return HermitianMatrix(m);
}

// Image of F under the dual of the extremal channel with angles (u, v):
// C - Phi*(sigma_a) (x) 1 - 1 (x) Phi*(sigma_b), written with
// alpha = cos(u-v), beta = cos(u+v).
inline HermitianMatrix lemma_f_channel_matrix(const LemmaFParams& p, double u, double v) {
  const double alpha = std::cos(u - v);
  const double beta = std::cos(u + v);
  ComplexMatrix m(4, 4);
  m(0, 0) = -(p.c + p.d) * alpha - p.x;
  m(1, 1) = 1.0 - p.c * alpha + p.d * beta - p.x;
  m(1, 2) = -1.0;
  m(2, 1) = -1.0;
  m(2, 2) = 1.0 + p.c * beta - p.d * alpha - p.x;
  m(3, 3) = (p.c + p.d) * beta - p.x;
  m *= cplx(0.5, 0.0);
  return HermitianMatrix(m);
}

inline std::pair<HermitianMatrix, HermitianMatrix> lemma_f_matrices(const LemmaFParams& p,
                                                                    double u, double v) {
  return {lemma_f_matrix(p), lemma_f_channel_matrix(p, u, v)};
}

// A concrete diagonal representative of the parameter class (the gauge
// freedom sigma_a + a*1, sigma_b - a*1 is split evenly).
inline HermitianMatrix lemma_f_sigma_a(const LemmaFParams& p) {
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5 * (0.5 * p.x + p.c);
  m(1, 1) = 0.5 * (0.5 * p.x - p.c);
  return HermitianMatrix(m);
}

inline HermitianMatrix lemma_f_sigma_b(const LemmaFParams& p) {
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5 * (0.5 * p.x + p.d);
  m(1, 1) = 0.5 * (0.5 * p.x - p.d);
  return HermitianMatrix(m);
}

// Rejection sampler over the admissible region, x in [-4, 0].
inline LemmaFParams sample_lemma_f_params(RngStream& rng) {
  for (;;) {
    LemmaFParams p;
    p.x = rng.uniform(-4.0, 0.0);
    p.c = rng.uniform(p.x, -p.x);
    p.d = rng.uniform(p.x, -p.x);
    if (lemma_f_admissible(p)) return p;
  }
}

struct LemmaFScanReport {
  long samples = 0;
  long violations = 0;
  double min_eigenvalue = 0.0;  // most negative eigenvalue of F_phi seen
  double tol = 0.0;
  LemmaFParams worst_params;
  double worst_u = 0.0;
  double worst_v = 0.0;
};

// Randomized positivity-transfer check: admissible diagonal pairs stay
// feasible after the dual of any extremal qubit channel.
inline LemmaFScanReport lemma_f_scan(long samples, RngStream& rng,
                                     double tol = tolerances().psd_check) {
  LemmaFScanReport rep;
  rep.samples = samples;
  rep.tol = tol;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (long i = 0; i < samples; ++i) {
    const LemmaFParams p = sample_lemma_f_params(rng);
    const double u = rng.uniform(0.0, 2.0 * M_PI);
    const double v = rng.uniform(0.0, M_PI);
    const double lo = min_eigenvalue(lemma_f_channel_matrix(p, u, v));
    if (lo < rep.min_eigenvalue) {
      rep.min_eigenvalue = lo;
      rep.worst_params = p;
      rep.worst_u = u;
      rep.worst_v = v;
    }
    if (lo < -tol) ++rep.violations;
  }
  return rep;
}

}  // namespace qot
