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

#include <catch2/catch_amalgamated.hpp>

#include "qot/cost.hpp"
#include "qot/qubit.hpp"

using namespace qot;
using Catch::Approx;

TEST_CASE("semi-analytic cost special values") {
  CHECK(tq_semianalytic(0.3, 0.3, 0.0) == Approx(0.0).margin(1e-14));
  CHECK(tq_commuting(1.0, 0.0) == Approx(0.5));
  CHECK(tq_isospectral(1.0, M_PI) == Approx(0.5));
  CHECK(tq_isospectral(0.5, 1.3) == Approx(0.0).margin(1e-15));
  CHECK_THROWS_AS(tq_semianalytic(-0.1, 0.5, 0.0), DimensionError);
  CHECK_THROWS_AS(tq_commuting(0.5, 1.2), DimensionError);
}

TEST_CASE("semi-analytic cost reduces to the closed forms") {
  RngStream rng(303, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const double s = rng.uniform();
    const double r = rng.uniform();
    CHECK(tq_semianalytic(s, r, 0.0) == Approx(tq_commuting(s, r)).margin(1e-10));
    const double theta = rng.uniform(0.0, M_PI);
    CHECK(tq_semianalytic(r, r, theta) == Approx(tq_isospectral(r, theta)).margin(1e-10));
  }
}

TEST_CASE("semi-analytic cost is symmetric in its arguments") {
  RngStream rng(304, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const double s = rng.uniform();
    const double r = rng.uniform();
    const double theta = rng.uniform(0.0, M_PI);
    CHECK(tq_semianalytic(s, r, theta) == Approx(tq_semianalytic(r, s, theta)).margin(1e-10));
  }
}

TEST_CASE("metric derivative closed forms") {
  for (int i = 1; i <= 50; ++i) {
    const double r = i / 51.0;
    CHECK(std::abs(metric_derivative_g(r, {1.0, 0.0}) - metric_g11(r)) <= 1e-8);
    CHECK(std::abs(metric_derivative_g(r, {0.0, 1.0}) - metric_g22(r)) <= 1e-8);
  }
  CHECK(metric_derivative_g(0.5, {0.0, 1.0}) == Approx(0.0).margin(1e-12));
  CHECK_THROWS_AS(metric_derivative_g(0.0, {1.0, 0.0}), DimensionError);
  CHECK_THROWS_AS(metric_derivative_g(1.0, {1.0, 0.0}), DimensionError);
}

TEST_CASE("metric derivative scale covariance") {
  RngStream rng(305, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const double r = rng.uniform(0.05, 0.95);
    const TangentVector v{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const double lambda = rng.uniform(0.1, 3.0);
    const double base = metric_derivative_g(r, v);
    const double scaled = metric_derivative_g(r, {lambda * v.v1, lambda * v.v2});
    CHECK(scaled == Approx(lambda * lambda * base).margin(1e-12 * (1.0 + base)));
  }
}

TEST_CASE("riemann witness vanishes at v2 = 0 and bends away from affine") {
  for (double r : {1.0 / 3.0, 0.25, 0.2}) {
    CHECK(std::abs(riemann_witness(r, 0.0)) <= 1e-10);
    const auto table = riemann_table(r, symmetric_grid(3.0, 61));
    REQUIRE(table.size() == 61);
    CHECK(affine_fit_residual(table) > 1e-3);
    // even function of v2
    for (int i = 0; i < 30; ++i) {
      CHECK(table[i].h == Approx(table[60 - i].h).margin(1e-10));
      CHECK(table[i].v2 == Approx(-table[60 - i].v2).margin(1e-14));
    }
  }
}

TEST_CASE("finite differences converge to the metric derivative") {
  CHECK(std::abs(finite_difference_g(1.0 / 3.0, {1.0, 0.0}) - 3.0 / 8.0) <= 1e-3);
  const double g22_quarter = 0.125 * (1.0 - std::sqrt(3.0) / 2.0);
  CHECK(std::abs(finite_difference_g(0.25, {0.0, 1.0}) - g22_quarter) <= 1e-3);
  const TangentVector diag{1.0, 2.0};
  CHECK(std::abs(finite_difference_g(0.7, diag) - metric_derivative_g(0.7, diag)) <= 1e-3);
  CHECK(finite_difference_g(0.4, {0.0, 0.0}) == Approx(0.0).margin(1e-14));
  CHECK_THROWS_AS(finite_difference_g(0.999, {1.0, 0.0}), DimensionError);  // exits the ball
}

TEST_CASE("admissibility region of diagonal dual pairs") {
  CHECK(lemma_f_admissible({0.0, 0.0, 0.0}));
  CHECK(lemma_f_admissible({0.0, 0.0, -1.0}));
  CHECK_FALSE(lemma_f_admissible({0.0, 0.0, 0.5}));    // x > 0
  CHECK_FALSE(lemma_f_admissible({1.5, -1.5, -1.0}));  // (c-d)^2 > x(x-2)
  CHECK_FALSE(lemma_f_admissible({0.8, 0.8, -1.0}));   // |c+d| > -x

  // admissibility is exactly positive semidefiniteness of F
  RngStream rng(306, 0);
  for (int trial = 0; trial < 200; ++trial) {
    LemmaFParams p;
    p.x = rng.uniform(-3.0, 0.5);
    p.c = rng.uniform(-3.0, 3.0);
    p.d = rng.uniform(-3.0, 3.0);
    const double lo = min_eigenvalue(lemma_f_matrix(p));
    if (lemma_f_admissible(p))
      CHECK(lo >= -1e-12);
    else
      CHECK(lo < 1e-12);
  }
}

TEST_CASE("zero parameters reproduce the projector cost") {
  const HermitianMatrix f = lemma_f_matrix({0.0, 0.0, 0.0});
  CHECK((f - projector_cost(2).mat).frobenius_norm() < 1e-15);
  // identity channel angles leave F unchanged
  const auto [f0, fphi] = lemma_f_matrices({0.3, -0.2, -1.1}, 0.0, 0.0);
  CHECK((f0 - fphi).frobenius_norm() < 1e-15);
}

TEST_CASE("parameter matrices match the operator-level construction") {
  RngStream rng(307, 0);
  const CostMatrix cost = projector_cost(2);
  const HermitianMatrix id2 = HermitianMatrix::identity(2);
  for (int trial = 0; trial < 100; ++trial) {
    const LemmaFParams p = sample_lemma_f_params(rng);
    const HermitianMatrix sa = lemma_f_sigma_a(p);
    const HermitianMatrix sb = lemma_f_sigma_b(p);
    const HermitianMatrix direct = cost.mat - tensor(sa, id2) - tensor(id2, sb);
    CHECK((direct - lemma_f_matrix(p)).frobenius_norm() < 1e-14);

    const double u = rng.uniform(0.0, 2.0 * M_PI);
    const double v = rng.uniform(0.0, M_PI);
    const QuantumChannel ch = extremal_qubit_channel({u, v});
    const HermitianMatrix pushed =
        cost.mat - tensor(dual_apply(ch, sa), id2) - tensor(id2, dual_apply(ch, sb));
    CHECK((pushed - lemma_f_channel_matrix(p, u, v)).frobenius_norm() < 1e-12);
  }
}

TEST_CASE("gauge shifts leave the operator difference unchanged") {
  RngStream rng(308, 0);
  const CostMatrix cost = projector_cost(2);
  const HermitianMatrix id2 = HermitianMatrix::identity(2);
  const LemmaFParams p = sample_lemma_f_params(rng);
  const double shift = rng.uniform(-2.0, 2.0);
  const HermitianMatrix sa = lemma_f_sigma_a(p) + id2 * shift;
  const HermitianMatrix sb = lemma_f_sigma_b(p) - id2 * shift;
  const HermitianMatrix f = cost.mat - tensor(sa, id2) - tensor(id2, sb);
  CHECK((f - lemma_f_matrix(p)).frobenius_norm() < 1e-13);
}

TEST_CASE("boundary parameters give a singular F whose image stays positive") {
  // (c - d)^2 = x(x - 2) with c + d = 0
  const double x = -1.0;
  const double half_spread = 0.5 * std::sqrt(x * (x - 2.0));
  const LemmaFParams p{half_spread, -half_spread, x};
  REQUIRE(lemma_f_admissible(p));
  CHECK(std::abs(min_eigenvalue(lemma_f_matrix(p))) < 1e-12);
  RngStream rng(309, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const double u = rng.uniform(0.0, 2.0 * M_PI);
    const double v = rng.uniform(0.0, M_PI);
    CHECK(min_eigenvalue(lemma_f_channel_matrix(p, u, v)) >= -1e-10);
  }
}

TEST_CASE("positivity transfer scan stays clean") {
  RngStream rng(310, 0);
  const LemmaFScanReport rep = lemma_f_scan(2000, rng);
  CHECK(rep.samples == 2000);
  CHECK(rep.violations == 0);
  CHECK(rep.min_eigenvalue >= -1e-10);
  // samples from the rejection sampler really are admissible
  for (int i = 0; i < 100; ++i) CHECK(lemma_f_admissible(sample_lemma_f_params(rng)));
}
