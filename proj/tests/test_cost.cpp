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

using namespace qot;
using Catch::Approx;

TEST_CASE("classical cost validation") {
  CHECK_NOTHROW(ClassicalCost(2, {0.0, 1.0, 1.0, 0.0}));
  CHECK_THROWS_AS(ClassicalCost(2, {0.0, 1.0, 2.0, 0.0}), DimensionError);   // asymmetric
  CHECK_THROWS_AS(ClassicalCost(2, {0.5, 1.0, 1.0, 0.0}), DimensionError);   // diagonal
  CHECK_THROWS_AS(ClassicalCost(2, {0.0, -1.0, -1.0, 0.0}), DimensionError); // negative
  CHECK_THROWS_AS(ClassicalCost(2, {0.0, 1.0, 1.0}), DimensionError);        // size
}

TEST_CASE("swap operator squares to identity and has the right trace") {
  for (int n : {2, 3}) {
    const HermitianMatrix s = swap_operator(n);
    CHECK((s.mat() * s.mat() - ComplexMatrix::identity(n * n)).frobenius_norm() < 1e-14);
    CHECK(s.trace() == Approx(n));  // n(n+1)/2 minus n(n-1)/2
  }
}

TEST_CASE("projector cost is the antisymmetric projector") {
  const CostMatrix c = projector_cost(3);
  CHECK(c.projector);
  const HermitianMatrix& m = c.mat;
  // projector: m^2 = m, trace = dim of antisymmetric subspace = 3
  CHECK((HermitianMatrix(m.mat() * m.mat()) - m).frobenius_norm() < 1e-14);
  CHECK(m.trace() == Approx(3.0));
  const EigenDecomposition ed = eigh(m);
  int zeros = 0, ones = 0;
  for (double v : ed.eigenvalues) {
    if (std::abs(v) < 1e-12) ++zeros;
    if (std::abs(v - 1.0) < 1e-12) ++ones;
  }
  CHECK(zeros == 6);
  CHECK(ones == 3);
}

TEST_CASE("classical seed places singlet projectors with the printed weights") {
  const ClassicalCost e(3, {0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0});
  const CostMatrix c = cost_from_classical(e);
  CHECK_FALSE(c.projector);
  REQUIRE(c.seed.has_value());
  const HermitianMatrix& m = c.mat;
  // entry oracle: pair (0,2) carries weight 2 * 1/2 on |02>, |20>
  CHECK(m(2, 2) == cplx(1.0, 0.0));
  CHECK(m(6, 6) == cplx(1.0, 0.0));
  CHECK(m(2, 6) == cplx(-1.0, 0.0));
  // pair (0,1) carries weight 1/2
  CHECK(m(1, 1) == cplx(0.5, 0.0));
  CHECK(m(1, 3) == cplx(-0.5, 0.0));
  // diagonal of the symmetric subspace untouched
  CHECK(m(0, 0) == cplx(0.0, 0.0));
  CHECK(m(4, 4) == cplx(0.0, 0.0));
  // spectrum: eigenvalues {0 x6, 1, 1, 2}
  const EigenDecomposition ed = eigh(m);
  CHECK(ed.eigenvalues.back() == Approx(2.0));
  CHECK(ed.eigenvalues[6] == Approx(1.0));
  CHECK(ed.eigenvalues[7] == Approx(1.0));
  CHECK(std::abs(ed.eigenvalues[5]) < 1e-13);

  // squaring the entries via power doubles the top eigenvalue's weight
  const CostMatrix c2 = cost_from_classical(e, 2.0);
  CHECK(eigh(c2.mat).eigenvalues.back() == Approx(4.0));
}

TEST_CASE("all-pairs unit cost reproduces the projector cost") {
  for (int n : {2, 3, 4}) {
    const CostMatrix via_classical = cost_from_classical(simplex_cost(n));
    const CostMatrix direct = projector_cost(n);
    CHECK((via_classical.mat - direct.mat).frobenius_norm() < 1e-13);
    CHECK(via_classical.projector);
  }
}
