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

#include "qot/hermitian.hpp"
#include "qot/rng.hpp"

using namespace qot;
using Catch::Approx;

namespace {

HermitianMatrix random_hermitian(int n, RngStream& rng) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.complex_gaussian();
  return HermitianMatrix(m);  // symmetrized inside
}

}  // namespace

TEST_CASE("complex matrix arithmetic") {
  ComplexMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = cplx(0.0, 1.0);
  a(1, 1) = 2.0;
  ComplexMatrix b(2, 2);
  b(0, 0) = 3.0;
  b(1, 0) = 1.0;
  b(1, 1) = cplx(0.0, -1.0);

  const ComplexMatrix ab = a * b;
  CHECK(ab(0, 0) == cplx(3.0, 1.0));
  CHECK(ab(0, 1) == cplx(1.0, 0.0));
  CHECK(ab(1, 0) == cplx(2.0, 0.0));
  CHECK(ab(1, 1) == cplx(0.0, -2.0));

  CHECK(a.trace() == cplx(3.0, 0.0));
  CHECK(a.adjoint()(1, 0) == cplx(0.0, -1.0));
  CHECK(a.frobenius_norm() == Approx(std::sqrt(6.0)));

  const ComplexMatrix sum = a + b;
  CHECK(sum(1, 0) == cplx(1.0, 0.0));
  const ComplexMatrix scaled = a * cplx(2.0, 0.0);
  CHECK(scaled(1, 1) == cplx(4.0, 0.0));
}

TEST_CASE("kronecker product layout: left factor varies slowly") {
  ComplexMatrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  ComplexMatrix z(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  const ComplexMatrix k = kron(x, z);
  REQUIRE(k.rows() == 4);
  // (x kron z)[(i1 i2),(j1 j2)] = x(i1,j1) z(i2,j2)
  CHECK(k(0, 2) == cplx(1.0, 0.0));   // x(0,1) z(0,0)
  CHECK(k(1, 3) == cplx(-1.0, 0.0));  // x(0,1) z(1,1)
  CHECK(k(2, 0) == cplx(1.0, 0.0));
  CHECK(k(0, 0) == cplx(0.0, 0.0));
}

TEST_CASE("hermitian construction symmetrizes") {
  ComplexMatrix m(2, 2);
  m(0, 1) = cplx(2.0, 0.0);
  m(1, 0) = cplx(0.0, 0.0);
  const HermitianMatrix h(m);
  CHECK(h(0, 1) == cplx(1.0, 0.0));
  CHECK(h(1, 0) == cplx(1.0, 0.0));
}

TEST_CASE("inner product is the real Hilbert-Schmidt form") {
  RngStream rng(7, 0);
  const HermitianMatrix a = random_hermitian(3, rng);
  const HermitianMatrix b = random_hermitian(3, rng);
  const cplx tr = (a.mat() * b.mat()).trace();
  CHECK(tr.imag() == Approx(0.0).margin(1e-12));
  CHECK(inner(a, b) == Approx(tr.real()));
  CHECK(inner(a, a) == Approx(a.frobenius_norm() * a.frobenius_norm()));
}

TEST_CASE("partial traces undo tensor products") {
  RngStream rng(11, 0);
  HermitianMatrix a = random_hermitian(2, rng);
  HermitianMatrix b = random_hermitian(3, rng);
  // normalize traces so the partial-trace identities are exact
  a = a + HermitianMatrix::identity(2) * 1.0;  // ensure nonzero trace
  const double tb = b.trace();
  const HermitianMatrix ab = tensor(a, b);
  const HermitianMatrix ta_out = partial_trace(ab, 2, 3, Subsystem::b);
  const HermitianMatrix tb_out = partial_trace(ab, 2, 3, Subsystem::a);
  CHECK((ta_out - a * tb).frobenius_norm() == Approx(0.0).margin(1e-12));
  CHECK((tb_out - b * a.trace()).frobenius_norm() == Approx(0.0).margin(1e-12));
}

TEST_CASE("partial trace of the Bell projector gives maximally mixed marginals") {
  ComplexMatrix bell(4, 4);
  const int idx[2] = {0, 3};  // |00>, |11>
  for (int p : idx)
    for (int q : idx) bell(p, q) = 0.5;
  const HermitianMatrix proj(bell);
  const HermitianMatrix ma = partial_trace(proj, 2, 2, Subsystem::b);
  const HermitianMatrix mb = partial_trace(proj, 2, 2, Subsystem::a);
  const HermitianMatrix half = HermitianMatrix::identity(2) * 0.5;
  CHECK((ma - half).frobenius_norm() == Approx(0.0).margin(1e-14));
  CHECK((mb - half).frobenius_norm() == Approx(0.0).margin(1e-14));
}

TEST_CASE("eigh on a known 2x2") {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  const EigenDecomposition ed = eigh(HermitianMatrix(m));
  REQUIRE(ed.eigenvalues.size() == 2);
  CHECK(ed.eigenvalues[0] == Approx(-1.0));
  CHECK(ed.eigenvalues[1] == Approx(1.0));
  // eigenvector columns: unit norm, A v = lambda v
  for (int k = 0; k < 2; ++k) {
    cplx r0 = m(0, 0) * ed.eigenvectors(0, k) + m(0, 1) * ed.eigenvectors(1, k);
    CHECK(std::abs(r0 - ed.eigenvalues[k] * ed.eigenvectors(0, k)) < 1e-14);
  }
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
  RngStream rng(23, 0);
  for (int n : {1, 2, 5, 9, 16}) {
    const HermitianMatrix h = random_hermitian(n, rng);
    const EigenDecomposition ed = eigh(h);
    // ascending order
    for (size_t i = 1; i < ed.eigenvalues.size(); ++i)
      CHECK(ed.eigenvalues[i] >= ed.eigenvalues[i - 1]);
    // unitarity of V
    const ComplexMatrix vtv = ed.eigenvectors.adjoint() * ed.eigenvectors;
    CHECK((vtv - ComplexMatrix::identity(n)).frobenius_norm() < 1e-13 * n);
    // reconstruction
    ComplexMatrix lam(n, n);
    for (int i = 0; i < n; ++i) lam(i, i) = ed.eigenvalues[i];
    const ComplexMatrix rec = ed.eigenvectors * lam * ed.eigenvectors.adjoint();
    CHECK((rec - h.mat()).frobenius_norm() < 1e-12 * std::max(1.0, h.frobenius_norm()));
    // trace preserved
    double tr = 0.0;
    for (double v : ed.eigenvalues) tr += v;
    CHECK(tr == Approx(h.trace()).margin(1e-11));
  }
}

TEST_CASE("eigh handles degenerate spectra") {
  const HermitianMatrix id = HermitianMatrix::identity(6);
  const EigenDecomposition ed = eigh(id);
  for (double v : ed.eigenvalues) CHECK(v == Approx(1.0));
}

TEST_CASE("matrix function and inverse square root") {
  RngStream rng(31, 0);
  const HermitianMatrix g = random_hermitian(4, rng);
  const HermitianMatrix psd(g.mat() * g.mat());  // PSD by construction
  const HermitianMatrix root = matrix_function(psd, [](double v) { return std::sqrt(std::max(0.0, v)); });
  CHECK((HermitianMatrix(root.mat() * root.mat()) - psd).frobenius_norm() <
        1e-11 * std::max(1.0, psd.frobenius_norm()));

  const HermitianMatrix pd = psd + HermitianMatrix::identity(4) * 0.5;
  const HermitianMatrix is = psd_inverse_sqrt(pd);
  const ComplexMatrix should_be_id = is.mat() * pd.mat() * is.mat();
  CHECK((should_be_id - ComplexMatrix::identity(4)).frobenius_norm() < 1e-11);
}

TEST_CASE("cholesky factors positive definite matrices only") {
  RngStream rng(41, 0);
  const HermitianMatrix g = random_hermitian(5, rng);
  const HermitianMatrix pd =
      HermitianMatrix(g.mat() * g.mat()) + HermitianMatrix::identity(5) * 0.1;
  const auto l = cholesky(pd);
  REQUIRE(l.has_value());
  CHECK(((*l) * l->adjoint() - pd.mat()).frobenius_norm() < 1e-12 * pd.frobenius_norm());
  // strictly lower-triangular factor
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) CHECK(std::abs((*l)(i, j)) == 0.0);

  ComplexMatrix neg(2, 2);
  neg(0, 0) = 1.0;
  neg(1, 1) = -1.0;
  CHECK(!cholesky(HermitianMatrix(neg)).has_value());
}

TEST_CASE("min eigenvalue and psd checks") {
  ComplexMatrix m(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = -0.5;
  const HermitianMatrix h(m);
  CHECK(min_eigenvalue(h) == Approx(-0.5));
  CHECK(!is_psd(h));
  CHECK(is_psd(HermitianMatrix::identity(3)));
}
