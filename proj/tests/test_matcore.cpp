#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "quditbell/matcore.hpp"

using namespace qb;

namespace {

CMat random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

CMat random_hermitian(int n, std::mt19937_64& rng) {
  const CMat m = random_matrix(n, rng);
  return (m + m.adjoint().eval()) / 2.0;
}

CMat random_density(int n, std::mt19937_64& rng) {
  const CMat g = random_matrix(n, rng);
  const CMat w = g * g.adjoint();
  return w / w.trace().real();
}

CMat random_unitary(int n, std::mt19937_64& rng) {
  const Eigen::HouseholderQR<CMat> qr(random_matrix(n, rng));
  return qr.householderQ();
}

CMat sigma(int i) {
  CMat m(2, 2);
  if (i == 1) m << 0, 1, 1, 0;
  if (i == 2) m << 0, cplx(0, -1), cplx(0, 1), 0;
  if (i == 3) m << 1, 0, 0, -1;
  return m;
}

}  // namespace

TEST_SUITE("matcore") {

TEST_CASE("kron of identities and pauli matrices") {
  const CMat i2 = CMat::Identity(2, 2);
  CHECK((kron(i2, i2) - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  // hand expansion of sigma_1 x sigma_1: ones on the antidiagonal
  const CMat s11 = kron(sigma(1), sigma(1));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(s11(i, j) == cplx(i + j == 3 ? 1.0 : 0.0, 0.0));

  const CMat s3i = kron(sigma(3), i2);
  CMat expect = CMat::Zero(4, 4);
  expect.diagonal() << 1, 1, -1, -1;
  CHECK((s3i - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial trace of a maximally entangled state is maximally mixed") {
  CVec phi = CVec::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const CMat rho = phi * phi.adjoint();
  const CMat red = partial_trace(rho, 2, 2, Subsystem::B);
  CHECK((red - 0.5 * CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial trace of product states") {
  std::mt19937_64 rng(7);
  const CMat a = random_density(3, rng);
  const CMat b = random_density(4, rng);
  const CMat rho = kron(a, b);
  CHECK((partial_trace(rho, 3, 4, Subsystem::B) - a).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((partial_trace(rho, 3, 4, Subsystem::A) - b).cwiseAbs().maxCoeff() < 1e-13);

  // trace preservation on a random bipartite operator
  const CMat big = random_hermitian(12, rng);
  const cplx t0 = big.trace();
  CHECK(std::abs(partial_trace(big, 3, 4, Subsystem::A).trace() - t0) < 1e-12);
  CHECK(std::abs(partial_trace(big, 3, 4, Subsystem::B).trace() - t0) < 1e-12);
}

TEST_CASE("partial trace of kron(A,B) over the A side gives Tr(A) B") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    const CMat a = random_matrix(3, rng);
    const CMat b = random_matrix(2, rng);
    const CMat lhs = partial_trace(kron(a, b), 3, 2, Subsystem::A);
    CHECK((lhs - a.trace() * b).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("partial transpose is an involution and preserves trace/hermiticity") {
  std::mt19937_64 rng(13);
  const CMat rho = random_density(12, rng);
  const CMat pt = partial_transpose(rho, 3, 4, Subsystem::A);
  CHECK((partial_transpose(pt, 3, 4, Subsystem::A) - rho).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(pt.trace() - rho.trace()) < 1e-14);
  CHECK(hermiticity_error(pt) < 1e-13);

  const CMat ptb = partial_transpose(rho, 3, 4, Subsystem::B);
  CHECK(hermiticity_error(ptb) < 1e-13);
  // T_A then T_B equals the full transpose
  const CMat both = partial_transpose(ptb, 3, 4, Subsystem::A);
  CHECK((both - rho.transpose()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial transpose of the phi+ projector has min eigenvalue -1/2") {
  CVec phi = CVec::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const CMat pt = partial_transpose(phi * phi.adjoint(), 2, 2, Subsystem::A);
  CHECK(min_eig(pt) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK_FALSE(is_psd(pt));
}

TEST_CASE("partial transpose keeps product states positive") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 5; ++rep) {
    const CMat rho = kron(random_density(2, rng), random_density(3, rng));
    CHECK(is_psd(partial_transpose(rho, 2, 3, Subsystem::A)));
  }
}

TEST_CASE("hermitian_eigs on trivial spectra") {
  const HermitianSpectrum id = hermitian_eigs(CMat::Identity(5, 5));
  for (int i = 0; i < 5; ++i) CHECK(id.eigenvalues(i) == doctest::Approx(1.0));

  const HermitianSpectrum s3 = hermitian_eigs(sigma(3));
  CHECK(s3.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(s3.eigenvalues(1) == doctest::Approx(1.0));

  const HermitianSpectrum s1 = hermitian_eigs(sigma(1));
  CHECK(s1.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(s1.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("hermitian_eigs reconstruction and orthonormality on random input") {
  std::mt19937_64 rng(19);
  for (int n : {2, 3, 6, 9, 25, 100}) {
    const CMat h = random_hermitian(n, rng);
    const HermitianSpectrum es = hermitian_eigs(h);

    const CMat rebuilt =
        es.eigenvectors * es.eigenvalues.asDiagonal().toDenseMatrix().cast<cplx>() *
        es.eigenvectors.adjoint();
    CHECK((rebuilt - h).cwiseAbs().maxCoeff() < 1e-10);

    const CMat gram = es.eigenvectors.adjoint() * es.eigenvectors;
    CHECK((gram - CMat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);

    for (int i = 0; i + 1 < n; ++i) CHECK(es.eigenvalues(i) <= es.eigenvalues(i + 1));

    // independent oracle: Eigen's solver
    Eigen::SelfAdjointEigenSolver<CMat> oracle(h);
    for (int i = 0; i < n; ++i)
      CHECK(es.eigenvalues(i) == doctest::Approx(oracle.eigenvalues()(i)).epsilon(1e-10));
  }
}

TEST_CASE("hermitian_eigs phase convention is deterministic") {
  std::mt19937_64 rng(23);
  const CMat h = random_hermitian(6, rng);
  const HermitianSpectrum a = hermitian_eigs(h);
  const HermitianSpectrum b = hermitian_eigs(h);
  CHECK((a.eigenvectors - b.eigenvectors).cwiseAbs().maxCoeff() == 0.0);
  for (int j = 0; j < 6; ++j) {
    for (int i = 0; i < 6; ++i) {
      if (std::abs(a.eigenvectors(i, j)) > 1e-12) {
        CHECK(a.eigenvectors(i, j).imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(a.eigenvectors(i, j).real() > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("hermitian_eigs rejects non-hermitian input") {
  CMat m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_eigs(m), std::invalid_argument);
}

TEST_CASE("hs inner product and norm") {
  for (int k = 1; k <= 3; ++k)
    for (int l = 1; l <= 3; ++l) {
      const cplx v = hs_inner(sigma(k), sigma(l));
      CHECK(v.real() == doctest::Approx(k == l ? 2.0 : 0.0));
      CHECK(v.imag() == doctest::Approx(0.0));
    }
  CHECK(hs_norm(CMat::Identity(7, 7)) == doctest::Approx(std::sqrt(7.0)));

  CVec psi = CVec::Zero(3);
  psi(1) = 1.0;
  CHECK(hs_norm(psi * psi.adjoint()) == doctest::Approx(1.0));
}

TEST_CASE("hs norm is unitarily invariant") {
  std::mt19937_64 rng(29);
  const CMat rho = random_density(5, rng);
  const CMat u = random_unitary(5, rng);
  CHECK(hs_norm((u * rho * u.adjoint()).eval()) == doctest::Approx(hs_norm(rho)).epsilon(1e-12));
}

TEST_CASE("min_eig / is_psd") {
  CHECK(is_psd(CMat::Identity(4, 4)));
  CHECK_FALSE(is_psd(sigma(3)));
}

}  // TEST_SUITE
