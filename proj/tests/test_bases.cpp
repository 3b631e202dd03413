#include <doctest.h>

#include <random>

#include "quditbell/bases.hpp"
#include "quditbell/states.hpp"

using namespace qb;

namespace {

CMat random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  const CMat w = m * m.adjoint();
  return w / w.trace().real();
}

}  // namespace

TEST_SUITE("bases") {

TEST_CASE("pauli basis algebra") {
  const OperatorBasis pb = pauli_basis();
  CHECK(pb.elements.size() == 3);
  // sigma_1 sigma_2 = i sigma_3
  const CMat prod = pb.elements[0] * pb.elements[1];
  CHECK((prod - cplx(0, 1) * pb.elements[2]).cwiseAbs().maxCoeff() < 1e-15);
  for (const CMat& s : pb.elements) {
    CHECK(std::abs(s.trace()) < 1e-15);
    CHECK(hs_inner(s, s).real() == doctest::Approx(2.0));
  }
}

TEST_CASE("gell-mann basis for d = 2 reproduces the pauli matrices") {
  const OperatorBasis gm = gellmann_basis(2);
  const OperatorBasis pb = pauli_basis();
  REQUIRE(gm.elements.size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK((gm.elements[i] - pb.elements[i]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gell-mann basis structure for d = 3") {
  const OperatorBasis gm = gellmann_basis(3);
  CHECK(gm.elements.size() == 8);
  // first diagonal element is diag(1,-1,0)
  const CMat& lam0 = gm.elements[6];
  CMat expect = CMat::Zero(3, 3);
  expect(0, 0) = 1;
  expect(1, 1) = -1;
  CHECK((lam0 - expect).cwiseAbs().maxCoeff() < 1e-15);
  for (const CMat& g : gm.elements) {
    CHECK(std::abs(g.trace()) < 1e-12);
    CHECK(hermiticity_error(g) == 0.0);
  }
}

TEST_CASE("weyl operators: identity, d = 2 special cases, unitarity") {
  CHECK((weyl_operator(4, 0, 0) - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((weyl_operator(2, 1, 0) - pauli(3)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((weyl_operator(2, 0, 1) - pauli(1)).cwiseAbs().maxCoeff() < 1e-15);
  for (int d : {2, 3, 5})
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        const CMat w = weyl_operator(d, k, l);
        CHECK((w.adjoint() * w - CMat::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-14);
      }
}

TEST_CASE("weyl relations W_jl W_km = w^{kl} W_{j+k,l+m}") {
  for (int d : {2, 3, 4, 5}) {
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k)
          for (int m = 0; m < d; ++m) {
            const CMat lhs = weyl_operator(d, j, l) * weyl_operator(d, k, m);
            const cplx phase(std::cos(two_pi * k * l / d), std::sin(two_pi * k * l / d));
            const CMat rhs = phase * weyl_operator(d, j + k, l + m);
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
          }
  }
}

TEST_CASE("orthogonality of all bases for d in 2..5") {
  for (int d : {2, 3, 4, 5}) {
    for (BasisKind kind : {BasisKind::gellmann, BasisKind::weyl}) {
      const OperatorBasis& b = cached_basis(kind, d);
      CHECK(static_cast<int>(b.elements.size()) == d * d - 1);
      for (std::size_t i = 0; i < b.elements.size(); ++i) {
        CHECK(std::abs(b.elements[i].trace()) < 1e-12);
        CHECK(std::abs(hs_inner(b.identity, b.elements[i])) < 1e-12);
        for (std::size_t j = i + 1; j < b.elements.size(); ++j)
          CHECK(std::abs(hs_inner(b.elements[i], b.elements[j])) < 1e-10);
      }
    }
  }
}

TEST_CASE("bloch decomposition round trip") {
  std::mt19937_64 rng(31);
  for (int d : {2, 3, 4}) {
    const CMat rho = random_density(d, rng);
    for (BasisKind kind : {BasisKind::gellmann, BasisKind::weyl}) {
      const BlochVector b = bloch_decompose(rho, cached_basis(kind, d));
      const CMat back = bloch_reconstruct(b);
      CHECK((back - rho).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("maximally mixed state has vanishing bloch vector") {
  const CMat rho = CMat::Identity(3, 3) / 3.0;
  const BlochVector b = bloch_decompose(rho, cached_basis(BasisKind::gellmann, 3));
  CHECK(bloch_norm(b) < 1e-14);
}

TEST_CASE("pure qubit |0><0| has pauli bloch vector (0,0,1)") {
  CMat rho = CMat::Zero(2, 2);
  rho(0, 0) = 1.0;
  // rho = (1/2)(1 + b.sigma) => b_i = Tr(sigma_i rho)
  const BlochVector b = bloch_decompose(rho, pauli_basis());
  CHECK(std::abs(2.0 * b.coefficients[0]) < 1e-15);
  CHECK(std::abs(2.0 * b.coefficients[1]) < 1e-15);
  CHECK((2.0 * b.coefficients[2]).real() == doctest::Approx(1.0));
}

TEST_CASE("weyl coefficients satisfy the hermiticity constraint") {
  std::mt19937_64 rng(37);
  for (int d : {2, 3, 4}) {
    const CMat rho = random_density(d, rng);
    const OperatorBasis& wb = cached_basis(BasisKind::weyl, d);
    const BlochVector b = bloch_decompose(rho, wb);
    // grid indexed k-major skipping (0,0)
    auto coeff = [&](int k, int l) -> cplx {
      k = ((k % d) + d) % d;
      l = ((l % d) + d) % d;
      REQUIRE((k != 0 || l != 0));
      return b.coefficients[k * d + l - 1];
    };
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        if (k == 0 && l == 0) continue;
        const cplx phase(std::cos(two_pi * k * l / d), std::sin(two_pi * k * l / d));
        CHECK(std::abs(coeff(-k, -l) - phase * std::conj(coeff(k, l))) < 1e-10);
      }
  }
}

TEST_CASE("bloch norm bounds for random density matrices") {
  std::mt19937_64 rng(41);
  for (int d : {2, 3, 4, 5}) {
    for (int rep = 0; rep < 20; ++rep) {
      const CMat rho = random_density(d, rng);
      const double gm = bloch_norm(bloch_decompose(rho, cached_basis(BasisKind::gellmann, d)));
      CHECK(gm <= std::sqrt((d - 1.0) / (2.0 * d)) + 1e-9);
      const double wy = bloch_norm(bloch_decompose(rho, cached_basis(BasisKind::weyl, d)));
      CHECK(wy <= std::sqrt(d - 1.0) / d + 1e-9);
    }
  }
}

TEST_CASE("unilateral pauli action permutes the bell states") {
  const CMat id = CMat::Identity(2, 2);
  auto conj_by = [&](int i, const CMat& rho) {
    const CMat u = kron(pauli(i), id);
    return (u * rho * u.adjoint()).eval();
  };
  const CMat psi_p = bell_qubit(BellState::psi_plus);
  const CMat psi_m = bell_qubit(BellState::psi_minus);
  const CMat phi_p = bell_qubit(BellState::phi_plus);
  const CMat phi_m = bell_qubit(BellState::phi_minus);
  CHECK((conj_by(1, psi_p) - phi_p).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((conj_by(1, psi_m) - phi_m).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((conj_by(2, psi_p) - phi_m).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((conj_by(2, psi_m) - phi_p).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((conj_by(3, psi_p) - psi_m).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((conj_by(3, phi_p) - phi_m).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("two-qubit bloch data of the bell states and white noise") {
  const TwoQubitBloch bm = twoqubit_bloch(bell_qubit(BellState::psi_minus));
  CHECK(bm.r.norm() < 1e-14);
  CHECK(bm.s.norm() < 1e-14);
  CHECK((bm.t - (-1.0) * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-14);

  const TwoQubitBloch bp = twoqubit_bloch(bell_qubit(BellState::psi_plus));
  Eigen::Matrix3d expect = Eigen::Matrix3d::Zero();
  expect.diagonal() << 1, 1, -1;
  CHECK((bp.t - expect).cwiseAbs().maxCoeff() < 1e-14);

  const TwoQubitBloch bw = twoqubit_bloch(CMat::Identity(4, 4) / 4.0);
  CHECK(bw.r.norm() + bw.s.norm() + bw.t.norm() < 1e-14);
}

TEST_CASE("reduced states depend only on their own bloch vector") {
  std::mt19937_64 rng(307);
  const CMat rho = random_density(4, rng);
  const TwoQubitBloch b = twoqubit_bloch(rho);
  CMat expect_b = CMat::Identity(2, 2);
  for (int i = 0; i < 3; ++i) expect_b += b.s(i) * pauli(i + 1);
  expect_b /= 2.0;
  CHECK((partial_trace(rho, 2, 2, Subsystem::A) - expect_b).cwiseAbs().maxCoeff() < 1e-12);
  CMat expect_a = CMat::Identity(2, 2);
  for (int i = 0; i < 3; ++i) expect_a += b.r(i) * pauli(i + 1);
  expect_a /= 2.0;
  CHECK((partial_trace(rho, 2, 2, Subsystem::B) - expect_a).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two-qubit bloch round trip and norm constraint") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 10; ++rep) {
    const CMat rho = random_density(4, rng);
    const TwoQubitBloch b = twoqubit_bloch(rho);
    CHECK((twoqubit_from_bloch(b) - rho).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(b.r.squaredNorm() + b.s.squaredNorm() + b.t.squaredNorm() <= 3.0 + 1e-9);
  }
}

}  // TEST_SUITE
