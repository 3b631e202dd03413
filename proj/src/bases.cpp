#include "quditbell/bases.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace qb {

CMat pauli(int i) {
  CMat m(2, 2);
  switch (i) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli index must be 1, 2 or 3");
  }
  return m;
}

OperatorBasis pauli_basis() {
  OperatorBasis b;
  b.dim = 2;
  b.kind = BasisKind::pauli;
  b.identity = CMat::Identity(2, 2);
  b.elements = {pauli(1), pauli(2), pauli(3)};
  return b;
}

CMat gellmann_symmetric(int d, int j, int k) {
  CMat m = CMat::Zero(d, d);
  m(j, k) = 1;
  m(k, j) = 1;
  return m;
}

CMat gellmann_antisymmetric(int d, int j, int k) {
  CMat m = CMat::Zero(d, d);
  m(j, k) = cplx(0, -1);
  m(k, j) = cplx(0, 1);
  return m;
}

CMat gellmann_diagonal(int d, int l) {
  CMat m = CMat::Zero(d, d);
  const double f = std::sqrt(2.0 / ((l + 1.0) * (l + 2.0)));
  for (int j = 0; j <= l; ++j) m(j, j) = f;
  m(l + 1, l + 1) = -f * (l + 1.0);
  return m;
}

OperatorBasis gellmann_basis(int d) {
  if (d < 2) throw std::invalid_argument("gellmann_basis requires d >= 2");
  OperatorBasis b;
  b.dim = d;
  b.kind = BasisKind::gellmann;
  b.identity = CMat::Identity(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) b.elements.push_back(gellmann_symmetric(d, j, k));
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) b.elements.push_back(gellmann_antisymmetric(d, j, k));
  for (int l = 0; l <= d - 2; ++l) b.elements.push_back(gellmann_diagonal(d, l));
  return b;
}

CMat weyl_operator(int d, int k, int l) {
  if (d < 2) throw std::invalid_argument("weyl_operator requires d >= 2");
  const int kk = ((k % d) + d) % d;
  const int ll = ((l % d) + d) % d;
  CMat m = CMat::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    const double arg = 2.0 * std::numbers::pi * s * kk / d;
    m(s, (s + ll) % d) = cplx(std::cos(arg), std::sin(arg));
  }
  return m;
}

OperatorBasis weyl_basis(int d) {
  if (d < 2) throw std::invalid_argument("weyl_basis requires d >= 2");
  OperatorBasis b;
  b.dim = d;
  b.kind = BasisKind::weyl;
  b.identity = CMat::Identity(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      if (k != 0 || l != 0) b.elements.push_back(weyl_operator(d, k, l));
  return b;
}

const OperatorBasis& cached_basis(BasisKind kind, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, OperatorBasis> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(kind), d);
  auto it = cache.find(key);
  if (it == cache.end()) {
    OperatorBasis b;
    switch (kind) {
      case BasisKind::pauli:
        if (d != 2) throw std::invalid_argument("pauli basis is d = 2 only");
        b = pauli_basis();
        break;
      case BasisKind::gellmann: b = gellmann_basis(d); break;
      case BasisKind::weyl: b = weyl_basis(d); break;
    }
    it = cache.emplace(key, std::move(b)).first;
  }
  return it->second;
}

BlochVector bloch_decompose(const CMat& rho, const OperatorBasis& basis) {
  if (rho.rows() != basis.dim || rho.cols() != basis.dim)
    throw std::invalid_argument("bloch_decompose: dimension mismatch");
  BlochVector out;
  out.kind = basis.kind;
  out.dim = basis.dim;
  out.coefficients.reserve(basis.elements.size());
  for (const CMat& g : basis.elements)
    out.coefficients.push_back(hs_inner(g, rho) / hs_inner(g, g));
  return out;
}

CMat bloch_reconstruct(const BlochVector& b) {
  const OperatorBasis& basis = cached_basis(b.kind, b.dim);
  if (b.coefficients.size() != basis.elements.size())
    throw std::invalid_argument("bloch_reconstruct: coefficient count mismatch");
  CMat rho = basis.identity / static_cast<double>(b.dim);
  for (std::size_t i = 0; i < basis.elements.size(); ++i)
    rho += b.coefficients[i] * basis.elements[i];
  return rho;
}

double bloch_norm(const BlochVector& b) {
  double s = 0.0;
  for (const cplx& c : b.coefficients) s += std::norm(c);
  return std::sqrt(s);
}

TwoQubitBloch twoqubit_bloch(const CMat& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("twoqubit_bloch: need a 4x4 operator");
  const CMat id = CMat::Identity(2, 2);
  TwoQubitBloch b;
  for (int n = 0; n < 3; ++n) {
    b.r(n) = (kron(pauli(n + 1), id) * rho).trace().real();
    b.s(n) = (kron(id, pauli(n + 1)) * rho).trace().real();
    for (int m = 0; m < 3; ++m)
      b.t(n, m) = (kron(pauli(n + 1), pauli(m + 1)) * rho).trace().real();
  }
  return b;
}

CMat twoqubit_from_bloch(const TwoQubitBloch& b) {
  const CMat id = CMat::Identity(2, 2);
  CMat rho = kron(id, id);
  for (int n = 0; n < 3; ++n) {
    rho += b.r(n) * kron(pauli(n + 1), id);
    rho += b.s(n) * kron(id, pauli(n + 1));
    for (int m = 0; m < 3; ++m) rho += b.t(n, m) * kron(pauli(n + 1), pauli(m + 1));
  }
  return rho / 4.0;
}

}  // namespace qb
