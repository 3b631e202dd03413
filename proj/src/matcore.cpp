#include "quditbell/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qb {

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
  return out;
}

static void check_bipartite(const CMat& rho, int da, int db) {
  if (da < 1 || db < 1 || rho.rows() != rho.cols() ||
      rho.rows() != static_cast<Eigen::Index>(da) * db)
    throw std::invalid_argument("operator dimension does not match dA*dB");
}

CMat partial_trace(const CMat& rho, int da, int db, Subsystem traced) {
  check_bipartite(rho, da, db);
  if (traced == Subsystem::B) {
    CMat out = CMat::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int k = 0; k < da; ++k)
        for (int j = 0; j < db; ++j)
          out(i, k) += rho(i * db + j, k * db + j);
    return out;
  }
  CMat out = CMat::Zero(db, db);
  for (int j = 0; j < db; ++j)
    for (int l = 0; l < db; ++l)
      for (int i = 0; i < da; ++i)
        out(j, l) += rho(i * db + j, i * db + l);
  return out;
}

CMat partial_transpose(const CMat& rho, int da, int db, Subsystem which) {
  check_bipartite(rho, da, db);
  CMat out(rho.rows(), rho.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) {
          if (which == Subsystem::A)
            out(i * db + j, k * db + l) = rho(k * db + j, i * db + l);
          else
            out(i * db + j, k * db + l) = rho(i * db + l, k * db + j);
        }
  return out;
}

double hermiticity_error(const CMat& h) {
  return (h - h.adjoint().eval()).cwiseAbs().maxCoeff();
}

static double offdiag_mass(const CMat& a) {
  double s = 0.0;
  for (Eigen::Index p = 0; p < a.rows(); ++p)
    for (Eigen::Index q = 0; q < a.cols(); ++q)
      if (p != q) s += std::norm(a(p, q));
  return std::sqrt(s);
}

HermitianSpectrum hermitian_eigs(const CMat& h) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("hermitian_eigs: matrix not square");
  if (hermiticity_error(h) > 1e-10)
    throw std::invalid_argument("hermitian_eigs: input not hermitian");

  const Eigen::Index n = h.rows();
  CMat a = (h + h.adjoint().eval()) / 2.0;  // symmetrise roundoff
  CMat v = CMat::Identity(n, n);

  const int max_sweeps = 80;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_mass(a) < 1e-12) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq < 1e-300) continue;
        const cplx phase = a(p, q) / apq;  // e^{i theta}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // annihilates a(p,q): root of t^2 + 2 tau t - 1 = 0 of smaller magnitude
        const double tau = (aqq - app) / (2.0 * apq);
        double t;
        if (tau >= 0.0)
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        else
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // J embeds [[c, s], [-s e^{-i theta}, c e^{-i theta}]] at (p,q)
        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);
        for (Eigen::Index i = 0; i < n; ++i) {
          const cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip + jqp * aiq;
          a(i, q) = s * aip + jqq * aiq;
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip + jqp * viq;
          v(i, q) = s * vip + jqq * viq;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const cplx api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api + std::conj(jqp) * aqi;
          a(q, i) = s * api + std::conj(jqq) * aqi;
        }
        a(p, q) = cplx(0, 0);
        a(q, p) = cplx(0, 0);
      }
    }
  }

  // phase convention: first component above 1e-12 made real positive
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double m = std::abs(v(i, j));
      if (m > 1e-12) {
        v.col(j) *= std::conj(v(i, j)) / m;
        break;
      }
    }
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto lex_less = [&](Eigen::Index x, Eigen::Index y) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const cplx vx = v(i, x), vy = v(i, y);
      if (vx.real() != vy.real()) return vx.real() < vy.real();
      if (vx.imag() != vy.imag()) return vx.imag() < vy.imag();
    }
    return false;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) {
                     const double lx = a(x, x).real(), ly = a(y, y).real();
                     if (lx != ly) return lx < ly;
                     return lex_less(x, y);
                   });

  HermitianSpectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.eigenvalues(j) = a(order[j], order[j]).real();
    out.eigenvectors.col(j) = v.col(order[j]);
  }
  return out;
}

cplx hs_inner(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hs_inner: shape mismatch");
  return a.conjugate().cwiseProduct(b).sum();
}

double hs_norm(const CMat& a) { return a.norm(); }

double min_eig(const CMat& h) { return hermitian_eigs(h).eigenvalues(0); }

bool is_psd(const CMat& h, double tol) { return min_eig(h) >= -tol; }

}  // namespace qb
