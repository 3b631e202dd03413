#include "quditbell/states.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include "quditbell/bases.hpp"

namespace qb {

bool DensityMatrix::valid(double tol) const {
  if (mat.rows() != mat.cols()) return false;
  if (mat.rows() != static_cast<Eigen::Index>(da) * db) return false;
  if (hermiticity_error(mat) > tol) return false;
  if (std::abs(mat.trace().real() - 1.0) > tol || std::abs(mat.trace().imag()) > tol)
    return false;
  return min_eig(mat) >= -tol;
}

CVec bell_vector(BellState which) {
  CVec v = CVec::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  switch (which) {
    case BellState::psi_plus: v(1) = r; v(2) = r; break;
    case BellState::psi_minus: v(1) = r; v(2) = -r; break;
    case BellState::phi_plus: v(0) = r; v(3) = r; break;
    case BellState::phi_minus: v(0) = r; v(3) = -r; break;
  }
  return v;
}

CMat bell_qubit(BellState which) {
  const CVec v = bell_vector(which);
  return v * v.adjoint();
}

CVec generalized_bell_vector(int d, int k, int l) {
  if (d < 2) throw std::invalid_argument("generalized_bell_vector: d >= 2");
  CVec omega = CVec::Zero(d * d);
  for (int s = 0; s < d; ++s) omega(s * d + s) = 1.0 / std::sqrt(double(d));
  const CMat w = weyl_operator(d, k, l);
  const CMat u = kron(w, CMat::Identity(d, d));
  return u * omega;
}

CMat bell_projector(int d, int k, int l) {
  const CVec v = generalized_bell_vector(d, k, l);
  return v * v.adjoint();
}

bool SimplexState::physical(double tol) const {
  return min_weight() >= -tol && std::abs(weight_sum() - 1.0) <= tol;
}

CMat simplex_to_density(const SimplexState& s) {
  if (s.d < 2 || s.c.rows() != s.d || s.c.cols() != s.d)
    throw std::invalid_argument("simplex_to_density: malformed state");
  CMat rho = CMat::Zero(s.d * s.d, s.d * s.d);
  for (int k = 0; k < s.d; ++k)
    for (int l = 0; l < s.d; ++l) rho += s.c(k, l) * bell_projector(s.d, k, l);
  return rho;
}

static SimplexState uniform_noise(int d, double weight) {
  SimplexState s;
  s.d = d;
  s.c = RMat::Constant(d, d, weight / (d * d));
  return s;
}

SimplexState isotropic(int d, double alpha) {
  SimplexState s = uniform_noise(d, 1.0 - alpha);
  s.c(0, 0) += alpha;
  return s;
}

SimplexState werner_qubit(double p) {
  // |Psi-><Psi-| = P_{1,1} for d = 2
  SimplexState s = uniform_noise(2, 1.0 - p);
  s.c(1, 1) += p;
  return s;
}

SimplexState slice2(double alpha, double beta) {
  SimplexState s = uniform_noise(3, 1.0 - alpha - beta);
  s.c(0, 0) += alpha;
  s.c(1, 0) += beta;
  return s;
}

SimplexState slice3_line(double alpha, double beta, double gamma) {
  SimplexState s = uniform_noise(3, 1.0 - alpha - beta - gamma);
  s.c(0, 0) += alpha;
  s.c(1, 0) += beta;
  s.c(2, 0) += gamma;
  return s;
}

SimplexState slice3_offline(double alpha, double beta, double gamma) {
  SimplexState s = uniform_noise(3, 1.0 - alpha - beta - gamma);
  s.c(0, 0) += alpha;
  s.c(1, 0) += beta;
  s.c(0, 1) += gamma;
  return s;
}

static int imod(int x, int d) { return ((x % d) + d) % d; }

SimplexState line_state(int d, const LineSpec& spec) {
  std::set<std::pair<int, int>> points;
  for (int x = 0; x < d; ++x)
    points.insert({imod(spec.k0 + x * spec.dk, d), imod(spec.l0 + x * spec.dl, d)});
  if (static_cast<int>(points.size()) != d)
    throw std::invalid_argument("line_state: direction does not generate d distinct points");
  SimplexState s;
  s.d = d;
  s.c = RMat::Zero(d, d);
  for (const auto& [k, l] : points) s.c(k, l) = 1.0 / d;
  return s;
}

std::vector<SimplexState> all_line_states(int d) {
  std::set<std::set<std::pair<int, int>>> seen;
  std::vector<SimplexState> out;
  for (int k0 = 0; k0 < d; ++k0)
    for (int l0 = 0; l0 < d; ++l0)
      for (int dk = 0; dk < d; ++dk)
        for (int dl = 0; dl < d; ++dl) {
          if (dk == 0 && dl == 0) continue;
          std::set<std::pair<int, int>> points;
          for (int x = 0; x < d; ++x)
            points.insert({imod(k0 + x * dk, d), imod(l0 + x * dl, d)});
          if (static_cast<int>(points.size()) != d) continue;
          if (!seen.insert(points).second) continue;
          SimplexState s;
          s.d = d;
          s.c = RMat::Zero(d, d);
          for (const auto& [k, l] : points) s.c(k, l) = 1.0 / d;
          out.push_back(std::move(s));
        }
  return out;
}

CVec psi_mv_qutrit() {
  const double g = (std::sqrt(11.0) - std::sqrt(3.0)) / 2.0;
  const double n = 2.0 + g * g;
  CVec v = CVec::Zero(9);
  v(0) = 1.0 / std::sqrt(n);
  v(4) = g / std::sqrt(n);
  v(8) = 1.0 / std::sqrt(n);
  return v;
}

SchmidtData schmidt(const CVec& psi, int da, int db) {
  if (psi.size() != static_cast<Eigen::Index>(da) * db)
    throw std::invalid_argument("schmidt: vector length does not match dA*dB");
  if (std::abs(psi.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("schmidt: state vector not normalised");
  const CMat rho = psi * psi.adjoint();
  const CMat rho_a = partial_trace(rho, da, db, Subsystem::B);
  const HermitianSpectrum es = hermitian_eigs(rho_a);

  SchmidtData out;
  std::vector<int> keep;
  for (int i = da - 1; i >= 0; --i)
    if (es.eigenvalues(i) > 1e-12) keep.push_back(i);
  out.rank = static_cast<int>(keep.size());
  out.coefficients.resize(out.rank);
  out.left.resize(da, out.rank);
  out.right.resize(db, out.rank);
  for (int j = 0; j < out.rank; ++j) {
    const double lam = es.eigenvalues(keep[j]);
    out.coefficients(j) = lam;
    out.left.col(j) = es.eigenvectors.col(keep[j]);
    // |v_j> = (<u_j| x 1)|psi> / sqrt(lambda_j)
    CVec v = CVec::Zero(db);
    for (int i = 0; i < da; ++i)
      for (int jj = 0; jj < db; ++jj)
        v(jj) += std::conj(out.left(i, j)) * psi(i * db + jj);
    out.right.col(j) = v / std::sqrt(lam);
  }
  return out;
}

bool purity_separability_test(const CVec& psi, int da, int db) {
  return schmidt(psi, da, db).rank == 1;
}

double entanglement_vn(const CVec& psi, int da, int db) {
  const SchmidtData sd = schmidt(psi, da, db);
  double e = 0.0;
  for (int i = 0; i < sd.rank; ++i) {
    const double lam = sd.coefficients(i);
    if (lam > 0.0) e -= lam * std::log2(lam);
  }
  return e;
}

bool PhaseSpaceMap::valid(int d) const {
  const int det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const int r = imod(det, d);
  return r == 1 || r == d - 1;
}

std::pair<int, int> PhaseSpaceMap::apply(int d, int k, int l) const {
  return {imod(m(0, 0) * k + m(0, 1) * l + shift(0), d),
          imod(m(1, 0) * k + m(1, 1) * l + shift(1), d)};
}

SimplexState phase_space_apply(const SimplexState& s, const PhaseSpaceMap& map) {
  if (!map.valid(s.d))
    throw std::invalid_argument("phase_space_apply: det(M) mod d must be 1 or d-1");
  SimplexState out;
  out.d = s.d;
  out.c = RMat::Zero(s.d, s.d);
  for (int k = 0; k < s.d; ++k)
    for (int l = 0; l < s.d; ++l) {
      const auto [kk, ll] = map.apply(s.d, k, l);
      out.c(kk, ll) = s.c(k, l);
    }
  return out;
}

CMat translation_unitary(int d, int m, int n) {
  return kron(weyl_operator(d, m, n), CMat::Identity(d, d));
}

CMat rotation_unitary(int d) {
  CMat u = CMat::Zero(d, d);
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t) {
      const double arg = -2.0 * std::numbers::pi * s * t / d;
      u(t, s) = cplx(std::cos(arg), std::sin(arg)) / std::sqrt(double(d));
    }
  return kron(u, u.conjugate());
}

CMat shear_unitary(int d) {
  CMat u = CMat::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    const double arg = -std::numbers::pi * s * (s + d) / d;
    u(s, s) = cplx(std::cos(arg), std::sin(arg));
  }
  return kron(u, u.conjugate());
}

std::optional<PhaseSpaceMap> map_pair_to_canonical(int d, std::pair<int, int> p1,
                                                   std::pair<int, int> p2) {
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          PhaseSpaceMap map;
          map.m << a, b, c, e;
          if (!map.valid(d)) continue;
          map.shift(0) = imod(-(a * p1.first + b * p1.second), d);
          map.shift(1) = imod(-(c * p1.first + e * p1.second), d);
          if (map.apply(d, p2.first, p2.second) == std::make_pair(0, 1))
            return map;
        }
  return std::nullopt;
}

}  // namespace qb
