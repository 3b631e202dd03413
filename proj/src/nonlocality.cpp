#include "quditbell/nonlocality.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "quditbell/bases.hpp"
#include "quditbell/states.hpp"

namespace qb {

bool MeasurementSettings::valid(double tol) const {
  auto unitary = [&](const CMat& u) {
    return u.rows() == d && u.cols() == d &&
           (u.adjoint() * u - CMat::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
  };
  return d >= 2 && unitary(a1) && unitary(a2) && unitary(b1) && unitary(b2);
}

static CMat dot_sigma(const Eigen::Vector3d& v) {
  return v(0) * pauli(1) + v(1) * pauli(2) + v(2) * pauli(3);
}

static void check_unit(const Eigen::Vector3d& v) {
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("measurement direction must be a unit vector");
}

CMat chsh_operator(const Eigen::Vector3d& a, const Eigen::Vector3d& ap,
                   const Eigen::Vector3d& b, const Eigen::Vector3d& bp) {
  check_unit(a); check_unit(ap); check_unit(b); check_unit(bp);
  return kron(dot_sigma(a), dot_sigma(b - bp)) + kron(dot_sigma(ap), dot_sigma(b + bp));
}

double chsh_value(const CMat& rho, const Eigen::Vector3d& a, const Eigen::Vector3d& ap,
                  const Eigen::Vector3d& b, const Eigen::Vector3d& bp) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("chsh_value: need a two-qubit state");
  return std::abs((rho * chsh_operator(a, ap, b, bp)).trace().real());
}

double horodecki_max_chsh(const CMat& rho) {
  const TwoQubitBloch bl = twoqubit_bloch(rho);
  const Eigen::Matrix3d k = bl.t.transpose() * bl.t;
  const HermitianSpectrum es = hermitian_eigs(k.cast<cplx>());
  return 2.0 * std::sqrt(es.eigenvalues(2) + es.eigenvalues(1));
}

double singlet_correlation(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  check_unit(a); check_unit(b);
  const CMat op = kron(dot_sigma(a), dot_sigma(b));
  return (bell_qubit(BellState::psi_minus) * op).trace().real();
}

double cglmp_joint_prob(const CMat& rho, const MeasurementSettings& s, int a, int b,
                        int k, int l) {
  if (a < 1 || a > 2 || b < 1 || b > 2 || k < 0 || k >= s.d || l < 0 || l >= s.d)
    throw std::out_of_range("cglmp_joint_prob: setting or outcome index out of range");
  const CMat& ua = a == 1 ? s.a1 : s.a2;
  const CMat& ub = b == 1 ? s.b1 : s.b2;
  CVec v(s.d * s.d);
  for (int i = 0; i < s.d; ++i)
    for (int j = 0; j < s.d; ++j) v(i * s.d + j) = ua(i, k) * ub(j, l);
  return (v.adjoint() * rho * v)(0, 0).real();
}

static int imod(int x, int d) { return ((x % d) + d) % d; }

double prob_a_equals_b_plus(const CMat& rho, const MeasurementSettings& s, int a, int b,
                            int k) {
  double p = 0.0;
  for (int j = 0; j < s.d; ++j)
    p += cglmp_joint_prob(rho, s, a, b, imod(j + k, s.d), j);
  return p;
}

double prob_b_equals_a_plus(const CMat& rho, const MeasurementSettings& s, int a, int b,
                            int k) {
  double p = 0.0;
  for (int j = 0; j < s.d; ++j)
    p += cglmp_joint_prob(rho, s, a, b, j, imod(j + k, s.d));
  return p;
}

double cglmp_I(const CMat& rho, const MeasurementSettings& s) {
  return prob_a_equals_b_plus(rho, s, 1, 1, 0) + prob_b_equals_a_plus(rho, s, 2, 1, 1) +
         prob_a_equals_b_plus(rho, s, 2, 2, 0) + prob_b_equals_a_plus(rho, s, 1, 2, 0);
}

double cglmp_Id(const CMat& rho, const MeasurementSettings& s) {
  const int d = s.d;
  double total = 0.0;
  for (int k = 0; k < d / 2; ++k) {
    const double weight = 1.0 - 2.0 * k / (d - 1.0);
    double plus = prob_a_equals_b_plus(rho, s, 1, 1, k) +
                  prob_b_equals_a_plus(rho, s, 2, 1, k + 1) +
                  prob_a_equals_b_plus(rho, s, 2, 2, k) +
                  prob_b_equals_a_plus(rho, s, 1, 2, k);
    double minus = prob_a_equals_b_plus(rho, s, 1, 1, -k - 1) +
                   prob_b_equals_a_plus(rho, s, 2, 1, -k) +
                   prob_a_equals_b_plus(rho, s, 2, 2, -k - 1) +
                   prob_b_equals_a_plus(rho, s, 1, 2, -k - 1);
    total += weight * (plus - minus);
  }
  return total;
}

// Projector sums: sum_j |(j+k)>_Aa<(j+k)| x |j>_Bb<j| and the A<->B shifted
// counterpart, assembled directly from the basis columns.
static CMat shifted_projector_sum(const MeasurementSettings& s, int a, int b, int k,
                                  bool shift_on_a) {
  const CMat& ua = a == 1 ? s.a1 : s.a2;
  const CMat& ub = b == 1 ? s.b1 : s.b2;
  const int d = s.d;
  CMat op = CMat::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j) {
    const int ia = shift_on_a ? imod(j + k, d) : j;
    const int ib = shift_on_a ? j : imod(j + k, d);
    const CVec ca = ua.col(ia);
    const CVec cb = ub.col(ib);
    const CVec v = kron(ca, cb);
    op += v * v.adjoint();
  }
  return op;
}

BellOperator bell_operator(const MeasurementSettings& s, BellKind kind) {
  const int d = s.d;
  BellOperator out;
  out.d = d;
  out.kind = kind;
  if (kind == BellKind::I) {
    out.matrix = shifted_projector_sum(s, 1, 1, 0, true) +
                 shifted_projector_sum(s, 2, 1, 1, false) +
                 shifted_projector_sum(s, 2, 2, 0, true) +
                 shifted_projector_sum(s, 1, 2, 0, false);
    return out;
  }
  if (kind == BellKind::Id) {
    CMat m = CMat::Zero(d * d, d * d);
    for (int k = 0; k < d / 2; ++k) {
      const double weight = 1.0 - 2.0 * k / (d - 1.0);
      m += weight * (shifted_projector_sum(s, 1, 1, k, true) +
                     shifted_projector_sum(s, 2, 1, k + 1, false) +
                     shifted_projector_sum(s, 2, 2, k, true) +
                     shifted_projector_sum(s, 1, 2, k, false));
      m -= weight * (shifted_projector_sum(s, 1, 1, -k - 1, true) +
                     shifted_projector_sum(s, 2, 1, -k, false) +
                     shifted_projector_sum(s, 2, 2, -k - 1, true) +
                     shifted_projector_sum(s, 1, 2, -k - 1, false));
    }
    out.matrix = std::move(m);
    return out;
  }
  // CHSH: expectation-value combination E(A1,B1) - E(A2,B1) + E(A2,B2) + E(A1,B2)
  if (d != 2)
    throw std::invalid_argument("bell_operator: CHSH kind requires d = 2");
  auto e_op = [&](int a, int b) {
    const CMat& ua = a == 1 ? s.a1 : s.a2;
    const CMat& ub = b == 1 ? s.b1 : s.b2;
    CMat op = CMat::Zero(4, 4);
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) {
        const CVec v = kron(CVec(ua.col(j)), CVec(ub.col(l)));
        op += ((j == l) ? 1.0 : -1.0) * (v * v.adjoint());
      }
    return op;
  };
  out.matrix = e_op(1, 1) - e_op(2, 1) + e_op(2, 2) + e_op(1, 2);
  return out;
}

MeasurementSettings analytic_settings(int d) {
  if (d < 2) throw std::invalid_argument("analytic_settings: d >= 2");
  auto alice = [&](double alpha) {
    CMat u(d, d);
    for (int k = 0; k < d; ++k)
      for (int ss = 0; ss < d; ++ss) {
        const double arg = 2.0 * std::numbers::pi * ss * (k + alpha) / d;
        u(ss, k) = cplx(std::cos(arg), std::sin(arg)) / std::sqrt(double(d));
      }
    return u;
  };
  auto bob = [&](double beta) {
    CMat u(d, d);
    for (int l = 0; l < d; ++l)
      for (int ss = 0; ss < d; ++ss) {
        const double arg = 2.0 * std::numbers::pi * ss * (-l + beta) / d;
        u(ss, l) = cplx(std::cos(arg), std::sin(arg)) / std::sqrt(double(d));
      }
    return u;
  };
  MeasurementSettings s;
  s.d = d;
  s.a1 = alice(0.0);
  s.a2 = alice(0.5);
  s.b1 = bob(0.25);
  s.b2 = bob(-0.25);
  return s;
}

double cglmp_I_omega(int d) {
  const double x = std::sin(std::numbers::pi / (4.0 * d));
  return 2.0 / (d * d * x * x);
}

double cglmp_Id_omega(int d) {
  double total = 0.0;
  for (int k = 0; k < d / 2; ++k) {
    const double weight = 1.0 - 2.0 * k / (d - 1.0);
    const double sp = std::sin(std::numbers::pi * (k + 0.25) / d);
    const double sm = std::sin(std::numbers::pi * (k + 0.75) / d);
    total += weight * (1.0 / (sp * sp) - 1.0 / (sm * sm));
  }
  return 2.0 * total / (d * d);
}

double noise_threshold(int d, BellKind kind) {
  if (d < 2) throw std::invalid_argument("noise_threshold: d >= 2");
  if (kind == BellKind::Id) return 1.0 - 2.0 / cglmp_Id_omega(d);
  if (kind == BellKind::I) {
    const double i0 = cglmp_I_omega(d);
    return (i0 - 3.0) / (i0 - 4.0 / d);
  }
  throw std::invalid_argument("noise_threshold: kind must be I or Id");
}

double lhv_f(int d, int x) {
  if (x >= 0) return -2.0 * x / (d - 1.0) + 1.0;
  return -2.0 * x / (d - 1.0) - (d + 1.0) / (d - 1.0);
}

double pr_box_prob(int x, int y, int a, int b) {
  return ((a + b) % 2 == x * y) ? 0.5 : 0.0;
}

double pr_box_correlation(int x, int y) {
  double e = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) e += pr_box_prob(x, y, a, b) * (a == b ? 1.0 : -1.0);
  return e;
}

double pr_box_chsh() {
  // observable-to-input assignment x(a)=1, x(a')=0, y(b)=0, y(b')=1
  const double e_ab = pr_box_correlation(1, 0);
  const double e_abp = pr_box_correlation(1, 1);
  const double e_apbp = pr_box_correlation(0, 1);
  const double e_apb = pr_box_correlation(0, 0);
  return std::abs(e_ab - e_abp + e_apbp + e_apb);
}

}  // namespace qb
