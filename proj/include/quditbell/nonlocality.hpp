#pragma once

#include "quditbell/matcore.hpp"

namespace qb {

// Two measurement bases per party; columns of each unitary are the
// eigenvectors {|k>_Aa} resp. {|l>_Bb}.
struct MeasurementSettings {
  int d = 0;
  CMat a1, a2, b1, b2;

  bool valid(double tol = 1e-10) const;
};

enum class BellKind { I, Id, CHSH };

struct BellOperator {
  int d = 0;
  BellKind kind = BellKind::Id;
  CMat matrix;
};

// |Tr(rho B(a,a',b,b'))| with B = a.sigma x (b-b').sigma + a'.sigma x (b+b').sigma.
double chsh_value(const CMat& rho, const Eigen::Vector3d& a, const Eigen::Vector3d& ap,
                  const Eigen::Vector3d& b, const Eigen::Vector3d& bp);
CMat chsh_operator(const Eigen::Vector3d& a, const Eigen::Vector3d& ap,
                   const Eigen::Vector3d& b, const Eigen::Vector3d& bp);

// 2 sqrt(lambda_1 + lambda_2) with lambda the two largest eigenvalues of
// K = T^T T; the maximum of chsh_value over all settings.
double horodecki_max_chsh(const CMat& rho);

// <Psi-| a.sigma x b.sigma |Psi-> = -a.b
double singlet_correlation(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

// P(A_a = k, B_b = l) = Tr(rho |k>_Aa<k| x |l>_Bb<l|); a, b in {1, 2}.
double cglmp_joint_prob(const CMat& rho, const MeasurementSettings& settings, int a,
                        int b, int k, int l);

// P(A_a = B_b + k) and P(B_b = A_a + k), outcome shifts mod d.
double prob_a_equals_b_plus(const CMat& rho, const MeasurementSettings& settings, int a,
                            int b, int k);
double prob_b_equals_a_plus(const CMat& rho, const MeasurementSettings& settings, int a,
                            int b, int k);

double cglmp_I(const CMat& rho, const MeasurementSettings& settings);
double cglmp_Id(const CMat& rho, const MeasurementSettings& settings);

// Hermitian operator with Tr(rho B) equal to the corresponding score;
// kind CHSH requires d = 2 and is the I_2 expectation-value combination.
BellOperator bell_operator(const MeasurementSettings& settings, BellKind kind);

// Fourier-type bases with phases alpha_1 = 0, alpha_2 = 1/2, beta_1 = 1/4,
// beta_2 = -1/4; optimal for |Omega_{0,0}> as far as is known numerically.
MeasurementSettings analytic_settings(int d);

// Closed forms for |Omega_{0,0}> under the analytic settings.
double cglmp_I_omega(int d);
double cglmp_Id_omega(int d);

// Largest admixture r of white noise before (1-r)|Omega><Omega| + r 1/d^2
// stops violating: kind Id solves 1 - 2/I_d, kind I solves the linear
// equation (1-r) I + 4r/d = 3.
double noise_threshold(int d, BellKind kind);

// Piecewise weight f(x) from the local-realism bound of I_d.
double lhv_f(int d, int x);

// PR-box correlation table: P(a,b|x,y) = 1/2 when (a+b) mod 2 = x*y.
double pr_box_prob(int x, int y, int a, int b);
double pr_box_correlation(int x, int y);
double pr_box_chsh();

}  // namespace qb
