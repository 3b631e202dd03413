#pragma once

#include <string>
#include <vector>

#include "quditbell/states.hpp"

namespace qb {

enum class Verdict { entangled, inconclusive };

// PPT, reduction and realignment detectors in one pass. Each criterion is
// necessary for separability only, so the non-detecting outcome stays
// inconclusive.
struct DetectionReport {
  double ppt_min_eig = 0.0;
  double reduction_min_eig_A = 0.0;
  double reduction_min_eig_B = 0.0;
  double realignment_norm = 0.0;
  Verdict ppt = Verdict::inconclusive;
  Verdict reduction = Verdict::inconclusive;
  Verdict realignment = Verdict::inconclusive;
};

double ppt_report(const CMat& rho, int da, int db);
std::pair<double, double> reduction_report(const CMat& rho, int da, int db);

// R(rho) = sum <ij|rho|kl> |i><j| x |k><l|; the criterion norm is the trace
// norm (sum of singular values) of the realigned matrix.
CMat realign(const CMat& rho, int da, int db);
double realignment_norm(const CMat& rho, int da, int db);

DetectionReport detect(const CMat& rho, int da, int db, double tol = 1e-10);
std::string to_json(const DetectionReport& report);

// Block decomposition of rho^{T_A} for simplex states:
// (B_m)_{s,t} = (1/d) sum_k c_{k,(s+t-m) mod d} w^{k(s-t)}.
std::vector<CMat> simplex_blocks(const SimplexState& s);

// Closed forms for det(B_0) of the qutrit slice families.
double detB0_slice2(double alpha, double beta);
double detB0_slice3_line(double alpha, double beta, double gamma);
double detB0_slice3_offline(double alpha, double beta, double gamma);

// Enclosure polytope: all weights <= 1/d. Kernel polytope: c is a convex
// combination of the complete-line states (small LP feasibility problem).
bool enclosure_check(const SimplexState& s, double tol = 1e-9);
bool kernel_membership(const SimplexState& s, double tol = 1e-9);

// G-invariant witness W = sum kappa_{k,l} P_{k,l}.
struct WitnessSpec {
  int d = 0;
  RMat kappa;
};

WitnessSpec isotropic_witness(int d, double a, int p = 0, int q = 0);

double witness_value(const CMat& rho, const WitnessSpec& w);
double witness_value(const SimplexState& s, const WitnessSpec& w);

// M_phi = sum kappa_{k,l} W_{k,l}|phi><phi|W_{k,l}^dagger; the witness is
// valid iff M_phi >= 0 for every unit |phi>.
CMat m_phi(const WitnessSpec& w, const CVec& phi);

// Optimal-witness boundary polynomials for the qutrit slices (zero on the
// claimed separability boundary). Swap arguments for the mirrored and
// permuted variants.
double witness_boundary_slice2(double alpha, double beta);
double witness_boundary_slice3_line(double alpha, double beta, double gamma);

}  // namespace qb
