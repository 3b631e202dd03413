#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quditbell/matcore.hpp"

namespace qb {

// Bipartite state on C^da x C^db; db = 1 marks a single system.
struct DensityMatrix {
  int da = 0;
  int db = 1;
  CMat mat;

  bool valid(double tol = 1e-10) const;
};

enum class BellState { psi_plus, psi_minus, phi_plus, phi_minus };

CVec bell_vector(BellState which);
CMat bell_qubit(BellState which);

// |Omega_{k,l}> = (W_{k,l} x 1)|Omega_{0,0}> and its projector P_{k,l}.
CVec generalized_bell_vector(int d, int k, int l);
CMat bell_projector(int d, int k, int l);

// Point of the magic simplex: d x d grid of real mixing weights over the
// Bell projectors P_{k,l}. Family constructors do not reject weights that
// leave positivity; min_weight() doubles as the min-eigenvalue report since
// the corresponding density matrix is diagonal in the Bell basis.
struct SimplexState {
  int d = 0;
  RMat c;  // c(k, l)

  double weight_sum() const { return c.sum(); }
  double min_weight() const { return c.minCoeff(); }
  bool physical(double tol = 1e-12) const;
};

CMat simplex_to_density(const SimplexState& s);

SimplexState isotropic(int d, double alpha);
SimplexState werner_qubit(double p);
SimplexState slice2(double alpha, double beta);
SimplexState slice3_line(double alpha, double beta, double gamma);
SimplexState slice3_offline(double alpha, double beta, double gamma);

// Complete line through (k0,l0) with direction (dk,dl): the d points
// (k0 + x dk, l0 + x dl) mod d must be distinct.
struct LineSpec {
  int k0 = 0, l0 = 0;
  int dk = 0, dl = 1;
};

SimplexState line_state(int d, const LineSpec& spec);
std::vector<SimplexState> all_line_states(int d);

// Non-maximally entangled qutrit state maximising the I_3 violation:
// (|00> + g|11> + |22>)/sqrt(2 + g^2) with g = (sqrt(11) - sqrt(3))/2.
CVec psi_mv_qutrit();

struct SchmidtData {
  RVec coefficients;  // descending, sum 1
  int rank = 0;
  CMat left;   // columns, orthonormal
  CMat right;  // columns, orthonormal
};

SchmidtData schmidt(const CVec& psi, int da, int db);
bool purity_separability_test(const CVec& psi, int da, int db);
double entanglement_vn(const CVec& psi, int da, int db);

// (k,l) -> M (k,l)^T + shift mod d, det(M) mod d in {1, d-1}. The det = d-1
// case is anti-unitary and acts at the grid level only.
struct PhaseSpaceMap {
  Eigen::Matrix2i m = Eigen::Matrix2i::Identity();
  Eigen::Vector2i shift = Eigen::Vector2i::Zero();

  bool valid(int d) const;
  std::pair<int, int> apply(int d, int k, int l) const;
};

SimplexState phase_space_apply(const SimplexState& s, const PhaseSpaceMap& map);

CMat translation_unitary(int d, int m, int n);  // W_{m,n} x 1
CMat rotation_unitary(int d);                   // U_R x conj(U_R): (k,l) -> (l,-k)
CMat shear_unitary(int d);                      // U_V x conj(U_V): (k,l) -> (k+l,l)

// Exhaustive search for a map sending p1 -> (0,0) and p2 -> (0,1).
std::optional<PhaseSpaceMap> map_pair_to_canonical(int d, std::pair<int, int> p1,
                                                   std::pair<int, int> p2);

}  // namespace qb
