#pragma once

#include <array>

#include "quditbell/matcore.hpp"

namespace qb {

// Geometry of locally maximally mixed two-qubit states: diagonal
// correlation vector t = (t11, t22, t33), state (1/4)(1 + sum t_i s_i x s_i).

struct TetraResult {
  bool inside = false;
  std::array<double, 4> slack{};  // the four 1 +- t1 +- t2 +- t3 combinations
};

// Positivity tetrahedron spanned by the four Bell projectors.
TetraResult tetra_membership(const Eigen::Vector3d& t);

// Separability octahedron |t1| + |t2| + |t3| <= 1 (tetrahedron cut with its
// partial-transpose reflection).
bool octahedron_membership(const Eigen::Vector3d& t);

struct CylinderResult {
  bool violating = false;
  double max_pair = 0.0;  // max of t1^2+t2^2, t1^2+t3^2, t2^2+t3^2
};

// CHSH violation iff the point leaves one of the three unit cylinders.
CylinderResult cylinder_violation(const Eigen::Vector3d& t);

// rho(t) with r = s = 0.
CMat lmm_state(const Eigen::Vector3d& t);

}  // namespace qb
