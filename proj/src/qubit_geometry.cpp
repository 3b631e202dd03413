#include "quditbell/qubit_geometry.hpp"

#include <cmath>

#include "quditbell/bases.hpp"

namespace qb {

TetraResult tetra_membership(const Eigen::Vector3d& t) {
  TetraResult r;
  r.slack[0] = 1.0 + t(0) + t(1) - t(2);
  r.slack[1] = 1.0 - t(0) - t(1) - t(2);
  r.slack[2] = 1.0 + t(0) - t(1) + t(2);
  r.slack[3] = 1.0 - t(0) + t(1) + t(2);
  r.inside = true;
  for (double s : r.slack)
    if (s < -1e-12) r.inside = false;
  return r;
}

bool octahedron_membership(const Eigen::Vector3d& t) {
  return std::abs(t(0)) + std::abs(t(1)) + std::abs(t(2)) <= 1.0 + 1e-12;
}

CylinderResult cylinder_violation(const Eigen::Vector3d& t) {
  CylinderResult r;
  const double a = t(0) * t(0), b = t(1) * t(1), c = t(2) * t(2);
  r.max_pair = std::max({a + b, a + c, b + c});
  r.violating = r.max_pair > 1.0 + 1e-12;
  return r;
}

CMat lmm_state(const Eigen::Vector3d& t) {
  CMat rho = CMat::Identity(4, 4);
  for (int i = 0; i < 3; ++i) rho += t(i) * kron(pauli(i + 1), pauli(i + 1));
  return rho / 4.0;
}

}  // namespace qb
