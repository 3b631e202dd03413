#include <doctest.h>

#include <random>

#include "quditbell/nonlocality.hpp"
#include "quditbell/qubit_geometry.hpp"
#include "quditbell/separability.hpp"

using namespace qb;

namespace {

Eigen::Vector3d sample_tetra_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const Eigen::Vector3d t(u(rng), u(rng), u(rng));
    if (tetra_membership(t).inside) return t;
  }
}

}  // namespace

TEST_SUITE("qubit_geometry") {

TEST_CASE("tetrahedron membership at the landmarks") {
  const TetraResult vertex = tetra_membership(Eigen::Vector3d(-1, -1, -1));
  CHECK(vertex.inside);
  int zero_slacks = 0;
  for (double s : vertex.slack) {
    CHECK(s >= -1e-12);
    if (std::abs(s) < 1e-12) ++zero_slacks;
  }
  CHECK(zero_slacks >= 1);

  CHECK(tetra_membership(Eigen::Vector3d::Zero()).inside);
  CHECK_FALSE(tetra_membership(Eigen::Vector3d(1, 1, 1)).inside);
}

TEST_CASE("tetra membership agrees with positivity of the reconstruction") {
  std::mt19937_64 rng(139);
  std::uniform_real_distribution<double> u(-1.3, 1.3);
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Vector3d t(u(rng), u(rng), u(rng));
    const bool inside = tetra_membership(t).inside;
    const bool psd = min_eig(lmm_state(t)) >= -1e-10;
    CHECK(inside == psd);
  }
}

TEST_CASE("octahedron landmarks") {
  CHECK(octahedron_membership(Eigen::Vector3d(0, 0, 1)));
  CHECK(octahedron_membership(Eigen::Vector3d(0, 0, -1)));
  CHECK(octahedron_membership(Eigen::Vector3d::Zero()));
  // werner line t = (-p,-p,-p): separable iff p <= 1/3
  CHECK(octahedron_membership(Eigen::Vector3d(-1.0 / 3, -1.0 / 3, -1.0 / 3)));
  CHECK_FALSE(octahedron_membership(Eigen::Vector3d(-0.35, -0.35, -0.35)));
}

TEST_CASE("octahedron equals PPT for locally maximally mixed states") {
  std::mt19937_64 rng(149);
  for (int rep = 0; rep < 500; ++rep) {
    const Eigen::Vector3d t = sample_tetra_point(rng);
    const bool octa = octahedron_membership(t);
    const bool ppt = ppt_report(lmm_state(t), 2, 2) >= -1e-10;
    CHECK(octa == ppt);
  }
}

TEST_CASE("cylinder landmarks") {
  const CylinderResult bell = cylinder_violation(Eigen::Vector3d(-1, -1, -1));
  CHECK(bell.violating);
  CHECK(bell.max_pair == doctest::Approx(2.0));

  const CylinderResult edge = cylinder_violation(Eigen::Vector3d(1, 0, 0));
  CHECK_FALSE(edge.violating);
  CHECK(edge.max_pair == doctest::Approx(1.0));

  const CylinderResult center = cylinder_violation(Eigen::Vector3d::Zero());
  CHECK_FALSE(center.violating);
  CHECK(center.max_pair == doctest::Approx(0.0));
}

TEST_CASE("cylinder criterion equals the horodecki threshold") {
  std::mt19937_64 rng(151);
  for (int rep = 0; rep < 200; ++rep) {
    const Eigen::Vector3d t = sample_tetra_point(rng);
    const CylinderResult cyl = cylinder_violation(t);
    const double chsh = horodecki_max_chsh(lmm_state(t));
    CHECK(cyl.violating == (chsh > 2.0 + 1e-9));
    CHECK(2.0 * std::sqrt(cyl.max_pair) == doctest::Approx(chsh).epsilon(1e-9));
  }
}

}  // TEST_SUITE
