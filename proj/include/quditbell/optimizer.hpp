#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "quditbell/matcore.hpp"
#include "quditbell/nonlocality.hpp"

namespace qb {

// Generalised Euler angles of SU(d); length d^2 - 1.
struct EulerAngles {
  int d = 0;
  RVec angles;
};

struct NelderMeadConfig {
  double reflection = 1.6;
  double expansion = 1.6;
  double contraction = 0.8;
  double shrink = 0.8;
  int restarts = 10;
  double tol_value = 1e-8;
  double tol_point = 1e-8;
  int max_iters = 20000;
  std::uint64_t seed = 0;
};

NelderMeadConfig nm_config_from_json(const std::string& path);

struct NelderMeadResult {
  RVec best_point;
  double best_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct OptimizationResult {
  double best_value = 0.0;
  RVec best_point;
  std::vector<EulerAngles> best_angles;  // the four per-party blocks, when meaningful
  std::vector<double> restart_values;
  std::vector<int> iteration_counts;
  std::vector<bool> converged;
};

// exp(i lambda_idx * angle) for the generators used by the parametrisation:
// idx = k^2 - 1 (diagonal Lambda^{k-2}, 2 <= k <= d) and idx = k^2 + 1
// (antisymmetric Lambda_a^{0k}, 1 <= k <= d - 1). Exact via the generator
// eigenstructure.
CMat matrix_exp_generator(int d, int lambda_index, double angle);

// Euler-angle product formula; unitary with det = 1.
CMat su_from_euler(const EulerAngles& e);

// Derivative-free maximisation. The start simplex has n + 1 vertices;
// throws if the objective is non-finite anywhere it is evaluated.
NelderMeadResult nelder_mead(const std::function<double(const RVec&)>& f,
                             std::vector<RVec> simplex, const NelderMeadConfig& cfg);

// Seeded multi-restart driver: random start simplices with angles uniform
// in [0, 2 pi) and vertex offsets of 0.5 rad.
OptimizationResult maximize_objective(const std::function<double(const RVec&)>& f,
                                      int nvars, const NelderMeadConfig& cfg);

// max over measurement settings of Tr(rho B_{I_d}); 4(d^2-1) angles.
OptimizationResult maximize_cglmp(const CMat& rho, int d, const NelderMeadConfig& cfg);

MeasurementSettings settings_from_angles(int d, const RVec& packed);

// Fixed-size qutrit evaluator used inside the optimizer's inner loop;
// equal to cglmp_Id(rho, settings_from_angles(3, angles)) up to roundoff.
double cglmp_Id_qutrit_fast(const CMat& rho, const RVec& angles);

// max over the four measurement directions of the CHSH value of a
// two-qubit state; 8 spherical angles.
OptimizationResult maximize_chsh(const CMat& rho, const NelderMeadConfig& cfg);

}  // namespace qb
