#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "quditbell/optimizer.hpp"
#include "quditbell/states.hpp"

namespace qb {

enum class ScanFamily { slice2, slice3_line, slice3_offline, tetrahedron };

ScanFamily scan_family_from_name(const std::string& name);
std::string scan_family_name(ScanFamily family);

// One grid point of a slice sweep. Non-applicable numeric fields hold NaN;
// max_id and the boundary-scaled parameters are filled only when the
// optimizer ran. For the tetrahedron family the parameters are (t11,t22,t33).
struct ScanRecord {
  std::string family;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  double min_eig = 0.0;
  double ppt_min_eig = 0.0;
  double det_b0 = 0.0;
  int enclosure = 0;
  int kernel = 0;
  double witness_1 = 0.0, witness_2 = 0.0, witness_3 = 0.0;
  double max_id = 0.0;
  double alpha_b = 0.0, beta_b = 0.0, gamma_b = 0.0;
};

// Boundary-of-nonlocality sphere and plane specification for the qutrit
// slice3-line family (both coordinates on the main diagonal).
struct SphereSpec {
  double radius = (413.0 * 1.7320508075688772935 - 558.0) / 156.0;
  double center = (-361.0 + 186.0 * 1.7320508075688772935) / 156.0;
};

double sphere_residual(double alpha, double beta, double gamma,
                       const SphereSpec& spec = SphereSpec{});
// gamma - (alpha + beta + 6 sqrt(3) - 9)/2; the permutation with the
// smallest magnitude is returned (signed).
double plane_residual(double alpha, double beta, double gamma);

// Multiplies the family parameters by 2 / max_Id; valid whenever
// max_Id > 0 because Tr(B_{I_d}) = 0 makes I_d linear in the noise mixing.
std::array<double, 3> boundary_from_scaling(const std::array<double, 3>& params,
                                            double max_id);

struct ScanOptions {
  bool boundary = false;        // sample the positivity boundary instead of the region
  bool with_optimizer = false;  // fill max_id and the scaled parameters
  NelderMeadConfig cfg;         // cfg.seed is the base seed; per point seed ^ index
  int threads = 0;              // 0 = hardware concurrency
};

// Barycentric grid with n subdivisions over the positivity region (or its
// boundary); one record per grid point, deterministic under a fixed seed.
std::vector<ScanRecord> scan(ScanFamily family, int grid_n, const ScanOptions& options);

std::vector<std::array<double, 3>> scan_grid(ScanFamily family, int grid_n,
                                             bool boundary);
ScanRecord evaluate_point(ScanFamily family, const std::array<double, 3>& p,
                          const ScanOptions& options, std::uint64_t point_index);

void emit(const std::vector<ScanRecord>& records, const std::string& format,
          const std::string& path);
std::string to_csv(const std::vector<ScanRecord>& records);
std::string to_json(const std::vector<ScanRecord>& records);
std::vector<ScanRecord> parse_csv(const std::string& path);

struct ResidualStats {
  int points = 0;       // records carrying an optimizer value
  int sphere_points = 0;
  int plane_points = 0;
  double max_abs = 0.0;
  double mean_abs = 0.0;
};

// Residuals of the boundary-scaled points against the sphere/plane spec;
// each point is attributed to whichever surface fits it better.
ResidualStats sphere_plane_fit(const std::vector<ScanRecord>& records,
                               const SphereSpec& spec = SphereSpec{});

}  // namespace qb
