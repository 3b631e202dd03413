#include "quditbell/separability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>
#include "quditbell/bases.hpp"

namespace qb {

double ppt_report(const CMat& rho, int da, int db) {
  return min_eig(partial_transpose(rho, da, db, Subsystem::A));
}

std::pair<double, double> reduction_report(const CMat& rho, int da, int db) {
  const CMat rho_a = partial_trace(rho, da, db, Subsystem::B);
  const CMat rho_b = partial_trace(rho, da, db, Subsystem::A);
  const CMat lhs_a = kron(rho_a, CMat::Identity(db, db)) - rho;
  const CMat lhs_b = kron(CMat::Identity(da, da), rho_b) - rho;
  return {min_eig(lhs_a), min_eig(lhs_b)};
}

CMat realign(const CMat& rho, int da, int db) {
  if (rho.rows() != rho.cols() || rho.rows() != static_cast<Eigen::Index>(da) * db)
    throw std::invalid_argument("realign: dimension mismatch");
  CMat out(da * da, db * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l)
          out(i * da + k, j * db + l) = rho(i * db + j, k * db + l);
  return out;
}

double realignment_norm(const CMat& rho, int da, int db) {
  const CMat r = realign(rho, da, db);
  const HermitianSpectrum es = hermitian_eigs((r.adjoint() * r).eval());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i)
    sum += std::sqrt(std::max(0.0, es.eigenvalues(i)));
  return sum;
}

DetectionReport detect(const CMat& rho, int da, int db, double tol) {
  DetectionReport rep;
  rep.ppt_min_eig = ppt_report(rho, da, db);
  std::tie(rep.reduction_min_eig_A, rep.reduction_min_eig_B) = reduction_report(rho, da, db);
  rep.realignment_norm = realignment_norm(rho, da, db);
  rep.ppt = rep.ppt_min_eig < -tol ? Verdict::entangled : Verdict::inconclusive;
  rep.reduction = (rep.reduction_min_eig_A < -tol || rep.reduction_min_eig_B < -tol)
                      ? Verdict::entangled
                      : Verdict::inconclusive;
  rep.realignment =
      rep.realignment_norm > 1.0 + tol ? Verdict::entangled : Verdict::inconclusive;
  return rep;
}

static const char* verdict_name(Verdict v) {
  return v == Verdict::entangled ? "entangled" : "inconclusive";
}

std::string to_json(const DetectionReport& rep) {
  nlohmann::json j;
  j["ppt_min_eig"] = rep.ppt_min_eig;
  j["reduction_min_eig_A"] = rep.reduction_min_eig_A;
  j["reduction_min_eig_B"] = rep.reduction_min_eig_B;
  j["realignment_norm"] = rep.realignment_norm;
  j["verdicts"]["ppt"] = verdict_name(rep.ppt);
  j["verdicts"]["reduction"] = verdict_name(rep.reduction);
  j["verdicts"]["realignment"] = verdict_name(rep.realignment);
  return j.dump(2);
}

std::vector<CMat> simplex_blocks(const SimplexState& s) {
  const int d = s.d;
  std::vector<CMat> blocks;
  blocks.reserve(d);
  for (int m = 0; m < d; ++m) {
    CMat b = CMat::Zero(d, d);
    for (int ss = 0; ss < d; ++ss)
      for (int t = 0; t < d; ++t) {
        cplx entry(0, 0);
        for (int k = 0; k < d; ++k) {
          const int l = ((ss + t - m) % d + d) % d;
          const double arg = 2.0 * std::numbers::pi * k * (ss - t) / d;
          entry += s.c(k, l) * cplx(std::cos(arg), std::sin(arg));
        }
        b(ss, t) = entry / double(d);
      }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

double detB0_slice2(double a, double b) {
  return -(2.0 * a + 2.0 * b + 1.0) *
         (8.0 * a * a + 8.0 * b * b - 11.0 * a * b + 2.0 * a + 2.0 * b - 1.0) / 729.0;
}

double detB0_slice3_line(double a, double b, double g) {
  return -(2.0 * a + 2.0 * b + 2.0 * g + 1.0) *
         (8.0 * a * a + 8.0 * b * b + 8.0 * g * g + 2.0 * a + 2.0 * b + 2.0 * g -
          11.0 * a * b - 11.0 * a * g - 11.0 * b * g - 1.0) /
         729.0;
}

double detB0_slice3_offline(double a, double b, double g) {
  return (-16.0 * a * a * a - 16.0 * b * b * b - 16.0 * g * g * g + 6.0 * b * a * a +
          6.0 * g * a * a + 6.0 * g * g * a + 6.0 * b * b * a + 6.0 * b * b * g +
          6.0 * b * g * g - 12.0 * a * a - 12.0 * b * b - 12.0 * g * g + 3.0 * a * b +
          3.0 * a * g + 3.0 * b * g - 15.0 * a * b * g + 1.0) /
         729.0;
}

bool enclosure_check(const SimplexState& s, double tol) {
  return s.c.maxCoeff() <= 1.0 / s.d + tol && s.min_weight() >= -tol;
}

// Phase-1 simplex over the line-state generators: feasibility of
// c = sum_n x_n L_n with x >= 0 (the sum-to-one constraint is implied).
bool kernel_membership(const SimplexState& s, double tol) {
  if (s.min_weight() < -tol) return false;
  const std::vector<SimplexState> lines = all_line_states(s.d);
  const int rows = s.d * s.d;
  const int vars = static_cast<int>(lines.size());

  RMat a(rows, vars);
  RVec b(rows);
  for (int k = 0; k < s.d; ++k)
    for (int l = 0; l < s.d; ++l) {
      const int r = k * s.d + l;
      b(r) = std::max(0.0, s.c(k, l));
      for (int n = 0; n < vars; ++n) a(r, n) = lines[n].c(k, l);
    }

  // tableau [A | I | b]; artificial variables start basic
  RMat tab(rows, vars + rows + 1);
  tab.block(0, 0, rows, vars) = a;
  tab.block(0, vars, rows, rows) = RMat::Identity(rows, rows);
  tab.col(vars + rows) = b;
  std::vector<int> basis(rows);
  for (int r = 0; r < rows; ++r) basis[r] = vars + r;

  RVec cost = RVec::Zero(vars + rows);
  cost.segment(vars, rows).setOnes();

  auto reduced_costs = [&]() {
    RVec y = RVec::Zero(rows);
    for (int r = 0; r < rows; ++r) y(r) = cost(basis[r]);
    RVec rc(vars + rows);
    for (int j = 0; j < vars + rows; ++j) rc(j) = cost(j) - y.dot(tab.col(j));
    return rc;
  };

  const int max_pivots = 200 * (vars + rows);
  for (int iter = 0; iter < max_pivots; ++iter) {
    const RVec rc = reduced_costs();
    int enter = -1;
    for (int j = 0; j < vars + rows; ++j)
      if (rc(j) < -1e-12) { enter = j; break; }  // Bland's rule
    if (enter < 0) break;
    int leave = -1;
    double best = 0.0;
    for (int r = 0; r < rows; ++r) {
      const double piv = tab(r, enter);
      if (piv > 1e-12) {
        const double ratio = tab(r, vars + rows) / piv;
        if (leave < 0 || ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
    }
    if (leave < 0) break;  // unbounded cannot happen for phase 1
    tab.row(leave) /= tab(leave, enter);
    for (int r = 0; r < rows; ++r)
      if (r != leave) tab.row(r) -= tab(r, enter) * tab.row(leave);
    basis[leave] = enter;
  }

  double artificial_mass = 0.0;
  for (int r = 0; r < rows; ++r)
    if (basis[r] >= vars) artificial_mass += tab(r, vars + rows);
  return artificial_mass <= tol;
}

WitnessSpec isotropic_witness(int d, double a, int p, int q) {
  WitnessSpec w;
  w.d = d;
  w.kappa = RMat::Constant(d, d, a);
  w.kappa(p, q) -= d * a;
  return w;
}

double witness_value(const CMat& rho, const WitnessSpec& w) {
  CMat op = CMat::Zero(w.d * w.d, w.d * w.d);
  for (int k = 0; k < w.d; ++k)
    for (int l = 0; l < w.d; ++l) op += w.kappa(k, l) * bell_projector(w.d, k, l);
  return (op * rho).trace().real();
}

double witness_value(const SimplexState& s, const WitnessSpec& w) {
  if (s.d != w.d) throw std::invalid_argument("witness_value: dimension mismatch");
  return (w.kappa.array() * s.c.array()).sum();
}

CMat m_phi(const WitnessSpec& w, const CVec& phi) {
  if (phi.size() != w.d) throw std::invalid_argument("m_phi: vector dimension mismatch");
  if (std::abs(phi.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("m_phi: |phi> must be a unit vector");
  CMat m = CMat::Zero(w.d, w.d);
  for (int k = 0; k < w.d; ++k)
    for (int l = 0; l < w.d; ++l) {
      const CMat wkl = weyl_operator(w.d, k, l);
      const CVec v = wkl * phi;
      m += w.kappa(k, l) * (v * v.adjoint());
    }
  return m;
}

double witness_boundary_slice2(double a, double b) {
  return 4.0 * a * a - 5.0 * a + 40.0 * b * b + (17.0 * a - 14.0) * b + 1.0;
}

double witness_boundary_slice3_line(double a, double b, double g) {
  return 40.0 * a * a + (17.0 * b + 17.0 * g - 14.0) * a + 4.0 * b * b +
         g * (4.0 * g - 5.0) - b * (19.0 * g + 5.0) + 1.0;
}

}  // namespace qb
