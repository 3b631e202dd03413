#include "quditbell/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "quditbell/bases.hpp"

namespace qb {

NelderMeadConfig nm_config_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  NelderMeadConfig cfg;
  cfg.reflection = j.value("reflection", cfg.reflection);
  cfg.expansion = j.value("expansion", cfg.expansion);
  cfg.contraction = j.value("contraction", cfg.contraction);
  cfg.shrink = j.value("shrink", cfg.shrink);
  cfg.restarts = j.value("restarts", cfg.restarts);
  cfg.tol_value = j.value("tol_value", cfg.tol_value);
  cfg.tol_point = j.value("tol_point", cfg.tol_point);
  cfg.max_iters = j.value("max_iters", cfg.max_iters);
  cfg.seed = j.value("seed", cfg.seed);
  if (cfg.reflection <= 0 || cfg.expansion <= 0 || cfg.contraction <= 0 || cfg.shrink <= 0)
    throw std::runtime_error("Nelder-Mead coefficients must be positive");
  return cfg;
}

CMat matrix_exp_generator(int d, int lambda_index, double angle) {
  // diagonal family: lambda_{k^2-1} = Lambda^{k-2}
  for (int k = 2; k <= d; ++k) {
    if (lambda_index == k * k - 1) {
      const CMat g = gellmann_diagonal(d, k - 2);
      CMat out = CMat::Identity(d, d);
      for (int j = 0; j < d; ++j) {
        const double arg = angle * g(j, j).real();
        out(j, j) = cplx(std::cos(arg), std::sin(arg));
      }
      return out;
    }
  }
  // antisymmetric family: lambda_{k^2+1} = Lambda_a^{0k}
  for (int k = 1; k <= d - 1; ++k) {
    if (lambda_index == k * k + 1) {
      CMat out = CMat::Identity(d, d);
      out(0, 0) = std::cos(angle);
      out(k, k) = std::cos(angle);
      out(0, k) = std::sin(angle);
      out(k, 0) = -std::sin(angle);
      return out;
    }
  }
  throw std::invalid_argument("matrix_exp_generator: generator index not in the parametrisation");
}

CMat su_from_euler(const EulerAngles& e) {
  const int d = e.d;
  if (d < 2) throw std::invalid_argument("su_from_euler: d >= 2");
  if (e.angles.size() != static_cast<Eigen::Index>(d) * d - 1)
    throw std::invalid_argument("su_from_euler: need d^2 - 1 angles");
  auto alpha = [&](int i) { return e.angles(i - 1); };  // 1-based indices

  CMat u = CMat::Identity(d, d);
  for (int x = 0; x <= d - 2; ++x) {
    int jx = 0;
    for (int l = 0; l <= x - 1; ++l) jx += 2 * (d - x + l);
    for (int k = 2; k <= d - x; ++k) {
      u = u * matrix_exp_generator(d, 3, alpha(2 * k - 3 + jx));
      u = u * matrix_exp_generator(d, (k - 1) * (k - 1) + 1, alpha(2 * (k - 1) + jx));
    }
  }
  for (int n = 2; n <= d; ++n)
    u = u * matrix_exp_generator(d, n * n - 1, alpha(d * d - (d + 1 - n)));
  return u;
}

NelderMeadResult nelder_mead(const std::function<double(const RVec&)>& f,
                             std::vector<RVec> simplex, const NelderMeadConfig& cfg) {
  const int n = static_cast<int>(simplex.size()) - 1;
  if (n < 1) throw std::invalid_argument("nelder_mead: need at least 2 vertices");

  auto eval = [&](const RVec& x) {
    const double v = f(x);
    if (!std::isfinite(v))
      throw std::runtime_error("nelder_mead: objective returned a non-finite value");
    return v;
  };

  std::vector<double> values(n + 1);
  for (int i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  auto order_desc = [&]() {
    std::vector<int> idx(n + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return values[a] > values[b]; });
    std::vector<RVec> sx(n + 1);
    std::vector<double> sv(n + 1);
    for (int i = 0; i <= n; ++i) {
      sx[i] = simplex[idx[i]];
      sv[i] = values[idx[i]];
    }
    simplex.swap(sx);
    values.swap(sv);
  };

  order_desc();
  RVec best_point = simplex[0];
  double best_value = values[0];

  NelderMeadResult res;
  res.converged = false;
  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    RVec centroid = RVec::Zero(simplex[0].size());
    for (int i = 0; i < n; ++i) centroid += simplex[i];
    centroid /= n;

    const RVec& worst = simplex[n];
    // a candidate this far out only arises when successive over-reflections
    // (alpha > 1) random-walk across a periodic landscape; treating it as
    // non-improving keeps every vertex finite
    auto runaway = [](const RVec& x) {
      return !x.allFinite() || x.cwiseAbs().maxCoeff() > 1e12;
    };
    const RVec reflected = centroid + cfg.reflection * (centroid - worst);
    const double f_r = runaway(reflected) ? -std::numeric_limits<double>::infinity()
                                          : eval(reflected);

    if (f_r > values[0]) {
      // expansion continues along the reflection direction
      const RVec expanded = centroid + cfg.expansion * (reflected - centroid);
      const double f_e = runaway(expanded) ? -std::numeric_limits<double>::infinity()
                                           : eval(expanded);
      if (f_e > f_r) {
        simplex[n] = expanded;
        values[n] = f_e;
      } else {
        simplex[n] = reflected;
        values[n] = f_r;
      }
    } else if (f_r > values[n]) {
      simplex[n] = reflected;
      values[n] = f_r;
    } else {
      // contraction pulls the worst vertex part of the way to the centroid
      const RVec contracted = centroid + cfg.contraction * (worst - centroid);
      const double f_c = eval(contracted);
      if (f_c >= values[n]) {
        simplex[n] = contracted;
        values[n] = f_c;
      } else {
        for (int i = 1; i <= n; ++i) {
          simplex[i] = simplex[0] + cfg.shrink * (simplex[i] - simplex[0]);
          values[i] = eval(simplex[i]);
        }
      }
    }

    order_desc();
    if (values[0] > best_value) {
      // convergence is judged between successive distinct best points
      const bool done = std::abs(values[0] - best_value) < cfg.tol_value &&
                        (simplex[0] - best_point).norm() < cfg.tol_point;
      best_value = values[0];
      best_point = simplex[0];
      if (done) {
        res.converged = true;
        ++iter;
        break;
      }
    }
    // collapsed simplex: any further best point would pass the test above
    double value_spread = 0.0, point_spread = 0.0;
    for (int i = 1; i <= n; ++i) {
      value_spread = std::max(value_spread, std::abs(values[0] - values[i]));
      point_spread = std::max(point_spread, (simplex[i] - simplex[0]).norm());
    }
    if (value_spread < cfg.tol_value && point_spread < cfg.tol_point) {
      res.converged = true;
      ++iter;
      break;
    }
  }

  res.best_point = best_point;
  res.best_value = best_value;
  res.iterations = iter;
  return res;
}

static std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

OptimizationResult maximize_objective(const std::function<double(const RVec&)>& f,
                                      int nvars, const NelderMeadConfig& cfg) {
  // In high dimension a single simplex run stagnates well short of the
  // maximum, so each restart re-seeds the simplex at its incumbent until a
  // round stops improving by more than tol_value.
  constexpr int kMaxRounds = 12;
  OptimizationResult out;
  out.best_value = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(splitmix64(cfg.seed + static_cast<std::uint64_t>(r)));
    std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
    RVec point(nvars);
    for (int i = 0; i < nvars; ++i) point(i) = uni(rng);

    double incumbent = -std::numeric_limits<double>::infinity();
    int total_iters = 0;
    bool settled = false;
    for (int round = 0; round < kMaxRounds; ++round) {
      std::vector<RVec> simplex(nvars + 1, point);
      for (int i = 1; i <= nvars; ++i) simplex[i](i - 1) += 0.5;
      const NelderMeadResult res = nelder_mead(f, std::move(simplex), cfg);
      total_iters += res.iterations;
      const bool improved = res.best_value > incumbent + cfg.tol_value;
      if (res.best_value > incumbent) {
        incumbent = res.best_value;
        point = res.best_point;
      }
      if (!improved) {
        settled = true;
        break;
      }
    }
    out.restart_values.push_back(incumbent);
    out.iteration_counts.push_back(total_iters);
    out.converged.push_back(settled);
    if (incumbent > out.best_value) {
      out.best_value = incumbent;
      out.best_point = point;
    }
  }
  return out;
}

MeasurementSettings settings_from_angles(int d, const RVec& packed) {
  const int block = d * d - 1;
  if (packed.size() != 4 * block)
    throw std::invalid_argument("settings_from_angles: need 4(d^2 - 1) angles");
  auto make = [&](int which) {
    EulerAngles e;
    e.d = d;
    e.angles = packed.segment(which * block, block);
    return su_from_euler(e);
  };
  MeasurementSettings s;
  s.d = d;
  s.a1 = make(0);
  s.a2 = make(1);
  s.b1 = make(2);
  s.b2 = make(3);
  return s;
}

// Allocation-free qutrit evaluator for the optimizer's inner loop; agrees
// with cglmp_Id(rho, settings_from_angles(3, x)) to roundoff (unit-tested).
namespace {

using M3 = Eigen::Matrix3cd;
using V9 = Eigen::Matrix<cplx, 9, 1>;
using M9 = Eigen::Matrix<cplx, 9, 9>;

inline M3 su3_fast(const double* a) {
  auto diag3 = [](double t) {
    return M3(Eigen::Vector3cd(cplx(std::cos(t), std::sin(t)),
                               cplx(std::cos(t), -std::sin(t)), cplx(1, 0))
                  .asDiagonal());
  };
  auto rot = [](int i, int j, double t) {
    M3 m = M3::Identity();
    m(i, i) = std::cos(t);
    m(j, j) = std::cos(t);
    m(i, j) = std::sin(t);
    m(j, i) = -std::sin(t);
    return m;
  };
  const double s3 = 1.0 / std::sqrt(3.0);
  M3 d8 = M3::Identity();
  d8(0, 0) = cplx(std::cos(a[7] * s3), std::sin(a[7] * s3));
  d8(1, 1) = d8(0, 0);
  d8(2, 2) = cplx(std::cos(2 * a[7] * s3), -std::sin(2 * a[7] * s3));
  // generator sequence (3,2,3,5,3,2,3,8)
  return M3(diag3(a[0]) * rot(0, 1, a[1]) * diag3(a[2]) * rot(0, 2, a[3]) *
            diag3(a[4]) * rot(0, 1, a[5]) * diag3(a[6]) * d8);
}

struct QutritIdObjective {
  M9 rho;

  double operator()(const RVec& x) const {
    M3 u[4];
    for (int b = 0; b < 4; ++b) u[b] = su3_fast(x.data() + 8 * b);
    // joint probability tables for the four setting pairs (a1b1, a1b2, a2b1, a2b2)
    double p[2][2][3][3];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            V9 v;
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j) v(i * 3 + j) = u[a](i, k) * u[2 + b](j, l);
            p[a][b][k][l] = (v.adjoint() * rho * v)(0, 0).real();
          }
    auto a_eq_b = [&](int a, int b, int k) {
      double t = 0.0;
      for (int j = 0; j < 3; ++j) t += p[a][b][(((j + k) % 3) + 3) % 3][j];
      return t;
    };
    auto b_eq_a = [&](int a, int b, int k) {
      double t = 0.0;
      for (int j = 0; j < 3; ++j) t += p[a][b][j][(((j + k) % 3) + 3) % 3];
      return t;
    };
    const double plus = a_eq_b(0, 0, 0) + b_eq_a(1, 0, 1) + a_eq_b(1, 1, 0) + b_eq_a(0, 1, 0);
    const double minus =
        a_eq_b(0, 0, -1) + b_eq_a(1, 0, 0) + a_eq_b(1, 1, -1) + b_eq_a(0, 1, -1);
    return plus - minus;
  }
};

}  // namespace

double cglmp_Id_qutrit_fast(const CMat& rho, const RVec& angles) {
  QutritIdObjective obj{M9(rho)};
  return obj(angles);
}

OptimizationResult maximize_cglmp(const CMat& rho, int d, const NelderMeadConfig& cfg) {
  if (rho.rows() != static_cast<Eigen::Index>(d) * d || rho.rows() != rho.cols())
    throw std::invalid_argument("maximize_cglmp: state must live on C^d x C^d");
  const int block = d * d - 1;
  std::function<double(const RVec&)> objective;
  if (d == 3) {
    objective = QutritIdObjective{M9(rho)};
  } else {
    objective = [&rho, d](const RVec& x) {
      return cglmp_Id(rho, settings_from_angles(d, x));
    };
  }
  OptimizationResult out = maximize_objective(objective, 4 * block, cfg);
  for (int which = 0; which < 4; ++which) {
    EulerAngles e;
    e.d = d;
    e.angles = out.best_point.segment(which * block, block);
    out.best_angles.push_back(std::move(e));
  }
  return out;
}

OptimizationResult maximize_chsh(const CMat& rho, const NelderMeadConfig& cfg) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("maximize_chsh: need a two-qubit state");
  auto unit = [](double theta, double phi) {
    return Eigen::Vector3d(std::sin(theta) * std::cos(phi),
                           std::sin(theta) * std::sin(phi), std::cos(theta));
  };
  auto objective = [&](const RVec& x) {
    return chsh_value(rho, unit(x(0), x(1)), unit(x(2), x(3)), unit(x(4), x(5)),
                      unit(x(6), x(7)));
  };
  return maximize_objective(objective, 8, cfg);
}

}  // namespace qb
