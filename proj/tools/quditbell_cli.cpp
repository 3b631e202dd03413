#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quditbell/bases.hpp"
#include "quditbell/nonlocality.hpp"
#include "quditbell/optimizer.hpp"
#include "quditbell/qubit_geometry.hpp"
#include "quditbell/scanner.hpp"
#include "quditbell/separability.hpp"
#include "quditbell/states.hpp"

using namespace qb;

namespace {

struct NamedState {
  int da = 0;
  int db = 0;
  CMat rho;
};

std::vector<double> parse_params(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

NamedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file: " + path);
  nlohmann::json j;
  in >> j;
  NamedState st;
  st.da = j.at("dims").at(0).get<int>();
  st.db = j.at("dims").at(1).get<int>();
  const int n = st.da * st.db;
  const auto& entries = j.at("matrix");
  if (static_cast<int>(entries.size()) != n * n)
    throw std::runtime_error("state file: matrix needs " + std::to_string(n * n) +
                             " [re,im] pairs in row-major order");
  st.rho.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const auto& cell = entries.at(i * n + k);
      st.rho(i, k) = cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  return st;
}

// family:params shorthand, e.g. isotropic:3,0.25 or werner:0.8, or a path
// to a JSON file {dims: [dA,dB], matrix: [[re,im],...]}.
NamedState parse_state(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::vector<double> p =
      colon == std::string::npos ? std::vector<double>{} : parse_params(spec.substr(colon + 1));

  auto simplex = [](const SimplexState& s) {
    NamedState st;
    st.da = st.db = s.d;
    st.rho = simplex_to_density(s);
    return st;
  };
  if (name == "isotropic" && p.size() == 2)
    return simplex(isotropic(static_cast<int>(p[0]), p[1]));
  if (name == "werner" && p.size() == 1) return simplex(werner_qubit(p[0]));
  if (name == "slice2" && p.size() == 2) return simplex(slice2(p[0], p[1]));
  if (name == "slice3-line" && p.size() == 3)
    return simplex(slice3_line(p[0], p[1], p[2]));
  if (name == "slice3-offline" && p.size() == 3)
    return simplex(slice3_offline(p[0], p[1], p[2]));
  if (name == "bell" && p.size() == 3) {
    NamedState st;
    st.da = st.db = static_cast<int>(p[0]);
    st.rho = bell_projector(st.da, static_cast<int>(p[1]), static_cast<int>(p[2]));
    return st;
  }
  if (name == "psi-mv" && p.empty()) {
    NamedState st;
    st.da = st.db = 3;
    const CVec v = psi_mv_qutrit();
    st.rho = v * v.adjoint();
    return st;
  }
  if (colon == std::string::npos) return load_state_file(spec);
  throw std::runtime_error("unrecognised state spec: " + spec);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QUDITBELL_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

int run_bases_check(int d) {
  int failures = 0;
  auto report = [&](const std::string& what, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << what << '\n';
    if (!ok) ++failures;
  };

  std::vector<BasisKind> kinds = {BasisKind::gellmann, BasisKind::weyl};
  if (d == 2) kinds.insert(kinds.begin(), BasisKind::pauli);
  for (BasisKind kind : kinds) {
    const OperatorBasis& b = cached_basis(kind, d);
    const char* label = kind == BasisKind::pauli ? "pauli"
                        : kind == BasisKind::gellmann ? "gellmann"
                                                      : "weyl";
    bool traceless = true, orthogonal = true, structured = true;
    for (std::size_t i = 0; i < b.elements.size(); ++i) {
      if (std::abs(b.elements[i].trace()) > 1e-12) traceless = false;
      for (std::size_t j = i + 1; j < b.elements.size(); ++j)
        if (std::abs(hs_inner(b.elements[i], b.elements[j])) > 1e-10) orthogonal = false;
      if (kind == BasisKind::weyl) {
        const CMat& w = b.elements[i];
        if ((w.adjoint() * w - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12)
          structured = false;
      } else if (hermiticity_error(b.elements[i]) > 1e-12) {
        structured = false;
      }
    }
    report(std::string(label) + ": " + std::to_string(b.elements.size()) +
               " traceless elements",
           traceless && static_cast<int>(b.elements.size()) == d * d - 1);
    report(std::string(label) + ": mutual HS orthogonality", orthogonal);
    report(std::string(label) + (kind == BasisKind::weyl ? ": unitary elements"
                                                         : ": hermitian elements"),
           structured);
  }

  bool weyl_rel = true;
  const double two_pi = 2.0 * 3.14159265358979323846;
  for (int j = 0; j < d && weyl_rel; ++j)
    for (int l = 0; l < d && weyl_rel; ++l)
      for (int k = 0; k < d && weyl_rel; ++k)
        for (int m = 0; m < d && weyl_rel; ++m) {
          const cplx phase(std::cos(two_pi * k * l / d), std::sin(two_pi * k * l / d));
          if ((weyl_operator(d, j, l) * weyl_operator(d, k, m) -
               phase * weyl_operator(d, j + k, l + m))
                  .cwiseAbs()
                  .maxCoeff() > 1e-12)
            weyl_rel = false;
        }
  report("weyl relations W_jl W_km = w^{kl} W_{j+k,l+m}", weyl_rel);

  bool bell_on = true;
  for (int m = 0; m < d && bell_on; ++m)
    for (int n = 0; n < d && bell_on; ++n)
      for (int k = 0; k < d && bell_on; ++k)
        for (int l = 0; l < d && bell_on; ++l) {
          const cplx ip =
              generalized_bell_vector(d, m, n).dot(generalized_bell_vector(d, k, l));
          const double expect = (m == k && n == l) ? 1.0 : 0.0;
          if (std::abs(ip - cplx(expect, 0)) > 1e-12) bell_on = false;
        }
  report("generalized bell basis orthonormality", bell_on);
  return failures == 0 ? 0 : 1;
}

nlohmann::json optimization_to_json(const OptimizationResult& r) {
  nlohmann::json j;
  j["best_value"] = r.best_value;
  j["restart_values"] = r.restart_values;
  j["iteration_counts"] = r.iteration_counts;
  std::vector<bool> conv(r.converged.begin(), r.converged.end());
  j["converged"] = conv;
  nlohmann::json angles = nlohmann::json::array();
  const char* names[] = {"a1", "a2", "b1", "b2"};
  for (std::size_t i = 0; i < r.best_angles.size() && i < 4; ++i) {
    nlohmann::json block;
    block["party"] = names[i];
    block["angles"] = std::vector<double>(
        r.best_angles[i].angles.data(),
        r.best_angles[i].angles.data() + r.best_angles[i].angles.size());
    angles.push_back(std::move(block));
  }
  j["best_angles"] = std::move(angles);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bipartite qudit states: operator bases, entanglement detection, "
               "CGLMP optimisation and magic-simplex scans"};
  app.require_subcommand(1);

  auto* bases_cmd = app.add_subcommand("bases", "operator basis self-tests");
  bases_cmd->require_subcommand(1);
  auto* bases_check = bases_cmd->add_subcommand("check", "orthogonality/unitarity checks");
  int check_d = 3;
  bases_check->add_option("--d", check_d, "local dimension")->required();

  auto* detect_cmd = app.add_subcommand("detect", "entanglement detection report (JSON)");
  std::string detect_state, detect_dims;
  detect_cmd->add_option("--state", detect_state, "family:params or state file")->required();
  detect_cmd->add_option("--dims", detect_dims, "dA,dB (required for state files)");

  auto* chsh_cmd = app.add_subcommand("chsh", "Horodecki maximal CHSH value");
  std::string chsh_state;
  chsh_cmd->add_option("--state", chsh_state, "family:params or state file")->required();

  auto* cglmp_cmd = app.add_subcommand("cglmp", "CGLMP inequality tools");
  cglmp_cmd->require_subcommand(1);
  auto* analytic_cmd = cglmp_cmd->add_subcommand(
      "analytic", "I, I_d and noise thresholds at the analytic settings");
  int analytic_d = 3;
  analytic_cmd->add_option("--d", analytic_d, "local dimension")->required();

  auto* max_cmd = cglmp_cmd->add_subcommand("maximize", "maximise I_d over settings (JSON)");
  std::string max_state, max_config;
  int max_d = 0;
  std::uint64_t max_seed = default_seed();
  max_cmd->add_option("--state", max_state, "family:params or state file")->required();
  max_cmd->add_option("--d", max_d, "local dimension (inferred when omitted)");
  max_cmd->add_option("--seed", max_seed, "restart seed (env QUDITBELL_SEED)");
  max_cmd->add_option("--config", max_config, "Nelder-Mead config JSON");

  auto* scan_cmd = app.add_subcommand("scan", "parameter sweep over a state family");
  std::string family_opt, scan_out, scan_format = "csv", scan_config;
  int scan_grid_n = 20, scan_threads = 0;
  bool scan_optimize = false, scan_boundary = false;
  std::uint64_t scan_seed = default_seed();
  scan_cmd->add_option("--family", family_opt, "slice2|slice3-line|slice3-offline|tetrahedron")
      ->required();
  scan_cmd->add_option("--grid", scan_grid_n, "barycentric subdivisions")->required();
  scan_cmd->add_flag("--optimize", scan_optimize, "run the CGLMP optimizer per point");
  scan_cmd->add_flag("--boundary", scan_boundary, "sample the positivity boundary");
  scan_cmd->add_option("--out", scan_out, "output path")->required();
  scan_cmd->add_option("--format", scan_format, "csv|json");
  scan_cmd->add_option("--seed", scan_seed, "base seed (per point: seed xor index)");
  scan_cmd->add_option("--config", scan_config, "Nelder-Mead config JSON");
  scan_cmd->add_option("--threads", scan_threads, "worker threads (0 = all cores)");

  auto* geo_cmd = app.add_subcommand("geometry", "closed-form boundary geometry");
  geo_cmd->require_subcommand(1);
  auto* sphere_cmd =
      geo_cmd->add_subcommand("sphere-check", "fit scan records to the sphere/planes");
  std::string sphere_in;
  sphere_cmd->add_option("--in", sphere_in, "scan CSV with optimizer columns")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bases_check) return run_bases_check(check_d);

    if (*detect_cmd) {
      const NamedState st = parse_state(detect_state);
      int da = st.da, db = st.db;
      if (!detect_dims.empty()) {
        const auto dims = parse_params(detect_dims);
        if (dims.size() != 2) throw std::runtime_error("--dims expects dA,dB");
        da = static_cast<int>(dims[0]);
        db = static_cast<int>(dims[1]);
      }
      std::cout << to_json(detect(st.rho, da, db)) << '\n';
      return 0;
    }

    if (*chsh_cmd) {
      const NamedState st = parse_state(chsh_state);
      if (st.da != 2 || st.db != 2)
        throw std::runtime_error("chsh requires a two-qubit state");
      std::printf("%.12g\n", horodecki_max_chsh(st.rho));
      return 0;
    }

    if (*analytic_cmd) {
      const int d = analytic_d;
      const MeasurementSettings s = analytic_settings(d);
      const CVec omega = generalized_bell_vector(d, 0, 0);
      const CMat rho = omega * omega.adjoint();
      std::printf("d I I_d r_max_I[%%] r_max_Id[%%]\n");
      std::printf("%d %.5f %.5f %.4f %.4f\n", d, cglmp_I(rho, s), cglmp_Id(rho, s),
                  100.0 * noise_threshold(d, BellKind::I),
                  100.0 * noise_threshold(d, BellKind::Id));
      return 0;
    }

    if (*max_cmd) {
      const NamedState st = parse_state(max_state);
      const int d = max_d > 0 ? max_d : st.da;
      if (st.da != st.db || st.da != d)
        throw std::runtime_error("cglmp maximize expects a d x d bipartite state");
      NelderMeadConfig cfg;
      if (!max_config.empty()) cfg = nm_config_from_json(max_config);
      if (max_cmd->count("--seed") || max_config.empty()) cfg.seed = max_seed;
      const OptimizationResult r = maximize_cglmp(st.rho, d, cfg);
      std::cout << optimization_to_json(r).dump(2) << '\n';
      return 0;
    }

    if (*scan_cmd) {
      ScanOptions opt;
      opt.boundary = scan_boundary;
      opt.with_optimizer = scan_optimize;
      opt.threads = scan_threads;
      if (!scan_config.empty()) opt.cfg = nm_config_from_json(scan_config);
      if (scan_cmd->count("--seed") || scan_config.empty()) opt.cfg.seed = scan_seed;
      const auto records = scan(scan_family_from_name(family_opt), scan_grid_n, opt);
      emit(records, scan_format, scan_out);
      std::cerr << records.size() << " records -> " << scan_out << '\n';
      return 0;
    }

    if (*sphere_cmd) {
      const auto records = parse_csv(sphere_in);
      const ResidualStats st = sphere_plane_fit(records);
      nlohmann::json j;
      j["points"] = st.points;
      j["sphere_points"] = st.sphere_points;
      j["plane_points"] = st.plane_points;
      j["max_abs_residual"] = st.max_abs;
      j["mean_abs_residual"] = st.mean_abs;
      std::cout << j.dump(2) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
