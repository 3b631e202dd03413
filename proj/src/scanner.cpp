#include "quditbell/scanner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "quditbell/separability.hpp"

namespace qb {

static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ScanFamily scan_family_from_name(const std::string& name) {
  if (name == "slice2") return ScanFamily::slice2;
  if (name == "slice3-line") return ScanFamily::slice3_line;
  if (name == "slice3-offline") return ScanFamily::slice3_offline;
  if (name == "tetrahedron") return ScanFamily::tetrahedron;
  throw std::invalid_argument("unknown scan family: " + name);
}

std::string scan_family_name(ScanFamily family) {
  switch (family) {
    case ScanFamily::slice2: return "slice2";
    case ScanFamily::slice3_line: return "slice3-line";
    case ScanFamily::slice3_offline: return "slice3-offline";
    case ScanFamily::tetrahedron: return "tetrahedron";
  }
  return "?";
}

double sphere_residual(double alpha, double beta, double gamma, const SphereSpec& spec) {
  const double da = alpha - spec.center;
  const double db = beta - spec.center;
  const double dg = gamma - spec.center;
  return std::sqrt(da * da + db * db + dg * dg) - spec.radius;
}

double plane_residual(double alpha, double beta, double gamma) {
  const double k = 6.0 * std::sqrt(3.0) - 9.0;
  const double r1 = gamma - (alpha + beta + k) / 2.0;
  const double r2 = alpha - (beta + gamma + k) / 2.0;
  const double r3 = beta - (alpha + gamma + k) / 2.0;
  double best = r1;
  if (std::abs(r2) < std::abs(best)) best = r2;
  if (std::abs(r3) < std::abs(best)) best = r3;
  return best;
}

std::array<double, 3> boundary_from_scaling(const std::array<double, 3>& params,
                                            double max_id) {
  if (!(max_id > 0.0))
    throw std::invalid_argument("boundary_from_scaling: max_Id must be positive");
  const double a = 2.0 / max_id;
  return {a * params[0], a * params[1], a * params[2]};
}

// ----- grids ---------------------------------------------------------------

// slice2 positivity triangle and slice3 positivity tetrahedron vertices.
static const std::array<std::array<double, 3>, 3> kSlice2Verts = {{
    {1.0, 0.0, 0.0},
    {0.0, 1.0, 0.0},
    {-1.0 / 7.0, -1.0 / 7.0, 0.0},
}};
static const std::array<std::array<double, 3>, 4> kSlice3Verts = {{
    {1.0, 0.0, 0.0},
    {0.0, 1.0, 0.0},
    {0.0, 0.0, 1.0},
    {-1.0 / 6.0, -1.0 / 6.0, -1.0 / 6.0},
}};
// two-qubit tetrahedron in t-space, vertices = Bell-state t vectors
static const std::array<std::array<double, 3>, 4> kTetraVerts = {{
    {1.0, 1.0, -1.0},
    {-1.0, -1.0, -1.0},
    {1.0, -1.0, 1.0},
    {-1.0, 1.0, 1.0},
}};

std::vector<std::array<double, 3>> scan_grid(ScanFamily family, int n, bool boundary) {
  if (n < 1) throw std::invalid_argument("scan_grid: grid subdivisions must be >= 1");
  std::vector<std::array<double, 3>> points;
  if (family == ScanFamily::slice2) {
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) {
        const int k = n - i - j;
        if (boundary && i != 0 && j != 0 && k != 0) continue;
        std::array<double, 3> p{};
        for (int c = 0; c < 3; ++c)
          p[c] = (i * kSlice2Verts[0][c] + j * kSlice2Verts[1][c] +
                  k * kSlice2Verts[2][c]) /
                 n;
        points.push_back(p);
      }
    return points;
  }
  const auto& verts =
      family == ScanFamily::tetrahedron ? kTetraVerts : kSlice3Verts;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      for (int k = 0; i + j + k <= n; ++k) {
        const int l = n - i - j - k;
        if (boundary && i != 0 && j != 0 && k != 0 && l != 0) continue;
        std::array<double, 3> p{};
        for (int c = 0; c < 3; ++c)
          p[c] = (i * verts[0][c] + j * verts[1][c] + k * verts[2][c] +
                  l * verts[3][c]) /
                 n;
        points.push_back(p);
      }
  return points;
}

// ----- per-point evaluation ------------------------------------------------

static SimplexState tetra_simplex(const std::array<double, 3>& t) {
  // Bell-diagonal two-qubit state as a d = 2 simplex point:
  // P00 = Phi+, P10 = Phi-, P01 = Psi+, P11 = Psi-
  SimplexState s;
  s.d = 2;
  s.c = RMat::Zero(2, 2);
  s.c(0, 0) = (1.0 + t[0] - t[1] + t[2]) / 4.0;
  s.c(1, 0) = (1.0 - t[0] + t[1] + t[2]) / 4.0;
  s.c(0, 1) = (1.0 + t[0] + t[1] - t[2]) / 4.0;
  s.c(1, 1) = (1.0 - t[0] - t[1] - t[2]) / 4.0;
  return s;
}

ScanRecord evaluate_point(ScanFamily family, const std::array<double, 3>& p,
                          const ScanOptions& options, std::uint64_t index) {
  ScanRecord rec;
  rec.family = scan_family_name(family);
  rec.alpha = p[0];
  rec.beta = p[1];
  rec.gamma = family == ScanFamily::slice2 ? kNaN : p[2];

  SimplexState s;
  switch (family) {
    case ScanFamily::slice2:
      s = slice2(p[0], p[1]);
      rec.det_b0 = detB0_slice2(p[0], p[1]);
      rec.witness_1 = witness_boundary_slice2(p[0], p[1]);
      rec.witness_2 = witness_boundary_slice2(p[1], p[0]);
      rec.witness_3 = kNaN;
      break;
    case ScanFamily::slice3_line:
      s = slice3_line(p[0], p[1], p[2]);
      rec.det_b0 = detB0_slice3_line(p[0], p[1], p[2]);
      rec.witness_1 = witness_boundary_slice3_line(p[0], p[1], p[2]);
      rec.witness_2 = witness_boundary_slice3_line(p[1], p[0], p[2]);
      rec.witness_3 = witness_boundary_slice3_line(p[2], p[0], p[1]);
      break;
    case ScanFamily::slice3_offline:
      s = slice3_offline(p[0], p[1], p[2]);
      rec.det_b0 = detB0_slice3_offline(p[0], p[1], p[2]);
      rec.witness_1 = rec.witness_2 = rec.witness_3 = kNaN;
      break;
    case ScanFamily::tetrahedron:
      s = tetra_simplex(p);
      rec.det_b0 = rec.witness_1 = rec.witness_2 = rec.witness_3 = kNaN;
      break;
  }

  rec.min_eig = s.min_weight();
  double ppt = std::numeric_limits<double>::infinity();
  for (const CMat& b : simplex_blocks(s)) ppt = std::min(ppt, min_eig(b));
  rec.ppt_min_eig = ppt;
  rec.enclosure = enclosure_check(s) ? 1 : 0;
  rec.kernel = kernel_membership(s) ? 1 : 0;

  if (options.with_optimizer) {
    NelderMeadConfig cfg = options.cfg;
    cfg.seed = options.cfg.seed ^ index;
    const CMat rho = simplex_to_density(s);
    const OptimizationResult opt = maximize_cglmp(rho, s.d, cfg);
    rec.max_id = opt.best_value;
    const auto scaled = boundary_from_scaling(p, opt.best_value);
    rec.alpha_b = scaled[0];
    rec.beta_b = scaled[1];
    rec.gamma_b = family == ScanFamily::slice2 ? kNaN : scaled[2];
  } else {
    rec.max_id = rec.alpha_b = rec.beta_b = rec.gamma_b = kNaN;
  }
  return rec;
}

std::vector<ScanRecord> scan(ScanFamily family, int grid_n, const ScanOptions& options) {
  const auto grid = scan_grid(family, grid_n, options.boundary);
  std::vector<ScanRecord> records(grid.size());

  unsigned nthreads = options.threads > 0 ? options.threads
                                          : std::thread::hardware_concurrency();
  if (nthreads == 0) nthreads = 1;
  nthreads = std::min<unsigned>(nthreads, grid.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) break;
      records[i] = evaluate_point(family, grid[i], options, i);
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

// ----- emitters ------------------------------------------------------------

static const char* kHeader =
    "family,alpha,beta,gamma,min_eig,ppt_min_eig,det_b0,enclosure,kernel,"
    "witness_1,witness_2,witness_3,max_id,alpha_b,beta_b,gamma_b";

static std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string to_csv(const std::vector<ScanRecord>& records) {
  std::ostringstream out;
  out << kHeader << '\n';
  for (const ScanRecord& r : records) {
    out << r.family << ',' << fmt12(r.alpha) << ',' << fmt12(r.beta) << ','
        << fmt12(r.gamma) << ',' << fmt12(r.min_eig) << ',' << fmt12(r.ppt_min_eig)
        << ',' << fmt12(r.det_b0) << ',' << r.enclosure << ',' << r.kernel << ','
        << fmt12(r.witness_1) << ',' << fmt12(r.witness_2) << ',' << fmt12(r.witness_3)
        << ',' << fmt12(r.max_id) << ',' << fmt12(r.alpha_b) << ',' << fmt12(r.beta_b)
        << ',' << fmt12(r.gamma_b) << '\n';
  }
  return out.str();
}

std::string to_json(const std::vector<ScanRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  auto num = [](double x) -> nlohmann::json {
    if (std::isnan(x)) return nullptr;
    return x;
  };
  for (const ScanRecord& r : records) {
    nlohmann::json j;
    j["family"] = r.family;
    j["alpha"] = num(r.alpha);
    j["beta"] = num(r.beta);
    j["gamma"] = num(r.gamma);
    j["min_eig"] = num(r.min_eig);
    j["ppt_min_eig"] = num(r.ppt_min_eig);
    j["det_b0"] = num(r.det_b0);
    j["enclosure"] = r.enclosure;
    j["kernel"] = r.kernel;
    j["witness_1"] = num(r.witness_1);
    j["witness_2"] = num(r.witness_2);
    j["witness_3"] = num(r.witness_3);
    j["max_id"] = num(r.max_id);
    j["alpha_b"] = num(r.alpha_b);
    j["beta_b"] = num(r.beta_b);
    j["gamma_b"] = num(r.gamma_b);
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

void emit(const std::vector<ScanRecord>& records, const std::string& format,
          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit: cannot open for writing: " + path);
  if (format == "csv")
    out << to_csv(records);
  else if (format == "json")
    out << to_json(records);
  else
    throw std::invalid_argument("emit: format must be csv or json");
  if (!out.good()) throw std::runtime_error("emit: write failed: " + path);
}

std::vector<ScanRecord> parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_csv: cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("parse_csv: empty file: " + path);
  if (line != kHeader)
    throw std::runtime_error("parse_csv: unexpected header in " + path);

  std::vector<ScanRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 16)
      throw std::runtime_error("parse_csv: malformed row in " + path);
    ScanRecord r;
    r.family = cells[0];
    auto d = [&](int i) { return std::strtod(cells[i].c_str(), nullptr); };
    r.alpha = d(1); r.beta = d(2); r.gamma = d(3);
    r.min_eig = d(4); r.ppt_min_eig = d(5); r.det_b0 = d(6);
    r.enclosure = std::atoi(cells[7].c_str());
    r.kernel = std::atoi(cells[8].c_str());
    r.witness_1 = d(9); r.witness_2 = d(10); r.witness_3 = d(11);
    r.max_id = d(12);
    r.alpha_b = d(13); r.beta_b = d(14); r.gamma_b = d(15);
    records.push_back(std::move(r));
  }
  return records;
}

ResidualStats sphere_plane_fit(const std::vector<ScanRecord>& records,
                               const SphereSpec& spec) {
  ResidualStats st;
  double sum = 0.0;
  for (const ScanRecord& r : records) {
    if (std::isnan(r.max_id) || !(r.max_id > 0.0)) continue;
    const double g = std::isnan(r.gamma_b) ? 0.0 : r.gamma_b;
    const double rs = sphere_residual(r.alpha_b, r.beta_b, g, spec);
    const double rp = plane_residual(r.alpha_b, r.beta_b, g);
    const double best = std::min(std::abs(rs), std::abs(rp));
    ++st.points;
    if (std::abs(rs) <= std::abs(rp)) ++st.sphere_points; else ++st.plane_points;
    st.max_abs = std::max(st.max_abs, best);
    sum += best;
  }
  if (st.points > 0) st.mean_abs = sum / st.points;
  return st;
}

}  // namespace qb
