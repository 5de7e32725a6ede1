#include "asfem_cli/studies.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

namespace asfem::cli {

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

Triangle element_triangle(double a) {
  const double h = a * std::sqrt(3.0);
  return Triangle{{Vec3(0.0, -a / 2, -h / 6), Vec3(0.0, a / 2, -h / 6), Vec3(0.0, 0.0, h / 3)}};
}

Tetrahedron element_tetrahedron(double a) {
  const double h = a * std::sqrt(3.0);
  return Tetrahedron{{Vec3(0.0, 0.0, h / 3), Vec3(0.0, a / 2, -h / 6), Vec3(0.0, -a / 2, -h / 6),
                      Vec3(-h / 3, 0.0, 0.0)}};
}

Dipole element_dipole(double d) { return {Vec3(d, 0.0, 0.0), Vec3(kElementMoment, 0.0, 0.0)}; }

Shape parse_shape(const std::string& s) {
  if (s == "tri" || s == "triangle") return Shape::Triangle;
  if (s == "tet" || s == "tetrahedron") return Shape::Tetrahedron;
  throw Error("unknown shape '" + s + "' (tri|tet)");
}

std::vector<ElementErrorRow> element_error(Shape shape, const std::vector<double>& ratios,
                                           const std::vector<int>& orders, double a) {
  std::vector<ElementErrorRow> rows;
  const auto sc = ConductivityTensor::iso(kElementSigmaC);
  for (double ratio : ratios) {
    if (!(ratio > 0.0)) throw Error("d/a ratios must be positive");
    const Dipole d = element_dipole(ratio * a);
    if (shape == Shape::Triangle) {
      const Triangle t = element_triangle(a);
      const Eigen::Vector3d ba = surface_source_analytical(t, d);
      for (int n : orders)
        rows.push_back({ratio, n, (surface_source_quadrature(t, d, n) - ba).norm() / ba.norm()});
    } else {
      const Tetrahedron t = element_tetrahedron(a);
      const Eigen::Vector4d ba = volume_source_analytical(t, sc, kElementSigmaInf, d);
      for (int n : orders)
        rows.push_back({ratio, n,
                        (volume_source_quadrature(t, sc, kElementSigmaInf, d, n) - ba).norm() / ba.norm()});
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ElementErrorRow>& rows) {
  out << "d_over_a,order,re_e\n";
  for (const auto& r : rows) out << fmt(r.d_over_a) << ',' << r.order << ',' << fmt(r.re_e) << '\n';
}

SourceScheme parse_method(const std::string& method, int order) {
  if (method == "as") return SourceScheme::analytical();
  if (method == "fs") {
    get_rule(3, order);  // rejects unsupported orders early
    return SourceScheme::quadrature(order);
  }
  if (method.size() == 3 && method.rfind("fs", 0) == 0) return parse_method("fs", method[2] - '0');
  throw Error("unknown method '" + method + "' (as|fs)");
}

std::string method_name(const SourceScheme& s) {
  return s.kind == SourceScheme::Kind::Analytical ? "as" : "fs" + std::to_string(s.order);
}

void write_solution_csv(std::ostream& out, const ForwardModel& model, const ForwardSolution& s) {
  out << "kind,index,x,y,z,value\n";
  const auto& nodes = model.electrode_nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Vec3& p = model.mesh().nodes[nodes[k]];
    out << "electrode," << k << ',' << fmt(p.x()) << ',' << fmt(p.y()) << ',' << fmt(p.z()) << ','
        << fmt(s.potentials[static_cast<Eigen::Index>(k)]) << '\n';
  }
  out << "stats,iterations,,,," << s.stats.iterations << '\n';
  out << "stats,residual,,,," << fmt(s.stats.residual) << '\n';
}

namespace {

// uniform direction and a unit vector orthogonal to it, from one stream
std::pair<Vec3, Vec3> random_frame(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec3 dir;
  do dir = Vec3(g(rng), g(rng), g(rng));
  while (dir.norm() < 1e-6);
  dir.normalize();
  Vec3 t;
  do {
    const Vec3 v(g(rng), g(rng), g(rng));
    t = v - v.dot(dir) * dir;
  } while (t.norm() < 1e-6);
  return {dir, t.normalized()};
}

std::vector<ConductivityTensor> iso_tensors(const std::vector<double>& s) {
  std::vector<ConductivityTensor> t;
  for (double v : s) t.push_back(ConductivityTensor::iso(v));
  return t;
}

}  // namespace

SphereStudyConfig SphereStudyConfig::from(const Config& c) {
  c.check_keys({"radii", "conductivities", "level", "distances_mm", "dipoles", "orientation", "methods",
                "n_terms", "tol", "seed"});
  SphereStudyConfig s;
  s.radii = c.get_doubles("radii", s.radii);
  s.conductivities = c.get_doubles("conductivities", s.conductivities);
  s.level = c.get_int("level", s.level);
  s.distances_mm = c.get_doubles("distances_mm", s.distances_mm);
  s.dipoles = c.get_int("dipoles", s.dipoles);
  s.orientation = c.get_string("orientation", s.orientation);
  s.methods = c.get_strings("methods", s.methods);
  s.n_terms = c.get_int("n_terms", s.n_terms);
  s.tol = c.get_double("tol", s.tol);
  s.seed = static_cast<std::uint64_t>(c.get_int("seed", static_cast<int>(s.seed)));
  return s;
}

std::vector<SphereStudyRow> sphere_study(const SphereStudyConfig& cfg) {
  if (cfg.orientation != "tangential" && cfg.orientation != "radial")
    throw Error("orientation must be tangential or radial");
  std::vector<SourceScheme> schemes;
  for (const auto& m : cfg.methods) schemes.push_back(parse_method(m));

  const ForwardModel model(build_layered_sphere_mesh(cfg.radii, cfg.level, iso_tensors(cfg.conductivities)));
  const SphereModel sphere{cfg.radii, cfg.conductivities, cfg.n_terms};
  std::vector<Vec3> points;
  for (int n : model.electrode_nodes()) points.push_back(model.mesh().nodes[n]);
  const double r_in = cfg.radii.back();
  SolverOptions opts;
  opts.rel_tol = cfg.tol;

  std::mt19937_64 rng(cfg.seed);
  std::vector<SphereStudyRow> rows;
  for (double dist : cfg.distances_mm) {
    const double r = r_in - 1e-3 * dist;
    if (!(r > 0.0)) throw Error("distance exceeds the innermost radius");
    for (int k = 0; k < cfg.dipoles; ++k) {
      const auto [dir, tan] = random_frame(rng);
      const Dipole d{r * dir, 10e-9 * (cfg.orientation == "radial" ? dir : tan)};
      const Eigen::VectorXd ua = sphere_analytic_potential(sphere, d, points);
      for (const auto& s : schemes) {
        const ForwardSolution sol = model.solve(d, s, opts);
        rows.push_back({dist, r / r_in, k, method_name(s), metrics(sol.potentials, ua)});
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SphereStudyRow>& rows) {
  out << "distance_mm,eccentricity,dipole,method,re,rdm,mag\n";
  for (const auto& r : rows)
    out << fmt(r.distance_mm) << ',' << fmt(r.eccentricity) << ',' << r.dipole << ',' << r.method << ','
        << fmt(r.err.re) << ',' << fmt(r.err.rdm) << ',' << fmt(r.err.mag) << '\n';
}

DrefStudyConfig DrefStudyConfig::from(const Config& c) {
  c.check_keys({"radii", "conductivities", "levels", "d_over_a", "dipoles", "orders", "tol", "seed"});
  DrefStudyConfig s;
  s.radii = c.get_doubles("radii", s.radii);
  s.conductivities = c.get_doubles("conductivities", s.conductivities);
  s.levels = c.get_ints("levels", s.levels);
  s.d_over_a = c.get_doubles("d_over_a", s.d_over_a);
  s.dipoles = c.get_int("dipoles", s.dipoles);
  s.orders = c.get_ints("orders", s.orders);
  s.tol = c.get_double("tol", s.tol);
  s.seed = static_cast<std::uint64_t>(c.get_int("seed", static_cast<int>(s.seed)));
  return s;
}

std::vector<DrefRow> dref_study(const DrefStudyConfig& cfg) {
  if (cfg.radii.size() < 2) throw Error("the d/a study needs at least two layers");
  const int src_region = static_cast<int>(cfg.radii.size()) - 1;
  const double sigma_inf = cfg.conductivities.back();
  std::vector<DrefRow> rows;
  SolverOptions opts;
  opts.rel_tol = cfg.tol;
  for (int level : cfg.levels) {
    const ForwardModel model(build_layered_sphere_mesh(cfg.radii, level, iso_tensors(cfg.conductivities)));
    const Mesh& m = model.mesh();

    std::vector<int> jump_regions;
    for (const auto& [id, s] : m.regions)
      if (id != src_region && std::abs(s.mean_diagonal() - sigma_inf) > 1e-12 * sigma_inf) jump_regions.push_back(id);
    const double a = mean_edge_length(m, jump_regions);
    std::vector<Triangle> faces;
    for (std::size_t e = 0; e < m.tets.size(); ++e) {
      if (std::find(jump_regions.begin(), jump_regions.end(), m.tets[e].region) == jump_regions.end()) continue;
      const Tetrahedron t = m.tet_geometry(e);
      for (int k = 0; k < 4; ++k) faces.push_back(t.outward_face(k));
    }
    auto distance = [&](const Vec3& x) {
      double d = std::numeric_limits<double>::infinity();
      for (const auto& f : faces) d = std::min(d, distance_to_triangle(f, x));
      return d;
    };

    std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(level));
    const double r_in = cfg.radii[src_region];
    for (double target : cfg.d_over_a) {
      const double r = r_in - target * a;
      if (!(r > 0.0)) throw Error("d/a target places the dipole beyond the centre");
      double sum_ratio = 0.0;
      std::vector<double> sum_re(cfg.orders.size(), 0.0);
      for (int k = 0; k < cfg.dipoles; ++k) {
        const auto [dir, tan] = random_frame(rng);
        const Dipole d{r * dir, 10e-9 * tan};
        sum_ratio += distance(d.position) / a;
        const ForwardSolution as = model.solve(d, SourceScheme::analytical(), opts);
        for (std::size_t j = 0; j < cfg.orders.size(); ++j) {
          const ForwardSolution fs = model.solve(d, SourceScheme::quadrature(cfg.orders[j]), opts);
          sum_re[j] += metric_re_s(as.potentials, fs.potentials);
        }
      }
      for (std::size_t j = 0; j < cfg.orders.size(); ++j)
        rows.push_back({level, a, sum_ratio / cfg.dipoles, cfg.orders[j], sum_re[j] / cfg.dipoles});
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<DrefRow>& rows) {
  out << "level,a,d_over_a,order,re_s\n";
  for (const auto& r : rows)
    out << r.level << ',' << fmt(r.a) << ',' << fmt(r.d_over_a) << ',' << r.order << ',' << fmt(r.re_s) << '\n';
}

double threshold_crossing(const std::vector<DrefRow>& rows, int level, int order, double threshold) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows)
    if (r.level == level && r.order == order) pts.emplace_back(r.d_over_a, r.re_s);
  std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].second < threshold) continue;
    if (i == 0) return pts[0].first;
    const auto [x0, y0] = pts[i - 1];
    const auto [x1, y1] = pts[i];
    const double t = (std::log(threshold) - std::log(y0)) / (std::log(y1) - std::log(y0));
    return std::exp(std::log(x0) + t * (std::log(x1) - std::log(x0)));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace asfem::cli
