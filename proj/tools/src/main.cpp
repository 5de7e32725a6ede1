#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "asfem/asfem.hpp"
#include "asfem_cli/config.hpp"
#include "asfem_cli/studies.hpp"

namespace {

using namespace asfem;
using namespace asfem::cli;

// Writes to --out when given, otherwise to stdout.
class Output {
public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw Error("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    if (!file_) return;
    file_->close();
    if (!*file_) throw Error("failed writing output");
  }

private:
  std::unique_ptr<std::ofstream> file_;
};

Config study_config(const std::string& path, CLI::App* cmd, std::uint64_t seed, double tol) {
  Config c = path.empty() ? Config{} : Config::load(path);
  if (cmd->count("--seed")) c.set("seed", std::to_string(seed));
  if (cmd->count("--tol")) c.set("tol", fmt(tol));
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytical-subtraction FEM forward solver for EEG"};
  app.require_subcommand(1);

  std::string out;
  std::string config_path;
  std::uint64_t seed = 1;
  double tol = 1e-10;

  auto* ee = app.add_subcommand("element-error", "Element-vector error of quadrature against closed form");
  std::string shape = "tri";
  std::string ratios = "0.05,0.1,0.2,0.5,1,2,5,10";
  std::string orders = "2,4,6";
  double side = 1e-3;
  ee->add_option("--shape", shape, "tri|tet")->capture_default_str();
  ee->add_option("--ratios", ratios, "comma-separated d/a values")->capture_default_str();
  ee->add_option("--orders", orders, "comma-separated quadrature orders")->capture_default_str();
  ee->add_option("--side", side, "element side length a (m)")->capture_default_str();
  ee->add_option("--out", out, "CSV output (default stdout)");

  auto* so = app.add_subcommand("solve", "Single forward solve; electrode potentials as CSV");
  std::string mesh_path;
  std::string dipole;
  std::string method = "as";
  int order = 2;
  so->add_option("--mesh", mesh_path, "mesh file")->required();
  so->add_option("--dipole", dipole, "x,y,z,qx,qy,qz (m, A m)")->required();
  so->add_option("--method", method, "as|fs")->capture_default_str();
  so->add_option("--order", order, "quadrature order for fs (2|4|6)")->capture_default_str();
  so->add_option("--tol", tol, "CG relative residual")->capture_default_str();
  so->add_option("--out", out, "CSV output (default stdout)");

  auto* ss = app.add_subcommand("sphere-study", "AS/FS accuracy on a layered sphere against the series solution");
  auto* ds = app.add_subcommand("dref-study", "RE_s between AS and FS as a function of d/a");
  for (auto* c : {ss, ds}) {
    c->add_option("--config", config_path, "key=value study configuration");
    c->add_option("--seed", seed, "random source placement seed");
    c->add_option("--tol", tol, "CG relative residual");
    c->add_option("--out", out, "CSV output (default stdout)");
  }

  auto* ms = app.add_subcommand("make-sphere", "Write a layered sphere mesh");
  std::string radii = "0.092,0.086,0.08,0.078";
  std::string sigmas = "0.33,0.01,1.79,0.33";
  int level = 3;
  ms->add_option("--radii", radii, "outer to inner radii (m)")->capture_default_str();
  ms->add_option("--conductivities", sigmas, "isotropic conductivity per layer (S/m)")->capture_default_str();
  ms->add_option("--level", level, "refinement level 0..7")->capture_default_str();
  ms->add_option("--out", out, "mesh output")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    Output o(out);
    if (*ee) {
      write_csv(o.stream(), element_error(parse_shape(shape), parse_doubles(ratios), parse_ints(orders), side));
    } else if (*so) {
      const auto v = parse_doubles(dipole);
      if (v.size() != 6) throw Error("--dipole expects 6 comma-separated values");
      const SourceScheme scheme = parse_method(method, order);
      const ForwardModel model(load_mesh(mesh_path));
      SolverOptions opts;
      opts.rel_tol = tol;
      const Dipole d{Vec3(v[0], v[1], v[2]), Vec3(v[3], v[4], v[5])};
      write_solution_csv(o.stream(), model, model.solve(d, scheme, opts));
    } else if (*ss) {
      write_csv(o.stream(), sphere_study(SphereStudyConfig::from(study_config(config_path, ss, seed, tol))));
    } else if (*ds) {
      write_csv(o.stream(), dref_study(DrefStudyConfig::from(study_config(config_path, ds, seed, tol))));
    } else if (*ms) {
      std::vector<ConductivityTensor> t;
      for (double s : parse_doubles(sigmas)) t.push_back(ConductivityTensor::iso(s));
      write_mesh(build_layered_sphere_mesh(parse_doubles(radii), level, t), o.stream());
    }
    o.close();
  } catch (const std::exception& e) {
    std::cerr << "asfem: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
