#include "asfem/solver.hpp"

#include <cmath>
#include <limits>

#include "asfem/errors.hpp"

namespace asfem {

Eigen::VectorXd solve_correction(const SparseMatrix& K, const Eigen::VectorXd& b,
                                 const SolverOptions& opts, SolveStats* stats) {
  const Eigen::Index N = b.size();
  SolveStats st;
  const double bnorm = b.norm();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
  if (bnorm == 0.0) {
    if (stats) *stats = st;
    return x;
  }
  if (std::abs(b.sum()) > 1e-8 * bnorm)
    throw IncompatibleRHS("source vector has a nonzero net flux");

  const Eigen::VectorXd inv_diag = K.diagonal().cwiseInverse();
  auto project = [](Eigen::VectorXd& v) { v.array() -= v.mean(); };

  Eigen::VectorXd r = b;
  project(r);
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  project(z);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  const int max_it = opts.max_iterations > 0 ? opts.max_iterations : static_cast<int>(10 * N);

  Eigen::VectorXd Kp(N);
  while (true) {
    st.residual = r.norm() / bnorm;
    if (st.residual <= opts.rel_tol) break;
    if (st.iterations >= max_it) throw NoConvergence("conjugate gradient did not converge");
    Kp.noalias() = K * p;
    const double alpha = rz / p.dot(Kp);
    x += alpha * p;
    r -= alpha * Kp;
    project(r);
    z = inv_diag.cwiseProduct(r);
    project(z);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
    ++st.iterations;
  }
  project(x);
  // report the true residual rather than the recursively updated one
  Eigen::VectorXd res = K * x - b;
  st.residual = res.norm() / bnorm;
  if (stats) *stats = st;
  return x;
}

std::vector<int> snap_to_boundary(const Mesh& m, const BoundarySurface& boundary,
                                  const std::vector<Vec3>& points) {
  const std::vector<int> nodes = boundary.nodes();
  std::vector<int> out;
  out.reserve(points.size());
  for (const Vec3& p : points) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int n : nodes) {
      const double d = (m.nodes[n] - p).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = n;
      }
    }
    out.push_back(best);
  }
  return out;
}

Eigen::VectorXd total_potential(const Mesh& m, const std::vector<int>& electrode_nodes,
                                const Eigen::VectorXd& u_c, const Dipole& d, double sigma_inf) {
  Eigen::VectorXd u(static_cast<Eigen::Index>(electrode_nodes.size()));
  for (std::size_t k = 0; k < electrode_nodes.size(); ++k) {
    const int n = electrode_nodes[k];
    u[static_cast<Eigen::Index>(k)] = u_c[n] + u_inf(d, sigma_inf, m.nodes[n]);
  }
  if (u.size() > 0) u.array() -= u.mean();
  return u;
}

ForwardModel::ForwardModel(Mesh mesh)
    : mesh_(std::move(mesh)),
      boundary_(extract_boundary(mesh_)),
      K_(assemble_stiffness(mesh_)),
      electrodes_(snap_to_boundary(mesh_, boundary_, mesh_.electrodes)) {}

ForwardSolution ForwardModel::solve(const Dipole& d, const SourceScheme& scheme,
                                    const SolverOptions& opts) const {
  ForwardSolution s;
  s.source = find_source_element(mesh_, d.position);
  const Eigen::VectorXd b = assemble_source(mesh_, boundary_, d, scheme);
  s.u_c = solve_correction(K_, b, opts, &s.stats);
  s.potentials = total_potential(mesh_, electrodes_, s.u_c, d, s.source.sigma_inf);
  return s;
}

}  // namespace asfem
