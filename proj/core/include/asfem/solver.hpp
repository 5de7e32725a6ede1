#pragma once

#include <vector>

#include <Eigen/Dense>

#include "asfem/assembly.hpp"

namespace asfem {

struct SolverOptions {
  double rel_tol = 1e-10;
  int max_iterations = 0;  // 0 selects 10 * N
};

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;  // ||K u - b|| / ||b||
};

/// Jacobi-preconditioned CG for the pure Neumann system on the zero-mean
/// subspace. Returns the zero-mean solution. Throws IncompatibleRHS when
/// |1^T b| > 1e-8 ||b|| and NoConvergence past the iteration limit.
Eigen::VectorXd solve_correction(const SparseMatrix& K, const Eigen::VectorXd& b,
                                 const SolverOptions& opts = {}, SolveStats* stats = nullptr);

/// Boundary node closest to each point, ties to the lowest index.
std::vector<int> snap_to_boundary(const Mesh& m, const BoundarySurface& boundary,
                                  const std::vector<Vec3>& points);

/// u_c + u_inf at the snapped electrode nodes, re-referenced to zero mean.
Eigen::VectorXd total_potential(const Mesh& m, const std::vector<int>& electrode_nodes,
                                const Eigen::VectorXd& u_c, const Dipole& d, double sigma_inf);

struct ForwardSolution {
  Eigen::VectorXd u_c;
  Eigen::VectorXd potentials;  // at the mesh electrodes
  SourceLocation source;
  SolveStats stats;
};

/// Mesh, boundary, stiffness matrix and electrode snapping shared by all
/// solves on one model.
class ForwardModel {
public:
  explicit ForwardModel(Mesh mesh);

  const Mesh& mesh() const { return mesh_; }
  const BoundarySurface& boundary() const { return boundary_; }
  const SparseMatrix& stiffness() const { return K_; }
  const std::vector<int>& electrode_nodes() const { return electrodes_; }

  ForwardSolution solve(const Dipole& d, const SourceScheme& scheme, const SolverOptions& opts = {}) const;

private:
  Mesh mesh_;
  BoundarySurface boundary_;
  SparseMatrix K_;
  std::vector<int> electrodes_;
};

}  // namespace asfem
