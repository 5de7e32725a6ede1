#pragma once

#include <Eigen/Sparse>

#include "asfem/elements.hpp"
#include "asfem/mesh.hpp"

namespace asfem {

using SparseMatrix = Eigen::SparseMatrix<double>;

SparseMatrix assemble_stiffness(const Mesh& m);

struct SourceLocation {
  int tet = -1;
  double sigma_inf = 0.0;
};

/// Lowest-index tet containing r0 (barycentric tolerance 1e-12). Throws
/// SourceOutsideMesh or AnisotropicSourceRegion.
SourceLocation find_source_element(const Mesh& m, const Vec3& r0);

/// Source vector integrals in closed form or with the fixed rule of the
/// given degree.
struct SourceScheme {
  enum class Kind { Analytical, Quadrature };
  Kind kind = Kind::Analytical;
  int order = 0;

  static SourceScheme analytical() { return {Kind::Analytical, 0}; }
  static SourceScheme quadrature(int order) { return {Kind::Quadrature, order}; }
};

struct SourceVectors {
  Eigen::VectorXd surface;  // b_s
  Eigen::VectorXd volume;   // b_v
  SourceLocation location;
};

/// b_s over the boundary and b_v over elements whose tensor differs from
/// sigma_inf * I, before any projection.
SourceVectors assemble_source_parts(const Mesh& m, const BoundarySurface& boundary, const Dipole& d,
                                    const SourceScheme& scheme);

/// b = -(b_s + b_v), projected onto zero mean.
Eigen::VectorXd assemble_source(const Mesh& m, const BoundarySurface& boundary, const Dipole& d,
                                const SourceScheme& scheme);

}  // namespace asfem
