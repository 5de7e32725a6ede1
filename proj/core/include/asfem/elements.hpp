#pragma once

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "asfem/geometry.hpp"

namespace asfem {

/// Symmetric 3x3 tensor stored as (xx, yy, zz, xy, xz, yz), in S/m.
struct ConductivityTensor {
  std::array<double, 6> c{};

  static ConductivityTensor iso(double s) { return {{s, s, s, 0.0, 0.0, 0.0}}; }
  static ConductivityTensor from_matrix(const Eigen::Matrix3d& m);

  Eigen::Matrix3d matrix() const;
  double mean_diagonal() const { return (c[0] + c[1] + c[2]) / 3.0; }
  /// Deviation from mean_diagonal() * I within rel_tol of that mean.
  bool is_isotropic(double rel_tol = 1e-10) const;
  bool is_zero() const;
  /// sigma - s * I
  ConductivityTensor minus_identity(double s) const;

  bool operator==(const ConductivityTensor&) const = default;
};

struct Dipole {
  Vec3 position = Vec3::Zero();  // m
  Vec3 moment = Vec3::Zero();    // A m
};

/// f = q . R / R^3 with R = r - r0.
double dipole_kernel(const Dipole& d, const Vec3& r);
Vec3 dipole_kernel_gradient(const Dipole& d, const Vec3& r);

/// Potential of the dipole in an unbounded medium of conductivity sigma_inf.
double u_inf(const Dipole& d, double sigma_inf, const Vec3& r);

/// K = Lambda^T sigma Lambda / (36 V).
Eigen::Matrix4d stiffness_element(const Tetrahedron& t, const ConductivityTensor& sigma);

/// Entry i is the integral of phi_i <grad f, n> / (4 pi) over the triangle.
/// n is the unit normal of the node winding unless `outward` is given, in
/// which case the nodes are re-wound internally and entries keep the input
/// node order.
Eigen::Vector3d surface_source_analytical(const Triangle& t, const Dipole& d,
                                          const std::optional<Vec3>& outward = std::nullopt);
Eigen::Vector3d surface_source_quadrature(const Triangle& t, const Dipole& d, int order,
                                          const std::optional<Vec3>& outward = std::nullopt);

/// Entry i is the integral of <sigma_c grad f, grad phi_i> / (4 pi sigma_inf).
Eigen::Vector4d volume_source_analytical(const Tetrahedron& t, const ConductivityTensor& sigma_c,
                                         double sigma_inf, const Dipole& d);
Eigen::Vector4d volume_source_quadrature(const Tetrahedron& t, const ConductivityTensor& sigma_c,
                                         double sigma_inf, const Dipole& d, int order);

}  // namespace asfem
