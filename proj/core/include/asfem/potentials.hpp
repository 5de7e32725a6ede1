#pragma once

#include <array>

#include "asfem/geometry.hpp"

namespace asfem {

/// Frame and projected source of one (triangle, source) pair, with the
/// auxiliary quantities shared by every kernel.
struct KernelContext {
  LocalFrame frame;
  ProjectedSource src;
  bool coplanar = false;  // |w0| below 1e-10 * diameter
  /// In-plane angle subtended by the triangle at rho: 2*pi inside, 0 outside.
  double alpha = 0.0;
  /// atan(|w0| s+ / (t R+)) - atan(|w0| s- / (t R-)); beta_i = alpha_i - gamma_i.
  std::array<double, 3> gamma{};

  /// Throws SourceOnElement when the source lies on the closed triangle.
  static KernelContext make(const Triangle& t, const Vec3& r0);
};

/// Integral of R^-3 over the triangle.
double int_inv_r3(const KernelContext& c);
/// Integral of R^-5 over the triangle.
double int_inv_r5(const KernelContext& c);
/// Integral of the surface gradient of w0 / R^3, in global coordinates.
Vec3 int_grad_s_w0_r3(const KernelContext& c);
/// Integral of w_hat . grad f with f = q . R / R^3 and R = r - r0.
double dipole_flux_I0(const KernelContext& c, const Vec3& q);

struct FirstMoments {
  double iu = 0.0, iv = 0.0;
};
/// Integrals of (u - u0) and (v - v0) times w_hat . grad f.
FirstMoments first_moment_flux(const KernelContext& c, const Vec3& q);

/// Integral of f = q . R / R^3 over the triangle.
double face_integral_of_f(const KernelContext& c, const Vec3& q);

/// Solid angle of the triangle seen from the source, signed by sign(w0).
double signed_solid_angle(const KernelContext& c);

}  // namespace asfem
