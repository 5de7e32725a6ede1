#pragma once

// Test-side oracles: every analytic kernel has a brute-force twin here that
// integrates the defining integrand with the adaptive subdivision scheme.

#include <cmath>
#include <numbers>
#include <random>

#include "asfem/asfem.hpp"

namespace asfem::test {

inline constexpr double kPi = std::numbers::pi;

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  double uniform(double a = -1.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(g); }
  Vec3 vec(double a = -1.0, double b = 1.0) { return Vec3(uniform(a, b), uniform(a, b), uniform(a, b)); }
  Vec3 unit() {
    Vec3 v;
    do v = vec();
    while (v.norm() < 0.1 || v.norm() > 1.0);
    return v.normalized();
  }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
};

/// Random triangle with bounded aspect (min angle well away from 0).
inline Triangle random_triangle(Rng& r) {
  for (;;) {
    Triangle t{{r.vec(), r.vec(), r.vec()}};
    if (t.area() > 0.15 * t.diameter() * t.diameter()) return t;
  }
}

inline Tetrahedron random_tetrahedron(Rng& r) {
  for (;;) {
    Tetrahedron t{{r.vec(), r.vec(), r.vec(), r.vec()}};
    const double h = t.diameter();
    if (std::abs(t.signed_volume()) > 0.02 * h * h * h) return t.positively_oriented();
  }
}

/// Source at exactly distance ratio*diam from the closed triangle: either
/// above an interior point, or off an edge point along a direction in that
/// edge's normal cone (which includes coplanar placements).
inline Vec3 source_near(Rng& r, const Triangle& t, double ratio) {
  const double dist = ratio * t.diameter();
  const Vec3 n = t.normal().normalized();
  if (r.uniform(0.0, 1.0) < 0.5) {
    double a = r.uniform(0.0, 1.0), b = r.uniform(0.0, 1.0);
    if (a + b > 1.0) a = 1.0 - a, b = 1.0 - b;
    const Vec3 c = t.p[0] + a * (t.p[1] - t.p[0]) + b * (t.p[2] - t.p[0]);
    return c + (r.uniform() < 0.0 ? -dist : dist) * n;
  }
  const int k = static_cast<int>(r.uniform(0.0, 3.0)) % 3;
  const Vec3& pa = t.p[k];
  const Vec3& pb = t.p[(k + 1) % 3];
  const Vec3& opp = t.p[(k + 2) % 3];
  const Vec3 c = pa + r.uniform(0.0, 1.0) * (pb - pa);
  Vec3 m = (pb - pa).cross(n).normalized();
  if (m.dot(opp - pa) > 0.0) m = -m;
  const double theta = r.uniform(0.0, 0.5 * kPi);
  return c + dist * (std::cos(theta) * (r.uniform() < 0.0 ? -n : n) + std::sin(theta) * m);
}

inline Eigen::Vector3d barycentric(const Triangle& t, const Vec3& x) {
  const Vec3 N = t.normal();
  const double A2 = N.squaredNorm();
  return Eigen::Vector3d((t.p[1] - x).cross(t.p[2] - x).dot(N) / A2, (t.p[2] - x).cross(t.p[0] - x).dot(N) / A2,
                         (t.p[0] - x).cross(t.p[1] - x).dot(N) / A2);
}

inline double rel_err(double a, double b, double scale) { return std::abs(a - b) / scale; }

struct KernelOracle {
  double inv_r3, inv_r3_abs;
  double inv_r5;
  Vec3 grad_s;
  double grad_s_abs;
  double flux, flux_abs;
  Eigen::Vector2d moments;
  Eigen::Vector2d moments_abs;
  double face_f, face_f_abs;
};

/// All six kernel integrals plus the integrals of their absolute values,
/// which set the relative-error scale for signed integrands.
inline KernelOracle kernel_oracle(const KernelContext& c, const Triangle& t, const Vec3& r0, const Vec3& q,
                                  double tol = 1e-12) {
  const Vec3 w = c.frame.w_hat;
  const double w0 = c.src.w0;
  auto grad_f = [&](const Vec3& R, double r) -> Vec3 {
    return q / (r * r * r) - 3.0 * q.dot(R) * R / std::pow(r, 5);
  };
  auto local = [&](const Vec3& x) {
    const Vec3 d = x - c.frame.origin;
    return std::pair{d.dot(c.frame.u_hat) - c.src.u0, d.dot(c.frame.v_hat) - c.src.v0};
  };
  using V = Eigen::Matrix<double, 10, 1>;
  const V v = adaptive_integrate(
      t,
      [&](const Vec3& x) {
        const Vec3 R = x - r0;
        const double r = R.norm();
        const double r3 = r * r * r;
        const Vec3 gs = -3.0 * w0 * (R - w * w.dot(R)) / (r3 * r * r);
        const double fl = w.dot(grad_f(R, r));
        const auto [ua, va] = local(x);
        V o;
        o << 1.0 / r3, 1.0 / (r3 * r * r), gs.x(), gs.y(), gs.z(), fl, ua * fl, va * fl, q.dot(R) / r3, 0.0;
        return o;
      },
      tol);
  // magnitudes for the error scale only; these integrands have kinks, so a
  // loose tolerance keeps the refinement bounded
  using A = Eigen::Matrix<double, 5, 1>;
  const A s = adaptive_integrate(
      t,
      [&](const Vec3& x) {
        const Vec3 R = x - r0;
        const double r = R.norm();
        const double r3 = r * r * r;
        const double fl = w.dot(grad_f(R, r));
        const auto [ua, va] = local(x);
        A o;
        o << (3.0 * w0 * (R - w * w.dot(R)) / (r3 * r * r)).norm(), std::abs(fl), std::abs(ua * fl),
            std::abs(va * fl), std::abs(q.dot(R)) / r3;
        return o;
      },
      1e-5);
  KernelOracle o;
  o.inv_r3 = v[0];
  o.inv_r3_abs = v[0];
  o.inv_r5 = v[1];
  o.grad_s = Vec3(v[2], v[3], v[4]);
  o.grad_s_abs = s[0];
  o.flux = v[5];
  o.flux_abs = s[1];
  o.moments = Eigen::Vector2d(v[6], v[7]);
  o.moments_abs = Eigen::Vector2d(s[2], s[3]);
  o.face_f = v[8];
  o.face_f_abs = s[4];
  return o;
}
/// Brute-force b_s = int phi_i <n, grad f> / (4 pi) with n the unit normal of t.
inline Eigen::Vector3d surface_oracle(const Triangle& t, const Dipole& d, double tol = 1e-12) {
  const Vec3 n = t.normal().normalized();
  return adaptive_integrate(
      t, [&](const Vec3& x) { return Eigen::Vector3d(barycentric(t, x) * n.dot(dipole_kernel_gradient(d, x)) / (4 * kPi)); },
      tol);
}

/// Brute-force b_v = Lambda^T sigma_c int grad f / (6 V 4 pi sigma_inf).
inline Eigen::Vector4d volume_oracle(const Tetrahedron& t, const ConductivityTensor& sc, double sigma_inf,
                                     const Dipole& d, double tol = 1e-12) {
  const auto vc = volume_coordinate_data(t);
  const Vec3 g = adaptive_integrate(t, [&](const Vec3& x) { return dipole_kernel_gradient(d, x); }, tol);
  return vc.lambda.transpose() * sc.matrix() * g / (6.0 * vc.volume * 4.0 * kPi * sigma_inf);
}

}  // namespace asfem::test
