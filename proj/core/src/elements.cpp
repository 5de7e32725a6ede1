#include "asfem/elements.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "asfem/errors.hpp"
#include "asfem/potentials.hpp"
#include "asfem/quadrature.hpp"

namespace asfem {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

void check_sigma_inf(double sigma_inf) {
  if (!(sigma_inf > 0.0)) throw NonpositiveSigmaInf("sigma_inf must be positive");
}

// normal of the winding, made to agree with `outward` when one is given
Vec3 face_normal(const Triangle& t, const std::optional<Vec3>& outward, bool& flipped) {
  Vec3 n = t.normal().normalized();
  flipped = outward && n.dot(*outward) < 0.0;
  return flipped ? Vec3(-n) : n;
}

}  // namespace

ConductivityTensor ConductivityTensor::from_matrix(const Eigen::Matrix3d& m) {
  return {{m(0, 0), m(1, 1), m(2, 2), 0.5 * (m(0, 1) + m(1, 0)), 0.5 * (m(0, 2) + m(2, 0)),
           0.5 * (m(1, 2) + m(2, 1))}};
}

Eigen::Matrix3d ConductivityTensor::matrix() const {
  Eigen::Matrix3d m;
  m << c[0], c[3], c[4], c[3], c[1], c[5], c[4], c[5], c[2];
  return m;
}

bool ConductivityTensor::is_isotropic(double rel_tol) const {
  const double s = mean_diagonal();
  const double tol = rel_tol * std::abs(s);
  for (int k = 0; k < 3; ++k)
    if (std::abs(c[k] - s) > tol) return false;
  for (int k = 3; k < 6; ++k)
    if (std::abs(c[k]) > tol) return false;
  return true;
}

bool ConductivityTensor::is_zero() const {
  for (double v : c)
    if (v != 0.0) return false;
  return true;
}

ConductivityTensor ConductivityTensor::minus_identity(double s) const {
  ConductivityTensor r = *this;
  for (int k = 0; k < 3; ++k) r.c[k] -= s;
  return r;
}

double dipole_kernel(const Dipole& d, const Vec3& r) {
  const Vec3 R = r - d.position;
  const double n = R.norm();
  return d.moment.dot(R) / (n * n * n);
}

Vec3 dipole_kernel_gradient(const Dipole& d, const Vec3& r) {
  const Vec3 R = r - d.position;
  const double n2 = R.squaredNorm();
  const double n3 = n2 * std::sqrt(n2);
  return d.moment / n3 - 3.0 * d.moment.dot(R) / (n3 * n2) * R;
}

double u_inf(const Dipole& d, double sigma_inf, const Vec3& r) {
  check_sigma_inf(sigma_inf);
  if ((r - d.position).squaredNorm() == 0.0) throw EvaluationAtSource("u_inf evaluated at the source");
  return dipole_kernel(d, r) / (kFourPi * sigma_inf);
}

Eigen::Matrix4d stiffness_element(const Tetrahedron& t, const ConductivityTensor& sigma) {
  const VolumeCoordinates vc = volume_coordinate_data(t);
  Eigen::Matrix4d K = vc.lambda.transpose() * sigma.matrix() * vc.lambda / (36.0 * vc.volume);
  return 0.5 * (K + K.transpose());
}

Eigen::Vector3d surface_source_analytical(const Triangle& t, const Dipole& d,
                                          const std::optional<Vec3>& outward) {
  bool flipped = false;
  face_normal(t, outward, flipped);
  Triangle tri = t;
  if (flipped) std::swap(tri.p[1], tri.p[2]);

  const KernelContext c = KernelContext::make(tri, d.position);
  const LocalFrame& f = c.frame;
  const double s3 = f.s_len[2], u3 = f.u3, v3 = f.v3;
  Eigen::Matrix3d A;
  A << 1.0, -1.0 / s3, (u3 / s3 - 1.0) / v3,
       0.0, 1.0 / s3, -u3 / (s3 * v3),
       0.0, 0.0, 1.0 / v3;

  const double I0 = dipole_flux_I0(c, d.moment);
  const FirstMoments m = first_moment_flux(c, d.moment);
  Eigen::Vector3d b = A * Eigen::Vector3d(I0, c.src.u0 * I0 + m.iu, c.src.v0 * I0 + m.iv);
  b /= kFourPi;
  if (flipped) std::swap(b[1], b[2]);
  return b;
}

Eigen::Vector3d surface_source_quadrature(const Triangle& t, const Dipole& d, int order,
                                          const std::optional<Vec3>& outward) {
  const QuadratureRule& rule = get_rule(2, order);
  build_local_frame(t);  // degeneracy check
  bool flipped = false;
  const Vec3 n = face_normal(t, outward, flipped);
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double g = n.dot(dipole_kernel_gradient(d, map_point(rule, q, t)));
    for (int i = 0; i < 3; ++i) b[i] += rule.weights[q] * rule.points[q][i] * g;
  }
  return b * (t.area() / kFourPi);
}

Eigen::Vector4d volume_source_analytical(const Tetrahedron& t, const ConductivityTensor& sigma_c,
                                         double sigma_inf, const Dipole& d) {
  check_sigma_inf(sigma_inf);
  const VolumeCoordinates vc = volume_coordinate_data(t);
  if (sigma_c.is_zero()) return Eigen::Vector4d::Zero();
  Vec3 g = Vec3::Zero();
  for (int k = 0; k < 4; ++k) {
    const Triangle face = t.outward_face(k);
    const KernelContext c = KernelContext::make(face, d.position);
    g += c.frame.w_hat * face_integral_of_f(c, d.moment);
  }
  return vc.lambda.transpose() * (sigma_c.matrix() * g) / (24.0 * std::numbers::pi * vc.volume * sigma_inf);
}

Eigen::Vector4d volume_source_quadrature(const Tetrahedron& t, const ConductivityTensor& sigma_c,
                                         double sigma_inf, const Dipole& d, int order) {
  check_sigma_inf(sigma_inf);
  const QuadratureRule& rule = get_rule(3, order);
  const VolumeCoordinates vc = volume_coordinate_data(t);
  if (sigma_c.is_zero()) return Eigen::Vector4d::Zero();
  Vec3 g = Vec3::Zero();
  for (std::size_t q = 0; q < rule.size(); ++q)
    g += rule.weights[q] * dipole_kernel_gradient(d, map_point(rule, q, t));
  // integral of grad f is V * g; grad phi = Lambda / (6 V)
  return vc.lambda.transpose() * (sigma_c.matrix() * g) / (6.0 * kFourPi * sigma_inf);
}

}  // namespace asfem
