#pragma once

#include <array>

#include <Eigen/Dense>

namespace asfem {

using Vec3 = Eigen::Vector3d;

struct Triangle {
  std::array<Vec3, 3> p;

  Vec3 normal() const;  // (p2 - p1) x (p3 - p1), not normalised
  double area() const;
  double diameter() const;  // longest edge
  Vec3 centroid() const { return (p[0] + p[1] + p[2]) / 3.0; }
};

struct Tetrahedron {
  std::array<Vec3, 4> p;

  double signed_volume() const;
  double diameter() const;
  Vec3 centroid() const { return (p[0] + p[1] + p[2] + p[3]) / 4.0; }
  /// Copy with p3 and p4 swapped when the signed volume is negative.
  Tetrahedron positively_oriented() const;
  /// Face opposite node k, wound so that its normal points away from node k.
  Triangle outward_face(int k) const;
};

/// Triangle-attached frame with origin p1, u along p1->p2 and w the unit
/// normal given by the node winding. Edge i is the side opposite node i.
struct LocalFrame {
  Vec3 origin;
  Vec3 u_hat, v_hat, w_hat;
  std::array<Vec3, 3> s_hat;  // edge directions (p_{i-1} - p_{i+1}) / s_i
  std::array<Vec3, 3> m_hat;  // in-plane outward edge normals s_hat x w_hat
  std::array<double, 3> s_len;
  double u3 = 0.0, v3 = 0.0;  // p3 expressed in the frame
  double diameter = 0.0;

  Vec3 to_global(double u, double v, double w) const {
    return origin + u * u_hat + v * v_hat + w * w_hat;
  }
};

/// Per-edge quantities of a source position relative to a triangle.
///
/// The source is written as r0 = rho - w0 * w_hat, so w0 > 0 when the source
/// lies on the side opposite to w_hat. Edge i is parameterised from the
/// projection rho as t_i * m_hat_i + s * s_hat_i with s in [s_minus, s_plus];
/// s_minus is attained at p_{i+1} and s_plus at p_{i-1}.
struct ProjectedSource {
  double u0 = 0.0, v0 = 0.0, w0 = 0.0;
  std::array<double, 3> t0{};
  std::array<double, 3> s_minus{}, s_plus{};
  std::array<double, 3> R0{};
  std::array<double, 3> R_minus{}, R_plus{};
  std::array<double, 3> f2{};    // ln((R+ + s+) / (R- + s-))
  std::array<double, 3> Rs{};    // integral of R^-3 along the edge
  std::array<double, 3> beta{};  // per-edge solid-angle contributions
  std::array<double, 3> Rd{};    // 1/R- - 1/R+

  double beta_total() const { return beta[0] + beta[1] + beta[2]; }
};

LocalFrame build_local_frame(const Triangle& t);
ProjectedSource project_source(const LocalFrame& f, const Vec3& r0);
/// Integral of (t0^2 + s^2) / R^3 along edge i.
double edge_rq(const ProjectedSource& ps, int i);

/// Volume (barycentric) coordinates xi = (a_tilde + lambda^T r) / (6 V).
struct VolumeCoordinates {
  double volume = 0.0;  // always positive
  Eigen::Vector4d a_tilde;
  Eigen::Matrix<double, 3, 4> lambda;

  Eigen::Vector4d evaluate(const Vec3& r) const {
    return (a_tilde + lambda.transpose() * r) / (6.0 * volume);
  }
};

VolumeCoordinates volume_coordinate_data(const Tetrahedron& t);

/// Euclidean distance from x to the closed triangle.
double distance_to_triangle(const Triangle& t, const Vec3& x);

}  // namespace asfem
