#include "asfem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "asfem/errors.hpp"

namespace asfem {

Vec3 Triangle::normal() const { return (p[1] - p[0]).cross(p[2] - p[0]); }

double Triangle::area() const { return 0.5 * normal().norm(); }

double Triangle::diameter() const {
  return std::max({(p[1] - p[0]).norm(), (p[2] - p[1]).norm(), (p[0] - p[2]).norm()});
}

double Tetrahedron::signed_volume() const {
  return (p[1] - p[0]).dot((p[2] - p[0]).cross(p[3] - p[0])) / 6.0;
}

double Tetrahedron::diameter() const {
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) d = std::max(d, (p[i] - p[j]).norm());
  return d;
}

Tetrahedron Tetrahedron::positively_oriented() const {
  Tetrahedron t = *this;
  if (signed_volume() < 0.0) std::swap(t.p[2], t.p[3]);
  return t;
}

Triangle Tetrahedron::outward_face(int k) const {
  std::array<Vec3, 3> q;
  int n = 0;
  for (int i = 0; i < 4; ++i)
    if (i != k) q[n++] = p[i];
  Triangle t{q};
  if (t.normal().dot(t.centroid() - p[k]) < 0.0) std::swap(t.p[1], t.p[2]);
  return t;
}

LocalFrame build_local_frame(const Triangle& t) {
  const double diam = t.diameter();
  if (!(t.area() > 1e-14 * diam * diam)) throw DegenerateTriangle("triangle area below tolerance");

  LocalFrame f;
  f.origin = t.p[0];
  f.diameter = diam;
  // s_i = p_{i-1} - p_{i+1}, cyclic in 0-based storage
  for (int i = 0; i < 3; ++i) {
    const Vec3 s = t.p[(i + 2) % 3] - t.p[(i + 1) % 3];
    f.s_len[i] = s.norm();
    f.s_hat[i] = s / f.s_len[i];
  }
  f.w_hat = f.s_hat[0].cross(f.s_hat[1]).normalized();
  f.u_hat = f.s_hat[2];
  f.v_hat = f.w_hat.cross(f.u_hat);
  for (int i = 0; i < 3; ++i) f.m_hat[i] = f.s_hat[i].cross(f.w_hat);

  const Vec3 s2 = t.p[0] - t.p[2];
  f.u3 = -s2.dot(f.u_hat);
  f.v3 = -s2.dot(f.v_hat);
  return f;
}

namespace {

// ln((R+ + s+) / (R- + s-)) as log1p of positive increments, which keeps
// full relative accuracy for short or distant edges
double edge_log(double sm, double sp, double Rm, double Rp, double R0sq) {
  const double ds = sp - sm;
  const double Rsum = Rp + Rm;
  if (sp <= 0.0) return std::log1p(ds * (1.0 - (sp + sm) / Rsum) / (Rp - sp));
  if (sm >= 0.0) return std::log1p(ds * (1.0 + (sp + sm) / Rsum) / (Rm + sm));
  const double R0 = std::sqrt(R0sq);
  return std::log1p((sp + sp * sp / (Rp + R0)) / R0) + std::log1p((-sm + sm * sm / (Rm + R0)) / R0);
}

// (s+/R+ - s-/R-) / R0^2; the conjugate form has no 1/R0^2 when s+ and s-
// share a sign, which covers sources on the line of the edge.
double edge_inv_r3(double sm, double sp, double Rm, double Rp, double R0sq) {
  if (sm * sp > 0.0) return (sp - sm) * (sp + sm) / (Rp * Rm * (sp * Rm + sm * Rp));
  return (sp / Rp - sm / Rm) / R0sq;
}

// integral of u^2 / (1 + u^2)^(3/2) from 0 to z
double s2_primitive(double z) {
  if (std::abs(z) < 0.5) {
    double sum = 0.0, coef = 1.0, zp = z * z * z;
    for (int k = 0; k < 30; ++k) {
      const double term = coef * zp / (2 * k + 3);
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
      coef *= (-1.5 - k) / (k + 1);
      zp *= z * z;
    }
    return sum;
  }
  return std::asinh(z) - z / std::sqrt(1.0 + z * z);
}

// integral of s^2 / R^3 along the edge; f2 - (s+/R+ - s-/R-) cancels badly
double edge_s2_r3(double sm, double sp, double R0sq) {
  if (R0sq > 0.0) {
    const double R0 = std::sqrt(R0sq);
    return s2_primitive(sp / R0) - s2_primitive(sm / R0);
  }
  // source on the line of the edge, outside the segment
  return std::log(std::abs(sp) / std::abs(sm)) * (sp > 0.0 ? 1.0 : -1.0);
}

}  // namespace

ProjectedSource project_source(const LocalFrame& f, const Vec3& r0) {
  ProjectedSource ps;
  const Vec3 d = r0 - f.origin;
  const double u0 = d.dot(f.u_hat);
  const double v0 = d.dot(f.v_hat);
  ps.u0 = u0;
  ps.v0 = v0;
  ps.w0 = -d.dot(f.w_hat);

  const double s1 = f.s_len[0], s2 = f.s_len[1], s3 = f.s_len[2];
  const double u3 = f.u3, v3 = f.v3;

  ps.t0 = {(v0 * (u3 - s3) + v3 * (s3 - u0)) / s1, (u0 * v3 - v0 * u3) / s2, v0};
  ps.s_minus = {-((s3 - u0) * (s3 - u3) + v0 * v3) / s1, -(u3 * (u3 - u0) + v3 * (v3 - v0)) / s2, -u0};
  ps.s_plus = {((u3 - u0) * (u3 - s3) + v3 * (v3 - v0)) / s1, (u0 * u3 + v0 * v3) / s2, s3 - u0};

  const double w0sq = ps.w0 * ps.w0;
  const double aw = std::abs(ps.w0);
  for (int i = 0; i < 3; ++i) {
    const double t = ps.t0[i];
    const double sm = ps.s_minus[i], sp = ps.s_plus[i];
    const double R0sq = t * t + w0sq;
    const double Rm = std::sqrt(sm * sm + R0sq);
    const double Rp = std::sqrt(sp * sp + R0sq);
    ps.R0[i] = std::sqrt(R0sq);
    ps.R_minus[i] = Rm;
    ps.R_plus[i] = Rp;
    ps.f2[i] = edge_log(sm, sp, Rm, Rp, R0sq);
    ps.Rs[i] = edge_inv_r3(sm, sp, Rm, Rp, R0sq);
    ps.Rd[i] = (sp - sm) * (sp + sm) / ((Rp + Rm) * Rp * Rm);
    // denominators are non-negative, so atan2 stays on the principal branch
    ps.beta[i] = std::atan2(t * sp, R0sq + aw * Rp) - std::atan2(t * sm, R0sq + aw * Rm);
  }
  return ps;
}

double edge_rq(const ProjectedSource& ps, int i) {
  const double t = ps.t0[i];
  return t * t * ps.Rs[i] + edge_s2_r3(ps.s_minus[i], ps.s_plus[i], t * t + ps.w0 * ps.w0);
}

VolumeCoordinates volume_coordinate_data(const Tetrahedron& t) {
  const Vec3 e1 = t.p[1] - t.p[0];
  const Vec3 e2 = t.p[2] - t.p[0];
  const Vec3 e3 = t.p[3] - t.p[0];
  const double det = e1.dot(e2.cross(e3));
  const double diam = t.diameter();
  if (!(std::abs(det) / 6.0 > 1e-14 * diam * diam * diam))
    throw DegenerateTetrahedron("tetrahedron volume below tolerance");

  VolumeCoordinates vc;
  vc.volume = std::abs(det) / 6.0;
  const double sgn = det > 0.0 ? 1.0 : -1.0;
  // columns are 6V * grad(xi_i)
  vc.lambda.col(1) = sgn * e2.cross(e3);
  vc.lambda.col(2) = sgn * e3.cross(e1);
  vc.lambda.col(3) = sgn * e1.cross(e2);
  vc.lambda.col(0) = -(vc.lambda.col(1) + vc.lambda.col(2) + vc.lambda.col(3));

  const double six_v = 6.0 * vc.volume;
  for (int i = 1; i < 4; ++i) vc.a_tilde[i] = -vc.lambda.col(i).dot(t.p[0]);
  vc.a_tilde[0] = six_v - vc.a_tilde[1] - vc.a_tilde[2] - vc.a_tilde[3];
  return vc;
}

double distance_to_triangle(const Triangle& t, const Vec3& x) {
  // closest point by Voronoi region of the vertices, edges and face
  const Vec3 &a = t.p[0], &b = t.p[1], &c = t.p[2];
  const Vec3 ab = b - a, ac = c - a, ap = x - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return ap.norm();
  const Vec3 bp = x - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return bp.norm();
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return (x - (a + d1 / (d1 - d3) * ab)).norm();
  const Vec3 cp = x - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return cp.norm();
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return (x - (a + d2 / (d2 - d6) * ac)).norm();
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return (x - (b + (d4 - d3) / ((d4 - d3) + (d5 - d6)) * (c - b))).norm();
  const double denom = 1.0 / (va + vb + vc);
  return (x - (a + ab * (vb * denom) + ac * (vc * denom))).norm();
}

}  // namespace asfem
