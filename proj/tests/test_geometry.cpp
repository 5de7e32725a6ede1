#include <gtest/gtest.h>

#include "support.hpp"

using namespace asfem;
using namespace asfem::test;

namespace {

const Triangle kUnit{{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)}};

Triangle equilateral(double a) {
  return Triangle{{Vec3(0, -a / 2, -a * std::sqrt(3.0) / 6), Vec3(0, a / 2, -a * std::sqrt(3.0) / 6),
                   Vec3(0, 0, a * std::sqrt(3.0) / 3)}};
}

}  // namespace

TEST(LocalFrame, AxisAlignedRightTriangle) {
  const LocalFrame f = build_local_frame(kUnit);
  EXPECT_NEAR((f.w_hat - Vec3(0, 0, 1)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((f.u_hat - Vec3(1, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(f.s_len[2], 1.0);
}

TEST(LocalFrame, EquilateralTriangle) {
  const LocalFrame f = build_local_frame(equilateral(1.0));
  EXPECT_NEAR(std::abs(f.w_hat.x()), 1.0, 1e-15);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(f.s_len[i], 1.0, 1e-15);
}

TEST(LocalFrame, InvariantsOnRandomTriangles) {
  Rng r(11);
  for (int it = 0; it < 200; ++it) {
    const Triangle t = random_triangle(r);
    const LocalFrame f = build_local_frame(t);
    const Vec3 e[3] = {f.u_hat, f.v_hat, f.w_hat};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(e[i].dot(e[j]), i == j ? 1.0 : 0.0, 1e-14);
    EXPECT_NEAR((f.u_hat.cross(f.v_hat) - f.w_hat).norm(), 0.0, 1e-14);
    for (int i = 0; i < 3; ++i) {
      EXPECT_LE(std::abs(f.m_hat[i].dot(f.s_hat[i])), 1e-14);
      EXPECT_NEAR((f.m_hat[i] - f.s_hat[i].cross(f.w_hat)).norm(), 0.0, 1e-14);
    }
    // p2 sits at (s3, 0), p3 at (u3, v3)
    const Vec3 p2 = t.p[1] - f.origin;
    EXPECT_NEAR(p2.dot(f.u_hat), f.s_len[2], 1e-12 * f.s_len[2]);
    EXPECT_NEAR(p2.dot(f.v_hat), 0.0, 1e-12 * f.s_len[2]);
    EXPECT_NEAR((f.to_global(f.u3, f.v3, 0.0) - t.p[2]).norm(), 0.0, 1e-12 * t.diameter());
  }
}

TEST(LocalFrame, DegenerateTriangleRejected) {
  const Triangle flat{{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)}};
  EXPECT_THROW(build_local_frame(flat), DegenerateTriangle);
  const Triangle sliver{{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, 1e-16, 0)}};
  EXPECT_THROW(build_local_frame(sliver), DegenerateTriangle);
}

TEST(ProjectedSource, UnitTriangleReadOff) {
  const LocalFrame f = build_local_frame(kUnit);
  const ProjectedSource s = project_source(f, Vec3(1.0 / 3, 1.0 / 3, 1.0));
  // r0 = rho - w0 w_hat with w_hat = +z
  EXPECT_DOUBLE_EQ(s.w0, -1.0);
  EXPECT_NEAR(s.t0[2], 1.0 / 3, 1e-15);
  EXPECT_NEAR(s.s_minus[2], -1.0 / 3, 1e-15);
  EXPECT_NEAR(s.s_plus[2], 2.0 / 3, 1e-15);
}

TEST(ProjectedSource, EndpointsReconstructNodes) {
  Rng r(12);
  for (int it = 0; it < 200; ++it) {
    const Triangle t = random_triangle(r);
    const LocalFrame f = build_local_frame(t);
    const Vec3 r0 = r.vec(-2, 2);
    const ProjectedSource s = project_source(f, r0);
    const Vec3 rho = r0 + s.w0 * f.w_hat;
    for (int i = 0; i < 3; ++i) {
      // foot of the perpendicular from rho onto edge i, then along s_hat
      const Vec3 foot = rho + s.t0[i] * f.m_hat[i];
      const Vec3& next = t.p[(i + 1) % 3];
      const Vec3& prev = t.p[(i + 2) % 3];
      EXPECT_NEAR((foot + s.s_minus[i] * f.s_hat[i] - next).norm(), 0.0, 1e-12 * t.diameter());
      EXPECT_NEAR((foot + s.s_plus[i] * f.s_hat[i] - prev).norm(), 0.0, 1e-12 * t.diameter());
      EXPECT_NEAR(s.R_minus[i], (r0 - next).norm(), 1e-13 * t.diameter());
      EXPECT_NEAR(s.R_plus[i], (r0 - prev).norm(), 1e-13 * t.diameter());
      EXPECT_NEAR(s.R0[i], std::hypot(s.t0[i], s.w0), 1e-13 * t.diameter());
      EXPECT_GE(s.R_minus[i], std::abs(s.w0));
      EXPECT_GE(s.R_plus[i], std::abs(s.w0));
    }
    EXPECT_LE(std::abs(s.beta_total()), 2 * kPi + 1e-9);
  }
}

TEST(ProjectedSource, MirrorSymmetry) {
  Rng r(13);
  for (int it = 0; it < 100; ++it) {
    const Triangle t = random_triangle(r);
    const LocalFrame f = build_local_frame(t);
    const Vec3 r0 = r.vec(-2, 2);
    const Vec3 mirrored = r0 - 2.0 * (r0 - f.origin).dot(f.w_hat) * f.w_hat;
    const ProjectedSource a = project_source(f, r0);
    const ProjectedSource b = project_source(f, mirrored);
    EXPECT_NEAR(a.w0, -b.w0, 1e-14);
    for (int i = 0; i < 3; ++i) {
      const double h = t.diameter();
      EXPECT_NEAR(a.t0[i], b.t0[i], 1e-13 * h);
      EXPECT_NEAR(a.s_minus[i], b.s_minus[i], 1e-13 * h);
      EXPECT_NEAR(a.s_plus[i], b.s_plus[i], 1e-13 * h);
      EXPECT_NEAR(a.R0[i], b.R0[i], 1e-13 * h);
      EXPECT_NEAR(a.R_minus[i], b.R_minus[i], 1e-13 * h);
      EXPECT_NEAR(a.R_plus[i], b.R_plus[i], 1e-13 * h);
      EXPECT_NEAR(a.f2[i], b.f2[i], 1e-12 * (1 + std::abs(a.f2[i])));
      EXPECT_NEAR(a.Rs[i], b.Rs[i], 1e-11 * std::abs(a.Rs[i]) + 1e-14);
      EXPECT_NEAR(std::abs(a.beta[i]), std::abs(b.beta[i]), 1e-12);
    }
  }
}

TEST(ProjectedSource, ScaleCovariance) {
  Rng r(14);
  for (int it = 0; it < 100; ++it) {
    const Triangle t = random_triangle(r);
    const Vec3 r0 = r.vec(-2, 2);
    const double lam = r.log_uniform(1e-3, 1e3);
    const Triangle ts{{lam * t.p[0], lam * t.p[1], lam * t.p[2]}};
    const ProjectedSource a = project_source(build_local_frame(t), r0);
    const ProjectedSource b = project_source(build_local_frame(ts), lam * r0);
    const double h = t.diameter();
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(b.t0[i], lam * a.t0[i], 1e-12 * lam * h);
      EXPECT_NEAR(b.s_minus[i], lam * a.s_minus[i], 1e-12 * lam * h);
      EXPECT_NEAR(b.s_plus[i], lam * a.s_plus[i], 1e-12 * lam * h);
      EXPECT_NEAR(b.R0[i], lam * a.R0[i], 1e-12 * lam * h);
      EXPECT_NEAR(b.f2[i], a.f2[i], 1e-11 * (1 + std::abs(a.f2[i])));
      EXPECT_NEAR(b.beta[i], a.beta[i], 1e-11);
      EXPECT_NEAR(b.Rs[i] * lam * lam, a.Rs[i], 1e-10 * std::abs(a.Rs[i]) + 1e-14);
      EXPECT_NEAR(b.Rd[i] * lam, a.Rd[i], 1e-10 * std::abs(a.Rd[i]) + 1e-14);
    }
  }
}

TEST(ProjectedSource, NearlyCollinearSourceStaysFinite) {
  // source on the extension of edge 3 (p1 -> p2), coplanar
  const LocalFrame f = build_local_frame(kUnit);
  const ProjectedSource s = project_source(f, Vec3(2.0, 0.0, 0.0));
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(std::isfinite(s.f2[i]));
    EXPECT_TRUE(std::isfinite(s.Rs[i]));
  }
  // int_{x=0}^{1} dx/(2-x)^3 along edge 3 equals Rs * t0^2 in the limit; here t0 = 0
  // and the log form gives ln(2/1)
  EXPECT_NEAR(std::abs(s.f2[2]), std::log(2.0), 1e-14);
}

TEST(VolumeCoordinates, ReferenceSimplex) {
  const Tetrahedron t{{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)}};
  const VolumeCoordinates vc = volume_coordinate_data(t);
  EXPECT_NEAR(vc.volume, 1.0 / 6, 1e-16);
  const Vec3 x(0.1, 0.2, 0.3);
  EXPECT_NEAR(vc.evaluate(x)[0], 1 - 0.1 - 0.2 - 0.3, 1e-15);
}

TEST(VolumeCoordinates, RandomTetrahedra) {
  Rng r(15);
  for (int it = 0; it < 100; ++it) {
    const Tetrahedron t = random_tetrahedron(r);
    const VolumeCoordinates vc = volume_coordinate_data(t);
    for (int j = 0; j < 4; ++j) {
      const Eigen::Vector4d xi = vc.evaluate(t.p[j]);
      for (int i = 0; i < 4; ++i) EXPECT_NEAR(xi[i], i == j ? 1.0 : 0.0, 1e-12);
    }
    EXPECT_NEAR((vc.evaluate(t.centroid()) - Eigen::Vector4d::Constant(0.25)).norm(), 0.0, 1e-13);
    for (int row = 0; row < 3; ++row) EXPECT_NEAR(vc.lambda.row(row).sum(), 0.0, 1e-13);
    for (int k = 0; k < 100; ++k) EXPECT_NEAR(vc.evaluate(r.vec(-3, 3)).sum(), 1.0, 1e-12);
  }
}

TEST(VolumeCoordinates, DegenerateTetrahedronRejected) {
  const Tetrahedron t{{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 0)}};
  EXPECT_THROW(volume_coordinate_data(t), DegenerateTetrahedron);
}

TEST(Tetrahedron, OutwardFaces) {
  Rng r(16);
  for (int it = 0; it < 50; ++it) {
    const Tetrahedron t = random_tetrahedron(r);
    EXPECT_GT(t.signed_volume(), 0.0);
    for (int k = 0; k < 4; ++k) {
      const Triangle f = t.outward_face(k);
      EXPECT_GT(f.normal().dot(f.centroid() - t.centroid()), 0.0);
    }
  }
}

TEST(DistanceToTriangle, Regions) {
  EXPECT_NEAR(distance_to_triangle(kUnit, Vec3(0.2, 0.2, 0.5)), 0.5, 1e-15);
  EXPECT_NEAR(distance_to_triangle(kUnit, Vec3(-1, -1, 0)), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(distance_to_triangle(kUnit, Vec3(0.5, -2, 0)), 2.0, 1e-15);
  EXPECT_NEAR(distance_to_triangle(kUnit, Vec3(1, 1, 0)), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(distance_to_triangle(kUnit, Vec3(0.25, 0.25, 0)), 0.0);
}
