#include "asfem/quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace asfem {

namespace {

// m-point Gauss-Jacobi rule on [0, 1] for the weight (1 - x)^alpha, by Golub-Welsch
std::pair<std::vector<double>, std::vector<double>> gauss_jacobi(int m, double alpha) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  const double a = alpha, b = 0.0;
  for (int k = 0; k < m; ++k) {
    const double s = 2.0 * k + a + b;
    J(k, k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < m) {
      const double n = k + 1.0;
      const double t = 2.0 * n + a + b;
      J(k, k + 1) = J(k + 1, k) =
          std::sqrt(4.0 * n * (n + a) * (n + b) * (n + a + b) / (t * t * (t + 1.0) * (t - 1.0)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> x(m), w(m);
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    x[k] = 0.5 * (1.0 + es.eigenvalues()[k]);  // t in [-1, 1] -> x in [0, 1], weight (1 - t)^a
    w[k] = es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
    total += w[k];
  }
  for (double& v : w) v /= total;
  return {x, w};
}

// Collapsed (conical product) rules, m points per direction, exact to degree 2m - 1
QuadratureRule make_gj_tri(int degree) {
  const int m = degree / 2 + 1;
  const auto [xu, wu] = gauss_jacobi(m, 1.0);
  const auto [xv, wv] = gauss_jacobi(m, 0.0);
  QuadratureRule r{2, degree, {}, {}};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double u = xu[i], v = xv[j];
      r.points.push_back({u, (1.0 - u) * v, (1.0 - u) * (1.0 - v), 0.0});
      r.weights.push_back(wu[i] * wv[j]);
    }
  return r;
}

QuadratureRule make_gj_tet(int degree) {
  const int m = degree / 2 + 1;
  const auto [xu, wu] = gauss_jacobi(m, 2.0);
  const auto [xv, wv] = gauss_jacobi(m, 1.0);
  const auto [xw, ww] = gauss_jacobi(m, 0.0);
  QuadratureRule r{3, degree, {}, {}};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const double u = xu[i], v = xv[j], w = xw[k];
        const double rest = (1.0 - u) * (1.0 - v);
        r.points.push_back({u, (1.0 - u) * v, rest * w, rest * (1.0 - w)});
        r.weights.push_back(wu[i] * wv[j] * ww[k]);
      }
  return r;
}

}  // namespace

const QuadratureRule& get_rule(int dim, int degree) {
  static const QuadratureRule rules[2][3] = {{make_gj_tri(2), make_gj_tri(4), make_gj_tri(6)},
                                               {make_gj_tet(2), make_gj_tet(4), make_gj_tet(6)}};
  if ((dim == 2 || dim == 3) && (degree == 2 || degree == 4 || degree == 6)) return rules[dim - 2][degree / 2 - 1];
  throw UnsupportedOrder("no quadrature rule for dimension " + std::to_string(dim) +
                         ", degree " + std::to_string(degree));
}

std::array<Triangle, 4> subdivide(const Triangle& t) {
  const Vec3 m01 = 0.5 * (t.p[0] + t.p[1]);
  const Vec3 m12 = 0.5 * (t.p[1] + t.p[2]);
  const Vec3 m20 = 0.5 * (t.p[2] + t.p[0]);
  return {Triangle{{t.p[0], m01, m20}}, Triangle{{m01, t.p[1], m12}},
          Triangle{{m20, m12, t.p[2]}}, Triangle{{m01, m12, m20}}};
}

std::array<Tetrahedron, 8> subdivide(const Tetrahedron& t) {
  const auto& p = t.p;
  const Vec3 m01 = 0.5 * (p[0] + p[1]), m02 = 0.5 * (p[0] + p[2]), m03 = 0.5 * (p[0] + p[3]);
  const Vec3 m12 = 0.5 * (p[1] + p[2]), m13 = 0.5 * (p[1] + p[3]), m23 = 0.5 * (p[2] + p[3]);
  return {Tetrahedron{{p[0], m01, m02, m03}}, Tetrahedron{{m01, p[1], m12, m13}},
          Tetrahedron{{m02, m12, p[2], m23}}, Tetrahedron{{m03, m13, m23, p[3]}},
          Tetrahedron{{m02, m13, m01, m03}}, Tetrahedron{{m02, m13, m03, m23}},
          Tetrahedron{{m02, m13, m23, m12}}, Tetrahedron{{m02, m13, m12, m01}}};
}

}  // namespace asfem
