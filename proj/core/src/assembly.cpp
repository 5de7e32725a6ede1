#include "asfem/assembly.hpp"

#include <cmath>
#include <vector>

#include "asfem/errors.hpp"

namespace asfem {

SparseMatrix assemble_stiffness(const Mesh& m) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(16 * m.tets.size());
  for (std::size_t e = 0; e < m.tets.size(); ++e) {
    const Eigen::Matrix4d Ke = stiffness_element(m.tet_geometry(e), m.conductivity(e));
    const auto& n = m.tets[e].nodes;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) trip.emplace_back(n[i], n[j], Ke(i, j));
  }
  const auto N = static_cast<Eigen::Index>(m.nodes.size());
  SparseMatrix K(N, N);
  K.setFromTriplets(trip.begin(), trip.end());
  return K;
}

SourceLocation find_source_element(const Mesh& m, const Vec3& r0) {
  for (std::size_t e = 0; e < m.tets.size(); ++e) {
    const Tetrahedron t = m.tet_geometry(e);
    const auto n = (r0 - t.centroid()).norm();
    if (n > t.diameter()) continue;
    const Eigen::Vector4d xi = volume_coordinate_data(t).evaluate(r0);
    if (xi.minCoeff() < -1e-12) continue;
    const ConductivityTensor& s = m.conductivity(e);
    if (!s.is_isotropic(1e-10)) throw AnisotropicSourceRegion("source lies in an anisotropic region");
    return {static_cast<int>(e), s.mean_diagonal()};
  }
  throw SourceOutsideMesh("source is not inside any element");
}

SourceVectors assemble_source_parts(const Mesh& m, const BoundarySurface& boundary, const Dipole& d,
                                    const SourceScheme& scheme) {
  SourceVectors out;
  out.location = find_source_element(m, d.position);
  const double sigma_inf = out.location.sigma_inf;
  const auto N = static_cast<Eigen::Index>(m.nodes.size());
  const bool exact = scheme.kind == SourceScheme::Kind::Analytical;

  out.surface = Eigen::VectorXd::Zero(N);
  for (std::size_t k = 0; k < boundary.triangles.size(); ++k) {
    const Triangle t = boundary.triangle(m, k);
    const Eigen::Vector3d be =
        exact ? surface_source_analytical(t, d) : surface_source_quadrature(t, d, scheme.order);
    for (int i = 0; i < 3; ++i) out.surface[boundary.triangles[k][i]] += be[i];
  }

  out.volume = Eigen::VectorXd::Zero(N);
  for (std::size_t e = 0; e < m.tets.size(); ++e) {
    const ConductivityTensor sc = m.conductivity(e).minus_identity(sigma_inf);
    double dev = 0.0;
    for (double v : sc.c) dev = std::max(dev, std::abs(v));
    if (dev <= 1e-12 * sigma_inf) continue;
    const Tetrahedron t = m.tet_geometry(e);
    const Eigen::Vector4d be = exact ? volume_source_analytical(t, sc, sigma_inf, d)
                                     : volume_source_quadrature(t, sc, sigma_inf, d, scheme.order);
    for (int i = 0; i < 4; ++i) out.volume[m.tets[e].nodes[i]] += be[i];
  }
  return out;
}

Eigen::VectorXd assemble_source(const Mesh& m, const BoundarySurface& boundary, const Dipole& d,
                                const SourceScheme& scheme) {
  const SourceVectors p = assemble_source_parts(m, boundary, d, scheme);
  Eigen::VectorXd b = -(p.surface + p.volume);
  // quadrature leaves a small net flux; the pure Neumann system needs none
  b.array() -= b.mean();
  return b;
}

}  // namespace asfem
