#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "asfem/elements.hpp"
#include "asfem/geometry.hpp"

namespace asfem {

struct Tet {
  std::array<int, 4> nodes{};
  int region = 0;
};

/// Tetrahedral head model. Node indices are 0-based.
struct Mesh {
  std::vector<Vec3> nodes;
  std::vector<Tet> tets;
  std::map<int, ConductivityTensor> regions;
  std::vector<Vec3> electrodes;

  Tetrahedron tet_geometry(std::size_t e) const;
  const ConductivityTensor& conductivity(std::size_t e) const { return regions.at(tets[e].region); }

  /// Swaps the last two nodes of every negatively oriented tet.
  void fix_orientation();
  /// Throws ValidationError on out-of-range indices, unknown regions or
  /// degenerate tets.
  void validate() const;
};

/// Text format, one record per line:
///   nodes N      followed by N lines "x y z"
///   tets M       followed by M lines "i j k l region"
///   regions R    followed by R lines "region sxx syy szz sxy sxz syz"
///   electrodes E followed by E lines "x y z"
/// Blank lines and lines starting with '#' are ignored. The electrodes
/// section is optional. Loading fixes orientation and validates.
Mesh read_mesh(std::istream& in);
Mesh load_mesh(const std::string& path);
/// Writes shortest round-trip decimals, so read_mesh(write_mesh(m)) == m.
void write_mesh(const Mesh& m, std::ostream& out);
void save_mesh(const Mesh& m, const std::string& path);

/// Outer surface: faces used by exactly one tet, wound so that the normal
/// points away from the owner.
struct BoundarySurface {
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> owner;

  /// Sorted, unique node indices on the surface.
  std::vector<int> nodes() const;
  Triangle triangle(const Mesh& m, std::size_t k) const {
    const auto& t = triangles[k];
    return Triangle{{m.nodes[t[0]], m.nodes[t[1]], m.nodes[t[2]]}};
  }
};

/// Throws NonManifold when a face is shared by more than two tets.
BoundarySurface extract_boundary(const Mesh& m);

/// Icosphere-based layered ball. radii are strictly decreasing (outermost
/// first); layer k lies between radii[k] and radii[k+1] (the last reaches
/// the centre) and gets region k with conductivities[k]. `level` is the
/// icosphere subdivision of the outer shells; electrodes are the 162
/// level-2 vertices on the outer surface (fewer if level < 2).
Mesh build_layered_sphere_mesh(const std::vector<double>& radii, int level,
                               const std::vector<ConductivityTensor>& conductivities);

/// Mean edge length over the tets of the given regions.
double mean_edge_length(const Mesh& m, const std::vector<int>& regions);

}  // namespace asfem
