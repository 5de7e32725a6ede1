#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "asfem/errors.hpp"
#include "asfem/mesh.hpp"

namespace asfem {

namespace {

// Nested icosphere levels. Level l+1 keeps the vertices of level l as a
// prefix and lists the four children of face j as faces 4j .. 4j+3.
struct Icosphere {
  std::vector<std::vector<Vec3>> vertices;              // per level, unit vectors
  std::vector<std::vector<std::array<int, 3>>> faces;   // per level
  std::vector<std::map<std::pair<int, int>, int>> mid;  // level l edge -> level l+1 vertex

  explicit Icosphere(int max_level) {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    std::vector<Vec3> v = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                           {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                           {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    for (Vec3& p : v) p.normalize();
    vertices.push_back(v);
    faces.push_back({{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                     {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                     {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                     {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}});
    for (int l = 0; l < max_level; ++l) {
      std::vector<Vec3> nv = vertices[l];
      std::map<std::pair<int, int>, int> m;
      auto midpoint = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        auto it = m.find(key);
        if (it != m.end()) return it->second;
        nv.push_back((nv[a] + nv[b]).normalized());
        const int id = static_cast<int>(nv.size()) - 1;
        m.emplace(key, id);
        return id;
      };
      std::vector<std::array<int, 3>> nf;
      for (const auto& f : faces[l]) {
        const int a = f[0], b = f[1], c = f[2];
        const int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
        nf.push_back({a, ab, ca});
        nf.push_back({ab, b, bc});
        nf.push_back({ca, bc, c});
        nf.push_back({ab, bc, ca});
      }
      vertices.push_back(std::move(nv));
      faces.push_back(std::move(nf));
      mid.push_back(std::move(m));
    }
  }
};

// expected tangential edge length of a level-l shell of radius r
double edge_length(double r, int level) { return 1.05 * r / std::pow(2.0, level); }

class Builder {
public:
  Builder(const Icosphere& ico, Mesh& mesh) : ico_(ico), mesh_(mesh) {}

  // node ids of a shell; entry i is the node of icosphere vertex i
  std::vector<int> shell(double r, int level) {
    std::vector<int> ids;
    ids.reserve(ico_.vertices[level].size());
    for (const Vec3& v : ico_.vertices[level]) {
      ids.push_back(static_cast<int>(mesh_.nodes.size()));
      mesh_.nodes.push_back(r * v);
    }
    return ids;
  }

  // prisms between two shells of one level, split by vertex index order so
  // that shared quadrilaterals get the same diagonal from both sides
  void prism_layer(const std::vector<int>& inner, const std::vector<int>& outer, int level, int region) {
    for (auto f : ico_.faces[level]) {
      std::sort(f.begin(), f.end());
      const int B0 = inner[f[0]], B1 = inner[f[1]], B2 = inner[f[2]];
      const int T0 = outer[f[0]], T1 = outer[f[1]], T2 = outer[f[2]];
      add(B0, B1, B2, T0, region);
      add(B1, B2, T0, T1, region);
      add(B2, T0, T1, T2, region);
    }
  }

  // coarse inner shell at `level` below a fine outer shell at level + 1
  void transition_layer(const std::vector<int>& inner, const std::vector<int>& outer, int level,
                        int region) {
    const auto& mid = ico_.mid[level];
    auto m = [&](int x, int y) { return outer[mid.at(std::minmax(x, y))]; };
    for (const auto& f : ico_.faces[level]) {
      const int a = inner[f[0]], b = inner[f[1]], c = inner[f[2]];
      const int A = outer[f[0]], B = outer[f[1]], C = outer[f[2]];
      const int mab = m(f[0], f[1]), mbc = m(f[1], f[2]), mca = m(f[2], f[0]);
      add(a, A, mab, mca, region);
      add(b, B, mbc, mab, region);
      add(c, C, mca, mbc, region);
      add(a, mbc, b, c, region);
      add(a, mbc, c, mca, region);
      add(a, mbc, mca, mab, region);
      add(a, mbc, mab, b, region);
    }
  }

  void centre(const std::vector<int>& outer, int level, int region) {
    const int o = static_cast<int>(mesh_.nodes.size());
    mesh_.nodes.push_back(Vec3::Zero());
    for (const auto& f : ico_.faces[level]) add(o, outer[f[0]], outer[f[1]], outer[f[2]], region);
  }

private:
  void add(int a, int b, int c, int d, int region) {
    Tet t{{a, b, c, d}, region};
    mesh_.tets.push_back(t);
    if (mesh_.tet_geometry(mesh_.tets.size() - 1).signed_volume() < 0.0)
      std::swap(mesh_.tets.back().nodes[2], mesh_.tets.back().nodes[3]);
  }

  const Icosphere& ico_;
  Mesh& mesh_;
};

}  // namespace

Mesh build_layered_sphere_mesh(const std::vector<double>& radii, int level,
                               const std::vector<ConductivityTensor>& conductivities) {
  if (radii.empty()) throw InvalidRadii("at least one radius is required");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || !std::isfinite(radii[k])) throw InvalidRadii("radii must be positive");
    if (k > 0 && !(radii[k] < radii[k - 1])) throw InvalidRadii("radii must be strictly decreasing");
  }
  if (conductivities.size() != radii.size())
    throw ValidationError("one conductivity per layer is required");
  if (level < 0 || level > 7) throw ValidationError("refinement level must lie in [0, 7]");

  const Icosphere ico(level);
  Mesh mesh;
  Builder b(ico, mesh);
  const int n = static_cast<int>(radii.size());
  for (int k = 0; k < n; ++k) mesh.regions[k] = conductivities[k];

  // outer layers: level-`level` shells at every interface, with sublayers
  std::vector<int> outer = b.shell(radii[0], level);
  for (int k = 0; k + 1 < n; ++k) {
    const double thick = radii[k] - radii[k + 1];
    const double e = edge_length(0.5 * (radii[k] + radii[k + 1]), level);
    const int sub = std::max(1, static_cast<int>(std::ceil(thick / (0.7 * e) - 1e-9)));
    for (int j = 1; j <= sub; ++j) {
      const double r = radii[k] - thick * j / sub;
      std::vector<int> inner = b.shell(r, level);
      b.prism_layer(inner, outer, level, k);
      outer = std::move(inner);
    }
  }

  // innermost ball: coarsen one level at a time towards the centre
  const int region = n - 1;
  double r = radii[n - 1];
  int l = level;
  while (l > 0) {
    const double r_next = r - 0.6 * edge_length(r, l - 1);
    if (r_next <= 0.25 * r) break;
    std::vector<int> inner = b.shell(r_next, l - 1);
    b.transition_layer(inner, outer, l - 1, region);
    outer = std::move(inner);
    r = r_next;
    --l;
    if (l == 0) break;
    const double r_stop = 0.5 * r;
    for (;;) {
      const double next = r * (1.0 - 0.7 * edge_length(1.0, l));
      if (next < r_stop) break;
      std::vector<int> inner2 = b.shell(next, l);
      b.prism_layer(inner2, outer, l, region);
      outer = std::move(inner2);
      r = next;
    }
  }
  b.centre(outer, l, region);

  const int e_level = std::min(level, 2);
  for (const Vec3& v : ico.vertices[e_level]) mesh.electrodes.push_back(radii[0] * v);
  mesh.validate();
  return mesh;
}

}  // namespace asfem
