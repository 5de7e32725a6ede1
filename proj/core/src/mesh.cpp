#include "asfem/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>
#include <system_error>
#include <tuple>
#include <utility>

#include "asfem/errors.hpp"

namespace asfem {

Tetrahedron Mesh::tet_geometry(std::size_t e) const {
  const auto& n = tets[e].nodes;
  return Tetrahedron{{nodes[n[0]], nodes[n[1]], nodes[n[2]], nodes[n[3]]}};
}

void Mesh::fix_orientation() {
  for (std::size_t e = 0; e < tets.size(); ++e)
    if (tet_geometry(e).signed_volume() < 0.0) std::swap(tets[e].nodes[2], tets[e].nodes[3]);
}

void Mesh::validate() const {
  const int n = static_cast<int>(nodes.size());
  for (std::size_t e = 0; e < tets.size(); ++e) {
    for (int i : tets[e].nodes)
      if (i < 0 || i >= n)
        throw ValidationError("tet " + std::to_string(e) + " references node " + std::to_string(i));
    if (!regions.count(tets[e].region))
      throw ValidationError("tet " + std::to_string(e) + " uses undefined region " +
                            std::to_string(tets[e].region));
    const Tetrahedron t = tet_geometry(e);
    const double diam = t.diameter();
    if (!(t.signed_volume() > 1e-14 * diam * diam * diam))
      throw ValidationError("tet " + std::to_string(e) + " is degenerate or inverted");
  }
}

namespace {

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // next non-blank, non-comment line split into tokens; false at end of input
  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, buf_)) {
      ++line_;
      tokens.clear();
      std::string_view s(buf_);
      std::size_t i = 0;
      while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) tokens.push_back(s.substr(i, j - i));
        i = j;
      }
      if (tokens.empty() || tokens[0].front() == '#') continue;
      return true;
    }
    return false;
  }

  int line() const { return line_; }

private:
  std::istream& in_;
  std::string buf_;
  int line_ = 0;
};

template <class T>
T parse_number(std::string_view tok, int line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("invalid number '" + std::string(tok) + "'", line);
  return v;
}

void expect_fields(const std::vector<std::string_view>& t, std::size_t n, int line) {
  if (t.size() != n)
    throw ParseError("expected " + std::to_string(n) + " fields, got " + std::to_string(t.size()), line);
}

void put(std::ostream& out, double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, r.ptr - buf);
}

}  // namespace

Mesh read_mesh(std::istream& in) {
  Mesh m;
  LineReader reader(in);
  std::vector<std::string_view> tok;
  std::set<std::string> seen;
  while (reader.next(tok)) {
    const int line = reader.line();
    const std::string section(tok[0]);
    if (section != "nodes" && section != "tets" && section != "regions" && section != "electrodes")
      throw ParseError("unknown section '" + section + "'", line);
    if (!seen.insert(section).second) throw ParseError("duplicate section '" + section + "'", line);
    expect_fields(tok, 2, line);
    const long count = parse_number<long>(tok[1], line);
    if (count < 0) throw ParseError("negative count", line);
    for (long k = 0; k < count; ++k) {
      if (!reader.next(tok)) throw ParseError("unexpected end of file in section " + section, reader.line());
      const int l = reader.line();
      if (section == "nodes" || section == "electrodes") {
        expect_fields(tok, 3, l);
        const Vec3 p(parse_number<double>(tok[0], l), parse_number<double>(tok[1], l),
                     parse_number<double>(tok[2], l));
        (section == "nodes" ? m.nodes : m.electrodes).push_back(p);
      } else if (section == "tets") {
        expect_fields(tok, 5, l);
        Tet t;
        for (int i = 0; i < 4; ++i) t.nodes[i] = parse_number<int>(tok[i], l);
        t.region = parse_number<int>(tok[4], l);
        m.tets.push_back(t);
      } else {
        expect_fields(tok, 7, l);
        const int id = parse_number<int>(tok[0], l);
        ConductivityTensor s;
        for (int i = 0; i < 6; ++i) s.c[i] = parse_number<double>(tok[i + 1], l);
        if (!m.regions.emplace(id, s).second) throw ParseError("duplicate region " + std::to_string(id), l);
      }
    }
  }
  for (const char* required : {"nodes", "tets", "regions"})
    if (!seen.count(required))
      throw ParseError(std::string("missing section '") + required + "'", reader.line());

  // orientation is fixed before validation so that a negative volume is
  // repaired rather than rejected
  const int n = static_cast<int>(m.nodes.size());
  for (std::size_t e = 0; e < m.tets.size(); ++e)
    for (int i : m.tets[e].nodes)
      if (i < 0 || i >= n)
        throw ValidationError("tet " + std::to_string(e) + " references node " + std::to_string(i));
  m.fix_orientation();
  m.validate();
  return m;
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file '" + path + "'");
  return read_mesh(in);
}

void write_mesh(const Mesh& m, std::ostream& out) {
  out << "nodes " << m.nodes.size() << '\n';
  for (const Vec3& p : m.nodes) {
    put(out, p.x());
    out << ' ';
    put(out, p.y());
    out << ' ';
    put(out, p.z());
    out << '\n';
  }
  out << "tets " << m.tets.size() << '\n';
  for (const Tet& t : m.tets)
    out << t.nodes[0] << ' ' << t.nodes[1] << ' ' << t.nodes[2] << ' ' << t.nodes[3] << ' ' << t.region << '\n';
  out << "regions " << m.regions.size() << '\n';
  for (const auto& [id, s] : m.regions) {
    out << id;
    for (double v : s.c) {
      out << ' ';
      put(out, v);
    }
    out << '\n';
  }
  out << "electrodes " << m.electrodes.size() << '\n';
  for (const Vec3& p : m.electrodes) {
    put(out, p.x());
    out << ' ';
    put(out, p.y());
    out << ' ';
    put(out, p.z());
    out << '\n';
  }
}

void save_mesh(const Mesh& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write mesh file '" + path + "'");
  write_mesh(m, out);
}

std::vector<int> BoundarySurface::nodes() const {
  std::vector<int> v;
  v.reserve(3 * triangles.size());
  for (const auto& t : triangles) v.insert(v.end(), t.begin(), t.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

BoundarySurface extract_boundary(const Mesh& m) {
  // local faces of a positively oriented tet, wound outward
  static constexpr int kFaces[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
  struct Face {
    std::array<int, 3> key;
    int tet;
    int local;
  };
  std::vector<Face> faces;
  faces.reserve(4 * m.tets.size());
  for (std::size_t e = 0; e < m.tets.size(); ++e)
    for (int k = 0; k < 4; ++k) {
      std::array<int, 3> key{m.tets[e].nodes[kFaces[k][0]], m.tets[e].nodes[kFaces[k][1]],
                             m.tets[e].nodes[kFaces[k][2]]};
      std::sort(key.begin(), key.end());
      faces.push_back({key, static_cast<int>(e), k});
    }
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    return std::tie(a.key, a.tet, a.local) < std::tie(b.key, b.tet, b.local);
  });

  BoundarySurface b;
  for (std::size_t i = 0; i < faces.size();) {
    std::size_t j = i + 1;
    while (j < faces.size() && faces[j].key == faces[i].key) ++j;
    if (j - i > 2) throw NonManifold("face shared by " + std::to_string(j - i) + " tets");
    if (j - i == 1) {
      const Face& f = faces[i];
      const auto& n = m.tets[f.tet].nodes;
      std::array<int, 3> tri{n[kFaces[f.local][0]], n[kFaces[f.local][1]], n[kFaces[f.local][2]]};
      if (m.tet_geometry(f.tet).signed_volume() < 0.0) std::swap(tri[1], tri[2]);
      b.triangles.push_back(tri);
      b.owner.push_back(f.tet);
    }
    i = j;
  }
  return b;
}

double mean_edge_length(const Mesh& m, const std::vector<int>& regions) {
  std::set<std::pair<int, int>> edges;
  for (const Tet& t : m.tets) {
    if (std::find(regions.begin(), regions.end(), t.region) == regions.end()) continue;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        edges.emplace(std::min(t.nodes[i], t.nodes[j]), std::max(t.nodes[i], t.nodes[j]));
  }
  if (edges.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [a, b] : edges) sum += (m.nodes[a] - m.nodes[b]).norm();
  return sum / static_cast<double>(edges.size());
}

}  // namespace asfem
