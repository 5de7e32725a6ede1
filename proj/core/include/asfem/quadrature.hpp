#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "asfem/errors.hpp"
#include "asfem/geometry.hpp"

namespace asfem {

/// Symmetric simplex rule in barycentric form. Weights are normalised to the
/// simplex measure, so they sum to one.
struct QuadratureRule {
  int dimension = 0;
  int degree = 0;
  std::vector<std::array<double, 4>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Rules of polynomial degree 2, 4 and 6 on triangles (dim 2) and
/// tetrahedra (dim 3). Throws UnsupportedOrder for anything else.
const QuadratureRule& get_rule(int dim, int degree);

inline Vec3 map_point(const QuadratureRule& r, std::size_t q, const Triangle& t) {
  const auto& b = r.points[q];
  return b[0] * t.p[0] + b[1] * t.p[1] + b[2] * t.p[2];
}

inline Vec3 map_point(const QuadratureRule& r, std::size_t q, const Tetrahedron& t) {
  const auto& b = r.points[q];
  return b[0] * t.p[0] + b[1] * t.p[1] + b[2] * t.p[2] + b[3] * t.p[3];
}

inline double measure(const Triangle& t) { return t.area(); }
inline double measure(const Tetrahedron& t) { return std::abs(t.signed_volume()); }

template <class Simplex>
constexpr int simplex_dimension() {
  return std::is_same_v<Simplex, Triangle> ? 2 : 3;
}

/// Fixed-rule approximation of the integral of f over the simplex.
template <class Simplex, class F>
auto integrate(const QuadratureRule& rule, const Simplex& s, F&& f) {
  using Value = std::decay_t<decltype(f(Vec3{}))>;
  Value acc = rule.weights[0] * f(map_point(rule, 0, s));
  for (std::size_t q = 1; q < rule.size(); ++q) acc += rule.weights[q] * f(map_point(rule, q, s));
  return Value(measure(s) * acc);
}

std::array<Triangle, 4> subdivide(const Triangle& t);
std::array<Tetrahedron, 8> subdivide(const Tetrahedron& t);

namespace detail {

template <class V>
double max_abs(const V& v) {
  if constexpr (std::is_arithmetic_v<V>)
    return std::abs(v);
  else
    return v.cwiseAbs().maxCoeff();
}

template <class Simplex, class Value>
struct Cell {
  Simplex simplex;
  Value children;  // estimate from the subdivided cell
  double error;    // |children - single-cell estimate|
  int depth;
};

template <class Simplex, class F>
auto split_cell(const QuadratureRule& rule, const Simplex& s, F& f) {
  using Value = std::decay_t<decltype(f(Vec3{}))>;
  const auto kids = subdivide(s);
  std::array<Value, std::tuple_size_v<std::decay_t<decltype(kids)>>> parts;
  for (std::size_t k = 0; k < kids.size(); ++k) parts[k] = integrate(rule, kids[k], f);
  return std::make_pair(kids, parts);
}

}  // namespace detail

/// High-accuracy reference integration by recursive subdivision (4 children
/// per triangle, 8 per tetrahedron) with the degree-6 rule on every cell.
/// The cell whose estimate changes most on subdivision is refined first,
/// until the summed changes fall below rel_tol times the integral of |f|.
/// The scalar or fixed-size Eigen vector returned by f sets the result type.
template <class Simplex, class F>
auto adaptive_integrate(const Simplex& s, F&& f, double rel_tol = 1e-12, int max_depth = 12) {
  using Value = std::decay_t<decltype(f(Vec3{}))>;
  using Cell = detail::Cell<Simplex, Value>;
  const QuadratureRule& rule = get_rule(simplex_dimension<Simplex>(), 6);

  auto make_cell = [&](const Simplex& cell, const Value& single, int depth) {
    auto [kids, parts] = detail::split_cell(rule, cell, f);
    Value sum = parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k) sum += parts[k];
    return Cell{cell, sum, detail::max_abs(Value(sum - single)), depth};
  };

  double scale = 0.0;
  for (const auto& child : subdivide(s))
    scale += integrate(rule, child, [&](const Vec3& x) { return detail::max_abs(f(x)); });
  const double tol = rel_tol * scale;

  std::vector<Cell> cells;
  cells.push_back(make_cell(s, integrate(rule, s, f), 0));
  auto by_error = [&](std::size_t a, std::size_t b) { return cells[a].error < cells[b].error; };
  std::vector<std::size_t> heap{0};
  double total_error = cells[0].error;

  while (total_error > tol) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const std::size_t worst = heap.back();
    heap.pop_back();
    if (cells[worst].depth + 1 >= max_depth)
      throw NoConvergence("adaptive quadrature reached maximum depth");
    const Simplex parent = cells[worst].simplex;
    const int depth = cells[worst].depth + 1;
    auto [kids, parts] = detail::split_cell(rule, parent, f);
    cells[worst].error = 0.0;
    cells[worst].depth = -1;  // retired
    for (std::size_t k = 0; k < kids.size(); ++k) {
      cells.push_back(make_cell(kids[k], parts[k], depth));
      heap.push_back(cells.size() - 1);
      std::push_heap(heap.begin(), heap.end(), by_error);
    }
    total_error = 0.0;
    for (std::size_t i : heap) total_error += cells[i].error;
  }

  Value result = cells[heap.front()].children;
  bool first = true;
  for (const Cell& c : cells) {
    if (c.depth < 0) continue;
    if (first) {
      result = c.children;
      first = false;
    } else {
      result += c.children;
    }
  }
  return result;
}

}  // namespace asfem
