#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "asfem/asfem.hpp"
#include "asfem_cli/config.hpp"

namespace asfem::cli {

// Local element-error setup: equilateral elements of side a at the origin,
// source at (d, 0, 0) with moment (10, 0, 0) nAm.
inline constexpr double kElementMoment = 10e-9;  // A m
inline constexpr double kElementSigmaC = 0.5;    // S/m
inline constexpr double kElementSigmaInf = 0.33; // S/m

Triangle element_triangle(double a);
Tetrahedron element_tetrahedron(double a);
Dipole element_dipole(double d);

enum class Shape { Triangle, Tetrahedron };
Shape parse_shape(const std::string& s);

struct ElementErrorRow {
  double d_over_a = 0.0;
  int order = 0;
  double re_e = 0.0;
};

/// RE_e = ||b_n - b_a|| / ||b_a|| for every (ratio, order), ratio-major.
std::vector<ElementErrorRow> element_error(Shape shape, const std::vector<double>& ratios,
                                           const std::vector<int>& orders, double a = 1.0);
void write_csv(std::ostream& out, const std::vector<ElementErrorRow>& rows);

/// "as" or "fs" with an order, or the compact names "fs2", "fs4", "fs6".
SourceScheme parse_method(const std::string& method, int order = 2);
std::string method_name(const SourceScheme& s);

/// Single forward solve; CSV rows "electrode" per electrode and two "stats"
/// rows (iterations, residual).
void write_solution_csv(std::ostream& out, const ForwardModel& model, const ForwardSolution& s);

struct SphereStudyConfig {
  std::vector<double> radii{0.092, 0.086, 0.08, 0.078};
  std::vector<double> conductivities{0.33, 0.01, 1.79, 0.33};
  int level = 4;
  std::vector<double> distances_mm{1.5, 0.5, 0.125};  // below the innermost interface
  int dipoles = 20;
  std::string orientation = "tangential";  // or "radial"
  std::vector<std::string> methods{"as", "fs2", "fs4"};
  int n_terms = 400;
  double tol = 1e-10;
  std::uint64_t seed = 1;

  static SphereStudyConfig from(const Config& c);
};

struct SphereStudyRow {
  double distance_mm = 0.0;
  double eccentricity = 0.0;  // |r0| / innermost radius
  int dipole = 0;
  std::string method;
  ErrorReport err;
};

/// Rows ordered by distance, dipole, method.
std::vector<SphereStudyRow> sphere_study(const SphereStudyConfig& cfg);
void write_csv(std::ostream& out, const std::vector<SphereStudyRow>& rows);

struct DrefStudyConfig {
  std::vector<double> radii{0.092, 0.078};
  std::vector<double> conductivities{1.79, 0.33};
  std::vector<int> levels{4};
  std::vector<double> d_over_a{0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0};
  int dipoles = 10;
  std::vector<int> orders{2, 4};
  double tol = 1e-10;
  std::uint64_t seed = 1;

  static DrefStudyConfig from(const Config& c);
};

struct DrefRow {
  int level = 0;
  double a = 0.0;         // mean edge of the elements with sigma_c != 0
  double d_over_a = 0.0;  // mean over the dipoles of one target
  int order = 0;
  double re_s = 0.0;      // mean over the dipoles
};

/// Rows ordered by level, target ratio, order.
std::vector<DrefRow> dref_study(const DrefStudyConfig& cfg);
void write_csv(std::ostream& out, const std::vector<DrefRow>& rows);

/// Largest d/a at which mean RE_s of `order` reaches `threshold`, scanning
/// from large to small ratios with log-log interpolation; NaN if never.
double threshold_crossing(const std::vector<DrefRow>& rows, int level, int order, double threshold = 0.01);

/// Shortest round-trip decimal.
std::string fmt(double v);

}  // namespace asfem::cli
