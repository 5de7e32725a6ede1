#pragma once

#include <vector>

#include <Eigen/Dense>

#include "asfem/elements.hpp"

namespace asfem {

/// Concentric isotropic layers; radii[0] is the outer surface and the
/// source lies inside radii.back().
struct SphereModel {
  std::vector<double> radii;
  std::vector<double> conductivities;
  int n_terms = 400;
};

/// Series potential on the outer surface for each point (taken along its
/// direction), re-referenced to zero mean. Throws InvalidRadii for a bad
/// model and SourceTooDeepForConvergence when the remaining terms might
/// still exceed 1e-10 of the result.
Eigen::VectorXd sphere_analytic_potential(const SphereModel& model, const Dipole& d,
                                          const std::vector<Vec3>& points);

struct ErrorReport {
  double re = 0.0, rdm = 0.0, mag = 0.0;
};

/// Metrics of u_n against u_a. Throws ZeroReference when either norm is zero
/// (RDM needs both).
ErrorReport metrics(const Eigen::VectorXd& u_n, const Eigen::VectorXd& u_a);
/// ||u_as - u_fs|| / ||u_as||
double metric_re_s(const Eigen::VectorXd& u_as, const Eigen::VectorXd& u_fs);

}  // namespace asfem
