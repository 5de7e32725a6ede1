#include "asfem/reference.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "asfem/errors.hpp"

namespace asfem {

namespace {

// Surface/source ratio of the radial solution for harmonic l, in units of
// the outer radius: log |u(1) / B_1| and its sign, where the innermost layer
// holds A_1 r^l + B_1 r^-(l+1) and the outer surface is insulating.
std::pair<double, double> transfer(const std::vector<double>& r, const std::vector<double>& sig, int l) {
  const double L = l;
  double X = (L + 1.0) / L, Y = 1.0, log_scale = 0.0;
  const double u_surf = X + Y;
  double r_prev = 1.0;
  for (std::size_t j = 1; j < r.size(); ++j) {
    const double rj = r[j];
    const double lx = std::log(std::abs(X)) + L * std::log(rj / r_prev);
    const double ly = std::log(std::abs(Y)) + (L + 1.0) * std::log(r_prev / rj);
    const double M = std::max(lx, ly);
    X = std::copysign(std::exp(lx - M), X);
    Y = std::copysign(std::exp(ly - M), Y);
    log_scale += M;
    const double U = X + Y;
    const double F = sig[j - 1] / sig[j] * (L * X - (L + 1.0) * Y);
    X = ((L + 1.0) * U + F) / (2.0 * L + 1.0);
    Y = (L * U - F) / (2.0 * L + 1.0);
    r_prev = rj;
  }
  // B_1 = Y r_prev^(l+1) exp(log_scale)
  const double log_b1 = std::log(std::abs(Y)) + log_scale + (L + 1.0) * std::log(r_prev);
  const double sign = (u_surf > 0.0) == (Y > 0.0) ? 1.0 : -1.0;
  return {std::log(std::abs(u_surf)) - log_b1, sign};
}

}  // namespace

Eigen::VectorXd sphere_analytic_potential(const SphereModel& model, const Dipole& d,
                                          const std::vector<Vec3>& points) {
  const std::size_t n = model.radii.size();
  if (n == 0 || model.conductivities.size() != n) throw InvalidRadii("one conductivity per layer is required");
  for (std::size_t k = 0; k < n; ++k) {
    if (!(model.radii[k] > 0.0) || (k > 0 && !(model.radii[k] < model.radii[k - 1])))
      throw InvalidRadii("radii must be positive and strictly decreasing");
    if (!(model.conductivities[k] > 0.0)) throw InvalidRadii("conductivities must be positive");
  }
  const double R = model.radii[0];
  std::vector<double> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = model.radii[k] / R;
  const double b = d.position.norm() / R;
  if (!(b < r.back())) throw SourceOutsideMesh("dipole must lie inside the innermost layer");

  const Vec3 r0_hat = b > 0.0 ? Vec3(d.position.normalized()) : Vec3(0.0, 0.0, 1.0);
  const Vec3& q = d.moment;
  const double qr0 = q.dot(r0_hat);
  const double log_b = b > 0.0 ? std::log(b) : -std::numeric_limits<double>::infinity();
  const int N = model.n_terms;

  // per-term factor c_l b^(l-1), in units R = 1
  std::vector<double> coef(static_cast<std::size_t>(N) + 1, 0.0);
  for (int l = 1; l <= N; ++l) {
    const auto [lg, sg] = transfer(r, model.conductivities, l);
    coef[l] = l == 1 ? sg * std::exp(lg) : (b > 0.0 ? sg * std::exp(lg + (l - 1) * log_b) : 0.0);
  }
  const double pre = 1.0 / (4.0 * std::numbers::pi * model.conductivities.back() * R * R);

  Eigen::VectorXd u(static_cast<Eigen::Index>(points.size()));
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Vec3 rh = points[k].normalized();
    const double x = rh.dot(r0_hat);
    const double qr = q.dot(rh);
    double P_prev = 1.0, P = x, dP_prev = 0.0, dP = 1.0;  // P_0, P_1 and derivatives
    double sum = 0.0;
    for (int l = 1; l <= N; ++l) {
      sum += coef[l] * (l * P * qr0 + dP * (qr - x * qr0));
      const double P_next = ((2.0 * l + 1.0) * x * P - l * P_prev) / (l + 1.0);
      const double dP_next = dP_prev + (2.0 * l + 1.0) * P;
      P_prev = P;
      P = P_next;
      dP_prev = dP;
      dP = dP_next;
    }
    u[static_cast<Eigen::Index>(k)] = pre * sum;
  }

  // geometric tail bound with |P_l| <= 1, |P_l'| <= l (l + 1) / 2
  if (b > 0.0) {
    const double qn = q.norm();
    double term = 0.0;
    for (int l = N - 4; l <= N; ++l)
      if (l >= 1) term = std::max(term, std::abs(coef[l]) * (l + 0.5 * l * (l + 1.0)) * 2.0 * qn);
    const double tail = pre * term / std::max(1e-300, 1.0 - b);
    const double scale = u.size() > 0 ? u.cwiseAbs().maxCoeff() : 0.0;
    if (!(tail <= 1e-10 * scale))
      throw SourceTooDeepForConvergence("series tail exceeds tolerance; increase n_terms");
  }
  if (u.size() > 0) u.array() -= u.mean();
  return u;
}

ErrorReport metrics(const Eigen::VectorXd& u_n, const Eigen::VectorXd& u_a) {
  if (u_n.size() != u_a.size()) throw ValidationError("metric inputs differ in length");
  const double na = u_a.norm(), nn = u_n.norm();
  if (na == 0.0 || nn == 0.0) throw ZeroReference("zero-norm potential in metrics");
  ErrorReport e;
  e.re = (u_n - u_a).norm() / na;
  e.rdm = (u_n / nn - u_a / na).norm();
  e.mag = std::abs(1.0 - nn / na);
  return e;
}

double metric_re_s(const Eigen::VectorXd& u_as, const Eigen::VectorXd& u_fs) {
  if (u_as.size() != u_fs.size()) throw ValidationError("metric inputs differ in length");
  const double n = u_as.norm();
  if (n == 0.0) throw ZeroReference("zero-norm reference potential");
  return (u_as - u_fs).norm() / n;
}

}  // namespace asfem
