#include "asfem/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "asfem/errors.hpp"
#include "asfem/quadrature.hpp"

namespace asfem {

namespace {

constexpr double kPi = std::numbers::pi;
// above this |w0| / diameter the closed forms in beta show no cancellation;
// below it the edge-wise split alpha - gamma is used
constexpr double kDirectForm = 0.5;

// beyond this source-to-centroid distance / diameter the R^-5 edge sums cancel
// by about (R/|w0|)^2 R/diameter; the kernel is smooth there and is integrated
// on a twice-subdivided triangle instead
constexpr double kFarField = 8.0;

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// (s+/sqrt(t^2+s+^2) - s-/sqrt(t^2+s-^2)) / t^2, i.e. the edge R^-3 integral
// with w0 = 0
double edge_inv_r3_plane(double t, double sm, double sp) {
  const double a = t * t;
  const double Rm = std::sqrt(a + sm * sm), Rp = std::sqrt(a + sp * sp);
  if (sm * sp > 0.0) return (sp - sm) * (sp + sm) / (Rp * Rm * (sp * Rm + sm * Rp));
  return (sp / Rp - sm / Rm) / a;
}

// J_m = int ds / (t^2 + s^2)^m over [sm, sp] for m = 3/2, 5/2, ...; out[k] = J_{3/2+k}
template <std::size_t N>
std::array<double, N> edge_power_integrals(double t, double sm, double sp) {
  std::array<double, N> J{};
  const double a = t * t;
  const double am = a + sm * sm, ap = a + sp * sp;
  J[0] = edge_inv_r3_plane(t, sm, sp);
  double m = 1.5;
  double pm = std::pow(am, m), pp = std::pow(ap, m);
  for (std::size_t k = 1; k < N; ++k) {
    J[k] = (sp / pp - sm / pm + (2.0 * m - 1.0) * J[k - 1]) / (2.0 * m * a);
    pm *= am;
    pp *= ap;
    m += 1.0;
  }
  return J;
}

// t * int ds / ((t^2 + s^2) R^3) over the edge, R^2 = t^2 + s^2 + x^2
double edge_t_e(const KernelContext& c, int i) {
  const auto& ps = c.src;
  const double t = ps.t0[i];
  if (t == 0.0) return 0.0;
  const double x = std::abs(ps.w0);
  const double sm = ps.s_minus[i], sp = ps.s_plus[i];
  if (x * x < 0.04 * t * t) {
    // binomial series in x^2 / (t^2 + s^2) <= 0.04
    constexpr std::size_t N = 16;
    const auto J = edge_power_integrals<N + 1>(t, sm, sp);
    double sum = 0.0, coef = 1.0, xp = 1.0;
    for (std::size_t k = 0; k < N; ++k) {
      sum += coef * xp * J[k + 1];
      coef *= (-1.5 - static_cast<double>(k)) / static_cast<double>(k + 1);
      xp *= x * x;
    }
    return t * sum;
  }
  return (c.gamma[i] / x - t * ps.Rs[i]) / (x * x);
}

}  // namespace

KernelContext KernelContext::make(const Triangle& t, const Vec3& r0) {
  KernelContext c;
  c.frame = build_local_frame(t);
  c.src = project_source(c.frame, r0);
  const auto& ps = c.src;
  const double diam = c.frame.diameter;
  const double x = std::abs(ps.w0);
  c.coplanar = x < 1e-10 * diam;
  if (c.coplanar) {
    const double tmin = std::min({ps.t0[0], ps.t0[1], ps.t0[2]});
    if (tmin >= -1e-12 * diam) throw SourceOnElement("source lies on the triangle");
  }

  double alpha = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double ti = ps.t0[i];
    if (ti == 0.0) continue;
    alpha += std::atan(ps.s_plus[i] / ti) - std::atan(ps.s_minus[i] / ti);
    c.gamma[i] = std::atan(x * ps.s_plus[i] / (ti * ps.R_plus[i])) -
                 std::atan(x * ps.s_minus[i] / (ti * ps.R_minus[i]));
  }
  if (std::abs(alpha) < 1e-9)
    alpha = 0.0;
  else if (std::abs(alpha - 2.0 * kPi) < 1e-9)
    alpha = 2.0 * kPi;
  c.alpha = alpha;
  return c;
}

double int_inv_r3(const KernelContext& c) {
  const auto& ps = c.src;
  double edge = 0.0;
  if (c.coplanar) {
    for (int i = 0; i < 3; ++i) edge += ps.t0[i] * ps.Rs[i];
    return -edge;
  }
  const double x = std::abs(ps.w0);
  if (x >= kDirectForm * c.frame.diameter) return ps.beta_total() / x;
  for (int i = 0; i < 3; ++i) edge += c.gamma[i];
  return (c.alpha - edge) / x;
}

namespace {

double far_inv_r5(const KernelContext& c) {
  const auto& ps = c.src;
  const Triangle local{{Vec3::Zero(), Vec3(c.frame.s_len[2], 0.0, 0.0), Vec3(c.frame.u3, c.frame.v3, 0.0)}};
  const Vec3 src(ps.u0, ps.v0, ps.w0);
  const auto& rule = get_rule(2, 6);
  const auto kernel = [&](const Vec3& x) { return std::pow((x - src).squaredNorm(), -2.5); };
  double sum = 0.0;
  for (const Triangle& a : subdivide(local))
    for (const Triangle& b : subdivide(a)) sum += integrate(rule, b, kernel);
  return sum;
}

bool is_far(const KernelContext& c) {
  const auto& ps = c.src;
  const double cu = (c.frame.s_len[2] + c.frame.u3) / 3.0 - ps.u0, cv = c.frame.v3 / 3.0 - ps.v0;
  return cu * cu + cv * cv + ps.w0 * ps.w0 >= kFarField * kFarField * c.frame.diameter * c.frame.diameter;
}

}  // namespace

double int_inv_r5(const KernelContext& c) {
  const auto& ps = c.src;
  if (is_far(c)) return far_inv_r5(c);
  double edge = 0.0;
  if (c.coplanar) {
    for (int i = 0; i < 3; ++i) {
      if (ps.t0[i] == 0.0) continue;
      edge += ps.t0[i] * edge_power_integrals<2>(ps.t0[i], ps.s_minus[i], ps.s_plus[i])[1];
    }
    return -edge / 3.0;
  }
  const double x = std::abs(ps.w0);
  if (x >= kDirectForm * c.frame.diameter) {
    for (int i = 0; i < 3; ++i) edge += ps.t0[i] * ps.Rs[i];
    return (ps.beta_total() / (x * x * x) + edge / (x * x)) / 3.0;
  }
  for (int i = 0; i < 3; ++i) edge += edge_t_e(c, i);
  return (c.alpha / (x * x * x) - edge) / 3.0;
}

Vec3 int_grad_s_w0_r3(const KernelContext& c) {
  Vec3 g = Vec3::Zero();
  for (int i = 0; i < 3; ++i) g += c.src.Rs[i] * c.frame.m_hat[i];
  return c.src.w0 * g;
}

double dipole_flux_I0(const KernelContext& c, const Vec3& q) {
  const auto& ps = c.src;
  Vec3 g = Vec3::Zero();
  for (int i = 0; i < 3; ++i)
    g += ps.Rs[i] * (ps.w0 * c.frame.m_hat[i] - ps.t0[i] * c.frame.w_hat);
  return q.dot(g);
}

FirstMoments first_moment_flux(const KernelContext& c, const Vec3& q) {
  const auto& ps = c.src;
  const auto& f = c.frame;
  const double w0 = ps.w0;
  const double sb = sign(w0) * ps.beta_total();
  Vec3 gu = Vec3::Zero(), gv = Vec3::Zero(), h = Vec3::Zero();
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = f.s_hat[i] * ps.Rd[i] + ps.t0[i] * ps.Rs[i] * f.m_hat[i];
    gu += f.m_hat[i] * f.u_hat.dot(e);
    gv += f.m_hat[i] * f.v_hat.dot(e);
    h -= f.m_hat[i] * edge_rq(ps, i);  // Rs w0^2 - f2 without cancellation
  }
  const Vec3 vu = w0 * gu - f.u_hat * sb + f.w_hat * f.u_hat.dot(h);
  const Vec3 vv = w0 * gv - f.v_hat * sb + f.w_hat * f.v_hat.dot(h);
  return {q.dot(vu), q.dot(vv)};
}

double face_integral_of_f(const KernelContext& c, const Vec3& q) {
  const auto& ps = c.src;
  Vec3 g = sign(ps.w0) * ps.beta_total() * c.frame.w_hat;
  for (int i = 0; i < 3; ++i) g -= c.frame.m_hat[i] * ps.f2[i];
  return q.dot(g);
}

double signed_solid_angle(const KernelContext& c) { return sign(c.src.w0) * c.src.beta_total(); }

}  // namespace asfem
