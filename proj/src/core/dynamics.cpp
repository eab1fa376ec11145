#include "pmech/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "pmech/errors.hpp"

namespace pmech {

ForceProfile ForceProfile::zero() { return ForceProfile(); }

ForceProfile ForceProfile::constant(double z0) {
  if (!std::isfinite(z0)) throw InvalidArgument("force amplitude must be finite");
  ForceProfile f;
  f.kind_ = Kind::Constant;
  f.z0_ = z0;
  return f;
}

ForceProfile ForceProfile::periodic(double z0, double omega_drive) {
  if (!std::isfinite(z0) || !(omega_drive > 0) || !std::isfinite(omega_drive))
    throw InvalidArgument("periodic force needs finite Z0 and Omega > 0");
  ForceProfile f;
  f.kind_ = Kind::Periodic;
  f.z0_ = z0;
  f.omega_drive_ = omega_drive;
  return f;
}

ForceProfile ForceProfile::tabulated(std::vector<double> times, std::vector<double> values) {
  if (times.size() < 2 || times.size() != values.size())
    throw InvalidArgument("tabulated force needs >= 2 matching (t, z) pairs");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw InvalidArgument("tabulated times must increase");
  ForceProfile f;
  f.kind_ = Kind::Tabulated;
  f.times_ = std::move(times);
  f.values_ = std::move(values);
  return f;
}

double ForceProfile::operator()(double t) const {
  switch (kind_) {
    case Kind::Zero:
      return 0;
    case Kind::Constant:
      return z0_;
    case Kind::Periodic:
      return z0_ * std::cos(omega_drive_ * t);
    case Kind::Tabulated: {
      if (t <= times_.front()) return values_.front();
      if (t >= times_.back()) return values_.back();
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      std::size_t i = static_cast<std::size_t>(it - times_.begin());
      double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
      return values_[i - 1] + w * (values_[i] - values_[i - 1]);
    }
  }
  return 0;
}

std::vector<double> ForceProfile::breakpoints(double t1, double t2) const {
  std::vector<double> out;
  for (double t : times_)
    if (t > t1 && t < t2) out.push_back(t);
  return out;
}

namespace {

RationalMatrix rotation(double t, double m, double omega) {
  double c = std::cos(omega * t), s = std::sin(omega * t);
  double mw = m * omega;
  RationalMatrix r(2, 2);
  r(0, 0) = rational_from_double(c);
  r(0, 1) = rational_from_double(s / mw);
  r(1, 0) = rational_from_double(-mw * s);
  r(1, 1) = rational_from_double(c);
  return r;
}

void require_oscillator(double m, double omega) {
  if (!(m > 0) || !(omega > 0) || !std::isfinite(m) || !std::isfinite(omega))
    throw InvalidArgument("m and omega must be positive");
}

}  // namespace

Symbol ho_flow(const Symbol& f, double t, double m, double omega) {
  require_oscillator(m, omega);
  if (f.dim() != 1) throw DimensionError("ho_flow supports n = 1");
  std::vector<Rational> zero(2);
  return substitute_affine(f, rotation(t, m, omega), zero);
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  double diff = left + right - whole;
  if (std::abs(diff) <= 15 * tol) return left + right + diff / 15;
  if (depth <= 0) throw PreconditionError("adaptive Simpson quadrature did not reach tolerance");
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

namespace {

// Antiderivatives from 0 of cos(W t) cos(w t) and cos(W t) sin(w t).
std::pair<double, double> periodic_antiderivative(double drive, double omega, double t) {
  if (drive == omega) {
    double c = t / 2 + std::sin(2 * omega * t) / (4 * omega);
    double s = (1 - std::cos(2 * omega * t)) / (4 * omega);
    return {c, s};
  }
  double dm = omega - drive, dp = omega + drive;
  double c = 0.5 * (std::sin(dm * t) / dm + std::sin(dp * t) / dp);
  double s = 0.5 * ((1 - std::cos(dp * t)) / dp + (1 - std::cos(dm * t)) / dm);
  return {c, s};
}

ForceIntegrals closed_form_integrals(const ForceProfile& z, double omega, double t1, double t2) {
  switch (z.kind()) {
    case ForceProfile::Kind::Zero:
      return {0, 0};
    case ForceProfile::Kind::Constant: {
      double z0 = z.amplitude();
      return {z0 * (std::sin(omega * t2) - std::sin(omega * t1)) / omega,
              z0 * (std::cos(omega * t1) - std::cos(omega * t2)) / omega};
    }
    case ForceProfile::Kind::Periodic: {
      auto a = periodic_antiderivative(z.drive_frequency(), omega, t1);
      auto b = periodic_antiderivative(z.drive_frequency(), omega, t2);
      return {z.amplitude() * (b.first - a.first), z.amplitude() * (b.second - a.second)};
    }
    case ForceProfile::Kind::Tabulated:
      break;
  }
  throw InvalidArgument("closed-form force integrals are not available for tabulated forces");
}

}  // namespace

ForceIntegrals force_integrals(const ForceProfile& z, double omega, double t1, double t2,
                               IntegralMethod method) {
  if (!(omega > 0)) throw InvalidArgument("omega must be positive");
  if (!(t2 >= t1) || !std::isfinite(t1) || !std::isfinite(t2))
    throw InvalidArgument("force_integrals requires finite t2 >= t1");
  if (method == IntegralMethod::ClosedForm) return closed_form_integrals(z, omega, t1, t2);
  if (z.kind() == ForceProfile::Kind::Zero || t1 == t2) return {0, 0};
  // Split into pieces no longer than a quarter of the fastest period, plus tabulation nodes.
  double fastest = omega + z.drive_frequency();
  double piece = 0.5 * M_PI / fastest;
  std::vector<double> cuts{t1};
  std::size_t count = static_cast<std::size_t>(std::ceil((t2 - t1) / piece));
  count = std::max<std::size_t>(count, 1);
  for (std::size_t i = 1; i < count; ++i) cuts.push_back(t1 + (t2 - t1) * i / count);
  for (double b : z.breakpoints(t1, t2)) cuts.push_back(b);
  cuts.push_back(t2);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double tol = 1e-10 / static_cast<double>(cuts.size());
  auto fc = [&](double t) { return z(t) * std::cos(omega * t); };
  auto fs = [&](double t) { return z(t) * std::sin(omega * t); };
  ForceIntegrals out{0, 0};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    out.alpha += adaptive_simpson(fc, cuts[i], cuts[i + 1], tol);
    out.beta += adaptive_simpson(fs, cuts[i], cuts[i + 1], tol);
  }
  return out;
}

Symbol forced_flow(const Symbol& f, double t, double m, double omega, const ForceProfile& z,
                   IntegralMethod method) {
  return forced_flow(f, 0, t, m, omega, z, method);
}

Symbol forced_flow(const Symbol& f, double t0, double t, double m, double omega,
                   const ForceProfile& z, IntegralMethod method) {
  require_oscillator(m, omega);
  if (f.dim() != 1) throw DimensionError("forced_flow supports n = 1");
  ForceIntegrals in = t >= t0 ? force_integrals(z, omega, t0, t, method)
                              : [&] {
                                  auto r = force_integrals(z, omega, t, t0, method);
                                  return ForceIntegrals{-r.alpha, -r.beta};
                                }();
  // integrals against cos/sin(w (tau - t0))
  double c = std::cos(omega * t0), s = std::sin(omega * t0);
  double is = c * in.beta - s * in.alpha;
  double ic = c * in.alpha + s * in.beta;
  std::vector<Rational> shift{rational_from_double(is / (m * omega)), rational_from_double(ic)};
  return substitute_affine(f, rotation(t - t0, m, omega), shift);
}

namespace {

using Coeffs = std::map<Monomial, cdouble, CanonicalOrder>;

Symbol to_symbol(const Coeffs& c, std::size_t n, const ProvenanceTag& tag) {
  Symbol s(n, tag);
  for (const auto& [m, v] : c) s.add_term(m, crational_from_complex(v));
  return s;
}

Coeffs to_coeffs(const Symbol& s) {
  Coeffs c;
  for (const auto& [m, v] : s.terms()) c.emplace(m, v.to_complex());
  return c;
}

Coeffs axpy(const Coeffs& x, double a, const Coeffs& y) {
  Coeffs out = x;
  for (const auto& [m, v] : y) out[m] += a * v;
  return out;
}

}  // namespace

Trajectory<Symbol> integrate_bracket_ode(const Symbol& f0, const TimeHamiltonian& h, double t0,
                                         double t1, double dt, unsigned degree_cap) {
  if (!(dt > 0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(t1 >= t0)) throw InvalidArgument("t1 must not precede t0");
  if (f0.degree() > degree_cap)
    throw InvalidArgument("degree_cap is below the degree of the initial symbol");
  std::size_t n = f0.dim();
  ProvenanceTag tag = f0.provenance();
  auto rhs = [&](double t, const Coeffs& c) {
    Symbol b = pbracket(to_symbol(c, n, tag), h(t));
    if (b.degree() > degree_cap)
      throw ClosureError("bracket ODE produced degree " + std::to_string(b.degree()) +
                         " above the cap " + std::to_string(degree_cap) + " at t = " +
                         std::to_string(t));
    return to_coeffs(b);
  };
  std::size_t steps = static_cast<std::size_t>(std::ceil((t1 - t0) / dt - 1e-9));
  Trajectory<Symbol> traj;
  traj.times.push_back(t0);
  traj.payload.push_back(f0);
  Coeffs c = to_coeffs(f0);
  double t = t0;
  for (std::size_t i = 1; i <= steps; ++i) {
    double next = i == steps ? t1 : t0 + static_cast<double>(i) * dt;
    double step = next - t;
    Coeffs k1 = rhs(t, c);
    Coeffs k2 = rhs(t + step / 2, axpy(c, step / 2, k1));
    Coeffs k3 = rhs(t + step / 2, axpy(c, step / 2, k2));
    Coeffs k4 = rhs(next, axpy(c, step, k3));
    for (const auto& [m, v] : k1) c[m] += step / 6 * v;
    for (const auto& [m, v] : k2) c[m] += step / 3 * v;
    for (const auto& [m, v] : k3) c[m] += step / 3 * v;
    for (const auto& [m, v] : k4) c[m] += step / 6 * v;
    t = next;
    traj.times.push_back(t);
    traj.payload.push_back(to_symbol(c, n, tag));
  }
  return traj;
}

Trajectory<Symbol> integrate_bracket_ode(const Symbol& f0, const Symbol& h, double t0, double t1,
                                         double dt, unsigned degree_cap) {
  return integrate_bracket_ode(
      f0, [&h](double) { return h; }, t0, t1, dt, degree_cap);
}

GaussianKernel evolve_kernel(const GaussianKernel& k, const Symbol& h, double t) {
  if (k.dim() != 1 || h.dim() != 1) throw DimensionError("evolve_kernel supports n = 1");
  if (h.degree() > 2) throw InvalidArgument("evolve_kernel needs a Hamiltonian of degree <= 2");
  double a = 0, b = 0, c = 0, d = 0, e = 0;
  for (const auto& [m, v] : h.terms()) {
    if (m.degree() == 0) continue;
    if (m.hbar != 0)
      throw InvalidArgument("evolve_kernel: hbar-dependent non-constant Hamiltonian terms");
    if (!v.is_real()) throw InvalidArgument("evolve_kernel: Hamiltonian must be real");
    double val = to_double(v.re);
    unsigned qa = m.q[0], pb = m.p[0];
    if (qa == 2) a = val;
    if (qa == 1 && pb == 1) b = val;
    if (pb == 2) c = val;
    if (qa == 1 && pb == 0) d = val;
    if (qa == 0 && pb == 1) e = val;
  }
  if (k.h() > 0) {
    double sq = k.sigma_q2(), sp = k.sigma_p2();
    double scale = std::abs(a) * sq + std::abs(c) * sp + std::abs(b) * std::sqrt(sq * sp);
    if (std::abs(b) * std::sqrt(sq * sp) > 1e-12 * scale ||
        std::abs(c * sp - a * sq) > 1e-12 * scale)
      throw InvalidArgument("evolve_kernel: flow does not preserve the coherent-state shape");
  }
  // dz/dt = M z + u with M = [[b, 2c], [-2a, -b]], u = (e, -d); M^2 = disc * I.
  double disc = b * b - 4 * a * c;
  double C, S, Ci, Si;
  if (disc < 0) {
    double nu = std::sqrt(-disc);
    C = std::cos(nu * t);
    S = std::sin(nu * t) / nu;
    Ci = S;
    Si = (1 - C) / (nu * nu);
  } else if (disc > 0) {
    double nu = std::sqrt(disc);
    C = std::cosh(nu * t);
    S = std::sinh(nu * t) / nu;
    Ci = S;
    Si = (C - 1) / (nu * nu);
  } else {
    C = 1;
    S = t;
    Ci = t;
    Si = t * t / 2;
  }
  double q0 = k.q0()[0], p0 = k.p0()[0];
  double mq = b * q0 + 2 * c * p0, mp = -2 * a * q0 - b * p0;
  double ue = e, ud = -d;
  double mu_q = b * ue + 2 * c * ud, mu_p = -2 * a * ue - b * ud;
  double q = C * q0 + S * mq + Ci * ue + Si * mu_q;
  double p = C * p0 + S * mp + Ci * ud + Si * mu_p;
  return k.with_center({q}, {p});
}

GaussianKernel interaction_evolve(const GaussianKernel& k, double m, double omega,
                                  const ForceProfile& z, double t1, double t2) {
  require_oscillator(m, omega);
  if (k.dim() != 1) throw DimensionError("interaction_evolve supports n = 1");
  ForceIntegrals in = force_integrals(z, omega, t1, t2);
  return k.with_center({k.q0()[0] - in.beta / (m * omega)}, {k.p0()[0] + in.alpha});
}

std::vector<ResonanceSample> resonance_amplitude(double omega_drive, double omega, double z0,
                                                 double t_max, std::size_t samples) {
  if (!(omega_drive > 0) || !(omega > 0) || !(t_max > 0) || !(z0 >= 0))
    throw InvalidArgument("resonance needs Omega, omega, t_max > 0 and Z0 >= 0");
  if (samples < 2) throw InvalidArgument("resonance needs at least 2 samples");
  std::vector<ResonanceSample> out;
  out.reserve(samples);
  out.push_back({0, 0});
  if (z0 == 0) {
    for (std::size_t i = 1; i < samples; ++i)
      out.push_back({t_max * static_cast<double>(i) / static_cast<double>(samples - 1), 0});
    return out;
  }
  ForceProfile z = ForceProfile::periodic(z0, omega_drive);
  double alpha = 0, beta = 0, prev = 0;
  for (std::size_t i = 1; i < samples; ++i) {
    double t = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    ForceIntegrals in = force_integrals(z, omega, prev, t);
    alpha += in.alpha;
    beta += in.beta;
    out.push_back({t, std::hypot(alpha, beta)});
    prev = t;
  }
  return out;
}

double resonance_bound(double omega_drive, double omega, double z0) {
  if (omega_drive == omega) return std::numeric_limits<double>::infinity();
  return std::sqrt(5.0) * std::abs(z0) * std::max(omega_drive, omega) /
         std::abs(omega_drive * omega_drive - omega * omega);
}

}  // namespace pmech
