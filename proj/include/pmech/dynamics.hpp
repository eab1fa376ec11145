#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pmech/kernels.hpp"
#include "pmech/symbol.hpp"

namespace pmech {

class ForceProfile {
 public:
  enum class Kind { Zero, Constant, Periodic, Tabulated };

  static ForceProfile zero();
  static ForceProfile constant(double z0);
  // z(t) = Z0 cos(Omega t)
  static ForceProfile periodic(double z0, double omega_drive);
  // Piecewise-linear interpolation; constant extrapolation outside the table.
  static ForceProfile tabulated(std::vector<double> times, std::vector<double> values);

  Kind kind() const { return kind_; }
  double amplitude() const { return z0_; }
  double drive_frequency() const { return omega_drive_; }
  double operator()(double t) const;
  // Points where the profile is not smooth (tabulation nodes).
  std::vector<double> breakpoints(double t1, double t2) const;

 private:
  Kind kind_ = Kind::Zero;
  double z0_ = 0;
  double omega_drive_ = 0;
  std::vector<double> times_;
  std::vector<double> values_;
};

template <class Payload>
struct Trajectory {
  std::vector<double> times;
  std::vector<Payload> payload;
};

// f(q, p) -> f(q cos wt + p sin wt/(m w), -q m w sin wt + p cos wt)
Symbol ho_flow(const Symbol& f, double t, double m, double omega);

struct ForceIntegrals {
  double alpha;  // integral of z(t) cos(w t)
  double beta;   // integral of z(t) sin(w t)
};

enum class IntegralMethod { Quadrature, ClosedForm };

// Adaptive Simpson to absolute tolerance 1e-10; ClosedForm is available for
// zero, constant and periodic profiles.
ForceIntegrals force_integrals(const ForceProfile& z, double omega, double t1, double t2,
                               IntegralMethod method = IntegralMethod::Quadrature);
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

// Solution of df/dt = pbracket(f, H0 - z q): f(R_t(q,p) + (I_s/(m w), I_c)).
Symbol forced_flow(const Symbol& f, double t, double m, double omega, const ForceProfile& z,
                   IntegralMethod method = IntegralMethod::Quadrature);
// Same equation started from f at time t0.
Symbol forced_flow(const Symbol& f, double t0, double t, double m, double omega,
                   const ForceProfile& z, IntegralMethod method = IntegralMethod::Quadrature);

using TimeHamiltonian = std::function<Symbol(double)>;

// RK4 on df/dt = pbracket(f, H(t)); fails with ClosureError when a coefficient
// above degree_cap appears.
Trajectory<Symbol> integrate_bracket_ode(const Symbol& f0, const TimeHamiltonian& h, double t0,
                                         double t1, double dt, unsigned degree_cap);
Trajectory<Symbol> integrate_bracket_ode(const Symbol& f0, const Symbol& h, double t0, double t1,
                                         double dt, unsigned degree_cap);

// Kernel transported by the classical flow of a time-independent H of degree <= 2 (n = 1).
GaussianKernel evolve_kernel(const GaussianKernel& k, const Symbol& h, double t);

// Interaction-picture kernel after the force acts over [t1, t2]: the centre moves by
// (-beta/(m w), alpha).
GaussianKernel interaction_evolve(const GaussianKernel& k, double m, double omega,
                                  const ForceProfile& z, double t1, double t2);

struct ResonanceSample {
  double t;
  double envelope;
};

// |(alpha(t), beta(t))| for z = Z0 cos(Omega t) at samples evenly spaced on [0, t_max].
std::vector<ResonanceSample> resonance_amplitude(double omega_drive, double omega, double z0,
                                                 double t_max, std::size_t samples);
// Upper bound on the envelope when Omega != omega.
double resonance_bound(double omega_drive, double omega, double z0);

}  // namespace pmech
