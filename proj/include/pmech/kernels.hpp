#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "pmech/fock.hpp"
#include "pmech/symbol.hpp"

namespace pmech {

// l(s,x,y) = exp(-2 pi i (q0.x + p0.y) - 2 pi i h s - (pi h/2) sum(x^2/(w m) + w m y^2))
class GaussianKernel {
 public:
  GaussianKernel(double h, std::vector<double> q0, std::vector<double> p0, double m,
                 double omega);

  double h() const { return h_; }
  const std::vector<double>& q0() const { return q0_; }
  const std::vector<double>& p0() const { return p0_; }
  double m() const { return m_; }
  double omega() const { return omega_; }
  std::size_t dim() const { return q0_.size(); }
  // Second moments of the position and momentum marginals.
  double sigma_q2() const;
  double sigma_p2() const;

  cdouble operator()(double s, std::span<const double> x, std::span<const double> y) const;
  GaussianKernel with_center(std::vector<double> q0, std::vector<double> p0) const;

 private:
  double h_;
  std::vector<double> q0_;
  std::vector<double> p0_;
  double m_;
  double omega_;
};

GaussianKernel coherent_kernel(const PlanckParameter& planck, double q0, double p0, double m,
                               double omega);
GaussianKernel coherent_kernel(const PlanckParameter& planck, std::vector<double> q0,
                               std::vector<double> p0, double m, double omega);

// Finite complex combination of kernels.
class StateFunctional {
 public:
  static StateFunctional pure(GaussianKernel k);
  StateFunctional& add(cdouble weight, GaussianKernel k);
  const std::vector<std::pair<cdouble, GaussianKernel>>& components() const { return parts_; }

 private:
  std::vector<std::pair<cdouble, GaussianKernel>> parts_;
};

// Pairs B with the kernel by differentiating it at the origin; B must not be raw.
cdouble eval_state(const GaussianKernel& k, const Symbol& b);
cdouble eval_state(const StateFunctional& state, const Symbol& b);

struct LimitScanRow {
  double h;
  cdouble value;
  cdouble classical;
  double abs_error;
};

// Rows are evaluated concurrently and returned in input order.
std::vector<LimitScanRow> classical_limit_scan(const Symbol& b, double q0, double p0, double m,
                                               double omega, std::span<const double> h_list);
// Least-squares slope of log(error) against log(h) over rows with h > 0 and error > 0;
// NaN when fewer than two such rows exist.
double fitted_error_order(const std::vector<LimitScanRow>& rows);

struct KernelPoint {
  double s;
  double x;
  double y;
};

// (4/h) * integral of v(g^-1 g') conj(v(g')) dx' dy' with v = e^{2 pi i h s} F[f](x, y),
// evaluated by lattice quadrature in the dual variables.
std::vector<cdouble> kernel_from_vector(const StateVector& v, std::span<const KernelPoint> points);

}  // namespace pmech
