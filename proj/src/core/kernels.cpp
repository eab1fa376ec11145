#include "pmech/kernels.hpp"

#include <cmath>
#include <future>
#include <limits>

#include "pmech/errors.hpp"

namespace pmech {

GaussianKernel::GaussianKernel(double h, std::vector<double> q0, std::vector<double> p0, double m,
                               double omega)
    : h_(h), q0_(std::move(q0)), p0_(std::move(p0)), m_(m), omega_(omega) {
  if (!(h >= 0) || !std::isfinite(h)) throw InvalidArgument("kernel h must be >= 0");
  if (!(m > 0) || !(omega > 0)) throw InvalidArgument("m and omega must be positive");
  if (q0_.empty()) throw DimensionError("kernel needs n >= 1");
  require_same_dim(q0_.size(), p0_.size(), "kernel centre");
}

double GaussianKernel::sigma_q2() const { return (h_ / (2 * M_PI)) / (2 * m_ * omega_); }
double GaussianKernel::sigma_p2() const { return (h_ / (2 * M_PI)) * m_ * omega_ / 2; }

cdouble GaussianKernel::operator()(double s, std::span<const double> x,
                                   std::span<const double> y) const {
  require_same_dim(dim(), x.size(), "kernel evaluation");
  require_same_dim(dim(), y.size(), "kernel evaluation");
  double mw = m_ * omega_;
  double phase = -2 * M_PI * h_ * s;
  double gauss = 0;
  for (std::size_t j = 0; j < dim(); ++j) {
    phase -= 2 * M_PI * (q0_[j] * x[j] + p0_[j] * y[j]);
    gauss += x[j] * x[j] / mw + mw * y[j] * y[j];
  }
  return std::polar(std::exp(-(M_PI * h_ / 2) * gauss), phase);
}

GaussianKernel GaussianKernel::with_center(std::vector<double> q0, std::vector<double> p0) const {
  return GaussianKernel(h_, std::move(q0), std::move(p0), m_, omega_);
}

GaussianKernel coherent_kernel(const PlanckParameter& planck, double q0, double p0, double m,
                               double omega) {
  return GaussianKernel(planck.h, {q0}, {p0}, m, omega);
}

GaussianKernel coherent_kernel(const PlanckParameter& planck, std::vector<double> q0,
                               std::vector<double> p0, double m, double omega) {
  return GaussianKernel(planck.h, std::move(q0), std::move(p0), m, omega);
}

StateFunctional StateFunctional::pure(GaussianKernel k) {
  StateFunctional s;
  s.parts_.emplace_back(1.0, std::move(k));
  return s;
}

StateFunctional& StateFunctional::add(cdouble weight, GaussianKernel k) {
  parts_.emplace_back(weight, std::move(k));
  return *this;
}

namespace {

// Moments of a Gaussian marginal with mean c and variance v:
// M_0 = 1, M_{a+1} = c M_a + v a M_{a-1}. At v = 0 this is plain repeated multiplication.
std::vector<double> gaussian_moments(double c, double v, unsigned amax) {
  std::vector<double> m(amax + 1);
  m[0] = 1;
  for (unsigned a = 0; a < amax; ++a) {
    m[a + 1] = c * m[a];
    if (a > 0 && v != 0) m[a + 1] += v * a * m[a - 1];
  }
  return m;
}

}  // namespace

cdouble eval_state(const GaussianKernel& k, const Symbol& b) {
  if (b.provenance().origin == Origin::Raw)
    throw InvalidArgument("eval_state: symbol has no distributional lineage (raw symbol)");
  require_same_dim(k.dim(), b.dim(), "eval_state");
  if (k.h() == 0) return classical_project(b, k.q0(), k.p0());
  std::size_t n = k.dim();
  std::vector<unsigned> qmax(n, 0), pmax(n, 0);
  for (const auto& [m, c] : b.terms())
    for (std::size_t j = 0; j < n; ++j) {
      qmax[j] = std::max(qmax[j], m.q[j]);
      pmax[j] = std::max(pmax[j], m.p[j]);
    }
  std::vector<std::vector<double>> mq(n), mp(n);
  for (std::size_t j = 0; j < n; ++j) {
    mq[j] = gaussian_moments(k.q0()[j], k.sigma_q2(), qmax[j]);
    mp[j] = gaussian_moments(k.p0()[j], k.sigma_p2(), pmax[j]);
  }
  double hbar = k.h() / (2 * M_PI);
  cdouble acc = 0;
  for (const auto& [m, c] : b.terms()) {
    double v = ipow(hbar, m.hbar);
    for (std::size_t j = 0; j < n; ++j) v *= mq[j][m.q[j]] * mp[j][m.p[j]];
    acc += c.to_complex() * v;
  }
  return acc;
}

cdouble eval_state(const StateFunctional& state, const Symbol& b) {
  cdouble acc = 0;
  for (const auto& [w, k] : state.components()) acc += w * eval_state(k, b);
  return acc;
}

std::vector<LimitScanRow> classical_limit_scan(const Symbol& b, double q0, double p0, double m,
                                               double omega, std::span<const double> h_list) {
  if (h_list.empty()) throw InvalidArgument("classical_limit_scan: empty h list");
  for (double h : h_list)
    if (!(h >= 0) || !std::isfinite(h)) throw InvalidArgument("h values must be finite and >= 0");
  if (b.dim() != 1) throw DimensionError("classical_limit_scan supports n = 1");
  std::vector<double> qv{q0}, pv{p0};
  cdouble classical = classical_project(b, qv, pv);
  std::vector<std::future<LimitScanRow>> jobs;
  jobs.reserve(h_list.size());
  for (double h : h_list)
    jobs.push_back(std::async(std::launch::async, [&, h] {
      cdouble value = eval_state(coherent_kernel(PlanckParameter(h), q0, p0, m, omega), b);
      return LimitScanRow{h, value, classical, std::abs(value - classical)};
    }));
  std::vector<LimitScanRow> rows;
  rows.reserve(jobs.size());
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

double fitted_error_order(const std::vector<LimitScanRow>& rows) {
  std::vector<double> xs, ys;
  for (const auto& r : rows)
    if (r.h > 0 && r.abs_error > 0) {
      xs.push_back(std::log(r.h));
      ys.push_back(std::log(r.abs_error));
    }
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

namespace {

// F[f](x + xi_m, y + eta_l) on the dual lattice xi_m = mm / (N delta), mm in [-N/2, N/2),
// stored with index (mm + N/2).
std::vector<cdouble> dual_samples(const StateVector& v, double x, double y) {
  const PhaseGrid& g = v.grid();
  int n = g.size();
  std::vector<cdouble> mod(g.count());
  for (int iq = 0; iq < n; ++iq)
    for (int ip = 0; ip < n; ++ip) {
      double phase = -2 * M_PI * (g.node(iq) * x + g.node(ip) * y);
      mod[g.index(iq, ip)] = v.at(iq, ip) * std::polar(1.0, phase);
    }
  auto spec = fft2(mod, n, -1);
  double d2 = g.spacing() * g.spacing();
  std::vector<cdouble> out(g.count());
  for (int a = 0; a < n; ++a) {
    int ma = a - n / 2;
    int sa = (ma % n + n) % n;
    for (int b = 0; b < n; ++b) {
      int mb = b - n / 2;
      int sb = (mb % n + n) % n;
      // node offset (j - N/2) contributes (-1)^(m)
      double sign = ((ma + mb) % 2 == 0) ? 1.0 : -1.0;
      out[g.index(a, b)] = d2 * sign * spec[g.index(sa, sb)];
    }
  }
  return out;
}

}  // namespace

std::vector<cdouble> kernel_from_vector(const StateVector& v, std::span<const KernelPoint> points) {
  v.require_contained("kernel_from_vector");
  const PhaseGrid& g = v.grid();
  int n = g.size();
  double h = v.planck().h;
  double dxi = 1.0 / (n * g.spacing());
  auto base = dual_samples(v, 0, 0);
  std::vector<cdouble> out;
  out.reserve(points.size());
  std::vector<cdouble> integrand(g.count());
  for (const auto& pt : points) {
    auto shifted = dual_samples(v, pt.x, pt.y);
    for (int a = 0; a < n; ++a) {
      double xi = (a - n / 2) * dxi;
      for (int b = 0; b < n; ++b) {
        double eta = (b - n / 2) * dxi;
        double phase = M_PI * h * (xi * pt.y - pt.x * eta);
        std::size_t idx = g.index(a, b);
        integrand[idx] = std::polar(1.0, phase) * base[idx] * std::conj(shifted[idx]);
      }
    }
    cdouble sum = pairwise_sum(integrand.data(), integrand.size());
    out.push_back(std::polar(1.0, -2 * M_PI * h * pt.s) * (4.0 / h) * dxi * dxi * sum);
  }
  return out;
}

}  // namespace pmech
