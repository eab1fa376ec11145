#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "pmech/grid.hpp"
#include "pmech/symbol.hpp"

namespace pmech {

inline constexpr double kContainment = 1e-12;

// Samples of a phase-space function on a grid, tagged with h > 0.
class StateVector {
 public:
  StateVector(PhaseGrid grid, PlanckParameter planck, std::vector<cdouble> samples);

  const PhaseGrid& grid() const { return grid_; }
  const PlanckParameter& planck() const { return planck_; }
  const std::vector<cdouble>& samples() const { return samples_; }
  cdouble at(int iq, int ip) const { return samples_[grid_.index(iq, ip)]; }

  // max |v| on the outermost ring divided by max |v|.
  double boundary_ratio() const;
  // Throws PreconditionError when the boundary ratio exceeds kContainment.
  void require_contained(const char* what) const;

  StateVector scaled(cdouble c) const;

 private:
  PhaseGrid grid_;
  PlanckParameter planck_;
  std::vector<cdouble> samples_;
};

// Composition tree over multiplication by q or p, spectral d/dq and d/dp,
// scalars, sums and products.
class GridOperator {
 public:
  enum class Kind { Identity, MulQ, MulP, DerivQ, DerivP, Scale, Sum, Product };

  static GridOperator identity();
  static GridOperator mul_q();
  static GridOperator mul_p();
  static GridOperator deriv_q();
  static GridOperator deriv_p();

  Kind kind() const;
  StateVector apply(const StateVector& v) const;
  std::vector<cdouble> apply_samples(const std::vector<cdouble>& v, const PhaseGrid& g) const;

  friend GridOperator operator+(const GridOperator& a, const GridOperator& b);
  friend GridOperator operator-(const GridOperator& a, const GridOperator& b);
  // Composition: (a * b) v = a(b v).
  friend GridOperator operator*(const GridOperator& a, const GridOperator& b);
  friend GridOperator operator*(cdouble c, const GridOperator& a);

  struct Node;

 private:
  explicit GridOperator(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

GridOperator commutator(const GridOperator& a, const GridOperator& b);

cdouble inner(const StateVector& v1, const StateVector& v2);
double norm(const StateVector& v);
StateVector normalized(const StateVector& v);
StateVector linear_combination(cdouble a, const StateVector& v1, cdouble b, const StateVector& v2);

// Half-width L = 8 * max(1, sqrt(hbar m w), sqrt(hbar/(m w))) + |centre shift|.
double default_half_width(const PlanckParameter& planck, double m, double omega,
                          double centre_shift = 0);

StateVector vacuum(const PhaseGrid& grid, const PlanckParameter& planck, double m, double omega);
// rho_h(0, x0, y0) applied to the vacuum.
StateVector coherent_vector(const PhaseGrid& grid, const PlanckParameter& planck, double x0,
                            double y0, double m, double omega);
// Coherent vector whose (Q, P) expectations are (q0, p0): x0 = -p0/h, y0 = q0/h.
StateVector coherent_vector_at(const PhaseGrid& grid, const PlanckParameter& planck, double q0,
                               double p0, double m, double omega);
StateVector eigenfunction(const PhaseGrid& grid, const PlanckParameter& planck, int k, double m,
                          double omega);

enum class Generator { X, Y, S };
GridOperator derived_rep(Generator which, const PlanckParameter& planck);
// Q = q + (i hbar/2) d/dp, P = p - (i hbar/2) d/dq.
GridOperator position_operator(const PlanckParameter& planck);
GridOperator momentum_operator(const PlanckParameter& planck);
// Weyl-ordered quantisation (n = 1).
GridOperator quantize(const Symbol& f, const PlanckParameter& planck);
cdouble expectation(const Symbol& f, const StateVector& v);

// (h/2)(d/dp + i c d/dq) + 2 pi (c p + i q); c = 1/(m omega) matches the vacuum
// of that oscillator, the default c = 1 is the unit-oscillator convention.
GridOperator membership_operator(const PlanckParameter& planck, double c_i = 1);
// (h/2)(d/dp - i c d/dq) + 2 pi (c p - i q)
GridOperator annihilation_operator(const PlanckParameter& planck, double c_i = 1);
double fock_membership_residual(const StateVector& v, double c_i = 1);
double annihilation_residual(const StateVector& v, double c_i = 1);

cdouble covariant_symbol(const GridOperator& op, const PhaseGrid& grid, double x0, double y0,
                         const PlanckParameter& planck, double m, double omega);

}  // namespace pmech
