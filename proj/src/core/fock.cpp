#include "pmech/fock.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "pmech/errors.hpp"

namespace pmech {

StateVector::StateVector(PhaseGrid grid, PlanckParameter planck, std::vector<cdouble> samples)
    : grid_(grid), planck_(planck), samples_(std::move(samples)) {
  if (!(planck_.h > 0)) throw PreconditionError("state vectors require h > 0");
  if (samples_.size() != grid_.count()) throw DimensionError("sample count does not match grid");
}

double StateVector::boundary_ratio() const {
  int n = grid_.size();
  double peak = 0, ring = 0;
  for (int iq = 0; iq < n; ++iq)
    for (int ip = 0; ip < n; ++ip) {
      double a = std::abs(at(iq, ip));
      peak = std::max(peak, a);
      if (iq == 0 || ip == 0 || iq == n - 1 || ip == n - 1) ring = std::max(ring, a);
    }
  return peak > 0 ? ring / peak : 0.0;
}

void StateVector::require_contained(const char* what) const {
  double r = boundary_ratio();
  if (r > kContainment)
    throw PreconditionError(std::string(what) + ": state not contained in grid (boundary ratio " +
                            std::to_string(r) + ")");
}

StateVector StateVector::scaled(cdouble c) const {
  std::vector<cdouble> s(samples_);
  for (auto& v : s) v *= c;
  return StateVector(grid_, planck_, std::move(s));
}

struct GridOperator::Node {
  Kind kind;
  cdouble scalar = 1;
  std::vector<std::shared_ptr<const Node>> children;
};

namespace {

using NodePtr = std::shared_ptr<const GridOperator::Node>;

NodePtr leaf(GridOperator::Kind k) {
  auto n = std::make_shared<GridOperator::Node>();
  n->kind = k;
  return n;
}

std::vector<cdouble> apply_node(const GridOperator::Node& node, const std::vector<cdouble>& v,
                                const PhaseGrid& g) {
  using K = GridOperator::Kind;
  int n = g.size();
  switch (node.kind) {
    case K::Identity:
      return v;
    case K::MulQ:
    case K::MulP: {
      std::vector<cdouble> out(v.size());
      for (int iq = 0; iq < n; ++iq)
        for (int ip = 0; ip < n; ++ip) {
          double c = node.kind == K::MulQ ? g.node(iq) : g.node(ip);
          out[g.index(iq, ip)] = c * v[g.index(iq, ip)];
        }
      return out;
    }
    case K::DerivQ:
      return spectral_derivative(v, g, Axis::Q);
    case K::DerivP:
      return spectral_derivative(v, g, Axis::P);
    case K::Scale: {
      auto out = apply_node(*node.children[0], v, g);
      for (auto& x : out) x *= node.scalar;
      return out;
    }
    case K::Sum: {
      auto out = apply_node(*node.children[0], v, g);
      for (std::size_t c = 1; c < node.children.size(); ++c) {
        auto part = apply_node(*node.children[c], v, g);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += part[i];
      }
      return out;
    }
    case K::Product: {
      // children applied right to left
      std::vector<cdouble> out = v;
      for (auto it = node.children.rbegin(); it != node.children.rend(); ++it)
        out = apply_node(**it, out, g);
      return out;
    }
  }
  throw Error("internal: unknown operator node");
}

}  // namespace

GridOperator GridOperator::identity() { return GridOperator(leaf(Kind::Identity)); }
GridOperator GridOperator::mul_q() { return GridOperator(leaf(Kind::MulQ)); }
GridOperator GridOperator::mul_p() { return GridOperator(leaf(Kind::MulP)); }
GridOperator GridOperator::deriv_q() { return GridOperator(leaf(Kind::DerivQ)); }
GridOperator GridOperator::deriv_p() { return GridOperator(leaf(Kind::DerivP)); }

GridOperator::Kind GridOperator::kind() const { return node_->kind; }

std::vector<cdouble> GridOperator::apply_samples(const std::vector<cdouble>& v,
                                                 const PhaseGrid& g) const {
  if (v.size() != g.count()) throw DimensionError("sample count does not match grid");
  return apply_node(*node_, v, g);
}

StateVector GridOperator::apply(const StateVector& v) const {
  return StateVector(v.grid(), v.planck(), apply_samples(v.samples(), v.grid()));
}

GridOperator operator+(const GridOperator& a, const GridOperator& b) {
  auto n = std::make_shared<GridOperator::Node>();
  n->kind = GridOperator::Kind::Sum;
  n->children = {a.node_, b.node_};
  return GridOperator(n);
}

GridOperator operator*(cdouble c, const GridOperator& a) {
  auto n = std::make_shared<GridOperator::Node>();
  n->kind = GridOperator::Kind::Scale;
  n->scalar = c;
  n->children = {a.node_};
  return GridOperator(n);
}

GridOperator operator-(const GridOperator& a, const GridOperator& b) { return a + (-1.0) * b; }

GridOperator operator*(const GridOperator& a, const GridOperator& b) {
  auto n = std::make_shared<GridOperator::Node>();
  n->kind = GridOperator::Kind::Product;
  n->children = {a.node_, b.node_};
  return GridOperator(n);
}

GridOperator commutator(const GridOperator& a, const GridOperator& b) { return a * b - b * a; }

namespace {
void require_compatible(const StateVector& a, const StateVector& b) {
  if (!(a.grid() == b.grid())) throw DimensionError("state vectors live on different grids");
  if (a.planck().h != b.planck().h)
    throw DimensionError("state vectors carry different Planck parameters");
}
}  // namespace

cdouble inner(const StateVector& v1, const StateVector& v2) {
  require_compatible(v1, v2);
  const auto& a = v1.samples();
  const auto& b = v2.samples();
  std::vector<cdouble> prod(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * std::conj(b[i]);
  double d = v1.grid().spacing();
  return (4.0 / v1.planck().h) * d * d * pairwise_sum(prod.data(), prod.size());
}

double norm(const StateVector& v) { return std::sqrt(std::max(0.0, inner(v, v).real())); }

StateVector normalized(const StateVector& v) {
  double nv = norm(v);
  if (!(nv > 0)) throw PreconditionError("cannot normalise a zero vector");
  return v.scaled(1.0 / nv);
}

StateVector linear_combination(cdouble a, const StateVector& v1, cdouble b, const StateVector& v2) {
  require_compatible(v1, v2);
  std::vector<cdouble> s(v1.samples().size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = a * v1.samples()[i] + b * v2.samples()[i];
  return StateVector(v1.grid(), v1.planck(), std::move(s));
}

double default_half_width(const PlanckParameter& planck, double m, double omega,
                          double centre_shift) {
  double mw = m * omega;
  double w = std::max({1.0, std::sqrt(planck.hbar * mw), std::sqrt(planck.hbar / mw)});
  return 8 * w + std::abs(centre_shift);
}

namespace {

void require_oscillator(double m, double omega) {
  if (!(m > 0) || !(omega > 0)) throw InvalidArgument("m and omega must be positive");
}

void require_quantum(const PlanckParameter& planck) {
  if (!(planck.h > 0)) throw PreconditionError("this operation requires h > 0");
}

}  // namespace

StateVector coherent_vector(const PhaseGrid& grid, const PlanckParameter& planck, double x0,
                            double y0, double m, double omega) {
  require_quantum(planck);
  require_oscillator(m, omega);
  double h = planck.h;
  double mw = m * omega;
  int n = grid.size();
  std::vector<cdouble> s(grid.count());
  for (int iq = 0; iq < n; ++iq) {
    double q = grid.node(iq);
    for (int ip = 0; ip < n; ++ip) {
      double p = grid.node(ip);
      double qs = q - h * y0 / 2;
      double ps = p + h * x0 / 2;
      double gauss = std::exp(-(2 * M_PI / h) * (mw * qs * qs + ps * ps / mw));
      s[grid.index(iq, ip)] = std::polar(gauss, -2 * M_PI * (q * x0 + p * y0));
    }
  }
  StateVector v(grid, planck, std::move(s));
  v.require_contained("coherent vector");
  return v;
}

StateVector vacuum(const PhaseGrid& grid, const PlanckParameter& planck, double m, double omega) {
  return coherent_vector(grid, planck, 0, 0, m, omega);
}

StateVector coherent_vector_at(const PhaseGrid& grid, const PlanckParameter& planck, double q0,
                               double p0, double m, double omega) {
  require_quantum(planck);
  return coherent_vector(grid, planck, -p0 / planck.h, q0 / planck.h, m, omega);
}

StateVector eigenfunction(const PhaseGrid& grid, const PlanckParameter& planck, int k, double m,
                          double omega) {
  if (k < 0 || k > 12) throw InvalidArgument("eigenfunction index must be in [0, 12]");
  StateVector v = vacuum(grid, planck, m, omega);
  if (k == 0) return v;
  // The k-th state is proportional to (q - i p/(m w))^k times the vacuum. Containment is
  // judged on that envelope: spectral round-off near the boundary grows with k and
  // would otherwise mask the true tails.
  double mw = m * omega;
  double peak = 0, ring = 0;
  int n = grid.size();
  for (int iq = 0; iq < n; ++iq)
    for (int ip = 0; ip < n; ++ip) {
      double q = grid.node(iq), p = grid.node(ip);
      double env = std::pow(std::hypot(q, p / mw), k) *
                   std::exp(-(2 * M_PI / planck.h) * (mw * q * q + p * p / mw));
      peak = std::max(peak, env);
      if (iq == 0 || ip == 0 || iq == n - 1 || ip == n - 1) ring = std::max(ring, env);
    }
  if (!(peak > 0) || ring > kContainment * peak)
    throw PreconditionError("eigenfunction: state not contained in grid");
  GridOperator up = quantize(ladder(LadderKind::Plus, m, omega), planck);
  for (int i = 0; i < k; ++i) v = normalized(up.apply(v));
  return v;
}

GridOperator derived_rep(Generator which, const PlanckParameter& planck) {
  require_quantum(planck);
  double h = planck.h;
  const cdouble two_pi_i(0, 2 * M_PI);
  switch (which) {
    case Generator::X:
      return (h / 2) * GridOperator::deriv_p() - two_pi_i * GridOperator::mul_q();
    case Generator::Y:
      return (-h / 2) * GridOperator::deriv_q() - two_pi_i * GridOperator::mul_p();
    case Generator::S:
      return (-two_pi_i * h) * GridOperator::identity();
  }
  throw InvalidArgument("unknown generator");
}

GridOperator position_operator(const PlanckParameter& planck) {
  require_quantum(planck);
  return GridOperator::mul_q() + cdouble(0, planck.hbar / 2) * GridOperator::deriv_p();
}

GridOperator momentum_operator(const PlanckParameter& planck) {
  require_quantum(planck);
  return GridOperator::mul_p() - cdouble(0, planck.hbar / 2) * GridOperator::deriv_q();
}

GridOperator quantize(const Symbol& f, const PlanckParameter& planck) {
  require_quantum(planck);
  if (f.dim() != 1) throw DimensionError("quantize supports n = 1 only");
  GridOperator Q = position_operator(planck);
  GridOperator P = momentum_operator(planck);
  // words(a, b): sum over all distinct orderings of a copies of Q and b copies of P
  std::map<std::pair<unsigned, unsigned>, GridOperator> words;
  std::function<GridOperator(unsigned, unsigned)> word = [&](unsigned a,
                                                             unsigned b) -> GridOperator {
    auto key = std::make_pair(a, b);
    auto it = words.find(key);
    if (it != words.end()) return it->second;
    GridOperator w = GridOperator::identity();
    if (a > 0 && b > 0)
      w = word(a - 1, b) * Q + word(a, b - 1) * P;
    else if (a > 0)
      w = word(a - 1, 0) * Q;
    else if (b > 0)
      w = word(0, b - 1) * P;
    words.emplace(key, w);
    return w;
  };
  bool have = false;
  GridOperator total = 0.0 * GridOperator::identity();
  for (const auto& [m, c] : f.terms()) {
    unsigned a = m.q[0], b = m.p[0];
    double orderings = to_double(binomial(a + b, a));
    cdouble coef = c.to_complex() * ipow(planck.hbar, m.hbar) / orderings;
    GridOperator term = coef * word(a, b);
    total = have ? total + term : term;
    have = true;
  }
  return total;
}

cdouble expectation(const Symbol& f, const StateVector& v) {
  return inner(quantize(f, v.planck()).apply(v), v);
}

GridOperator membership_operator(const PlanckParameter& planck, double c_i) {
  require_quantum(planck);
  double h = planck.h;
  return (h / 2) * (GridOperator::deriv_p() + cdouble(0, c_i) * GridOperator::deriv_q()) +
         (2 * M_PI) * (c_i * GridOperator::mul_p() + cdouble(0, 1) * GridOperator::mul_q());
}

GridOperator annihilation_operator(const PlanckParameter& planck, double c_i) {
  require_quantum(planck);
  double h = planck.h;
  return (h / 2) * (GridOperator::deriv_p() - cdouble(0, c_i) * GridOperator::deriv_q()) +
         (2 * M_PI) * (c_i * GridOperator::mul_p() - cdouble(0, 1) * GridOperator::mul_q());
}

double fock_membership_residual(const StateVector& v, double c_i) {
  return norm(membership_operator(v.planck(), c_i).apply(v)) / norm(v);
}

double annihilation_residual(const StateVector& v, double c_i) {
  return norm(annihilation_operator(v.planck(), c_i).apply(v)) / norm(v);
}

cdouble covariant_symbol(const GridOperator& op, const PhaseGrid& grid, double x0, double y0,
                         const PlanckParameter& planck, double m, double omega) {
  StateVector f = coherent_vector(grid, planck, x0, y0, m, omega);
  return inner(op.apply(f), f);
}

}  // namespace pmech
