#include <cmath>

#include "doctest.h"
#include "pmech/errors.hpp"
#include "pmech/fock.hpp"

using namespace pmech;

namespace {

const PhaseGrid G = make_grid(256, 8);
const PlanckParameter H1(1.0);

double rel_diff(const StateVector& a, const StateVector& b) {
  return norm(linear_combination(1, a, -1, b)) / std::max(norm(a), norm(b));
}

Symbol P(const char* s) { return parse_symbol(s, 1); }

// integral over R of exp(-a t^2 + b t), a > 0, b complex
std::complex<double> gauss_integral(double a, std::complex<double> b) {
  return std::sqrt(M_PI / a) * std::exp(b * b / (4 * a));
}

}  // namespace

TEST_CASE("make_grid") {
  auto g = make_grid(256, 8);
  CHECK(g.spacing() == 1.0 / 16);
  CHECK(g.node(128) == 0.0);
  CHECK(g.node(0) == -8.0);
  CHECK_THROWS_AS(make_grid(100, 8), InvalidArgument);
  CHECK_THROWS_AS(make_grid(256, -1), InvalidArgument);
  CHECK_THROWS_AS(make_grid(32, 8), InvalidArgument);
}

TEST_CASE("vacuum") {
  auto v = vacuum(G, H1, 1, 1);
  CHECK(v.at(128, 128) == cdouble(1, 0));
  CHECK(norm(v) == doctest::Approx(1).epsilon(1e-8));
  CHECK(annihilation_residual(v) <= 1e-8);
  CHECK(fock_membership_residual(v) <= 1e-8);
  CHECK(v.boundary_ratio() <= kContainment);
  CHECK_THROWS_AS(vacuum(make_grid(64, 1), H1, 1, 1), PreconditionError);
  CHECK_THROWS_AS(vacuum(G, PlanckParameter(0), 1, 1), PreconditionError);
}

TEST_CASE("vacuum of a general oscillator matches c_i = 1/(m omega)") {
  double m = 2, w = 1.5;
  auto v = vacuum(G, H1, m, w);
  CHECK(norm(v) == doctest::Approx(1).epsilon(1e-8));
  CHECK(annihilation_residual(v, 1 / (m * w)) <= 1e-8);
  CHECK(fock_membership_residual(v, 1 / (m * w)) <= 1e-8);
  CHECK(annihilation_residual(v) > 1e-2);
}

TEST_CASE("coherent vectors") {
  auto v0 = vacuum(G, H1, 1, 1);
  auto c0 = coherent_vector(G, H1, 0, 0, 1, 1);
  CHECK(rel_diff(v0, c0) == 0.0);
  auto c = coherent_vector(G, H1, 1, 0, 1, 1);
  CHECK(norm(c) == doctest::Approx(1).epsilon(1e-8));
  // (4/h) * Int e^{-2 pi i q} f0(q, p + 1/2) f0(q, p) dq dp, h = 1
  auto iq = gauss_integral(4 * M_PI, cdouble(0, -2 * M_PI));
  auto ip = gauss_integral(4 * M_PI, -2 * M_PI) * std::exp(-M_PI / 2);
  double expected = std::abs(4.0 * iq * ip);
  CHECK(std::abs(inner(c, v0)) == doctest::Approx(expected).epsilon(1e-8));
  CHECK(expected == doctest::Approx(std::exp(-M_PI / 2)).epsilon(1e-12));
  for (auto [x0, y0] : {std::pair{0.5, -0.25}, {-1.0, 0.75}}) {
    auto cv = coherent_vector(G, PlanckParameter(0.5), x0, y0, 1, 1);
    CHECK(fock_membership_residual(cv) <= 1e-8);
    CHECK(annihilation_residual(cv) > 1e-3);
  }
}

TEST_CASE("coherent_vector_at has the requested expectation centre") {
  for (auto [h, q0, p0] : {std::tuple{1.0, 0.5, -0.75}, {0.5, -1.0, 1.0}, {1.0, 0.0, 1.0}}) {
    PlanckParameter pl(h);
    auto v = coherent_vector_at(G, pl, q0, p0, 1, 1);
    CHECK(expectation(P("q"), v).real() == doctest::Approx(q0).epsilon(1e-10));
    CHECK(expectation(P("p"), v).real() == doctest::Approx(p0).epsilon(1e-10));
  }
}

TEST_CASE("inner product") {
  auto a = coherent_vector(G, H1, 0.3, -0.2, 1, 1);
  auto b = coherent_vector(G, H1, -0.5, 0.1, 1, 1);
  cdouble ab = inner(a, b), ba = inner(b, a);
  CHECK(std::abs(ab - std::conj(ba)) <= 1e-12);
  auto zero = a.scaled(0);
  CHECK(inner(a, zero) == cdouble(0, 0));
  CHECK_THROWS_AS(inner(a, vacuum(make_grid(128, 8), H1, 1, 1)), DimensionError);
  CHECK_THROWS_AS(inner(a, vacuum(G, PlanckParameter(0.5), 1, 1)), DimensionError);
}

TEST_CASE("derived representation") {
  auto v = vacuum(G, H1, 1, 1);
  auto X = derived_rep(Generator::X, H1), Y = derived_rep(Generator::Y, H1),
       S = derived_rep(Generator::S, H1);
  CHECK(rel_diff(commutator(X, Y).apply(v), S.apply(v)) <= 1e-8);
  auto sv = S.apply(v);
  for (int i : {0, 1000, 32896}) CHECK(sv.samples()[i] == cdouble(0, -2 * M_PI) * v.samples()[i]);
  // A_h = X + i Y kills the vacuum
  auto a = (X + cdouble(0, 1) * Y).apply(v);
  CHECK(norm(a) <= 1e-8);
}

TEST_CASE("quantize basics") {
  auto v = coherent_vector(G, H1, 0.4, -0.3, 1, 1);
  CHECK(rel_diff(quantize(P("1"), H1).apply(v), v) == 0.0);
  auto Q = position_operator(H1), Pm = momentum_operator(H1);
  auto sym = 0.5 * (Q * Pm + Pm * Q);
  CHECK(rel_diff(quantize(P("q*p"), H1).apply(v), sym.apply(v)) <= 1e-12);
  // [Q, P] = i hbar
  auto comm = commutator(Q, Pm).apply(v);
  CHECK(rel_diff(comm, v.scaled(cdouble(0, H1.hbar))) <= 1e-8);
  // Q f0 = (q - i p) f0
  auto f0 = vacuum(G, H1, 1, 1);
  auto qf0 = quantize(P("q"), H1).apply(f0);
  std::vector<cdouble> expect(G.count());
  for (int iq = 0; iq < 256; ++iq)
    for (int ip = 0; ip < 256; ++ip)
      expect[G.index(iq, ip)] = cdouble(G.node(iq), -G.node(ip)) * f0.at(iq, ip);
  CHECK(rel_diff(qf0, StateVector(G, H1, expect)) <= 1e-10);
  CHECK_THROWS_AS(quantize(Symbol::q(2), H1), DimensionError);
}

TEST_CASE("quantisation is a homomorphism of the star product") {
  const char* basis[] = {"1", "q", "p", "q^2", "p^2", "q*p"};
  auto v = coherent_vector_at(G, H1, 0.5, -0.25, 1, 1);
  for (const char* fs : basis)
    for (const char* gs : basis) {
      Symbol f = P(fs), g = P(gs);
      auto lhs = quantize(star(f, g), H1).apply(v);
      auto rhs = (quantize(f, H1) * quantize(g, H1)).apply(v);
      CHECK(rel_diff(lhs, rhs) <= 1e-8);
      auto cb = commutator(quantize(f, H1), quantize(g, H1)).apply(v).scaled(
          1.0 / cdouble(0, H1.hbar));
      CHECK(norm(linear_combination(1, cb, -1, quantize(pbracket(f, g), H1).apply(v))) <=
            1e-8 * norm(v));
    }
}

TEST_CASE("expectations") {
  auto f0 = vacuum(G, H1, 1, 1);
  CHECK(std::abs(expectation(P("q"), f0)) <= 1e-10);
  cdouble e = expectation(hamiltonian_ho(1, 1), f0);
  CHECK(e.real() == doctest::Approx(1 / (4 * M_PI)).epsilon(1e-6));
  CHECK(std::abs(e.imag()) <= 1e-10);
  auto v = coherent_vector_at(G, H1, 0.7, -0.4, 1, 1);
  CHECK(std::abs(expectation(P("q^2*p^2 + 3*q - p^3"), v).imag()) <= 1e-10);
}

TEST_CASE("eigenfunctions") {
  std::vector<StateVector> vs;
  for (int k = 0; k <= 6; ++k) vs.push_back(eigenfunction(G, H1, k, 1, 1));
  CHECK(rel_diff(vs[0], vacuum(G, H1, 1, 1)) == 0.0);
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; j <= 6; ++j)
      CHECK(std::abs(inner(vs[i], vs[j]) - cdouble(i == j ? 1 : 0, 0)) <= 1e-6);
  auto hq = quantize(hamiltonian_ho(1, 1), H1);
  for (int k = 0; k <= 6; ++k) {
    double ek = H1.hbar * (k + 0.5);
    CHECK(rel_diff(hq.apply(vs[k]), vs[k].scaled(ek)) <= 1e-6);
  }
  CHECK_THROWS_AS(eigenfunction(G, H1, 13, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(eigenfunction(make_grid(64, 1.5), H1, 12, 1, 1), PreconditionError);
}

TEST_CASE("membership residual detects the wrong width") {
  int n = G.size();
  std::vector<cdouble> s(G.count());
  for (int iq = 0; iq < n; ++iq)
    for (int ip = 0; ip < n; ++ip) {
      double q = G.node(iq), p = G.node(ip);
      s[G.index(iq, ip)] = std::exp(-(M_PI / H1.h) * (q * q + p * p));
    }
  StateVector wide(G, H1, s);
  CHECK(fock_membership_residual(wide) >= 1e-2);
}

TEST_CASE("covariant symbols") {
  CHECK(std::abs(covariant_symbol(GridOperator::identity(), G, 0.3, 0.2, H1, 1, 1) - 1.0) <=
        1e-8);
  CHECK(std::abs(covariant_symbol(quantize(P("q"), H1), G, 0, 0, H1, 1, 1)) <= 1e-8);
  auto e = covariant_symbol(quantize(hamiltonian_ho(1, 1), H1), G, 0, 0, H1, 1, 1);
  CHECK(std::abs(e - 1 / (4 * M_PI)) <= 1e-6);
}

TEST_CASE("grid refinement leaves expectations unchanged") {
  auto fine = make_grid(512, 8);
  for (const char* s : {"q^2 + p^2", "q*p - 2*q^3", "p^4 + q"}) {
    Symbol f = P(s);
    auto a = expectation(f, coherent_vector_at(G, H1, 0.5, 0.25, 1, 1));
    auto b = expectation(f, coherent_vector_at(fine, H1, 0.5, 0.25, 1, 1));
    CHECK(std::abs(a - b) <= 1e-10);
  }
}

TEST_CASE("default half-width contains the vacuum") {
  for (double h : {0.25, 1.0, 4.0})
    for (double mw : {0.5, 1.0, 3.0}) {
      PlanckParameter pl(h);
      auto g = make_grid(256, default_half_width(pl, mw, 1));
      CHECK_NOTHROW(vacuum(g, pl, mw, 1));
    }
}

TEST_CASE("operator application is deterministic") {
  auto v = coherent_vector(G, H1, 0.2, 0.1, 1, 1);
  auto op = quantize(P("q^2*p + p^3"), H1);
  CHECK(op.apply(v).samples() == op.apply(v).samples());
}
