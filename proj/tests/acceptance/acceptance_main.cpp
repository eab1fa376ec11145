// Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion.
// --expect-fail a,b,... : exit 0 iff exactly the listed criteria fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pmech/dynamics.hpp"
#include "pmech/fock.hpp"
#include "pmech/kernels.hpp"
#include "support/distribution_oracle.hpp"
#include "support/generators.hpp"

using namespace pmech;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Symbol C(const char* s) { return pmechanise(parse_symbol(s, 1)); }

double coeff_diff(const Symbol& a, const Symbol& b) {
  std::set<Monomial, CanonicalOrder> keys;
  for (const auto& [m, c] : a.terms()) keys.insert(m);
  for (const auto& [m, c] : b.terms()) keys.insert(m);
  double worst = 0;
  for (const auto& m : keys)
    worst = std::max(worst, std::abs(a.coefficient(m).to_complex() - b.coefficient(m).to_complex()));
  return worst;
}

double rel_diff(const StateVector& a, const StateVector& v) {
  return norm(linear_combination(1, a, -1, v));
}

// 1: exact algebra
Outcome exact_algebra() {
  auto start = std::chrono::steady_clock::now();
  gen::Rng rng(1);
  int bad_group = 0;
  for (int i = 0; i < 10000; ++i) {
    auto a = gen::group_element(rng, 1), b = gen::group_element(rng, 1),
         c = gen::group_element(rng, 1);
    if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c))) ++bad_group;
  }
  int bad_sym = 0;
  for (int i = 0; i < 100; ++i) {
    auto f = gen::symbol(rng, 1, 4, 3, 1), g = gen::symbol(rng, 1, 4, 3, 1),
         h = gen::symbol(rng, 1, 4, 3, 1);
    bool ok = star(star(f, g), h) == star(f, star(g, h));
    ok = ok && pbracket(f, g) == -pbracket(g, f);
    ok = ok && pbracket(f, star(g, h)) == star(pbracket(f, g), h) + star(g, pbracket(f, h));
    ok = ok && (pbracket(f, pbracket(g, h)) + pbracket(g, pbracket(h, f)) +
                pbracket(h, pbracket(f, g)))
                   .is_zero();
    if (!ok) ++bad_sym;
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {bad_group == 0 && bad_sym == 0 && secs < 10,
          fmt("group failures %.0f/10000, symbol failures %.0f/100, %.2f s", bad_group, bad_sym,
              secs)};
}

// 2: correspondence principle
Outcome correspondence() {
  gen::Rng rng(2);
  int bad = 0, bad_quad = 0;
  for (int i = 0; i < 100; ++i) {
    auto f = gen::symbol(rng, 1, 4, 4, 2), g = gen::symbol(rng, 1, 4, 4, 2);
    if (set_hbar_zero(pbracket(f, g)) != poisson(set_hbar_zero(f), set_hbar_zero(g))) ++bad;
    auto a = gen::symbol(rng, 1, 2, 4), b = gen::symbol(rng, 1, 2, 4);
    auto br = pbracket(a, b);
    if (br.depends_on_hbar() || br != poisson(a, b)) ++bad_quad;
  }
  return {bad == 0 && bad_quad == 0,
          fmt("hbar:=0 mismatches %.0f/100, quadratic pairs with hbar terms %.0f/100", bad,
              bad_quad)};
}

std::vector<StateVector> test_states(const PhaseGrid& g, const PlanckParameter& pl) {
  std::vector<StateVector> vs{vacuum(g, pl, 1, 1)};
  // |centre| <= 1 keeps the coherent phase well below the grid Nyquist limit at h = 1/2
  const double centres[5][2] = {{0.5, -0.25}, {-0.6, -0.3}, {0.75, -0.5}, {-0.4, 0.6}, {0.2, 0.8}};
  for (const auto& c : centres) vs.push_back(coherent_vector_at(g, pl, c[0], c[1], 1, 1));
  return vs;
}

const char* kBasis[] = {"1", "q", "p", "q^2", "p^2", "q*p"};

// 3 and 4 share states and operators
Outcome quantisation(bool commutators) {
  const PhaseGrid g = make_grid(256, 8);
  double worst = 0;
  for (double h : {1.0, 0.5}) {
    PlanckParameter pl(h);
    for (const auto& v : test_states(g, pl)) {
      double nv = norm(v);
      for (const char* fs : kBasis)
        for (const char* gs : kBasis) {
          Symbol f = parse_symbol(fs, 1), gg = parse_symbol(gs, 1);
          auto qf = quantize(f, pl), qg = quantize(gg, pl);
          double d;
          if (commutators) {
            auto lhs = commutator(qf, qg).apply(v).scaled(1.0 / cdouble(0, pl.hbar));
            d = rel_diff(lhs, quantize(pbracket(f, gg), pl).apply(v));
          } else {
            d = rel_diff(quantize(star(f, gg), pl).apply(v), (qf * qg).apply(v));
          }
          worst = std::max(worst, d / nv);
        }
    }
  }
  return {worst <= 1e-8, fmt("max relative residual %.3g (tol 1e-8, 432 cases)", worst)};
}

// 5: vacuum physics
Outcome vacuum_physics() {
  const PhaseGrid g = make_grid(256, 8);
  PlanckParameter pl(1.0);
  auto f0 = vacuum(g, pl, 1, 1);
  double ann = annihilation_residual(f0), mem = fock_membership_residual(f0);
  cdouble e = expectation(hamiltonian_ho(1, 1), f0);
  double e_err = std::abs(e - cdouble(1 / (4 * M_PI), 0));
  std::vector<StateVector> ks;
  for (int k = 0; k <= 6; ++k) ks.push_back(eigenfunction(g, pl, k, 1, 1));
  double gram = 0;
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; j <= 6; ++j)
      gram = std::max(gram, std::abs(inner(ks[i], ks[j]) - cdouble(i == j, 0)));
  bool ok = ann <= 1e-8 && mem <= 1e-8 && e_err <= 1e-6 && gram <= 1e-6;
  return {ok, fmt("annihilation %.3g, membership %.3g, |<H>-1/(4pi)| %.3g", ann, mem, e_err) +
                  fmt(", Gram deviation %.3g", gram)};
}

// 6: state-picture equivalence
Outcome state_pictures() {
  const PhaseGrid g = make_grid(256, 8);
  gen::Rng rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    PlanckParameter pl(i % 2 == 0 ? 1.0 : 0.5);
    double q0 = u(rng), p0 = u(rng);
    auto f = pmechanise(gen::symbol(rng, 1, 4, 4, 0, true));
    auto k = coherent_kernel(pl, q0, p0, 1, 1);
    auto v = coherent_vector_at(g, pl, q0, p0, 1, 1);
    worst = std::max(worst, std::abs(eval_state(k, f) - expectation(f, v)));
  }
  return {worst <= 1e-6, fmt("max |eval_state - expectation| %.3g over 20 pairs", worst)};
}

// 7: classical limit
Outcome classical_limit() {
  std::vector<double> hs{1, 0.5, 0.25, 0.125, 0};
  auto rows = classical_limit_scan(hamiltonian_ho(1, 1), 1, 2, 1, 1, hs);
  double worst_err = 0, worst_ratio = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    double want = hs[i] / (4 * M_PI);
    worst_err = std::max(worst_err, std::abs(rows[i].abs_error - want) / want);
    if (i > 0)
      worst_ratio = std::max(worst_ratio, std::abs(rows[i - 1].abs_error / rows[i].abs_error - 2));
  }
  bool zero_row = rows[4].value == cdouble(2.5, 0) && rows[4].abs_error == 0;
  return {worst_err <= 1e-12 && worst_ratio <= 1e-9 && zero_row,
          fmt("max relative deviation from h/(4pi) %.3g, ratio deviation %.3g, h=0 value %.17g",
              worst_err, worst_ratio, rows[4].value.real())};
}

// 8: harmonic dynamics
Outcome harmonic() {
  auto h = hamiltonian_ho(1, 1);
  auto q = C("q");
  auto traj = integrate_bracket_ode(q, h, 0, 1, 1e-3, 1);
  double rk = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    rk = std::max(rk, coeff_diff(traj.payload[i], ho_flow(q, traj.times[i], 1, 1)));
  double period = 0;
  for (const char* s : {"q", "p", "q^2 - 3*q*p + p^3", "q^4"})
    period = std::max(period, coeff_diff(ho_flow(C(s), 2 * M_PI, 1, 1), C(s)));
  double energy = 0;
  auto etraj = integrate_bracket_ode(h, h, 0, 1, 1e-2, 2);
  for (const auto& s : etraj.payload) energy = std::max(energy, coeff_diff(s, h));
  for (double t : {0.3, 1.7, 4.0}) energy = std::max(energy, coeff_diff(ho_flow(h, t, 1, 1), h));
  bool exact = pbracket(h, h).is_zero();
  return {rk <= 1e-8 && period <= 1e-12 && energy <= 1e-12 && exact,
          fmt("RK4 vs flow %.3g, period recurrence %.3g, energy drift %.3g", rk, period, energy)};
}

// 9: forced dynamics
Outcome forced() {
  auto f0 = C("q^2 + q*p - 3*p + 1");
  double m = 1.5, w = 0.8;
  auto z = ForceProfile::periodic(0.7, 1.3);
  auto h0 = hamiltonian_ho(Rational(3, 2), Rational(4, 5));
  gen::Rng rng(9);
  std::uniform_real_distribution<double> ut(0.05, 6), ux(-2, 2);
  auto at = [](const Symbol& f, double q, double p) {
    std::vector<double> qv{q}, pv{p};
    return classical_project(f, qv, pv).real();
  };
  double residual = 0, eps = 1e-4;
  for (int i = 0; i < 100; ++i) {
    double t = ut(rng), q = ux(rng), p = ux(rng);
    double dt = (at(forced_flow(f0, t + eps, m, w, z), q, p) -
                 at(forced_flow(f0, t - eps, m, w, z), q, p)) /
                (2 * eps);
    auto h = h0 - product(Symbol::constant(1, CRational(rational_from_double(z(t)))), C("q"));
    residual = std::max(residual, std::abs(dt - at(pbracket(forced_flow(f0, t, m, w, z), h), q, p)));
  }
  PlanckParameter pl(1.0);
  double z0 = 0.6, w1 = 1;
  double q0 = 0.3, p0 = -0.2;
  auto k = coherent_kernel(pl, q0, p0, 1, w1);
  auto after = interaction_evolve(k, 1, w1, ForceProfile::periodic(z0, w1), 0, 2 * M_PI / w1);
  double dq = after.q0()[0] - q0, dp = after.p0()[0] - p0;
  double shift_err = std::hypot(dq - z0 * M_PI / w1, dp);
  bool ok = residual <= 1e-6 && shift_err <= 1e-8;
  return {ok, fmt("PDE residual %.3g; full-period centre shift (%.6g, %.6g)", residual, dq, dp) +
                  fmt(" vs required (%.6g, 0), error %.3g", z0 * M_PI / w1, shift_err)};
}

// 10: resonance
Outcome resonance() {
  double w = 1, z0 = 0.1, period = 2 * M_PI / w;
  auto rows = resonance_amplitude(w, w, z0, 100 * period, 2001);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0, n = 0;
  for (const auto& r : rows)
    if (r.t >= 10 * period) {
      sx += r.t;
      sy += r.envelope;
      sxx += r.t * r.t;
      sxy += r.t * r.envelope;
      syy += r.envelope * r.envelope;
      n += 1;
    }
  double cov = sxy - sx * sy / n, vx = sxx - sx * sx / n, vy = syy - sy * sy / n;
  double slope = cov / vx, r2 = cov * cov / (vx * vy);
  auto off = resonance_amplitude(2 * w, w, z0, 100 * period, 4001);
  double bound = resonance_bound(2 * w, w, z0), peak = 0;
  for (const auto& r : off) peak = std::max(peak, r.envelope);
  bool ok = std::abs(slope / (z0 / 2) - 1) <= 0.02 && r2 >= 0.999 && peak <= bound;
  return {ok, fmt("slope %.6g (target %.6g), R^2 %.6f", slope, z0 / 2, r2) +
                  fmt(", off-resonance peak %.4g <= bound %.4g", peak, bound)};
}

// 11: symplectic equivariance
Outcome symplectic() {
  gen::Rng rng(11);
  int bad = 0;
  for (int i = 0; i < 20; ++i) {
    auto a = gen::symplectic(rng, 1);
    auto f = gen::symbol(rng, 1, 4, 4, 1), g = gen::symbol(rng, 1, 4, 4, 1);
    if (pbracket(symplectic_pullback(a, f), symplectic_pullback(a, g)) !=
        symplectic_pullback(a, pbracket(f, g)))
      ++bad;
  }
  return {bad == 0, fmt("failures %.0f/20", bad)};
}

// 12: convention audit against direct convolution on H^1
Outcome conventions() {
  int bad = 0;
  for (auto [m, w] : {std::pair<Rational, Rational>{1, 1}, {2, 3}, {Rational(1, 2), 5}}) {
    Rational mw = m * w;
    oracle::Dist ap{{{0, 1, 0}, CRational(mw)}, {{0, 0, 1}, CRational(0, -1)}};
    oracle::Dist am{{{0, 1, 0}, CRational(mw)}, {{0, 0, 1}, CRational(0, 1)}};
    auto br = oracle::antiderivative(
        oracle::subtract(oracle::convolve(ap, am), oracle::convolve(am, ap)));
    oracle::Dist expect{{{0, 0, 0}, CRational(0, 2 * mw)}};
    if (br != expect) ++bad;
    if (pbracket(ladder(LadderKind::Plus, m, w), ladder(LadderKind::Minus, m, w)) !=
        Symbol::constant(1, CRational(0, 2 * mw)))
      ++bad;
  }
  gen::Rng rng(12);
  oracle::Dist X{{{0, 1, 0}, CRational(1)}}, Y{{{0, 0, 1}, CRational(1)}};
  for (int i = 0; i < 20; ++i) {
    auto f = gen::symbol(rng, 1, 5, 4, 1);
    auto F = oracle::from_symbol(f);
    auto bx = oracle::to_symbol(
        oracle::antiderivative(oracle::subtract(oracle::convolve(X, F), oracle::convolve(F, X))));
    auto by = oracle::to_symbol(
        oracle::antiderivative(oracle::subtract(oracle::convolve(Y, F), oracle::convolve(F, Y))));
    if (bx != derivative_p(f, 0) || by != -derivative_q(f, 0)) ++bad;
    if (pbracket(Symbol::q(1), f) != derivative_p(f, 0) ||
        pbracket(Symbol::p(1), f) != -derivative_q(f, 0))
      ++bad;
  }
  return {bad == 0, fmt("ladder bracket 2 i m omega, X -> d/dp, Y -> -d/dq; mismatches %.0f", bad)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) expected.insert(std::stoi(tok));
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail n,m,...]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exact algebra", exact_algebra},
      {"correspondence principle", correspondence},
      {"quantisation homomorphism", [] { return quantisation(false); }},
      {"commutator bridge", [] { return quantisation(true); }},
      {"vacuum physics", vacuum_physics},
      {"state-picture equivalence", state_pictures},
      {"classical limit", classical_limit},
      {"harmonic dynamics", harmonic},
      {"forced dynamics", forced},
      {"resonance", resonance},
      {"symplectic equivariance", symplectic},
      {"convention audit", conventions},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    int id = static_cast<int>(i + 1);
    if (!o.pass) failed.insert(id);
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  if (!expected.empty()) {
    if (failed == expected) {
      std::printf("failures match the expected set\n");
      return 0;
    }
    std::printf("failures differ from the expected set\n");
  }
  return failed.empty() ? 0 : 1;
}
