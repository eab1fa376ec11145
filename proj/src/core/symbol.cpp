#include "pmech/symbol.hpp"

#include <array>
#include <cmath>
#include <tuple>

#include "pmech/errors.hpp"

namespace pmech {

namespace {

Origin combine(Origin a, Origin b) {
  if (a == Origin::Raw || b == Origin::Raw) return Origin::Raw;
  if (a == Origin::ClassicalPolynomial && b == Origin::ClassicalPolynomial)
    return Origin::ClassicalPolynomial;
  return Origin::QuantumSymbol;
}

Origin quantum_of(const Symbol& f, const Symbol& g) {
  if (f.provenance().origin == Origin::Raw || g.provenance().origin == Origin::Raw)
    return Origin::Raw;
  return Origin::QuantumSymbol;
}

// n!/(n-r)!
Rational falling(unsigned n, unsigned r) {
  if (r > n) return Rational(0);
  Rational f = 1;
  for (unsigned i = 0; i < r; ++i) f *= n - i;
  return f;
}

}  // namespace

const char* origin_name(Origin o) {
  switch (o) {
    case Origin::ClassicalPolynomial:
      return "classical-polynomial";
    case Origin::QuantumSymbol:
      return "quantum-symbol";
    case Origin::Raw:
      return "raw";
  }
  return "raw";
}

Monomial::Monomial(unsigned k, std::vector<unsigned> a, std::vector<unsigned> b)
    : hbar(k), q(std::move(a)), p(std::move(b)) {
  require_same_dim(q.size(), p.size(), "monomial");
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto v : q) d += v;
  for (auto v : p) d += v;
  return d;
}

bool CanonicalOrder::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  if (a.q != b.q) return a.q > b.q;
  if (a.p != b.p) return a.p > b.p;
  return a.hbar < b.hbar;
}

Symbol::Symbol(std::size_t n, ProvenanceTag tag) : n_(n), tag_(std::move(tag)) {
  if (n == 0) throw DimensionError("symbol dimension must be >= 1");
}

Symbol Symbol::constant(std::size_t n, const CRational& c) {
  Symbol s(n);
  s.add_term(Monomial(n), c);
  return s;
}

Symbol Symbol::q(std::size_t n, std::size_t j) {
  if (j >= n) throw DimensionError("q index out of range");
  Monomial m(n);
  m.q[j] = 1;
  return monomial(m, 1);
}

Symbol Symbol::p(std::size_t n, std::size_t j) {
  if (j >= n) throw DimensionError("p index out of range");
  Monomial m(n);
  m.p[j] = 1;
  return monomial(m, 1);
}

Symbol Symbol::hbar(std::size_t n) {
  Monomial m(n);
  m.hbar = 1;
  Symbol s = monomial(m, 1);
  s.tag_.origin = Origin::QuantumSymbol;
  return s;
}

Symbol Symbol::monomial(const Monomial& m, const CRational& c) {
  Symbol s(m.dim());
  if (m.hbar > 0) s.tag_.origin = Origin::QuantumSymbol;
  s.add_term(m, c);
  return s;
}

unsigned Symbol::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

unsigned Symbol::max_hbar_power() const {
  unsigned k = 0;
  for (const auto& [m, c] : terms_) k = std::max(k, m.hbar);
  return k;
}

bool Symbol::depends_on_hbar() const { return max_hbar_power() > 0; }

CRational Symbol::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? CRational(0) : it->second;
}

void Symbol::add_term(const Monomial& m, const CRational& c) {
  require_same_dim(n_, m.dim(), "add_term");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Symbol Symbol::with_provenance(ProvenanceTag tag) const {
  Symbol s(*this);
  s.tag_ = std::move(tag);
  return s;
}

Symbol& Symbol::operator+=(const Symbol& o) {
  require_same_dim(n_, o.n_, "symbol sum");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  tag_.origin = combine(tag_.origin, o.tag_.origin);
  return *this;
}

Symbol& Symbol::operator-=(const Symbol& o) {
  require_same_dim(n_, o.n_, "symbol difference");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  tag_.origin = combine(tag_.origin, o.tag_.origin);
  return *this;
}

Symbol& Symbol::operator*=(const CRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }
Symbol operator-(const Symbol& a) { return CRational(-1) * a; }
Symbol operator*(const CRational& c, Symbol f) { return f *= c; }

Symbol product(const Symbol& f, const Symbol& g) {
  require_same_dim(f.dim(), g.dim(), "product");
  std::size_t n = f.dim();
  Symbol out(n, {combine(f.provenance().origin, g.provenance().origin), {}});
  Monomial m(n);
  for (const auto& [mf, cf] : f.terms())
    for (const auto& [mg, cg] : g.terms()) {
      m.hbar = mf.hbar + mg.hbar;
      for (std::size_t j = 0; j < n; ++j) {
        m.q[j] = mf.q[j] + mg.q[j];
        m.p[j] = mf.p[j] + mg.p[j];
      }
      out.add_term(m, cf * cg);
    }
  return out;
}

Symbol power(const Symbol& f, unsigned k) {
  Symbol r = Symbol::constant(f.dim(), 1).with_provenance(f.provenance());
  for (unsigned i = 0; i < k; ++i) r = product(r, f);
  return r;
}

Symbol derivative_q(const Symbol& f, std::size_t j) {
  if (j >= f.dim()) throw DimensionError("derivative index out of range");
  Symbol out(f.dim(), f.provenance());
  for (const auto& [m, c] : f.terms()) {
    if (m.q[j] == 0) continue;
    Monomial d = m;
    d.q[j] -= 1;
    out.add_term(d, c * CRational(Rational(m.q[j])));
  }
  return out;
}

Symbol derivative_p(const Symbol& f, std::size_t j) {
  if (j >= f.dim()) throw DimensionError("derivative index out of range");
  Symbol out(f.dim(), f.provenance());
  for (const auto& [m, c] : f.terms()) {
    if (m.p[j] == 0) continue;
    Monomial d = m;
    d.p[j] -= 1;
    out.add_term(d, c * CRational(Rational(m.p[j])));
  }
  return out;
}

Symbol set_hbar_zero(const Symbol& f) {
  Symbol out(f.dim(), f.provenance());
  for (const auto& [m, c] : f.terms())
    if (m.hbar == 0) out.add_term(m, c);
  return out;
}

Symbol substitute_affine(const Symbol& f, const RationalMatrix& mat,
                         std::span<const Rational> shift) {
  std::size_t n = f.dim();
  if (mat.rows != 2 * n || mat.cols != 2 * n || shift.size() != 2 * n)
    throw DimensionError("substitute_affine: expected 2n x 2n matrix and 2n shift");
  std::vector<Symbol> lin;
  lin.reserve(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    Symbol l = Symbol::constant(n, CRational(shift[i]));
    for (std::size_t k = 0; k < 2 * n; ++k) {
      if (sgn(mat(i, k)) == 0) continue;
      Symbol z = k < n ? Symbol::q(n, k) : Symbol::p(n, k - n);
      l += CRational(mat(i, k)) * z;
    }
    lin.push_back(std::move(l));
  }
  std::vector<std::vector<Symbol>> powers(2 * n);
  auto pow_of = [&](std::size_t i, unsigned e) -> const Symbol& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Symbol::constant(n, 1));
    while (cache.size() <= e) cache.push_back(product(cache.back(), lin[i]));
    return cache[e];
  };
  Symbol out(n, f.provenance());
  for (const auto& [m, c] : f.terms()) {
    Monomial hb(n);
    hb.hbar = m.hbar;
    Symbol t = Symbol::monomial(hb, c);
    for (std::size_t j = 0; j < n; ++j) {
      if (m.q[j]) t = product(t, pow_of(j, m.q[j]));
      if (m.p[j]) t = product(t, pow_of(n + j, m.p[j]));
    }
    for (const auto& [tm, tc] : t.terms()) out.add_term(tm, tc);
  }
  return out;
}

std::string to_string(const Symbol& f) {
  if (f.is_zero()) return "0";
  std::size_t n = f.dim();
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::string> factors;
    auto var = [&](char v, std::size_t j, unsigned e) {
      if (e == 0) return;
      std::string s(1, v);
      if (n > 1) s += std::to_string(j + 1);
      if (e > 1) s += "^" + std::to_string(e);
      factors.push_back(s);
    };
    for (std::size_t j = 0; j < n; ++j) var('q', j, m.q[j]);
    for (std::size_t j = 0; j < n; ++j) var('p', j, m.p[j]);
    if (m.hbar == 1) factors.push_back("hbar");
    if (m.hbar > 1) factors.push_back("hbar^" + std::to_string(m.hbar));

    bool negative = false;
    std::string coef;
    if (c.is_real() || sgn(c.re) == 0) {
      Rational mag = c.is_real() ? c.re : c.im;
      negative = sgn(mag) < 0;
      if (negative) mag = -mag;
      bool unit = mag == 1;
      if (c.is_real())
        coef = unit ? "" : to_string(mag);
      else
        coef = unit ? "i" : to_string(mag) + "*i";
    } else {
      coef = to_string(c);
    }
    std::string body = coef;
    for (const auto& fct : factors) body += (body.empty() ? "" : "*") + fct;
    if (body.empty()) body = "1";
    if (first)
      out += (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

PlanckParameter::PlanckParameter(double h_value) : h(h_value), hbar(h_value / (2 * M_PI)) {
  if (!(h_value >= 0) || !std::isfinite(h_value))
    throw InvalidArgument("Planck parameter h must be finite and >= 0");
}

double ipow(double x, unsigned k) {
  double r = 1;
  for (unsigned i = 0; i < k; ++i) r *= x;
  return r;
}

std::complex<double> ipow(std::complex<double> x, unsigned k) {
  std::complex<double> r = 1;
  for (unsigned i = 0; i < k; ++i) r *= x;
  return r;
}

Symbol linear_combine(std::span<const std::pair<CRational, Symbol>> pairs, std::size_t n) {
  if (pairs.empty()) return Symbol(n);
  Symbol out(pairs.front().second.dim(), pairs.front().second.provenance());
  for (const auto& [c, f] : pairs) out += c * f;
  return out;
}

namespace {

// Contribution of a single coordinate pair (q^a1 p^b1) * (q^a2 p^b2) to the
// Moyal series: entries (q-exp, p-exp, order k) -> real coefficient; the full
// term carries (i hbar)^k.
using CoordExpansion = std::vector<std::tuple<unsigned, unsigned, unsigned, Rational>>;

CoordExpansion expand_coordinate(unsigned a1, unsigned b1, unsigned a2, unsigned b2) {
  CoordExpansion out;
  unsigned kmax = std::min(a1 + b1, a2 + b2);
  for (unsigned k = 0; k <= kmax; ++k) {
    Rational scale = Rational(1) / (factorial(k) * Rational(mpz_class(1) << k));
    for (unsigned i = 0; i <= k; ++i) {
      unsigned r = k - i;
      if (r > a1 || i > b1 || r > b2 || i > a2) continue;
      Rational c = scale * binomial(k, i) * falling(a1, r) * falling(b1, i) * falling(b2, r) *
                   falling(a2, i);
      if (i % 2) c = -c;
      if (sgn(c) == 0) continue;
      out.emplace_back(a1 - r + a2 - i, b1 - i + b2 - r, k, std::move(c));
    }
  }
  return out;
}

}  // namespace

Symbol star(const Symbol& f, const Symbol& g) {
  require_same_dim(f.dim(), g.dim(), "star");
  std::size_t n = f.dim();
  std::map<std::array<unsigned, 4>, CoordExpansion> cache;
  auto coord = [&](unsigned a1, unsigned b1, unsigned a2, unsigned b2) -> const CoordExpansion& {
    std::array<unsigned, 4> key{a1, b1, a2, b2};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, expand_coordinate(a1, b1, a2, b2)).first;
    return it->second;
  };
  static const std::array<CRational, 4> ipowers = {CRational(1), CRational(0, 1), CRational(-1),
                                                   CRational(0, -1)};
  Symbol out(n, {quantum_of(f, g), {}});
  std::vector<const CoordExpansion*> parts(n);
  Monomial m(n);
  for (const auto& [mf, cf] : f.terms())
    for (const auto& [mg, cg] : g.terms()) {
      CRational c0 = cf * cg;
      for (std::size_t j = 0; j < n; ++j) parts[j] = &coord(mf.q[j], mf.p[j], mg.q[j], mg.p[j]);
      std::vector<std::size_t> idx(n, 0);
      for (;;) {
        Rational c = 1;
        unsigned k = 0;
        for (std::size_t j = 0; j < n; ++j) {
          const auto& [qe, pe, kj, cj] = (*parts[j])[idx[j]];
          m.q[j] = qe;
          m.p[j] = pe;
          k += kj;
          c *= cj;
        }
        m.hbar = mf.hbar + mg.hbar + k;
        out.add_term(m, c0 * ipowers[k % 4] * CRational(c));
        std::size_t j = 0;
        while (j < n && ++idx[j] == parts[j]->size()) idx[j++] = 0;
        if (j == n) break;
      }
    }
  return out;
}

Symbol pbracket(const Symbol& f, const Symbol& g) {
  Symbol comm = star(f, g) - star(g, f);
  Symbol out(f.dim(), {quantum_of(f, g), {}});
  const CRational minus_i(0, -1);
  for (const auto& [m, c] : comm.terms()) {
    if (m.hbar == 0) throw Error("internal: commutator term without hbar factor");
    Monomial d = m;
    d.hbar -= 1;
    out.add_term(d, c * minus_i);
  }
  return out;
}

Symbol poisson(const Symbol& f, const Symbol& g) {
  require_same_dim(f.dim(), g.dim(), "poisson");
  Symbol out(f.dim(), {combine(f.provenance().origin, g.provenance().origin), {}});
  for (std::size_t j = 0; j < f.dim(); ++j) {
    out += product(derivative_q(f, j), derivative_p(g, j));
    out -= product(derivative_p(f, j), derivative_q(g, j));
  }
  return out;
}

std::complex<double> evaluate(const Symbol& f, const PlanckParameter& planck,
                              std::span<const double> q0, std::span<const double> p0) {
  require_same_dim(f.dim(), q0.size(), "evaluate");
  require_same_dim(f.dim(), p0.size(), "evaluate");
  std::complex<double> acc = 0;
  for (const auto& [m, c] : f.terms()) {
    double v = ipow(planck.hbar, m.hbar);
    for (std::size_t j = 0; j < f.dim(); ++j) v *= ipow(q0[j], m.q[j]) * ipow(p0[j], m.p[j]);
    acc += c.to_complex() * v;
  }
  return acc;
}

std::complex<double> classical_project(const Symbol& f, std::span<const double> q0,
                                       std::span<const double> p0) {
  return evaluate(set_hbar_zero(f), PlanckParameter(0), q0, p0);
}

CRational classical_project_exact(const Symbol& f, std::span<const Rational> q0,
                                  std::span<const Rational> p0) {
  require_same_dim(f.dim(), q0.size(), "classical_project");
  require_same_dim(f.dim(), p0.size(), "classical_project");
  CRational acc = 0;
  for (const auto& [m, c] : f.terms()) {
    if (m.hbar != 0) continue;
    Rational v = 1;
    for (std::size_t j = 0; j < f.dim(); ++j) {
      for (unsigned e = 0; e < m.q[j]; ++e) v *= q0[j];
      for (unsigned e = 0; e < m.p[j]; ++e) v *= p0[j];
    }
    acc += c * CRational(v);
  }
  return acc;
}

namespace {
void require_positive(const Rational& v, const char* what) {
  if (sgn(v) <= 0) throw InvalidArgument(std::string(what) + " must be positive");
}
}  // namespace

Symbol ladder(LadderKind kind, const Rational& m, const Rational& omega) {
  require_positive(m, "mass m");
  require_positive(omega, "frequency omega");
  CRational ip = kind == LadderKind::Plus ? CRational(0, -1) : CRational(0, 1);
  Symbol s = CRational(m * omega) * Symbol::q(1) + ip * Symbol::p(1);
  s.set_provenance({Origin::QuantumSymbol,
                    kind == LadderKind::Plus ? "creation ladder" : "annihilation ladder"});
  return s;
}

Symbol pmechanise(const Symbol& classical) {
  if (classical.depends_on_hbar())
    throw InvalidArgument("pmechanise: input depends on hbar, expected a classical polynomial");
  return classical.with_provenance(
      {Origin::ClassicalPolynomial, "delta(s) times the inverse Fourier image in (x,y)"});
}

Symbol symplectic_pullback(const SymplecticMatrix& a, const Symbol& f) {
  require_same_dim(a.dim(), f.dim(), "symplectic_pullback");
  std::vector<Rational> zero(2 * f.dim());
  return substitute_affine(f, a.matrix().transpose(), zero);
}

Symbol hamiltonian_ho(const Rational& m, const Rational& omega) {
  require_positive(m, "mass m");
  require_positive(omega, "frequency omega");
  Monomial q2(1), p2(1);
  q2.q[0] = 2;
  p2.p[0] = 2;
  Symbol h(1, {Origin::ClassicalPolynomial, "harmonic oscillator energy"});
  h.add_term(q2, CRational(m * omega * omega / 2));
  h.add_term(p2, CRational(Rational(1) / (2 * m)));
  return h;
}

}  // namespace pmech
