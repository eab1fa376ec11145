#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmech/heis.hpp"
#include "pmech/rational.hpp"

namespace pmech {

// hbar^k * q_1^a_1 ... q_n^a_n * p_1^b_1 ... p_n^b_n
struct Monomial {
  unsigned hbar = 0;
  std::vector<unsigned> q;
  std::vector<unsigned> p;

  Monomial() = default;
  explicit Monomial(std::size_t n) : q(n, 0), p(n, 0) {}
  Monomial(unsigned k, std::vector<unsigned> a, std::vector<unsigned> b);
  std::size_t dim() const { return q.size(); }
  unsigned degree() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Descending (q,p)-degree, then descending q-powers, then descending p-powers,
// then ascending hbar power.
struct CanonicalOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

enum class Origin { ClassicalPolynomial, QuantumSymbol, Raw };

struct ProvenanceTag {
  Origin origin = Origin::Raw;
  std::string note;
};

const char* origin_name(Origin o);

class Symbol {
 public:
  using TermMap = std::map<Monomial, CRational, CanonicalOrder>;

  explicit Symbol(std::size_t n = 1, ProvenanceTag tag = {Origin::ClassicalPolynomial, {}});

  static Symbol constant(std::size_t n, const CRational& c);
  static Symbol q(std::size_t n, std::size_t j = 0);
  static Symbol p(std::size_t n, std::size_t j = 0);
  static Symbol hbar(std::size_t n);
  static Symbol monomial(const Monomial& m, const CRational& c);

  std::size_t dim() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;
  unsigned max_hbar_power() const;
  bool depends_on_hbar() const;
  CRational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const CRational& c);

  const ProvenanceTag& provenance() const { return tag_; }
  Symbol with_provenance(ProvenanceTag tag) const;
  void set_provenance(ProvenanceTag tag) { tag_ = std::move(tag); }

  Symbol& operator+=(const Symbol& o);
  Symbol& operator-=(const Symbol& o);
  Symbol& operator*=(const CRational& c);

  // Equality ignores provenance.
  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_;
  TermMap terms_;
  ProvenanceTag tag_;
};

Symbol operator+(Symbol a, const Symbol& b);
Symbol operator-(Symbol a, const Symbol& b);
Symbol operator-(const Symbol& a);
Symbol operator*(const CRational& c, Symbol f);
// Pointwise (commutative) product.
Symbol product(const Symbol& f, const Symbol& g);
Symbol power(const Symbol& f, unsigned k);
Symbol derivative_q(const Symbol& f, std::size_t j);
Symbol derivative_p(const Symbol& f, std::size_t j);
Symbol set_hbar_zero(const Symbol& f);
// Substitutes z := M z + shift with z = (q_1..q_n, p_1..p_n).
Symbol substitute_affine(const Symbol& f, const RationalMatrix& m, std::span<const Rational> shift);

// Canonical printing, e.g. "9*q^2*p^2 - 3/2*hbar^2".
std::string to_string(const Symbol& f);

struct PlanckParameter {
  double h;
  double hbar;
  explicit PlanckParameter(double h_value);
};

double ipow(double x, unsigned k);
std::complex<double> ipow(std::complex<double> x, unsigned k);

Symbol parse_symbol(std::string_view text, std::size_t n = 1);
Symbol linear_combine(std::span<const std::pair<CRational, Symbol>> pairs, std::size_t n = 1);
Symbol star(const Symbol& f, const Symbol& g);
Symbol pbracket(const Symbol& f, const Symbol& g);
Symbol poisson(const Symbol& f, const Symbol& g);

std::complex<double> classical_project(const Symbol& f, std::span<const double> q0,
                                       std::span<const double> p0);
CRational classical_project_exact(const Symbol& f, std::span<const Rational> q0,
                                  std::span<const Rational> p0);
std::complex<double> evaluate(const Symbol& f, const PlanckParameter& planck,
                              std::span<const double> q0, std::span<const double> p0);

enum class LadderKind { Plus, Minus };
Symbol ladder(LadderKind kind, const Rational& m, const Rational& omega);
Symbol pmechanise(const Symbol& classical);
Symbol symplectic_pullback(const SymplecticMatrix& a, const Symbol& f);
Symbol hamiltonian_ho(const Rational& m, const Rational& omega);

}  // namespace pmech
