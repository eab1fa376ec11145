#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pmech/rational.hpp"

namespace pmech {

// Point (s, x, y) of the Heisenberg group H^n in exponential coordinates.
struct GroupElement {
  Rational s;
  std::vector<Rational> x;
  std::vector<Rational> y;

  GroupElement() = default;
  GroupElement(Rational s_, std::vector<Rational> x_, std::vector<Rational> y_);
  static GroupElement identity(std::size_t n);
  std::size_t dim() const { return x.size(); }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement multiply(const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);

// z = (x_1..x_n, y_1..y_n); returns x1.y2 - x2.y1.
Rational symplectic_form(std::span<const Rational> z1, std::span<const Rational> z2);

// Dense row-major rational matrix.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> entries;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  RationalMatrix(std::size_t r, std::size_t c, std::vector<Rational> e);
  static RationalMatrix identity(std::size_t d);

  Rational& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  RationalMatrix transpose() const;
  std::vector<Rational> apply(std::span<const Rational> v) const;
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

bool is_symplectic(const RationalMatrix& a);

// A 2n x 2n matrix validated to preserve the symplectic form.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(RationalMatrix a);
  static SymplecticMatrix identity(std::size_t n);
  // [[1, c], [0, 1]] (upper) or [[1, 0], [c, 1]] (lower) acting on coordinate j of H^n.
  static SymplecticMatrix shear(std::size_t n, std::size_t j, const Rational& c, bool upper);

  const RationalMatrix& matrix() const { return a_; }
  std::size_t dim() const { return a_.rows / 2; }
  SymplecticMatrix operator*(const SymplecticMatrix& o) const;

 private:
  RationalMatrix a_;
};

// Point (h, q, p) of the dual of the Lie algebra.
struct AdjointPoint {
  Rational h;
  std::vector<Rational> q;
  std::vector<Rational> p;
  friend bool operator==(const AdjointPoint&, const AdjointPoint&) = default;
};

// (s, A(x,y)).
GroupElement apply_automorphism(const SymplecticMatrix& a, const GroupElement& g);
// (h, A^T(q,p)).
AdjointPoint adjoint_action(const SymplecticMatrix& a, const AdjointPoint& pt);

}  // namespace pmech
