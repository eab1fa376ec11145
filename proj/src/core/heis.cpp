#include "pmech/heis.hpp"

#include "pmech/errors.hpp"

namespace pmech {

GroupElement::GroupElement(Rational s_, std::vector<Rational> x_, std::vector<Rational> y_)
    : s(std::move(s_)), x(std::move(x_)), y(std::move(y_)) {
  if (x.empty()) throw DimensionError("group element needs n >= 1");
  require_same_dim(x.size(), y.size(), "group element");
}

GroupElement GroupElement::identity(std::size_t n) {
  return GroupElement(0, std::vector<Rational>(n), std::vector<Rational>(n));
}

GroupElement multiply(const GroupElement& g1, const GroupElement& g2) {
  require_same_dim(g1.dim(), g2.dim(), "multiply");
  std::size_t n = g1.dim();
  Rational w = 0;
  std::vector<Rational> x(n), y(n);
  for (std::size_t j = 0; j < n; ++j) {
    w += g1.x[j] * g2.y[j] - g2.x[j] * g1.y[j];
    x[j] = g1.x[j] + g2.x[j];
    y[j] = g1.y[j] + g2.y[j];
  }
  Rational s = g1.s + g2.s + w / 2;
  return GroupElement(std::move(s), std::move(x), std::move(y));
}

GroupElement inverse(const GroupElement& g) {
  std::vector<Rational> x(g.x), y(g.y);
  for (auto& v : x) v = -v;
  for (auto& v : y) v = -v;
  return GroupElement(-g.s, std::move(x), std::move(y));
}

Rational symplectic_form(std::span<const Rational> z1, std::span<const Rational> z2) {
  require_same_dim(z1.size(), z2.size(), "symplectic_form");
  if (z1.size() % 2 != 0) throw DimensionError("symplectic_form: odd vector length");
  std::size_t n = z1.size() / 2;
  Rational w = 0;
  for (std::size_t j = 0; j < n; ++j) w += z1[j] * z2[n + j] - z2[j] * z1[n + j];
  return w;
}

RationalMatrix::RationalMatrix(std::size_t r, std::size_t c, std::vector<Rational> e)
    : rows(r), cols(c), entries(std::move(e)) {
  if (entries.size() != r * c) throw DimensionError("matrix entry count does not match shape");
}

RationalMatrix RationalMatrix::identity(std::size_t d) {
  RationalMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<Rational> RationalMatrix::apply(std::span<const Rational> v) const {
  require_same_dim(cols, v.size(), "matrix apply");
  std::vector<Rational> out(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < cols; ++j) acc += (*this)(i, j) * v[j];
    out[i] = std::move(acc);
  }
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  require_same_dim(a.cols, b.rows, "matrix product");
  RationalMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

bool is_symplectic(const RationalMatrix& a) {
  if (a.rows != a.cols) throw DimensionError("is_symplectic: matrix is not square");
  if (a.rows == 0 || a.rows % 2 != 0) throw DimensionError("is_symplectic: size must be 2n");
  std::size_t d = a.rows;
  std::vector<std::vector<Rational>> cols(d, std::vector<Rational>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) cols[j][i] = a(i, j);
  std::vector<Rational> ei(d), ej(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      std::fill(ei.begin(), ei.end(), Rational(0));
      std::fill(ej.begin(), ej.end(), Rational(0));
      ei[i] = 1;
      ej[j] = 1;
      if (symplectic_form(cols[i], cols[j]) != symplectic_form(ei, ej)) return false;
    }
  }
  return true;
}

SymplecticMatrix::SymplecticMatrix(RationalMatrix a) : a_(std::move(a)) {
  if (!is_symplectic(a_)) throw InvalidArgument("matrix does not preserve the symplectic form");
}

SymplecticMatrix SymplecticMatrix::identity(std::size_t n) {
  return SymplecticMatrix(RationalMatrix::identity(2 * n));
}

SymplecticMatrix SymplecticMatrix::shear(std::size_t n, std::size_t j, const Rational& c,
                                         bool upper) {
  if (j >= n) throw DimensionError("shear coordinate out of range");
  RationalMatrix m = RationalMatrix::identity(2 * n);
  if (upper)
    m(j, n + j) = c;
  else
    m(n + j, j) = c;
  return SymplecticMatrix(std::move(m));
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& o) const {
  return SymplecticMatrix(a_ * o.a_);
}

GroupElement apply_automorphism(const SymplecticMatrix& a, const GroupElement& g) {
  require_same_dim(a.dim(), g.dim(), "apply_automorphism");
  std::size_t n = g.dim();
  std::vector<Rational> z(g.x);
  z.insert(z.end(), g.y.begin(), g.y.end());
  auto w = a.matrix().apply(z);
  return GroupElement(g.s, std::vector<Rational>(w.begin(), w.begin() + n),
                      std::vector<Rational>(w.begin() + n, w.end()));
}

AdjointPoint adjoint_action(const SymplecticMatrix& a, const AdjointPoint& pt) {
  require_same_dim(pt.q.size(), pt.p.size(), "adjoint point");
  require_same_dim(a.dim(), pt.q.size(), "adjoint_action");
  std::size_t n = pt.q.size();
  std::vector<Rational> z(pt.q);
  z.insert(z.end(), pt.p.begin(), pt.p.end());
  auto w = a.matrix().transpose().apply(z);
  return AdjointPoint{pt.h, std::vector<Rational>(w.begin(), w.begin() + n),
                      std::vector<Rational>(w.begin() + n, w.end())};
}

}  // namespace pmech
