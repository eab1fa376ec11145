#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace pmech {

using cdouble = std::complex<double>;

// N x N phase-space grid with nodes (j - N/2) * delta, delta = 2L/N.
class PhaseGrid {
 public:
  PhaseGrid(int n_points, double half_width);
  int size() const { return n_; }
  double half_width() const { return L_; }
  double spacing() const { return delta_; }
  double node(int j) const { return (j - n_ / 2) * delta_; }
  std::size_t count() const { return static_cast<std::size_t>(n_) * n_; }
  // Row-major with p fastest.
  std::size_t index(int iq, int ip) const { return static_cast<std::size_t>(iq) * n_ + ip; }
  // Angular wavenumber of FFT bin m (Nyquist bin reported as zero).
  double wavenumber(int m) const;
  friend bool operator==(const PhaseGrid& a, const PhaseGrid& b) {
    return a.n_ == b.n_ && a.L_ == b.L_;
  }

 private:
  int n_;
  double L_;
  double delta_;
};

PhaseGrid make_grid(int n_points, double half_width);

enum class Axis { Q, P };

// Spectral first derivative along one axis.
std::vector<cdouble> spectral_derivative(const std::vector<cdouble>& samples, const PhaseGrid& g,
                                         Axis axis);
// Unnormalised 2D DFT (sign -1 forward, +1 backward) in FFT bin order.
std::vector<cdouble> fft2(const std::vector<cdouble>& samples, int n, int sign);
// f(q - a, p - b) by Fourier phase translation (exact for band-limited periodic data).
std::vector<cdouble> spectral_translate(const std::vector<cdouble>& samples, const PhaseGrid& g,
                                        double a, double b);

// Deterministic pairwise summation.
cdouble pairwise_sum(const cdouble* data, std::size_t count);
double pairwise_sum(const double* data, std::size_t count);

}  // namespace pmech
