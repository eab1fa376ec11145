#include "pmech/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "pmech/errors.hpp"

namespace pmech {

PhaseGrid::PhaseGrid(int n_points, double half_width) : n_(n_points), L_(half_width) {
  if (n_points < 64 || (n_points & (n_points - 1)) != 0)
    throw InvalidArgument("grid size must be a power of two >= 64");
  if (!(half_width > 0) || !std::isfinite(half_width))
    throw InvalidArgument("grid half-width L must be positive");
  delta_ = 2 * L_ / n_;
}

PhaseGrid make_grid(int n_points, double half_width) { return PhaseGrid(n_points, half_width); }

double PhaseGrid::wavenumber(int m) const {
  if (m == n_ / 2) return 0;
  int mm = m < n_ / 2 ? m : m - n_;
  return 2 * M_PI * mm / (n_ * delta_);
}

namespace {

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!ptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* ptr;
};

// Planner calls are not thread-safe in FFTW; plans are created once and cached.
// 0 = p axis (contiguous), 1 = q axis (strided), 2 = full 2D.
fftw_plan cached_plan(int n, int kind, int sign) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, kind, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  FftwBuffer scratch(static_cast<std::size_t>(n) * n);
  fftw_plan plan;
  if (kind == 2) {
    plan = fftw_plan_dft_2d(n, n, scratch.ptr, scratch.ptr, sign, FFTW_ESTIMATE);
  } else {
    int dims[1] = {n};
    int stride = kind == 0 ? 1 : n;
    int dist = kind == 0 ? n : 1;
    plan = fftw_plan_many_dft(1, dims, n, scratch.ptr, nullptr, stride, dist, scratch.ptr,
                              nullptr, stride, dist, sign, FFTW_ESTIMATE);
  }
  if (!plan) throw Error("FFTW planning failed");
  plans.emplace(key, plan);
  return plan;
}

void load(FftwBuffer& buf, const std::vector<cdouble>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    buf.ptr[i][0] = v[i].real();
    buf.ptr[i][1] = v[i].imag();
  }
}

std::vector<cdouble> store(const FftwBuffer& buf, std::size_t count, double scale) {
  std::vector<cdouble> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = cdouble(buf.ptr[i][0] * scale, buf.ptr[i][1] * scale);
  return out;
}

}  // namespace

std::vector<cdouble> spectral_derivative(const std::vector<cdouble>& samples, const PhaseGrid& g,
                                         Axis axis) {
  int n = g.size();
  if (samples.size() != g.count()) throw DimensionError("sample count does not match grid");
  int kind = axis == Axis::P ? 0 : 1;
  FftwBuffer buf(g.count());
  load(buf, samples);
  fftw_execute_dft(cached_plan(n, kind, FFTW_FORWARD), buf.ptr, buf.ptr);
  for (int iq = 0; iq < n; ++iq)
    for (int ip = 0; ip < n; ++ip) {
      double k = g.wavenumber(axis == Axis::P ? ip : iq);
      auto& c = buf.ptr[g.index(iq, ip)];
      double re = c[0], im = c[1];
      c[0] = -k * im;
      c[1] = k * re;
    }
  fftw_execute_dft(cached_plan(n, kind, FFTW_BACKWARD), buf.ptr, buf.ptr);
  return store(buf, g.count(), 1.0 / n);
}

std::vector<cdouble> fft2(const std::vector<cdouble>& samples, int n, int sign) {
  std::size_t count = static_cast<std::size_t>(n) * n;
  if (samples.size() != count) throw DimensionError("sample count does not match grid");
  FftwBuffer buf(count);
  load(buf, samples);
  fftw_execute_dft(cached_plan(n, 2, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD), buf.ptr, buf.ptr);
  return store(buf, count, 1.0);
}

std::vector<cdouble> spectral_translate(const std::vector<cdouble>& samples, const PhaseGrid& g,
                                        double a, double b) {
  int n = g.size();
  auto spec = fft2(samples, n, -1);
  for (int iq = 0; iq < n; ++iq) {
    double kq = g.wavenumber(iq);
    for (int ip = 0; ip < n; ++ip) {
      double kp = g.wavenumber(ip);
      spec[g.index(iq, ip)] *= std::polar(1.0, -(kq * a + kp * b));
    }
  }
  auto out = fft2(spec, n, +1);
  double scale = 1.0 / static_cast<double>(g.count());
  for (auto& v : out) v *= scale;
  return out;
}

cdouble pairwise_sum(const cdouble* data, std::size_t count) {
  if (count <= 8) {
    cdouble s = 0;
    for (std::size_t i = 0; i < count; ++i) s += data[i];
    return s;
  }
  std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

double pairwise_sum(const double* data, std::size_t count) {
  if (count <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < count; ++i) s += data[i];
    return s;
  }
  std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

}  // namespace pmech
