#include "toeplitz_bank.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <new>

namespace cglmp::detail {

namespace {

// The FFTW planner is not thread-safe; execution with fresh arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <class T>
FftwBuffer<T> allocate(std::size_t count) {
  void* p = fftw_malloc(sizeof(T) * count);
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(static_cast<T*>(p));
}

}  // namespace

std::size_t fft_friendly_size(std::size_t n) {
  std::size_t best = 1;
  while (best < n) best *= 2;
  for (std::size_t p5 = 1; p5 <= best; p5 *= 5)
    for (std::size_t p3 = p5; p3 <= best; p3 *= 3) {
      std::size_t v = p3;
      while (v < n) v *= 2;
      best = std::min(best, v);
    }
  return best;
}

ToeplitzBank::ToeplitzBank(std::int64_t d, std::array<std::vector<double>, 5> generators,
                           std::array<Range, 3> segments)
    : d_(d),
      n_(fft_friendly_size(static_cast<std::size_t>(2 * d - 1))),
      generators_(std::move(generators)),
      segments_(segments) {
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t)
      if (!segments_[static_cast<std::size_t>(s)].empty() &&
          !segments_[static_cast<std::size_t>(t)].empty())
        used_[static_cast<std::size_t>(s - t + 2)] = true;

  const std::size_t half = n_ / 2 + 1;
  auto real = allocate<double>(n_);
  auto spec = allocate<fftw_complex>(half);
  {
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), real.get(), spec.get(), FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_), spec.get(), real.get(), FFTW_ESTIMATE);
  }

  for (std::size_t k = 0; k < 5; ++k) {
    if (!used_[k]) continue;
    const auto& g = generators_[k];
    std::fill_n(real.get(), n_, 0.0);
    // Circulant column: c[delta] = g(delta), c[N - delta] = g(-delta).
    for (std::int64_t delta = 0; delta < d_; ++delta)
      real[static_cast<std::size_t>(delta)] = g[static_cast<std::size_t>(delta + d_ - 1)];
    for (std::int64_t delta = 1; delta < d_; ++delta)
      real[n_ - static_cast<std::size_t>(delta)] = g[static_cast<std::size_t>(d_ - 1 - delta)];
    spectra_[k] = allocate<fftw_complex>(half);
    fftw_execute_dft_r2c(forward_, real.get(), spectra_[k].get());
  }
}

ToeplitzBank::~ToeplitzBank() {
  std::lock_guard lock(planner_mutex());
  if (forward_ != nullptr) fftw_destroy_plan(forward_);
  if (backward_ != nullptr) fftw_destroy_plan(backward_);
}

void ToeplitzBank::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t half = n_ / 2 + 1;
  auto real = allocate<double>(n_);
  std::array<FftwBuffer<fftw_complex>, 3> xs;
  for (std::size_t s = 0; s < 3; ++s) {
    const auto& seg = segments_[s];
    if (seg.empty()) continue;
    std::fill_n(real.get(), n_, 0.0);
    std::copy(x.begin() + seg.first, x.begin() + seg.last + 1, real.get() + seg.first);
    xs[s] = allocate<fftw_complex>(half);
    fftw_execute_dft_r2c(forward_, real.get(), xs[s].get());
  }

  auto acc = allocate<fftw_complex>(half);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t s = 0; s < 3; ++s) {
    const auto& seg = segments_[s];
    if (seg.empty()) continue;
    std::memset(acc.get(), 0, sizeof(fftw_complex) * half);
    for (std::size_t t = 0; t < 3; ++t) {
      if (!xs[t]) continue;
      const fftw_complex* g = spectra_[s - t + 2].get();
      const fftw_complex* v = xs[t].get();
      fftw_complex* out = acc.get();
      for (std::size_t k = 0; k < half; ++k) {
        out[k][0] += g[k][0] * v[k][0] - g[k][1] * v[k][1];
        out[k][1] += g[k][0] * v[k][1] + g[k][1] * v[k][0];
      }
    }
    fftw_execute_dft_c2r(backward_, acc.get(), real.get());
    for (std::int64_t j = seg.first; j <= seg.last; ++j)
      y[static_cast<std::size_t>(j)] = real[static_cast<std::size_t>(j)] * scale;
  }
}

double ToeplitzBank::gershgorin_radius(std::span<const std::uint8_t> segment_of) const {
  // prefix[k][i] = sum_{delta <= i - d} |g_k(delta)|, i.e. prefix over the
  // first i stored entries.
  const std::size_t len = static_cast<std::size_t>(2 * d_ - 1);
  std::array<std::vector<long double>, 5> prefix;
  for (std::size_t k = 0; k < 5; ++k) {
    if (!used_[k]) continue;
    prefix[k].assign(len + 1, 0.0L);
    for (std::size_t i = 0; i < len; ++i)
      prefix[k][i + 1] = prefix[k][i] + std::abs(static_cast<long double>(generators_[k][i]));
  }
  // Sum of |g(delta)| over delta in [lo, hi].
  auto range_sum = [&](std::size_t k, std::int64_t lo, std::int64_t hi) {
    return prefix[k][static_cast<std::size_t>(hi + d_)] -
           prefix[k][static_cast<std::size_t>(lo + d_ - 1)];
  };
  long double best = 0.0L;
  for (std::int64_t j = 0; j < d_; ++j) {
    const int s = segment_of[static_cast<std::size_t>(j)];
    long double row = 0.0L;
    for (int t = 0; t < 3; ++t) {
      const auto& seg = segments_[static_cast<std::size_t>(t)];
      if (seg.empty()) continue;
      row += range_sum(static_cast<std::size_t>(s - t + 2), j - seg.last, j - seg.first);
    }
    best = std::max(best, row);
  }
  return static_cast<double>(best);
}

}  // namespace cglmp::detail
