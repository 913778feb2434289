#pragma once

// FFT-backed products with a family of Toeplitz blocks that share one
// circulant size. Internal to the bell-operator implementation.

#include <array>
#include <complex>
#include <memory>
#include <cstdint>
#include <span>
#include <vector>

#include <fftw3.h>

namespace cglmp::detail {

/// Smallest N >= n of the form 2^a 3^b 5^c.
std::size_t fft_friendly_size(std::size_t n);

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

class ToeplitzBank {
 public:
  struct Range {
    std::int64_t first;
    std::int64_t last;  // inclusive
    bool empty() const noexcept { return last < first; }
  };

  /// generators[k] holds g(delta) for delta in [-(d-1), d-1] at offset
  /// delta + d - 1. Block (s, s') of the operator uses generator
  /// index(s - s'), with index(delta_s) = delta_s + 2.
  ToeplitzBank(std::int64_t d, std::array<std::vector<double>, 5> generators,
               std::array<Range, 3> segments);
  ~ToeplitzBank();

  ToeplitzBank(const ToeplitzBank&) = delete;
  ToeplitzBank& operator=(const ToeplitzBank&) = delete;

  std::int64_t dimension() const noexcept { return d_; }
  const std::array<Range, 3>& segments() const noexcept { return segments_; }
  double generator(int delta_s, std::int64_t delta) const {
    return generators_[static_cast<std::size_t>(delta_s + 2)]
                      [static_cast<std::size_t>(delta + d_ - 1)];
  }
  bool uses(int delta_s) const noexcept { return used_[static_cast<std::size_t>(delta_s + 2)]; }

  void multiply(std::span<const double> x, std::span<double> y) const;

  /// max_j sum_m |B_jm| via prefix sums over each generator.
  double gershgorin_radius(std::span<const std::uint8_t> segment_of) const;

 private:
  std::int64_t d_;
  std::size_t n_;  // circulant size
  std::array<std::vector<double>, 5> generators_;
  std::array<bool, 5> used_{};
  std::array<Range, 3> segments_;
  std::array<FftwBuffer<fftw_complex>, 5> spectra_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace cglmp::detail
