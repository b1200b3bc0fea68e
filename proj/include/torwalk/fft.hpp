#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

#include "torwalk/torus.hpp"

namespace torwalk {
namespace fft {

// FFTW's planner is not thread-safe; executing distinct plans is.
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place unnormalised DFT over the d-cube, wrap (0..L-1 per axis) order.
// sign = -1 applies e^{-2pi i k.x/L}, sign = +1 applies e^{+2pi i k.x/L}.
// FFTW_ESTIMATE keeps plans deterministic run to run.
inline void dft_inplace(const TorusGeometry& geom,
                        std::vector<std::complex<double>>& data, int sign) {
  std::vector<int> dims(std::size_t(geom.d), int(geom.L));
  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(int(geom.d), dims.data(), raw, raw,
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

// Natural (enumeration) order <-> wrap order permutation.  Both orders are
// row-major; axes differ by the circular shift coordinate -> coordinate mod L.
inline std::vector<std::int64_t> natural_to_wrap_map(const TorusGeometry& geom) {
  std::vector<std::int64_t> map(std::size_t(geom.N));
  for_each_point(geom, [&](std::int64_t idx, const LatticePoint& x) {
    std::int64_t w = 0;
    for (std::int64_t i = 0; i < geom.d; ++i)
      w = w * geom.L + detail::mod_floor(x[std::size_t(i)], geom.L);
    map[std::size_t(idx)] = w;
  });
  return map;
}

}  // namespace fft
}  // namespace torwalk
