#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "torwalk/errors.hpp"

namespace torwalk {

inline constexpr std::int64_t kDefaultSizeCap = std::int64_t{1} << 24;

// Periodic lattice ((-L/2, L/2] ∩ Z)^d with N = L^d sites.
//
// The same index set doubles as the dual (frequency) lattice, so every
// array over the torus -- kernels, symbols -- shares one fixed enumeration:
// row-major with the last coordinate varying fastest, each axis ascending
// from -floor((L-1)/2) to floor(L/2).
struct TorusGeometry {
  std::int64_t L = 0;
  std::int64_t d = 0;
  std::int64_t N = 0;

  TorusGeometry() = default;
  TorusGeometry(std::int64_t side, std::int64_t dim,
                std::int64_t size_cap = kDefaultSizeCap)
      : L(side), d(dim) {
    if (side < 2) throw ConfigError("torus side L must be >= 2");
    if (dim < 1) throw ConfigError("torus dimension d must be >= 1");
    N = 1;
    for (std::int64_t i = 0; i < dim; ++i) {
      if (N > size_cap / side)
        throw ConfigError("torus size L^d = " + std::to_string(side) + "^" +
                          std::to_string(dim) + " exceeds size cap " +
                          std::to_string(size_cap));
      N *= side;
    }
  }

  std::int64_t coord_min() const { return -((L - 1) / 2); }
  std::int64_t coord_max() const { return L / 2; }
};

using LatticePoint = std::vector<std::int64_t>;

namespace detail {
// Euclidean remainder in [0, L).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t L) {
  std::int64_t r = a % L;
  return r < 0 ? r + L : r;
}
}  // namespace detail

// Canonical representative of a single coordinate in (-L/2, L/2].
inline std::int64_t canonical_coord(std::int64_t c, std::int64_t L) {
  std::int64_t r = detail::mod_floor(c, L);  // [0, L)
  return r > L / 2 ? r - L : r;
}

// Canonical representative [x]_L of an integer vector, componentwise.
inline LatticePoint canonical_rep(const LatticePoint& x,
                                  const TorusGeometry& geom) {
  if (std::ssize(x) != geom.d)
    throw ConfigError("canonical_rep: vector has dimension " +
                      std::to_string(x.size()) + ", torus has d = " +
                      std::to_string(geom.d));
  LatticePoint out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = canonical_coord(x[i], geom.L);
  return out;
}

// Periodic l^p distance ||[x]_L||_p.  p = infinity is accepted as
// std::numeric_limits<double>::infinity().
inline double periodic_norm(const LatticePoint& x, double p,
                            const TorusGeometry& geom) {
  if (std::ssize(x) != geom.d)
    throw ConfigError("periodic_norm: dimension mismatch");
  if (!(p >= 1.0)) throw ConfigError("periodic_norm: p must be >= 1");
  double acc = 0.0;
  if (std::isinf(p)) {
    for (auto c : x)
      acc = std::max(acc, double(std::abs(canonical_coord(c, geom.L))));
    return acc;
  }
  for (auto c : x) {
    double a = double(std::abs(canonical_coord(c, geom.L)));
    acc += std::pow(a, p);
  }
  return std::pow(acc, 1.0 / p);
}

inline double periodic_norm2(const LatticePoint& x, const TorusGeometry& geom) {
  return periodic_norm(x, 2.0, geom);
}

// Flat index of a canonical point under the fixed enumeration.
inline std::int64_t point_to_index(const LatticePoint& x,
                                   const TorusGeometry& geom) {
  std::int64_t idx = 0;
  const std::int64_t lo = geom.coord_min();
  for (std::int64_t i = 0; i < geom.d; ++i) idx = idx * geom.L + (x[i] - lo);
  return idx;
}

inline LatticePoint index_to_point(std::int64_t idx, const TorusGeometry& geom) {
  LatticePoint x(geom.d);
  const std::int64_t lo = geom.coord_min();
  for (std::int64_t i = geom.d - 1; i >= 0; --i) {
    x[i] = lo + idx % geom.L;
    idx /= geom.L;
  }
  return x;
}

// All N points in enumeration order.
inline std::vector<LatticePoint> lattice_points(const TorusGeometry& geom) {
  std::vector<LatticePoint> pts;
  pts.reserve(std::size_t(geom.N));
  for (std::int64_t i = 0; i < geom.N; ++i) pts.push_back(index_to_point(i, geom));
  return pts;
}

// Visits every point once without materialising the list; f receives
// (flat index, coordinates).
template <class F>
inline void for_each_point(const TorusGeometry& geom, F&& f) {
  LatticePoint x(geom.d, geom.coord_min());
  const std::int64_t lo = geom.coord_min(), hi = geom.coord_max();
  for (std::int64_t idx = 0; idx < geom.N; ++idx) {
    f(idx, const_cast<const LatticePoint&>(x));
    for (std::int64_t i = geom.d - 1; i >= 0; --i) {
      if (x[i] < hi) {
        ++x[i];
        break;
      }
      x[i] = lo;
    }
  }
}

// Index of -x mod L; pairs a site with its reflection.
inline std::int64_t negate_index(std::int64_t idx, const TorusGeometry& geom) {
  LatticePoint x = index_to_point(idx, geom);
  for (auto& c : x) c = canonical_coord(-c, geom.L);
  return point_to_index(x, geom);
}

}  // namespace torwalk
