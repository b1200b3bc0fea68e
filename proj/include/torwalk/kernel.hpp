#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "torwalk/errors.hpp"
#include "torwalk/fft.hpp"
#include "torwalk/profile.hpp"
#include "torwalk/torus.hpp"

namespace torwalk {

// The circulant walk: torus + density profile + bandwidth.
struct WalkSpec {
  TorusGeometry geom;
  Profile profile;
  double W = 1.0;

  WalkSpec() = default;
  WalkSpec(TorusGeometry g, Profile p, double bandwidth)
      : geom(g), profile(std::move(p)), W(bandwidth) {
    if (profile.d != int(geom.d))
      throw ConfigError("walk spec: profile dimension != torus dimension");
    if (!(W >= 1.0)) throw ConfigError("walk spec: bandwidth W must be >= 1");
    if (!(W < 0.5 * double(geom.L)))
      throw ConfigError("walk spec: bandwidth W must be < L/2");
  }
};

enum class FieldTag { Exact, Prediction, Empirical };

// A mass function over the torus in the fixed enumeration order.
struct KernelField {
  TorusGeometry geom;
  std::vector<double> values;
  FieldTag tag = FieldTag::Exact;
  std::uint64_t n = 0;           // step count (exact fields)
  double clamp_total = 0.0;      // negative mass clamped to zero on inversion
  std::vector<double> stderrs;   // empirical fields only

  double total_mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  double symmetry_defect() const {
    double worst = 0.0;
    for (std::int64_t i = 0; i < geom.N; ++i) {
      const std::int64_t j = negate_index(i, geom);
      worst = std::max(worst,
                       std::abs(values[std::size_t(i)] - values[std::size_t(j)]));
    }
    return worst;
  }
};

// Fourier multiplier k -> p^_1(k) over the dual lattice, same enumeration.
struct Symbol {
  TorusGeometry geom;
  std::vector<double> values;
};

// Omega_W = sum over nonzero sites of f(x/W).
inline double normalization(const WalkSpec& spec) {
  double omega = 0.0;
  std::vector<double> y(std::size_t(spec.geom.d));
  for_each_point(spec.geom, [&](std::int64_t, const LatticePoint& x) {
    bool origin = true;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = double(x[i]) / spec.W;
      origin = origin && x[i] == 0;
    }
    if (!origin) omega += evaluate(spec.profile, y);
  });
  if (!(omega > 0.0))
    throw HypothesisError(
        "degenerate walk: profile support misses every nonzero lattice site at W = " +
        std::to_string(spec.W));
  return omega;
}

// p_1(x) = f(x/W)/Omega_W for x != 0, p_1(0) = 0.
inline KernelField one_step(const WalkSpec& spec) {
  const double omega = normalization(spec);
  KernelField field;
  field.geom = spec.geom;
  field.tag = FieldTag::Exact;
  field.n = 1;
  field.values.assign(std::size_t(spec.geom.N), 0.0);
  std::vector<double> y(std::size_t(spec.geom.d));
  for_each_point(spec.geom, [&](std::int64_t idx, const LatticePoint& x) {
    bool origin = true;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = double(x[i]) / spec.W;
      origin = origin && x[i] == 0;
    }
    if (!origin) field.values[std::size_t(idx)] = evaluate(spec.profile, y) / omega;
  });
  return field;
}

// p^_1(k) = sum_x p_1(x) e^{+2pi i k.x/L}, by FFT.  The profile's symmetry
// forces a real symbol; a large imaginary residue means the hypothesis is
// violated.
inline Symbol symbol(const WalkSpec& spec) {
  const KernelField p1 = one_step(spec);
  const auto map = fft::natural_to_wrap_map(spec.geom);
  std::vector<std::complex<double>> buf(std::size_t(spec.geom.N));
  for (std::int64_t i = 0; i < spec.geom.N; ++i)
    buf[std::size_t(map[std::size_t(i)])] = p1.values[std::size_t(i)];
  fft::dft_inplace(spec.geom, buf, +1);

  double max_re = 0.0, max_im = 0.0;
  for (const auto& z : buf) {
    max_re = std::max(max_re, std::abs(z.real()));
    max_im = std::max(max_im, std::abs(z.imag()));
  }
  if (max_im > 1e-12 * std::max(max_re, 1.0))
    throw HypothesisError("symbol has imaginary residue " + std::to_string(max_im) +
                          "; profile is not symmetric");

  Symbol s;
  s.geom = spec.geom;
  s.values.assign(std::size_t(spec.geom.N), 0.0);
  for (std::int64_t i = 0; i < spec.geom.N; ++i) {
    double v = buf[std::size_t(map[std::size_t(i)])].real();
    if (std::abs(v) > 1.0) {
      if (std::abs(v) > 1.0 + 1e-12)
        throw HypothesisError("symbol value " + std::to_string(v) + " outside [-1, 1]");
      v = v > 0 ? 1.0 : -1.0;
    }
    s.values[std::size_t(i)] = v;
  }
  // k = 0 is exactly 1 by mass conservation; pin it so long powers cannot
  // drift on the rounding of the lattice sum.
  const std::int64_t zero = point_to_index(LatticePoint(std::size_t(spec.geom.d), 0),
                                           spec.geom);
  if (std::abs(s.values[std::size_t(zero)] - 1.0) > 1e-14)
    throw AccuracyError("symbol at k = 0 deviates from 1 by more than 1e-14");
  s.values[std::size_t(zero)] = 1.0;
  return s;
}

// b^n by squaring; |b| <= 1 keeps this stable for any n.
inline double ipow(double b, std::uint64_t n) {
  double acc = 1.0, p = b;
  while (n) {
    if (n & 1) acc *= p;
    p *= p;
    n >>= 1;
  }
  return acc;
}

// p_n by spectral powering and inverse DFT.  n = 0 is the point mass at the
// origin.  Tiny negative values from cancellation are clamped to zero and
// the clamped mass recorded on the field.
inline KernelField n_step_from_symbol(const Symbol& s, std::uint64_t n) {
  const TorusGeometry& geom = s.geom;
  KernelField field;
  field.geom = geom;
  field.tag = FieldTag::Exact;
  field.n = n;
  if (n == 0) {
    field.values.assign(std::size_t(geom.N), 0.0);
    field.values[std::size_t(
        point_to_index(LatticePoint(std::size_t(geom.d), 0), geom))] = 1.0;
    return field;
  }
  const auto map = fft::natural_to_wrap_map(geom);
  std::vector<std::complex<double>> buf(std::size_t(geom.N));
  for (std::int64_t i = 0; i < geom.N; ++i)
    buf[std::size_t(map[std::size_t(i)])] = ipow(s.values[std::size_t(i)], n);
  fft::dft_inplace(geom, buf, -1);

  field.values.assign(std::size_t(geom.N), 0.0);
  const double inv_n_sites = 1.0 / double(geom.N);
  for (std::int64_t i = 0; i < geom.N; ++i) {
    double v = buf[std::size_t(map[std::size_t(i)])].real() * inv_n_sites;
    if (v < 0.0) {
      field.clamp_total += -v;
      v = 0.0;
    }
    field.values[std::size_t(i)] = v;
  }
  return field;
}

inline KernelField n_step(const WalkSpec& spec, std::uint64_t n) {
  return n_step_from_symbol(symbol(spec), n);
}

// ---------------------------------------------------------------------------
// Spectral diagnostics

struct StableFit {
  double alpha_hat = 0.0;
  double c_alpha_hat = 0.0;  // in the 1 - p^_1(k) ~ C (W||k/L||)^alpha form
  double residual = 0.0;     // rms residual of the log-log fit
  std::int64_t points = 0;
};

// Least-squares fit of log(1 - p^_1(k)) = alpha log(W ||k/L||) + log C over
// the frequency window k_min <= ||k||_2 <= delta L / W.
inline StableFit estimate_stable_constant(const WalkSpec& spec, const Symbol& s,
                                          double delta = 0.1, double k_min = 4.0) {
  const double k_max = delta * double(spec.geom.L) / spec.W;
  std::vector<double> us, ys;
  for_each_point(spec.geom, [&](std::int64_t idx, const LatticePoint& k) {
    double n2 = 0.0;
    for (auto c : k) n2 += double(c) * double(c);
    const double kn = std::sqrt(n2);
    if (kn < k_min || kn > k_max) return;
    const double gap = 1.0 - s.values[std::size_t(idx)];
    if (!(gap > 0.0)) return;
    us.push_back(std::log(spec.W * kn / double(spec.geom.L)));
    ys.push_back(std::log(gap));
  });
  if (std::ssize(us) < 8)
    throw AccuracyError("stable-constant fit window [" + std::to_string(k_min) +
                        ", " + std::to_string(k_max) + "] contains only " +
                        std::to_string(us.size()) + " frequencies (< 8)");
  const auto npts = double(us.size());
  double su = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    su += us[i];
    sy += ys[i];
  }
  const double mu = su / npts, my = sy / npts;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    sxx += (us[i] - mu) * (us[i] - mu);
    sxy += (us[i] - mu) * (ys[i] - my);
  }
  StableFit fit;
  fit.alpha_hat = sxy / sxx;
  fit.c_alpha_hat = std::exp(my - fit.alpha_hat * mu);
  double ss = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const double r = ys[i] - (my + fit.alpha_hat * (us[i] - mu));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / npts);
  fit.points = std::int64_t(us.size());
  return fit;
}

inline StableFit estimate_stable_constant(const WalkSpec& spec, double delta = 0.1,
                                          double k_min = 4.0) {
  if (!spec.profile.tail_index)
    throw HypothesisError("stable-constant fit requires a heavy-tail profile");
  return estimate_stable_constant(spec, symbol(spec), delta, k_min);
}

// max |p^_1(k)| over the high-frequency window ||k||_2 > delta L / W.
inline double spectral_gap(const WalkSpec& spec, const Symbol& s, double delta) {
  const double cut = delta * double(spec.geom.L) / spec.W;
  double rho = -1.0;
  for_each_point(spec.geom, [&](std::int64_t idx, const LatticePoint& k) {
    double n2 = 0.0;
    for (auto c : k) n2 += double(c) * double(c);
    if (std::sqrt(n2) > cut)
      rho = std::max(rho, std::abs(s.values[std::size_t(idx)]));
  });
  if (rho < 0.0)
    throw ConfigError("spectral gap window ||k|| > " + std::to_string(cut) +
                      " is empty");
  return rho;
}

inline double spectral_gap(const WalkSpec& spec, double delta) {
  return spectral_gap(spec, symbol(spec), delta);
}

// Discretised covariance (Gamma_L)_{ij} = (1/Omega_W) sum x_i x_j / W^2 f(x/W).
inline Eigen::MatrixXd lattice_covariance_matrix(const WalkSpec& spec) {
  if (!spec.profile.covariance)
    throw HypothesisError("lattice covariance requires a finite-covariance profile");
  const double omega = normalization(spec);
  const auto d = std::size_t(spec.geom.d);
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(Eigen::Index(d), Eigen::Index(d));
  std::vector<double> y(d);
  for_each_point(spec.geom, [&](std::int64_t, const LatticePoint& x) {
    bool origin = true;
    for (std::size_t i = 0; i < d; ++i) {
      y[i] = double(x[i]) / spec.W;
      origin = origin && x[i] == 0;
    }
    if (origin) return;
    const double f = evaluate(spec.profile, y);
    if (f == 0.0) return;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        gamma(Eigen::Index(i), Eigen::Index(j)) += y[i] * y[j] * f;
  });
  return gamma / omega;
}

// sigma_L^2(k) = (W^2/L^2) <k Gamma_L, k>, for real-valued frequency vectors.
inline double sigma_l_sq(const Eigen::MatrixXd& gamma_l,
                         const std::vector<double>& k, const TorusGeometry& geom,
                         double W) {
  Eigen::VectorXd kv(Eigen::Index(k.size()));
  for (std::size_t i = 0; i < k.size(); ++i) kv(Eigen::Index(i)) = k[i];
  const double quad = kv.dot(gamma_l * kv);
  return (W * W) / (double(geom.L) * double(geom.L)) * quad;
}

// Trig-polynomial extension of the symbol to non-integer frequencies.
inline double symbol_at(const WalkSpec& spec, const KernelField& p1,
                        const std::vector<double>& k) {
  double acc = 0.0;
  for_each_point(spec.geom, [&](std::int64_t idx, const LatticePoint& x) {
    const double v = p1.values[std::size_t(idx)];
    if (v == 0.0) return;
    double phase = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i)
      phase += k[i] * double(x[i]) / double(spec.geom.L);
    acc += v * std::cos(2.0 * M_PI * phase);
  });
  return acc;
}

struct GaussianSymbolReport {
  // |p^_1(k)| <= 1 - pi^2 sigma_L^2(k) over ||k|| <= delta L/W
  bool inequality_holds = false;
  double worst_margin = 0.0;
  LatticePoint worst_k;
  // max |p^_1(k)^n e^{2 pi^2 n sigma_L^2(k)} - 1| over ||k|| <= n^{-1/2+d0} L/W,
  // one entry per requested n; the scan includes the exact window-edge
  // frequency so the measured decay tracks the shrinking window rather than
  // integer truncation.
  std::vector<std::uint64_t> steps;
  std::vector<double> deviations;
};

inline GaussianSymbolReport gaussian_symbol_check(const WalkSpec& spec, double delta,
                                                  const std::vector<std::uint64_t>& ns,
                                                  double delta0) {
  if (!spec.profile.covariance)
    throw HypothesisError("gaussian symbol check requires a finite-covariance profile");
  const Symbol s = symbol(spec);
  const KernelField p1 = one_step(spec);
  const Eigen::MatrixXd gamma = lattice_covariance_matrix(spec);
  const double lw = double(spec.geom.L) / spec.W;

  GaussianSymbolReport rep;
  rep.inequality_holds = true;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const double cut = delta * lw;
  for_each_point(spec.geom, [&](std::int64_t idx, const LatticePoint& k) {
    double n2 = 0.0;
    for (auto c : k) n2 += double(c) * double(c);
    if (std::sqrt(n2) > cut) return;
    std::vector<double> kd(k.begin(), k.end());
    const double margin = 1.0 - M_PI * M_PI * sigma_l_sq(gamma, kd, spec.geom, spec.W) -
                          std::abs(s.values[std::size_t(idx)]);
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_k = k;
    }
  });
  if (rep.worst_margin < -1e-12) rep.inequality_holds = false;

  for (std::uint64_t n : ns) {
    const double edge = std::pow(double(n), -0.5 + delta0) * lw;
    double dev = 0.0;
    auto probe = [&](const std::vector<double>& kd, double value) {
      if (!(value > 0.0)) {
        dev = std::numeric_limits<double>::infinity();
        return;
      }
      const double expo = double(n) * std::log(value) +
                          2.0 * M_PI * M_PI * double(n) *
                              sigma_l_sq(gamma, kd, spec.geom, spec.W);
      dev = std::max(dev, std::abs(std::expm1(expo)));
    };
    for_each_point(spec.geom, [&](std::int64_t idx, const LatticePoint& k) {
      double n2 = 0.0;
      for (auto c : k) n2 += double(c) * double(c);
      if (std::sqrt(n2) > edge) return;
      std::vector<double> kd(k.begin(), k.end());
      probe(kd, s.values[std::size_t(idx)]);
    });
    for (std::int64_t axis = 0; axis < spec.geom.d; ++axis) {
      std::vector<double> kd(std::size_t(spec.geom.d), 0.0);
      kd[std::size_t(axis)] = edge;
      probe(kd, symbol_at(spec, p1, kd));
    }
    rep.steps.push_back(n);
    rep.deviations.push_back(dev);
  }
  return rep;
}

inline GaussianSymbolReport gaussian_symbol_check(const WalkSpec& spec, double delta,
                                                  std::uint64_t n, double delta0) {
  return gaussian_symbol_check(spec, delta, std::vector<std::uint64_t>{n, 2 * n, 4 * n},
                               delta0);
}

}  // namespace torwalk
