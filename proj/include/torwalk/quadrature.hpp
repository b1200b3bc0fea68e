#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "torwalk/errors.hpp"

namespace torwalk {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1].
inline constexpr std::array<double, 8> kGK15Nodes = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993944,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126};
inline constexpr std::array<double, 8> kGK15Weights = {
    0.2094821410847278,
    0.2044329400752989,
    0.1903505780647854,
    0.1690047266392679,
    0.1406532597155259,
    0.1047900103222502,
    0.0630920926299785,
    0.0229353220105292};
// Embedded Gauss-7 weights, indexed like the Kronrod nodes (zero where the
// node is Kronrod-only).
inline constexpr std::array<double, 8> kG7Weights = {
    0.4179591836734694,
    0.0,
    0.3818300505051189,
    0.0,
    0.2797053914892767,
    0.0,
    0.1294849661688697,
    0.0};

// Gauss-Legendre 15 on [-1, 1].
inline constexpr std::array<double, 8> kGL15Nodes = {
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601700,
    0.8482065834104272,
    0.9372733924007059,
    0.9879925180204854};
inline constexpr std::array<double, 8> kGL15Weights = {
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173};

template <class F>
inline QuadResult gauss_kronrod_15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double gk = 0.0, g = 0.0;
  {
    const double fv = f(c);
    gk += kGK15Weights[0] * fv;
    g += kG7Weights[0] * fv;
  }
  for (int i = 1; i < 8; ++i) {
    const double f1 = f(c - h * kGK15Nodes[i]);
    const double f2 = f(c + h * kGK15Nodes[i]);
    gk += kGK15Weights[i] * (f1 + f2);
    g += kG7Weights[i] * (f1 + f2);
  }
  QuadResult r;
  r.value = gk * h;
  const double diff = std::abs(gk - g) * std::abs(h);
  r.error = std::pow(200.0 * diff, 1.5);
  if (!(r.error < diff)) r.error = diff;  // keep the conservative bound small
  r.error = std::max(r.error, std::abs(r.value) * 1e-15);
  return r;
}

template <class F>
inline double gauss_legendre_15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = kGL15Weights[0] * f(c);
  for (int i = 1; i < 8; ++i)
    s += kGL15Weights[i] * (f(c - h * kGL15Nodes[i]) + f(c + h * kGL15Nodes[i]));
  return s * h;
}

}  // namespace detail

// Adaptive Gauss-Kronrod bisection to an absolute tolerance.
template <class F>
inline QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                     int max_depth = 48) {
  struct Seg {
    double a, b;
    QuadResult r;
    int depth;
  };
  std::vector<Seg> stack;
  QuadResult whole = detail::gauss_kronrod_15(f, a, b);
  stack.push_back({a, b, whole, 0});
  double value = 0.0, err = 0.0;
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    const double local_tol = abs_tol * (s.b - s.a) / (b - a);
    if (s.r.error <= std::max(local_tol, 1e-300) || s.depth >= max_depth) {
      value += s.r.value;
      err += s.r.error;
      continue;
    }
    const double m = 0.5 * (s.a + s.b);
    stack.push_back({s.a, m, detail::gauss_kronrod_15(f, s.a, m), s.depth + 1});
    stack.push_back({m, s.b, detail::gauss_kronrod_15(f, m, s.b), s.depth + 1});
  }
  return {value, err};
}

// Iterated-averaging (Euler) acceleration for an alternating series.
// Feed terms in order; estimate() converges to the infinite sum well before
// the raw terms are small.
class EulerAccumulator {
 public:
  void add(double term) {
    if (n_ == 0) {
      w_.assign(1, term);
      sum_ = 0.5 * term;
      n_ = 1;
      return;
    }
    double tmp = w_[0];
    w_[0] = term;
    for (std::size_t j = 0; j + 1 < w_.size(); ++j) {
      double dum = w_[j + 1];
      w_[j + 1] = 0.5 * (w_[j] + tmp);
      tmp = dum;
    }
    double next = 0.5 * (w_.back() + tmp);
    if (std::abs(next) <= std::abs(w_.back())) {
      sum_ += 0.5 * next;
      w_.push_back(next);
    } else {
      sum_ += next;
    }
    ++n_;
  }
  double estimate() const { return sum_; }
  std::size_t terms() const { return n_; }

 private:
  std::vector<double> w_;
  double sum_ = 0.0;
  std::size_t n_ = 0;
};

enum class Oscillator { Cosine, Sine, BesselJ };

namespace detail {

// m-th positive zero of the oscillator argument: cos/sin zeros are exact,
// Bessel zeros use McMahon's expansion (plenty for panel boundaries).
inline double oscillator_zero(Oscillator osc, double nu, std::int64_t m) {
  switch (osc) {
    case Oscillator::Cosine:
      return (double(m) - 0.5) * M_PI;
    case Oscillator::Sine:
      return double(m) * M_PI;
    case Oscillator::BesselJ: {
      const double beta = (double(m) + 0.5 * nu - 0.25) * M_PI;
      const double mu = 4.0 * nu * nu;
      return beta - (mu - 1.0) / (8.0 * beta) -
             4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * std::pow(8.0 * beta, 3));
    }
  }
  return 0.0;
}

inline double oscillator_eval(Oscillator osc, double nu, double u) {
  switch (osc) {
    case Oscillator::Cosine:
      return std::cos(u);
    case Oscillator::Sine:
      return std::sin(u);
    case Oscillator::BesselJ:
      return std::cyl_bessel_j(nu, u);
  }
  return 0.0;
}

}  // namespace detail

// ∫_0^∞ h(s)·osc(r·s) ds for a smooth envelope h that decays to a negligible
// level by s_max.  Direct adaptive quadrature when only a few oscillations
// fit in [0, s_max]; otherwise panel integration between consecutive
// oscillator zeros with Euler acceleration of the alternating panel sums.
template <class H>
inline QuadResult fourier_integral(H&& h, Oscillator osc, double nu, double r,
                                   double s_max, double abs_tol,
                                   std::int64_t max_panels = 2'000'000) {
  if (!(r > 0.0)) throw ConfigError("fourier_integral: oscillation rate must be > 0");
  auto integrand = [&](double s) {
    return h(s) * detail::oscillator_eval(osc, nu, r * s);
  };
  if (r * s_max < 8.0 * M_PI)
    return integrate_adaptive(integrand, 0.0, s_max, abs_tol);

  // Head: up to the first zero, adaptively (the envelope may have an
  // algebraic kink at s = 0 for alpha < 1).
  const double z1 = detail::oscillator_zero(osc, nu, 1) / r;
  QuadResult head = integrate_adaptive(integrand, 0.0, std::min(z1, s_max),
                                       0.25 * abs_tol);
  double value = head.value;
  double err = head.error;

  EulerAccumulator acc;
  double prev_est = 0.0;
  int stable = 0;
  std::int64_t m = 1;
  for (; m < max_panels; ++m) {
    const double a = detail::oscillator_zero(osc, nu, m) / r;
    const double b = detail::oscillator_zero(osc, nu, m + 1) / r;
    if (a >= s_max) break;
    acc.add(detail::gauss_legendre_15(integrand, a, std::min(b, s_max)));
    const double est = acc.estimate();
    if (m > 8 && std::abs(est - prev_est) < 0.25 * abs_tol) {
      if (++stable >= 3) break;
    } else {
      stable = 0;
    }
    prev_est = est;
  }
  if (m >= max_panels)
    throw AccuracyError("fourier_integral: panel cap reached before convergence");
  value += acc.estimate();
  err += 0.5 * abs_tol;
  return {value, err};
}

}  // namespace torwalk
