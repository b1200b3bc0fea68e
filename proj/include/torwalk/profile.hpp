#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torwalk/errors.hpp"
#include "torwalk/quadrature.hpp"

namespace torwalk {

enum class ProfileKind { Hypercube, Ball, Gaussian, PowerLaw, Custom };

inline std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::Hypercube: return "hypercube";
    case ProfileKind::Ball: return "ball";
    case ProfileKind::Gaussian: return "gaussian";
    case ProfileKind::PowerLaw: return "power_law";
    case ProfileKind::Custom: return "custom";
  }
  return "?";
}

// Volume of the unit l^2 ball in R^d.
inline double unit_ball_volume(int d) {
  return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

// Symmetric probability density f on R^d together with the hypothesis
// metadata the limit theorems consume.
struct Profile {
  ProfileKind kind = ProfileKind::Custom;
  int d = 1;
  double r = 1.0;                      // radius for hypercube / ball
  std::optional<double> tail_index;    // alpha, present iff f has the
                                       // (||x|| v 1)^(-d-alpha) envelope
  std::optional<Eigen::MatrixXd> covariance;
  bool has_third_moment = false;
  std::optional<std::pair<double, double>> envelope_constants;  // c1 <= c2
  std::function<double(const std::vector<double>&)> density;    // Custom only

  double normalizer = 0.0;  // closed-form constant for the built-in kinds

  double operator()(const std::vector<double>& x) const { return evaluate(*this, x); }

  friend double evaluate(const Profile& p, const std::vector<double>& x) {
    if (int(x.size()) != p.d)
      throw ConfigError("profile evaluate: point has dimension " +
                        std::to_string(x.size()) + ", profile has d = " +
                        std::to_string(p.d));
    switch (p.kind) {
      case ProfileKind::Hypercube: {
        for (double xi : x)
          if (std::abs(xi) > p.r) return 0.0;
        return p.normalizer;
      }
      case ProfileKind::Ball: {
        double n2 = 0.0;
        for (double xi : x) n2 += xi * xi;
        return n2 <= p.r * p.r ? p.normalizer : 0.0;
      }
      case ProfileKind::Gaussian: {
        double n2 = 0.0;
        for (double xi : x) n2 += xi * xi;
        return p.normalizer * std::exp(-0.5 * n2);
      }
      case ProfileKind::PowerLaw: {
        double n2 = 0.0;
        for (double xi : x) n2 += xi * xi;
        const double rad = std::max(std::sqrt(n2), 1.0);
        return p.normalizer * std::pow(rad, -(p.d + *p.tail_index));
      }
      case ProfileKind::Custom:
        return p.density(x);
    }
    return 0.0;
  }
};

// f(x) = prod_i 1/(2r) over the cube {|x_i| <= r}.
inline Profile make_hypercube(double r, int d) {
  if (!(r > 0.0)) throw ConfigError("hypercube radius must be positive");
  Profile p;
  p.kind = ProfileKind::Hypercube;
  p.d = d;
  p.r = r;
  p.normalizer = std::pow(0.5 / r, d);
  p.covariance = Eigen::MatrixXd::Identity(d, d) * (r * r / 3.0);
  p.has_third_moment = true;
  return p;
}

// Uniform density on the l^2 ball of radius r.
inline Profile make_ball(double r, int d) {
  if (!(r > 0.0)) throw ConfigError("ball radius must be positive");
  Profile p;
  p.kind = ProfileKind::Ball;
  p.d = d;
  p.r = r;
  p.normalizer = std::tgamma(0.5 * d + 1.0) / (std::pow(M_PI, 0.5 * d) * std::pow(r, d));
  p.covariance = Eigen::MatrixXd::Identity(d, d) * (r * r / double(d + 2));
  p.has_third_moment = true;
  return p;
}

// Standard normal density.
inline Profile make_gaussian(int d) {
  Profile p;
  p.kind = ProfileKind::Gaussian;
  p.d = d;
  p.normalizer = std::pow(2.0 * M_PI, -0.5 * d);
  p.covariance = Eigen::MatrixXd::Identity(d, d);
  p.has_third_moment = true;
  return p;
}

// The canonical heavy-tail representative: f(x) = c_{d,alpha} (||x||_2 v 1)^(-d-alpha)
// with c chosen so the density integrates to one:
//   1/c = V_d + S_{d-1}/alpha = V_d (1 + d/alpha).
inline Profile make_power_law(double alpha, int d) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ConfigError("power_law tail index must lie in (0, 2)");
  Profile p;
  p.kind = ProfileKind::PowerLaw;
  p.d = d;
  p.tail_index = alpha;
  p.normalizer = alpha / (unit_ball_volume(d) * (alpha + d));
  p.has_third_moment = false;
  p.envelope_constants = {p.normalizer, p.normalizer};
  return p;
}

inline Profile make_custom(int d, std::function<double(const std::vector<double>&)> f,
                           std::optional<double> tail_index = std::nullopt,
                           std::optional<Eigen::MatrixXd> covariance = std::nullopt,
                           bool has_third_moment = false) {
  Profile p;
  p.kind = ProfileKind::Custom;
  p.d = d;
  p.density = std::move(f);
  p.tail_index = tail_index;
  p.covariance = std::move(covariance);
  p.has_third_moment = has_third_moment;
  return p;
}

// ---------------------------------------------------------------------------
// Hypothesis validation

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

// ∫ f over R^d by radial reduction (radial kinds) or 1-D product (hypercube).
inline double numeric_mass(const Profile& p) {
  switch (p.kind) {
    case ProfileKind::Hypercube: {
      auto f1 = [&](double x) { return std::abs(x) <= p.r ? 0.5 / p.r : 0.0; };
      double m = integrate_adaptive(f1, -p.r, p.r, 1e-12).value;
      return std::pow(m, p.d);
    }
    case ProfileKind::Ball:
    case ProfileKind::Gaussian:
    case ProfileKind::PowerLaw: {
      auto radial = [&](double rad) {
        std::vector<double> x(p.d, 0.0);
        x[0] = rad;
        return evaluate(p, x) * std::pow(rad, p.d - 1);
      };
      const double surf = double(p.d) * unit_ball_volume(p.d);
      double inner = integrate_adaptive(radial, 0.0, 1.0, 1e-12).value;
      double mid, tail;
      if (p.kind == ProfileKind::Ball) {
        mid = integrate_adaptive(radial, 1.0, std::max(1.0, p.r), 1e-12).value;
        tail = 0.0;
      } else if (p.kind == ProfileKind::Gaussian) {
        mid = integrate_adaptive(radial, 1.0, 45.0, 1e-13).value;
        tail = 0.0;
      } else {
        const double alpha = *p.tail_index;
        const double R = 1e4;
        mid = integrate_adaptive(radial, 1.0, R, 1e-12).value;
        // exact power tail beyond R
        tail = p.normalizer * std::pow(R, -alpha) / alpha;
      }
      return surf * (inner + mid) + surf * tail;
    }
    case ProfileKind::Custom:
      return std::numeric_limits<double>::quiet_NaN();
  }
  return 0.0;
}

}  // namespace detail

// Checks the Theorem 1.3/1.4-style hypotheses.  Failures are entries, not
// exceptions.
inline ValidationReport validate(const Profile& p) {
  ValidationReport rep;

  // symmetry on a deterministic sample grid
  {
    bool ok = true;
    double worst = 0.0;
    std::uint64_t s = 0x9e3779b97f4a7c15ull;
    auto next = [&]() {
      s ^= s << 13; s ^= s >> 7; s ^= s << 17;
      return double(s % 20001) / 10000.0 - 1.0;  // [-1, 1]
    };
    for (int trial = 0; trial < 64; ++trial) {
      std::vector<double> x(p.d), nx(p.d);
      const double scale = std::pow(10.0, trial % 4);  // probe several shells
      for (int i = 0; i < p.d; ++i) {
        x[i] = next() * scale;
        nx[i] = -x[i];
      }
      const double diff = std::abs(evaluate(p, x) - evaluate(p, nx));
      worst = std::max(worst, diff);
      if (diff != 0.0 && diff > 1e-12 * std::max(1.0, std::abs(evaluate(p, x))))
        ok = false;
    }
    rep.checks.push_back({"symmetry", ok, "max |f(x)-f(-x)| = " + std::to_string(worst)});
  }

  // unit mass (built-in kinds only; custom profiles declare their own)
  if (p.kind != ProfileKind::Custom) {
    const double mass = detail::numeric_mass(p);
    const bool ok = std::abs(mass - 1.0) <= 1e-8;
    rep.checks.push_back({"normalization", ok, "integral = " + std::to_string(mass)});
  }

  // heavy-tail envelope
  if (p.tail_index) {
    const double alpha = *p.tail_index;
    double c_lo = std::numeric_limits<double>::infinity(), c_hi = 0.0;
    for (double rad = 0.0; rad <= 1000.0; rad += rad < 2.0 ? 0.125 : rad * 0.25) {
      std::vector<double> x(p.d, 0.0);
      x[0] = rad;
      const double env = evaluate(p, x) * std::pow(std::max(rad, 1.0), p.d + alpha);
      c_lo = std::min(c_lo, env);
      c_hi = std::max(c_hi, env);
    }
    const bool ok = c_lo > 0.0 && std::isfinite(c_hi);
    rep.checks.push_back({"tail_envelope", ok,
                          "c1 = " + std::to_string(c_lo) + ", c2 = " + std::to_string(c_hi)});
  }

  // covariance positive definite
  if (p.covariance) {
    const auto& G = *p.covariance;
    bool ok = G.rows() == p.d && G.cols() == p.d && G.isApprox(G.transpose(), 1e-12);
    double lam_min = 0.0;
    if (ok) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
      lam_min = es.eigenvalues().minCoeff();
      ok = lam_min > 0.0;
    }
    rep.checks.push_back({"covariance_spd", ok, "lambda_min = " + std::to_string(lam_min)});
  }

  // third-moment flag consistency: finite for the compact / gaussian kinds,
  // divergent for every alpha < 2 power tail
  {
    bool expected;
    switch (p.kind) {
      case ProfileKind::Hypercube:
      case ProfileKind::Ball:
      case ProfileKind::Gaussian:
        expected = true;
        break;
      case ProfileKind::PowerLaw:
        expected = false;
        break;
      case ProfileKind::Custom:
        expected = p.has_third_moment;
        break;
    }
    rep.checks.push_back({"third_moment_flag", p.has_third_moment == expected,
                          p.has_third_moment ? "declared finite" : "declared infinite"});
  }

  // continuity point x0 = 0 with f(x0) > 0 (built-ins are continuous and
  // positive there)
  {
    std::vector<double> origin(p.d, 0.0);
    const double f0 = evaluate(p, origin);
    rep.checks.push_back({"continuity_point", f0 > 0.0,
                          "x0 = 0, f(x0) = " + std::to_string(f0)});
  }

  return rep;
}

}  // namespace torwalk
