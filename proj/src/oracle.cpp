/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vgmom/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "vgmom/detail/numeric.hpp"
#include "vgmom/errors.hpp"
#include "vgmom/rng.hpp"
#include "vgmom/specfun.hpp"

namespace vgmom::oracle {

namespace {

constexpr double kLn2 = 0.6931471805599453094;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEulerGamma = 0.57721566490153286061;

// log of t^{power} * weight(beta t) * K_nu(alpha t) on the positive
// half-line, where weight is cosh (even part) or |sinh| (odd part).
// Evaluated from ln t so the substitution path can reach arbitrarily far
// below double range; a limiting form takes over once K's small-argument
// behaviour has converged to machine precision.
struct HalfLineIntegrand {
  double nu;
  double alpha;
  double beta;
  double power;
  bool odd;

  double log_at(double log_t) const {
    double abs_nu = std::fabs(nu);
    if (log_t < -600.0) {
      double w = odd ? std::log(std::fabs(beta)) + log_t : 0.0;
      if (abs_nu > 0.0) {
        return (power - abs_nu) * log_t + w + (abs_nu - 1.0) * kLn2 +
               specfun::log_gamma(abs_nu) - abs_nu * std::log(alpha);
      }
      double k0 = -(log_t + std::log(alpha)) + kLn2 - kEulerGamma;
      return power * log_t + w + std::log(k0);
    }
    double t = std::exp(log_t);
    double w = odd ? detail::log_abs_sinh(beta * t)
                   : detail::log_cosh(beta * t);
    return power * log_t + w + specfun::bessel_k(nu, alpha * t).log_abs;
  }
};

// Peak scan and 60-nat truncation, then adaptive integration over (0, T],
// switching to the de-singularizing power substitution when the endpoint
// exponent lies in (-1, 0).
QuadratureResult integrate_half_line(const HalfLineIntegrand& f, double decay,
                                     const QuadratureSettings& settings) {
  double t_stationary = (f.power - 0.5) / decay;
  std::vector<double> probes = {0.5 / f.alpha, 1.0 / f.alpha, 2.0 / f.alpha,
                                1.0 / decay};
  if (t_stationary > 0.0) {
    probes.push_back(0.5 * t_stationary);
    probes.push_back(t_stationary);
    probes.push_back(2.0 * t_stationary);
  }
  double peak_log = kNegInf;
  double peak_t = probes.front();
  double t_hi = 0.0;
  for (double t : probes) {
    if (!(t > 0.0)) continue;
    double l = f.log_at(std::log(t));
    if (l > peak_log) {
      peak_log = l;
      peak_t = t;
    }
    t_hi = std::max(t_hi, t);
  }
  double upper = t_hi;
  for (int i = 0; i < 400; ++i) {
    upper *= 2.0;
    double l = f.log_at(std::log(upper));
    if (l > peak_log) {
      peak_log = l;
      peak_t = upper;
      continue;
    }
    if (l < peak_log - 60.0) break;
  }

  std::vector<double> seeds = {0.125 * peak_t, 0.5 * peak_t, 2.0 * peak_t};
  double e0 = f.power - std::fabs(f.nu);
  if (e0 > -1.0 && e0 < 0.0) {
    // t = u^p with p = 1/(1 + e0) removes the t^{e0} endpoint factor;
    // the transformed integrand is p * t^{|nu|} weight K at t = u^p.
    double p = 1.0 / (1.0 + e0);
    HalfLineIntegrand g = f;
    g.power = std::fabs(f.nu);
    double log_p = std::log(p);
    auto log_fu = [g, p, log_p](double u) {
      return log_p + g.log_at(p * std::log(u));
    };
    double u_upper = std::exp(std::log(upper) / p);
    std::vector<double> u_seeds;
    for (double s : seeds)
      if (s > 0.0) u_seeds.push_back(std::exp(std::log(s) / p));
    return integrate_log(log_fu, 0.0, u_upper, settings, u_seeds);
  }
  auto log_ft = [&f](double t) { return f.log_at(std::log(t)); };
  return integrate_log(log_ft, 0.0, upper, settings, seeds);
}

long integer_order(double k, const char* op) {
  double n = std::nearbyint(k);
  if (n != k || k < 0.0)
    throw ValidationError("k", std::string(op) +
                                   ": raw moments need integer k >= 0, got " +
                                   std::to_string(k));
  return static_cast<long>(n);
}

void require_centered(const vg::VGParams& params, const char* op) {
  if (params.mu() != 0.0)
    throw ValidationError("mu", std::string(op) + ": requires mu = 0");
}

void check_order(const vg::VGParams& params, double k, vg::MomentKind kind,
                 const char* op) {
  if (kind == vg::MomentKind::raw) {
    integer_order(k, op);
  } else if (!(k > params.k_star())) {
    throw ValidationError("k", std::string(op) +
                                   ": absolute moment requires k > k_star = " +
                                   std::to_string(params.k_star()));
  }
}

double ipow(double z, long k) {
  double r = 1.0, b = z;
  for (; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

}  // namespace

void MonteCarloSettings::validate() const {
  if (sample_count < 1)
    throw ValidationError("sample_count",
                          "MonteCarloSettings: sample_count must be positive");
  if (batch_count < 2)
    throw ValidationError("batch_count",
                          "MonteCarloSettings: batch_count must be >= 2 to "
                          "estimate a standard error");
  if (sample_count < batch_count)
    throw ValidationError("sample_count",
                          "MonteCarloSettings: sample_count must be >= "
                          "batch_count");
}

QuadratureResult moment_by_quadrature(const vg::VGParams& params, double k,
                                      vg::MomentKind kind,
                                      const QuadratureSettings& settings) {
  require_centered(params, "moment_by_quadrature");
  check_order(params, k, kind, "moment_by_quadrature");
  bool odd = false;
  if (kind == vg::MomentKind::raw)
    odd = integer_order(k, "moment_by_quadrature") % 2 == 1;
  if (odd && params.beta() == 0.0) return {SignedLog::zero(), 0.0, 0};

  HalfLineIntegrand f{params.nu(), params.alpha(), params.beta(),
                      params.nu() + k, odd};
  double decay = params.alpha() - std::fabs(params.beta());
  double log_factor = kLn2 + params.log_norm_const();
  try {
    QuadratureResult res = integrate_half_line(f, decay, settings);
    if (res.value.is_zero()) return res;
    int sign = (odd && params.beta() < 0.0) ? -1 : 1;
    res.value = SignedLog::with_sign(sign, res.value.log_abs + log_factor);
    return res;
  } catch (const ToleranceError& e) {
    int sign = (odd && params.beta() < 0.0) ? -1 : 1;
    throw ToleranceError(std::string("moment_by_quadrature: ") + e.what(),
                         e.achieved_rel_error(), sign,
                         e.value_log_abs() + log_factor);
  }
}

QuadratureResult bessel_moment_integral_by_quadrature(
    double r, double nu, const QuadratureSettings& settings) {
  if (!(r > std::fabs(nu)))
    throw ValidationError("r",
                          "bessel_moment_integral_by_quadrature: requires "
                          "r > |nu|");
  HalfLineIntegrand f{nu, 1.0, 0.0, r - 1.0, false};
  return integrate_half_line(f, 1.0, settings);
}

SignedLog moment_by_direct_series(const vg::VGParams& params, double k,
                                  vg::MomentKind kind) {
  require_centered(params, "moment_by_direct_series");
  check_order(params, k, kind, "moment_by_direct_series");
  double nu = params.nu(), alpha = params.alpha(), beta = params.beta();
  if (!(std::fabs(beta / alpha) <= 0.95))
    throw ValidationError("beta",
                          "moment_by_direct_series: requires |beta/alpha| <= "
                          "0.95 (series in beta^2 converges too slowly)");
  bool odd = false;
  if (kind == vg::MomentKind::raw)
    odd = integer_order(k, "moment_by_direct_series") % 2 == 1;
  if (odd && beta == 0.0) return SignedLog::zero();

  constexpr long kTermBudget = 100000;
  double log_2m = kLn2 + params.log_norm_const();
  double log_b2 = (beta == 0.0) ? kNegInf : 2.0 * std::log(std::fabs(beta));
  double log_alpha = std::log(alpha);
  double half_kp1 = 0.5 * (k + 1.0);

  double log_term, log_sum;
  if (!odd) {
    // 2M sum_j beta^{2j}/(2j)! 2^{nu+k+2j-1}/alpha^{nu+k+2j+1}
    //        Gamma(nu+j+(k+1)/2) Gamma(j+(k+1)/2)
    log_term = log_2m + (nu + k - 1.0) * kLn2 - (nu + k + 1.0) * log_alpha +
               specfun::log_gamma(nu + half_kp1) +
               specfun::log_gamma(half_kp1);
  } else {
    // Odd-offset analogue: 2M sum_j beta^{2j+1}/(2j+1)!
    //   2^{nu+k+2j}/alpha^{nu+k+2j+2} Gamma(nu+j+k/2+1) Gamma(j+k/2+1)
    log_term = log_2m + std::log(std::fabs(beta)) + (nu + k) * kLn2 -
               (nu + k + 2.0) * log_alpha +
               specfun::log_gamma(nu + 0.5 * k + 1.0) +
               specfun::log_gamma(0.5 * k + 1.0);
  }
  log_sum = log_term;
  int small_streak = 0;
  for (long j = 0; j < kTermBudget; ++j) {
    double dj = static_cast<double>(j);
    double step;
    if (!odd) {
      step = log_b2 + 2.0 * kLn2 - 2.0 * log_alpha +
             std::log(nu + dj + half_kp1) + std::log(dj + half_kp1) -
             std::log(2.0 * dj + 1.0) - std::log(2.0 * dj + 2.0);
    } else {
      step = log_b2 + 2.0 * kLn2 - 2.0 * log_alpha +
             std::log(nu + dj + 0.5 * k + 1.0) + std::log(dj + 0.5 * k + 1.0) -
             std::log(2.0 * dj + 2.0) - std::log(2.0 * dj + 3.0);
    }
    log_term += step;
    log_sum = detail::log_add(log_sum, log_term);
    if (log_term < log_sum - 36.85) {  // ln(1e-16)
      if (++small_streak >= 3) {
        int sign = (odd && beta < 0.0) ? -1 : 1;
        return SignedLog::with_sign(sign, log_sum);
      }
    } else {
      small_streak = 0;
    }
  }
  throw ConvergenceError(
      "moment_by_direct_series: series did not converge within " +
          std::to_string(kTermBudget) + " terms",
      kTermBudget);
}

void sample_product_mean(const normprod::ProductNormalParams& p,
                         std::uint64_t seed, std::uint64_t stream,
                         std::span<double> out) {
  CounterRng rng(seed, stream);
  const double su = p.sigma_u();
  const double rv = p.rho() * p.sigma_v();
  const double cv = p.sigma_v() * std::sqrt(1.0 - p.rho() * p.rho());
  const long n = p.n();
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& z : out) {
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
      double g1 = rng.next_normal();
      double g2 = rng.next_normal();
      acc += (su * g1) * (rv * g1 + cv * g2);
    }
    z = acc * inv_n;
  }
}

namespace {

// Shared batch-mean estimator: `fill` produces the samples of one batch,
// `transform` maps a sample to the quantity being averaged.
template <typename Fill, typename Transform>
MonteCarloResult batch_mean_estimate(const MonteCarloSettings& settings,
                                     Fill fill, Transform transform) {
  settings.validate();
  const int batches = settings.batch_count;
  const long long base = settings.sample_count / batches;
  const long long extra = settings.sample_count % batches;
  if (base == 0)
    throw NumericalError("moment_by_monte_carlo: degenerate (empty) batch");

  int threads = settings.threads > 0
                    ? settings.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, batches);

  std::vector<double> means(batches, 0.0);
  auto worker = [&](int first) {
    std::vector<double> buf;
    for (int b = first; b < batches; b += threads) {
      long long count = base + (b < extra ? 1 : 0);
      buf.resize(static_cast<std::size_t>(count));
      fill(static_cast<std::uint64_t>(b), std::span<double>(buf));
      detail::KahanSum acc;
      for (double z : buf) acc.add(transform(z));
      means[b] = acc.sum / static_cast<double>(count);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::future<void>> futures;
    futures.reserve(threads);
    for (int t = 0; t < threads; ++t)
      futures.push_back(std::async(std::launch::async, worker, t));
    for (auto& f : futures) f.get();
  }

  detail::KahanSum total;
  for (double m : means) total.add(m);
  double point = total.sum / batches;
  detail::KahanSum sq;
  for (double m : means) sq.add((m - point) * (m - point));
  double se = std::sqrt(sq.sum / (batches - 1.0) / batches);
  return {SignedLog::from_value(point), se};
}

}  // namespace

MonteCarloResult moment_by_monte_carlo(const normprod::ProductNormalParams& p,
                                       double k, vg::MomentKind kind,
                                       const MonteCarloSettings& settings) {
  if (!(k >= 0.0))
    throw ValidationError("k", "moment_by_monte_carlo: requires k >= 0");
  if (k == 0.0) return {SignedLog::one(), 0.0};
  auto fill = [&p, &settings](std::uint64_t batch, std::span<double> out) {
    sample_product_mean(p, settings.seed, batch, out);
  };
  if (kind == vg::MomentKind::raw) {
    long ki = integer_order(k, "moment_by_monte_carlo");
    return batch_mean_estimate(settings, fill,
                               [ki](double z) { return ipow(z, ki); });
  }
  return batch_mean_estimate(settings, fill, [k](double z) {
    return std::pow(std::fabs(z), k);
  });
}

MonteCarloResult moment_by_monte_carlo(const vg::VGParams& params, double k,
                                       vg::MomentKind kind,
                                       const MonteCarloSettings& settings) {
  require_centered(params, "moment_by_monte_carlo");
  if (!(k >= 0.0))
    throw ValidationError("k", "moment_by_monte_carlo: requires k >= 0");
  check_order(params, k, kind, "moment_by_monte_carlo");
  if (k == 0.0) return {SignedLog::one(), 0.0};
  const double shape = params.nu() + 0.5;
  const double rate =
      0.5 * (params.alpha() - params.beta()) * (params.alpha() + params.beta());
  const double beta = params.beta();
  auto fill = [&](std::uint64_t batch, std::span<double> out) {
    CounterRng rng(settings.seed, batch);
    for (double& z : out) {
      double w = rng.next_gamma(shape, rate);
      z = beta * w + std::sqrt(w) * rng.next_normal();
    }
  };
  if (kind == vg::MomentKind::raw) {
    long ki = integer_order(k, "moment_by_monte_carlo");
    return batch_mean_estimate(settings, fill,
                               [ki](double z) { return ipow(z, ki); });
  }
  return batch_mean_estimate(settings, fill, [k](double z) {
    return std::pow(std::fabs(z), k);
  });
}

}  // namespace vgmom::oracle
