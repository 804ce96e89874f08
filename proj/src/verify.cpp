/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "vgmom/errors.hpp"
#include "vgmom/oracle.hpp"
#include "vgmom/rng.hpp"
#include "vgmom/specfun.hpp"

namespace vgmom::oracle {

namespace {

constexpr double kLn2 = 0.6931471805599453094;
constexpr double kLnPi = 1.1447298858494001741;

std::string fmt(const char* format, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

MethodResult run_method(const VerifyCase& c, vg::Method method,
                        const std::string& detail) {
  MethodResult r;
  r.method = method;
  r.detail = detail;
  try {
    if (std::holds_alternative<vg::VGParams>(c.params)) {
      const auto& p = std::get<vg::VGParams>(c.params);
      switch (method) {
        case vg::Method::closed_form:
          r.value = (c.kind == vg::MomentKind::raw)
                        ? vg::raw_moment(p, std::lround(c.k))
                        : vg::abs_moment(p, c.k);
          break;
        case vg::Method::series_expansion:
          r.value = (c.kind == vg::MomentKind::raw)
                        ? vg::raw_moment_expansion(p, std::lround(c.k), 4)
                        : vg::abs_moment_expansion(p, c.k, 4);
          break;
        case vg::Method::oracle_quadrature: {
          QuadratureResult q =
              moment_by_quadrature(p, c.k, c.kind, c.quadrature);
          r.value = q.value;
          r.rel_uncertainty = q.rel_error;
          break;
        }
        case vg::Method::oracle_direct_series:
          r.value = moment_by_direct_series(p, c.k, c.kind);
          break;
        case vg::Method::oracle_monte_carlo: {
          MonteCarloResult m =
              moment_by_monte_carlo(p, c.k, c.kind, c.monte_carlo);
          r.value = m.value;
          r.standard_error = m.standard_error;
          r.is_monte_carlo = true;
          break;
        }
      }
    } else {
      const auto& p = std::get<normprod::ProductNormalParams>(c.params);
      switch (method) {
        case vg::Method::closed_form:
          if (detail == "vgrep") {
            r.value = (c.kind == vg::MomentKind::raw)
                          ? normprod::product_raw_moment_via_vg(
                                p, std::lround(c.k))
                          : normprod::product_abs_moment_via_vg(p, c.k);
          } else {
            r.value = (c.kind == vg::MomentKind::raw)
                          ? normprod::product_raw_moment(p, std::lround(c.k))
                          : normprod::product_abs_moment(p, c.k);
          }
          break;
        case vg::Method::series_expansion: {
          vg::VGParams v = normprod::vg_params_of_product_mean(p);
          r.value = (c.kind == vg::MomentKind::raw)
                        ? vg::raw_moment_expansion(v, std::lround(c.k), 4)
                        : vg::abs_moment_expansion(v, c.k, 4);
          break;
        }
        case vg::Method::oracle_quadrature: {
          vg::VGParams v = normprod::vg_params_of_product_mean(p);
          QuadratureResult q =
              moment_by_quadrature(v, c.k, c.kind, c.quadrature);
          r.value = q.value;
          r.rel_uncertainty = q.rel_error;
          break;
        }
        case vg::Method::oracle_direct_series: {
          vg::VGParams v = normprod::vg_params_of_product_mean(p);
          r.value = moment_by_direct_series(v, c.k, c.kind);
          break;
        }
        case vg::Method::oracle_monte_carlo: {
          MonteCarloResult m =
              moment_by_monte_carlo(p, c.k, c.kind, c.monte_carlo);
          r.value = m.value;
          r.standard_error = m.standard_error;
          r.is_monte_carlo = true;
          break;
        }
      }
    }
  } catch (const Error& e) {
    r.ok = false;
    r.error = e.what();
  }
  return r;
}

}  // namespace

std::vector<VerificationReport> verify(const std::vector<VerifyCase>& cases) {
  std::vector<VerificationReport> reports;
  reports.reserve(cases.size());
  for (const VerifyCase& c : cases) {
    VerificationReport rep;
    rep.label = c.label;
    rep.k = c.k;
    rep.kind = c.kind;
    rep.tolerance = c.tolerance;
    for (vg::Method m : c.methods) {
      rep.results.push_back(run_method(c, m, ""));
      // Product-moment queries carry the representation-mapped closed form
      // as a permanent second route.
      if (m == vg::Method::closed_form &&
          std::holds_alternative<normprod::ProductNormalParams>(c.params))
        rep.results.push_back(run_method(c, m, "vgrep"));
    }
    if (c.expected) {
      MethodResult ref;
      ref.method = vg::Method::closed_form;
      ref.detail = "reference";
      ref.value = *c.expected;
      rep.results.push_back(ref);
    }

    bool all_ok = true;
    for (const MethodResult& r : rep.results) all_ok = all_ok && r.ok;
    for (std::size_t i = 0; i < rep.results.size(); ++i) {
      for (std::size_t j = i + 1; j < rep.results.size(); ++j) {
        const MethodResult& a = rep.results[i];
        const MethodResult& b = rep.results[j];
        if (!a.ok || !b.ok) continue;
        if (a.is_monte_carlo || b.is_monte_carlo) {
          double se = std::hypot(a.standard_error, b.standard_error);
          double diff = std::fabs(a.value.value() - b.value.value());
          if (diff == 0.0) continue;
          double sigma = (se > 0.0)
                             ? diff / se
                             : std::numeric_limits<double>::infinity();
          rep.max_mc_sigma = std::max(rep.max_mc_sigma, sigma);
        } else {
          rep.max_pairwise_rel_dev = std::max(
              rep.max_pairwise_rel_dev, relative_deviation(a.value, b.value));
        }
      }
    }
    rep.passed = all_ok && rep.max_pairwise_rel_dev <= c.tolerance &&
                 rep.max_mc_sigma <= c.mc_sigma;
    reports.push_back(std::move(rep));
  }
  return reports;
}

// ---------------------------------------------------------------------
// Named suites
// ---------------------------------------------------------------------

namespace {

const double kGridNu[] = {-0.3, 0.0, 0.5, 2.0, 5.5};
const double kGridRatio[] = {0.0, 0.2, -0.2, 0.6, -0.6, 0.9, -0.9};
const double kGridAlpha[] = {0.5, 1.0, 4.0};

std::vector<VerifyCase> suite_grid() {
  std::vector<VerifyCase> cases;
  const std::vector<vg::Method> methods = {vg::Method::closed_form,
                                           vg::Method::oracle_quadrature,
                                           vg::Method::oracle_direct_series};
  for (double nu : kGridNu) {
    for (double ratio : kGridRatio) {
      for (double alpha : kGridAlpha) {
        vg::VGParams p(nu, alpha, ratio * alpha, 0.0);
        std::string base = "vg nu=" + fmt("%g", nu) +
                           " beta/alpha=" + fmt("%g", ratio) +
                           " alpha=" + fmt("%g", alpha);
        for (double k : {0.5, 1.0, 2.0, 3.0, 4.0, 7.0}) {
          VerifyCase c{base + " k=" + fmt("%g", k) + " abs", p, k,
                       vg::MomentKind::absolute, methods};
          cases.push_back(std::move(c));
        }
        for (double k : {0.0, 1.0, 2.0, 3.0, 4.0, 7.0}) {
          VerifyCase c{base + " k=" + fmt("%g", k) + " raw", p, k,
                       vg::MomentKind::raw, methods};
          cases.push_back(std::move(c));
        }
      }
    }
  }
  return cases;
}

std::vector<VerifyCase> suite_corollary() {
  std::vector<VerifyCase> cases;
  const std::vector<vg::Method> closed_only = {vg::Method::closed_form};
  CounterRng rng(kDefaultSeed, 17);
  for (int i = 0; i < 50; ++i) {
    double su = 0.3 * std::pow(10.0, rng.next_unit());
    double sv = 0.3 * std::pow(10.0, rng.next_unit());
    double rho = 1.8 * rng.next_unit() - 0.9;
    long n = 1 + static_cast<long>(rng.next_u64() % 8);
    normprod::ProductNormalParams p(su, sv, rho, n);
    std::string base = "product su=" + fmt("%.3g", su) + " sv=" +
                       fmt("%.3g", sv) + " rho=" + fmt("%.3g", rho) + " n=" +
                       std::to_string(n);
    for (double k : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}) {
      VerifyCase c{base + " k=" + fmt("%g", k) + " raw", p, k,
                   vg::MomentKind::raw, closed_only};
      c.tolerance = 1e-12;
      cases.push_back(std::move(c));
    }
    for (double k : {0.5, 1.0, 2.5, 4.0}) {
      VerifyCase c{base + " k=" + fmt("%g", k) + " abs", p, k,
                   vg::MomentKind::absolute, closed_only};
      c.tolerance = 1e-12;
      cases.push_back(std::move(c));
    }
  }
  // First product moment: E[Zbar_n] = rho * sigma_u * sigma_v for every n.
  for (long n = 1; n <= 8; ++n) {
    normprod::ProductNormalParams p(1.3, 0.7, 0.45, n);
    VerifyCase c{"product mean identity n=" + std::to_string(n), p, 1.0,
                 vg::MomentKind::raw, closed_only};
    c.tolerance = 1e-12;
    c.expected = SignedLog::from_value(p.rho() * p.s());
    cases.push_back(std::move(c));
  }
  // Second moment of a single product via the Gaussian product-moment rule:
  // E[Z^2] = s^2 (1 + 2 rho^2).
  for (double rho : {0.0, 0.5, -0.5}) {
    normprod::ProductNormalParams p(1.5, 2.0, rho, 1);
    VerifyCase c{"product isserlis rho=" + fmt("%g", rho), p, 2.0,
                 vg::MomentKind::raw, closed_only};
    c.tolerance = 1e-12;
    c.expected =
        SignedLog::from_value(p.s() * p.s() * (1.0 + 2.0 * rho * rho));
    cases.push_back(std::move(c));
  }
  // Independent factors: E|UV|^k = (2s)^k Gamma((k+1)/2)^2 / pi.
  for (double k : {0.5, 1.0, 2.5}) {
    normprod::ProductNormalParams p(1.0, 1.0, 0.0, 1);
    VerifyCase c{"product independence k=" + fmt("%g", k), p, k,
                 vg::MomentKind::absolute, closed_only};
    c.tolerance = 1e-12;
    c.expected = SignedLog::positive(
        k * (kLn2 + std::log(p.s())) +
        2.0 * specfun::log_gamma(0.5 * (k + 1.0)) - kLnPi);
    cases.push_back(std::move(c));
  }
  return cases;
}

std::vector<VerificationReport> run_expansion_suite() {
  std::vector<VerificationReport> reports;
  for (double nu : {0.5, 2.0}) {
    for (long k : {1L, 2L, 3L, 4L}) {
      for (int order : {0, 2, 4}) {
        for (vg::MomentKind kind :
             {vg::MomentKind::raw, vg::MomentKind::absolute}) {
          vg::VGParams base(nu, 1.0, 0.05, 0.0);
          vg::VGParams half(nu, 1.0, 0.025, 0.0);
          bool raw = kind == vg::MomentKind::raw;
          SignedLog closed_b =
              raw ? vg::raw_moment(base, k)
                  : vg::abs_moment(base, static_cast<double>(k));
          SignedLog exp_b =
              raw ? vg::raw_moment_expansion(base, k, order)
                  : vg::abs_moment_expansion(base, static_cast<double>(k),
                                             order);
          SignedLog closed_h =
              raw ? vg::raw_moment(half, k)
                  : vg::abs_moment(half, static_cast<double>(k));
          SignedLog exp_h =
              raw ? vg::raw_moment_expansion(half, k, order)
                  : vg::abs_moment_expansion(half, static_cast<double>(k),
                                             order);
          double dev_b = relative_deviation(exp_b, closed_b);
          double dev_h = relative_deviation(exp_h, closed_h);
          double target = std::pow(4.0, order / 2 + 1);
          double ratio = (dev_h > 0.0) ? dev_b / dev_h : 0.0;

          VerificationReport rep;
          rep.label = "expansion nu=" + fmt("%g", nu) + " k=" +
                      std::to_string(k) + " order=" + std::to_string(order) +
                      " " + vg::to_string(kind);
          rep.k = static_cast<double>(k);
          rep.kind = kind;
          rep.tolerance = 1.3;
          MethodResult closed;
          closed.method = vg::Method::closed_form;
          closed.value = closed_b;
          rep.results.push_back(closed);
          MethodResult expansion;
          expansion.method = vg::Method::series_expansion;
          expansion.detail = "order=" + std::to_string(order);
          expansion.value = exp_b;
          rep.results.push_back(expansion);
          rep.max_pairwise_rel_dev = dev_b;
          rep.passed = ratio > 0.0 && ratio >= target / 1.3 &&
                       ratio <= target * 1.3;
          rep.note = "halving ratio " + fmt("%.4g", ratio) + ", target " +
                     fmt("%g", target);
          reports.push_back(std::move(rep));
        }
      }
    }
  }
  return reports;
}

VerificationReport make_pair_report(const std::string& label, SignedLog lhs,
                                    SignedLog rhs, double tolerance,
                                    vg::Method lhs_method,
                                    vg::Method rhs_method) {
  VerificationReport rep;
  rep.label = label;
  rep.tolerance = tolerance;
  MethodResult a;
  a.method = lhs_method;
  a.value = lhs;
  MethodResult b;
  b.method = rhs_method;
  b.value = rhs;
  rep.results.push_back(a);
  rep.results.push_back(b);
  rep.max_pairwise_rel_dev = relative_deviation(lhs, rhs);
  rep.passed = rep.max_pairwise_rel_dev <= tolerance;
  return rep;
}

std::vector<VerificationReport> run_specfun_suite() {
  std::vector<VerificationReport> reports;
  // Definite-integral identity for K: closed form vs quadrature.
  for (double nu : {0.0, 0.5, 1.0, 2.7, 5.0}) {
    for (double dr : {0.2, 1.0, 3.0}) {
      double r = std::fabs(nu) + dr;
      SignedLog closed = specfun::bessel_k_moment_integral(r, nu);
      QuadratureResult quad = bessel_moment_integral_by_quadrature(r, nu);
      auto rep = make_pair_report(
          "bessel integral r=" + fmt("%g", r) + " nu=" + fmt("%g", nu), closed,
          quad.value, 1e-8, vg::Method::closed_form,
          vg::Method::oracle_quadrature);
      rep.results[1].rel_uncertainty = quad.rel_error;
      reports.push_back(std::move(rep));
    }
  }
  // Large-argument decay of K: the ratio against sqrt(pi/2x) e^{-x} obeys
  // |ratio - 1| <= C / x with C = (4 nu^2 - 1)/4 + 1.
  for (double x : {50.0, 100.0, 500.0}) {
    for (double nu : {0.0, 0.5, 2.0, 7.5}) {
      SignedLog k = specfun::bessel_k(nu, x);
      SignedLog asym =
          SignedLog::positive(0.5 * (kLnPi - kLn2 - std::log(x)) - x);
      double dev = std::fabs(std::expm1(k.log_abs - asym.log_abs));
      double bound = ((4.0 * nu * nu - 1.0) / 4.0 + 1.0) / x;
      auto rep = make_pair_report(
          "bessel asymptotic x=" + fmt("%g", x) + " nu=" + fmt("%g", nu), k,
          asym, bound, vg::Method::closed_form,
          vg::Method::oracle_direct_series);
      rep.max_pairwise_rel_dev = dev;
      rep.passed = dev <= bound;
      reports.push_back(std::move(rep));
    }
  }
  // Euler-transformation self-consistency of 2F1 on a seeded random set.
  for (double c : {0.5, 1.5}) {
    CounterRng rng(kDefaultSeed, c == 0.5 ? 101 : 102);
    double worst = 0.0;
    SignedLog worst_lhs, worst_rhs;
    for (int i = 0; i < 500; ++i) {
      double a = -5.0 + 10.0 * rng.next_unit();
      double b = -5.0 + 10.0 * rng.next_unit();
      double x = 0.99 * rng.next_unit();
      SignedLog lhs = specfun::hyp2f1(a, b, c, x);
      SignedLog rhs = specfun::hyp2f1(c - a, c - b, c, x)
                          .scaled_by_log((c - a - b) * std::log1p(-x));
      double dev = relative_deviation(lhs, rhs);
      if (dev > worst) {
        worst = dev;
        worst_lhs = lhs;
        worst_rhs = rhs;
      }
    }
    auto rep = make_pair_report("hyp2f1 euler identity c=" + fmt("%g", c) +
                                    " (500 random cases, worst shown)",
                                worst_lhs, worst_rhs, 1e-9,
                                vg::Method::closed_form,
                                vg::Method::oracle_direct_series);
    rep.max_pairwise_rel_dev = worst;
    rep.passed = worst <= 1e-9;
    reports.push_back(std::move(rep));
  }
  // Ascending factorial against the gamma-ratio form.
  {
    double worst = 0.0;
    SignedLog worst_lhs, worst_rhs;
    for (double u : {0.3, 1.0, 2.5, 7.25}) {
      for (long j : {0L, 1L, 2L, 5L, 17L}) {
        SignedLog lhs = specfun::pochhammer_log(u, j);
        SignedLog rhs = SignedLog::positive(
            specfun::log_gamma(u + static_cast<double>(j)) -
            specfun::log_gamma(u));
        double dev = relative_deviation(lhs, rhs);
        if (dev > worst) {
          worst = dev;
          worst_lhs = lhs;
          worst_rhs = rhs;
        }
      }
    }
    auto rep = make_pair_report(
        "pochhammer vs gamma ratio (20 cases, worst shown)", worst_lhs,
        worst_rhs, 1e-12, vg::Method::closed_form,
        vg::Method::oracle_direct_series);
    rep.max_pairwise_rel_dev = worst;
    rep.passed = worst <= 1e-12;
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace

std::vector<VerificationReport> run_suite(const std::string& name) {
  if (name == "grid") return verify(suite_grid());
  if (name == "corollary") return verify(suite_corollary());
  if (name == "expansion") return run_expansion_suite();
  if (name == "specfun") return run_specfun_suite();
  throw ValidationError("suite", "unknown suite '" + name +
                                     "' (expected grid, corollary, "
                                     "expansion, or specfun)");
}

}  // namespace vgmom::oracle
