/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "vgmom/oracle.hpp"
#include "vgmom/rng.hpp"
#include "vgmom/specfun.hpp"

using namespace vgmom;
using namespace vgmom::oracle;
using vg::MomentKind;
using vg::VGParams;

namespace {

constexpr double kPi = 3.14159265358979323846;

MonteCarloSettings fast_mc(std::uint64_t stream = 0) {
  MonteCarloSettings s;
  s.sample_count = 1'000'000;
  s.batch_count = 50;
  s.seed = kDefaultSeed + stream;
  return s;
}

}  // namespace

TEST_CASE("integrate_log on elementary integrals") {
  auto linear = [](double t) { return std::log(t); };
  auto res = integrate_log(linear, 0.0, 1.0);
  CHECK(res.value.value() == doctest::Approx(0.5).epsilon(1e-12));

  auto gaussian = [](double t) { return -t * t; };
  auto g = integrate_log(gaussian, 0.0, 9.0);
  CHECK(g.value.value() ==
        doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-12));

  // Integrable endpoint singularity handled by refinement alone.
  auto singular = [](double t) { return -0.5 * std::log(t); };
  auto s = integrate_log(singular, 0.0, 1.0);
  CHECK(s.value.value() == doctest::Approx(2.0).epsilon(1e-9));

  auto zero = [](double) { return -std::numeric_limits<double>::infinity(); };
  CHECK(integrate_log(zero, 0.0, 1.0).value.is_zero());

  CHECK_THROWS_AS(integrate_log(linear, 1.0, 1.0), ValidationError);
  QuadratureSettings bad;
  bad.max_subdivisions = 3;
  CHECK_THROWS_AS(integrate_log(linear, 0.0, 1.0, bad), ValidationError);
}

TEST_CASE("integrate_log reports the achieved estimate when starved") {
  auto singular = [](double t) { return -0.9 * std::log(t); };
  QuadratureSettings starved;
  starved.rel_tol = 1e-14;
  starved.max_subdivisions = 10;
  try {
    integrate_log(singular, 0.0, 1.0, starved);
    FAIL("expected ToleranceError");
  } catch (const ToleranceError& e) {
    CHECK(e.achieved_rel_error() > 1e-14);
    // carries the best value so far; true integral is 1/(1-0.9) = 10 and
    // ten panels leave a sizable but bounded slice of the spike uncaptured
    double best = std::exp(e.value_log_abs());
    CHECK(best > 5.0);
    CHECK(best < 10.0);
  }
}

TEST_CASE("quadrature recovers total probability") {
  VGParams p(0.5, 1.0, 0.0, 0.0);
  auto res = moment_by_quadrature(p, 0.0, MomentKind::absolute);
  CHECK(std::fabs(res.value.value() - 1.0) <= 1e-10);
}

TEST_CASE("quadrature matches the first-moment reduction") {
  VGParams p(1.0, 2.0, 1.0, 0.0);
  auto res = moment_by_quadrature(p, 1.0, MomentKind::raw);
  CHECK(res.value.value() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quadrature through the singular-endpoint substitution") {
  // nu < 0 with fractional k below 2|nu| exercises the power change of
  // variables; k_star = -0.4 here.
  VGParams p(-0.3, 1.0, 0.5, 0.0);
  auto res = moment_by_quadrature(p, 0.8, MomentKind::absolute);
  CHECK(relative_deviation(res.value, vg::abs_moment(p, 0.8)) <= 1e-7);
  auto res2 = moment_by_quadrature(p, 0.5, MomentKind::absolute);
  CHECK(relative_deviation(res2.value, vg::abs_moment(p, 0.5)) <= 1e-7);
  // nu = 0 leaves only the logarithmic factor at the origin.
  VGParams q(0.0, 1.0, 0.3, 0.0);
  auto res3 = moment_by_quadrature(q, 0.0, MomentKind::absolute);
  CHECK(std::fabs(res3.value.value() - 1.0) <= 1e-9);
}

TEST_CASE("quadrature of odd moments carries the skew sign") {
  VGParams p(0.5, 3.0, -2.0, 0.0);
  auto res = moment_by_quadrature(p, 3.0, MomentKind::raw);
  CHECK(res.value.sign == -1);
  CHECK(relative_deviation(res.value, vg::raw_moment(p, 3)) <= 1e-8);
  // Symmetric odd moments vanish identically, not approximately.
  VGParams sym(2.0, 1.0, 0.0, 0.0);
  CHECK(moment_by_quadrature(sym, 3.0, MomentKind::raw).value.is_zero());
}

TEST_CASE("quadrature argument checking") {
  VGParams shifted(1.0, 1.0, 0.0, 2.0);
  CHECK_THROWS_AS(moment_by_quadrature(shifted, 1.0, MomentKind::raw),
                  ValidationError);
  VGParams p(-0.3, 1.0, 0.0, 0.0);
  CHECK_THROWS_AS(moment_by_quadrature(p, -0.5, MomentKind::absolute),
                  ValidationError);
  CHECK_THROWS_AS(moment_by_quadrature(p, 1.5, MomentKind::raw),
                  ValidationError);
}

TEST_CASE("quadrature self-consistency under tighter tolerance") {
  for (double nu : {-0.3, 0.0, 0.5, 2.0, 5.5}) {
    for (double ratio : {0.0, 0.2, -0.2, 0.6, -0.6, 0.9, -0.9}) {
      for (double alpha : {0.5, 1.0, 4.0}) {
        VGParams p(nu, alpha, ratio * alpha, 0.0);
        for (double k : {0.5, 2.0, 7.0}) {
          QuadratureSettings loose;
          loose.rel_tol = 1e-8;
          QuadratureSettings tight;
          tight.rel_tol = 5e-9;
          auto a = moment_by_quadrature(p, k, MomentKind::absolute, loose);
          auto b = moment_by_quadrature(p, k, MomentKind::absolute, tight);
          double change = relative_deviation(a.value, b.value);
          CHECK(change <= std::max(a.rel_error, 1e-15));
        }
      }
    }
  }
}

TEST_CASE("direct series reduces to a single term at beta = 0") {
  VGParams p(1.2, 2.5, 0.0, 0.0);
  SignedLog series = moment_by_direct_series(p, 2.0, MomentKind::absolute);
  SignedLog closed = vg::abs_moment(p, 2.0);
  CHECK(relative_deviation(series, closed) <= 1e-13);
}

TEST_CASE("direct series against closed forms") {
  VGParams p(1.5, 2.0, 0.5, 0.0);
  CHECK(relative_deviation(moment_by_direct_series(p, 4.0, MomentKind::raw),
                           vg::raw_moment(p, 4)) <= 1e-10);
  // Near the slow-convergence edge.
  VGParams q(0.0, 1.0, 0.9, 0.0);
  CHECK(relative_deviation(moment_by_direct_series(q, 1.0, MomentKind::raw),
                           vg::raw_moment_odd(q, 1)) <= 1e-7);
  VGParams frac(-0.2, 1.5, 0.6, 0.0);
  CHECK(relative_deviation(
            moment_by_direct_series(frac, 1.7, MomentKind::absolute),
            vg::abs_moment(frac, 1.7)) <= 1e-9);
  CHECK(moment_by_direct_series(VGParams(1.0, 1.0, 0.0, 0.0), 3.0,
                                MomentKind::raw)
            .is_zero());
}

TEST_CASE("direct series rejects extreme skew ratios") {
  VGParams p(1.0, 1.0, 0.96, 0.0);
  CHECK_THROWS_AS(moment_by_direct_series(p, 2.0, MomentKind::absolute),
                  ValidationError);
}

TEST_CASE("product sampler determinism and low-order statistics") {
  normprod::ProductNormalParams p(1.0, 1.0, 0.5, 1);
  std::vector<double> a(1000000), b(1000000);
  sample_product_mean(p, 1234, 7, a);
  sample_product_mean(p, 1234, 7, b);
  CHECK(a == b);  // bit-identical
  std::vector<double> c(1000000);
  sample_product_mean(p, 1234, 8, c);
  CHECK(a != c);  // independent stream

  double mean = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
  double var = 0.0;
  for (double z : a) var += (z - mean) * (z - mean);
  var /= a.size() - 1.0;
  double se = std::sqrt(var / a.size());
  CHECK(std::fabs(mean - 0.5) <= 4.0 * se);

  normprod::ProductNormalParams indep(1.0, 1.0, 0.0, 1);
  sample_product_mean(indep, 99, 0, a);
  mean = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
  var = 0.0;
  for (double z : a) var += (z - mean) * (z - mean);
  var /= a.size() - 1.0;
  CHECK(std::fabs(mean) <= 4.0 * std::sqrt(var / a.size()));
}

TEST_CASE("sampler reproduces the requested correlation") {
  normprod::ProductNormalParams p(2.0, 0.5, -0.65, 1);
  const std::size_t n = 400000;
  CounterRng rng(kDefaultSeed, 55);
  double suu = 0, svv = 0, suv = 0;
  const double su = p.sigma_u(), rv = p.rho() * p.sigma_v(),
               cv = p.sigma_v() * std::sqrt(1 - p.rho() * p.rho());
  for (std::size_t i = 0; i < n; ++i) {
    double g1 = rng.next_normal(), g2 = rng.next_normal();
    double u = su * g1, v = rv * g1 + cv * g2;
    suu += u * u;
    svv += v * v;
    suv += u * v;
  }
  double corr = suv / std::sqrt(suu * svv);
  CHECK(std::fabs(corr - p.rho()) <= 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("monte carlo point estimates") {
  normprod::ProductNormalParams p(1.0, 1.0, 0.5, 1);
  auto mc = moment_by_monte_carlo(p, 2.0, MomentKind::raw, fast_mc());
  CHECK(std::fabs(mc.value.value() - 1.5) <= 4.0 * mc.standard_error);

  auto zeroth = moment_by_monte_carlo(p, 0.0, MomentKind::raw, fast_mc());
  CHECK(zeroth.value.value() == 1.0);
  CHECK(zeroth.standard_error == 0.0);

  // Deterministic given the seed.
  auto again = moment_by_monte_carlo(p, 2.0, MomentKind::raw, fast_mc());
  CHECK(again.value.log_abs == mc.value.log_abs);
  CHECK(again.standard_error == mc.standard_error);

  // Threaded and single-threaded runs agree bit for bit.
  MonteCarloSettings st = fast_mc();
  st.threads = 1;
  auto serial = moment_by_monte_carlo(p, 2.0, MomentKind::raw, st);
  CHECK(serial.value.log_abs == mc.value.log_abs);
}

TEST_CASE("general vg monte carlo against the closed form") {
  VGParams p(2.0, 3.0, 1.0, 0.0);
  auto mc = moment_by_monte_carlo(p, 3.0, MomentKind::raw, fast_mc(1));
  SignedLog closed = vg::raw_moment(p, 3);
  CHECK(std::fabs(mc.value.value() - closed.value()) <=
        4.0 * mc.standard_error);

  auto abs_mc = moment_by_monte_carlo(p, 1.5, MomentKind::absolute, fast_mc(2));
  SignedLog abs_closed = vg::abs_moment(p, 1.5);
  CHECK(std::fabs(abs_mc.value.value() - abs_closed.value()) <=
        4.0 * abs_mc.standard_error);
}

TEST_CASE("gamma-mixture sampler passes a binned goodness-of-fit") {
  // 50 equal-probability-ish bins over a wide interval, expected counts
  // from quadrature of the density itself.
  VGParams p(2.0, 3.0, 1.0, 0.0);
  const std::size_t n = 200000;
  const double lo = -3.0, hi = 5.0;
  const int bins = 50;
  std::vector<double> sample(n);
  CounterRng rng(kDefaultSeed, 77);
  const double shape = p.nu() + 0.5;
  const double rate =
      0.5 * (p.alpha() - p.beta()) * (p.alpha() + p.beta());
  for (double& z : sample) {
    double w = rng.next_gamma(shape, rate);
    z = p.beta() * w + std::sqrt(w) * rng.next_normal();
  }
  std::vector<long> observed(bins + 2, 0);
  double width = (hi - lo) / bins;
  for (double z : sample) {
    int idx = (z < lo) ? 0
              : (z >= hi) ? bins + 1
                          : 1 + static_cast<int>((z - lo) / width);
    ++observed[idx];
  }
  auto log_density = [&p](double x) { return vg::pdf(p, x).log_abs; };
  double chi2 = 0.0;
  double tail_prob = 1.0;
  for (int b = 1; b <= bins; ++b) {
    double a = lo + (b - 1) * width;
    double c = lo + b * width;
    double prob = integrate_log(log_density, a, c).value.value();
    tail_prob -= prob;
    double expected = prob * n;
    chi2 += (observed[b] - expected) * (observed[b] - expected) / expected;
  }
  double expected_tails = tail_prob * n;
  double observed_tails = observed[0] + observed[bins + 1];
  chi2 += (observed_tails - expected_tails) * (observed_tails - expected_tails) /
          expected_tails;
  // 50 dof, far beyond the 0.001 critical point would flag a broken sampler.
  CHECK(chi2 <= 90.0);
}

TEST_CASE("verify aggregates methods and applies tolerances") {
  std::vector<VerifyCase> cases;
  {
    VerifyCase c("grid point", VGParams(2.0, 1.0, 0.9, 0.0), 3.0,
                 MomentKind::raw,
                 {vg::Method::closed_form, vg::Method::oracle_quadrature,
                  vg::Method::oracle_direct_series});
    cases.push_back(std::move(c));
  }
  {
    VerifyCase c("product with mc", normprod::ProductNormalParams(1, 1, 0.5, 1),
                 2.0, MomentKind::raw,
                 {vg::Method::closed_form, vg::Method::oracle_monte_carlo});
    c.monte_carlo = fast_mc(3);
    cases.push_back(std::move(c));
  }
  auto reports = verify(cases);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].passed);
  CHECK(reports[0].max_pairwise_rel_dev <= 1e-7);
  CHECK(reports[0].results.size() == 3);
  CHECK(reports[1].passed);
  CHECK(reports[1].results.size() == 3);  // dual closed routes + mc
  CHECK(reports[1].max_mc_sigma <= 4.0);

  CHECK(verify({}).empty());
}

TEST_CASE("verify flags a corrupted closed form") {
  // An off-by-one order on one side must blow past the tolerance.
  VGParams p(2.0, 1.0, 0.5, 0.0);
  SignedLog wrong = vg::abs_moment(p, 4.0);
  auto quad = moment_by_quadrature(p, 3.0, MomentKind::absolute);
  CHECK(relative_deviation(wrong, quad.value) > 1e-3);
}

TEST_CASE("verify records per-method failures without aborting") {
  std::vector<VerifyCase> cases;
  VerifyCase bad("series out of range", VGParams(1.0, 1.0, 0.97, 0.0), 2.0,
                 MomentKind::raw,
                 {vg::Method::closed_form, vg::Method::oracle_direct_series});
  cases.push_back(std::move(bad));
  VerifyCase good("fine", VGParams(1.0, 1.0, 0.2, 0.0), 2.0, MomentKind::raw,
                  {vg::Method::closed_form, vg::Method::oracle_quadrature});
  cases.push_back(std::move(good));
  auto reports = verify(cases);
  REQUIRE(reports.size() == 2);
  CHECK_FALSE(reports[0].passed);
  CHECK_FALSE(reports[0].results[1].ok);
  CHECK(!reports[0].results[1].error.empty());
  CHECK(reports[1].passed);
}

TEST_CASE("named suites") {
  CHECK_THROWS_AS(run_suite("nope"), ValidationError);
  for (const char* name : {"specfun", "expansion", "corollary", "grid"}) {
    auto reports = run_suite(name);
    CHECK(!reports.empty());
    for (const auto& r : reports) {
      INFO(name, ": ", r.label, " dev=", r.max_pairwise_rel_dev,
           " note=", r.note);
      CHECK(r.passed);
    }
  }
}
