/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "vgmom/oracle.hpp"
#include "vgmom/rng.hpp"
#include "vgmom/specfun.hpp"

using namespace vgmom;
using specfun::bessel_k;
using specfun::bessel_k_moment_integral;
using specfun::hyp2f1;
using specfun::log_gamma;
using specfun::pochhammer_log;

namespace {

// 50,000-term reference sum of the 2F1 power series with extended-precision
// accumulation, built from per-term products. Independent of the production
// code path (term recursion in double, Euler transformation for x > 1/2).
long double hyp2f1_reference(double a, double b, double c, double x) {
  long double term = 1.0L;
  long double sum = 1.0L;
  for (long j = 0; j < 50000; ++j) {
    term *= (static_cast<long double>(a) + j) *
            (static_cast<long double>(b) + j) /
            ((static_cast<long double>(c) + j) * (j + 1.0L)) *
            static_cast<long double>(x);
    sum += term;
    if (std::fabs(static_cast<double>(term)) <
        1e-22 * std::fabs(static_cast<double>(sum)) && j > 8)
      break;
  }
  return sum;
}

}  // namespace

TEST_CASE("log_gamma reference values") {
  // Reference: mpmath loggamma at 40 digits.
  const struct { double x, ref; } cases[] = {
      {0.001, 6.907178885383853661684},
      {0.07, 2.622753760603215394308},
      {0.5, 0.5723649429247000870717},
      {1.0, 0.0},
      {1.5, -0.1207822376352452223455},
      {2.0, 0.0},
      {5.0, 3.178053830347945619647},
      {30.25, 72.10420474200799982361},
      {170.5, 704.0044277342046707918},
      {10000.0, 82099.71749644237727265},
      {1000000.0, 12815504.56914761165998},
  };
  for (const auto& c : cases) {
    double got = log_gamma(c.x);
    CHECK(std::fabs(got - c.ref) <=
          1e-13 * std::max(1.0, std::fabs(c.ref)));
  }
  CHECK_THROWS_AS(log_gamma(0.0), ValidationError);
  CHECK_THROWS_AS(log_gamma(-1.5), ValidationError);
}

TEST_CASE("pochhammer basics") {
  CHECK(pochhammer_log(3.7, 0).value() == 1.0);
  CHECK(pochhammer_log(1.0, 5).value() == doctest::Approx(120.0).epsilon(1e-14));
  CHECK(pochhammer_log(0.5, 2).value() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(pochhammer_log(0.0, 3).is_zero());
  CHECK(pochhammer_log(-2.5, 2).value() == doctest::Approx(3.75));
  CHECK(pochhammer_log(-2.5, 3).value() == doctest::Approx(-1.875));
  CHECK(pochhammer_log(-2.0, 4).is_zero());  // hits the zero factor
  CHECK_THROWS_AS(pochhammer_log(1.0, -1), ValidationError);
}

TEST_CASE("pochhammer agrees with the gamma-ratio form") {
  for (double u : {0.05, 0.3, 1.0, 2.5, 7.25, 19.0}) {
    for (long j : {0L, 1L, 2L, 5L, 17L, 60L}) {
      SignedLog lhs = pochhammer_log(u, j);
      SignedLog rhs = SignedLog::positive(log_gamma(u + j) - log_gamma(u));
      CHECK(relative_deviation(lhs, rhs) <= 1e-12);
    }
  }
}

TEST_CASE("hyp2f1 closed-form identities") {
  CHECK(hyp2f1(2.3, -1.1, 0.5, 0.0).value() == 1.0);
  CHECK(hyp2f1(1.0, 1.0, 2.0, 0.5).value() ==
        doctest::Approx(-std::log(0.5) / 0.5).epsilon(1e-14));
  CHECK(hyp2f1(0.7, 1.9, 1.9, 0.36).value() ==
        doctest::Approx(std::pow(0.64, -0.7)).epsilon(1e-14));
}

TEST_CASE("hyp2f1 reference values") {
  // Reference: mpmath hyp2f1 at 40 digits.
  const struct { double a, b, c, x, ref; } cases[] = {
      {0.5, 1.5, 0.5, 0.81, 12.07451230897694012769},
      {2.0, 3.5, 0.5, 0.5, 199.2},
      {1.5, 6.0, 1.5, 0.9, 1000000.000000001332268},
      {0.75, 2.25, 1.5, 0.36, 1.679960006964451478182},
      {4.0, 9.0, 0.5, 0.81, 609528473900.9061683761},
      {-1.1, 2.3, 0.5, 0.7, -2.045185159662009582086},
      {-3.0, 4.5, 1.5, 0.6, 0.08045714285714282334132},
      {2.5, 2.5, 1.5, 0.99, 16599999.99999994833762},
      {5.0, 5.0, 0.5, 0.9025, 1159971160917.053038656},
      {0.1, 0.2, 0.5, 0.05, 1.002045405127120327506},
  };
  for (const auto& c : cases) {
    SignedLog got = hyp2f1(c.a, c.b, c.c, c.x);
    CHECK(relative_deviation(got, SignedLog::from_value(c.ref)) <= 1e-10);
  }
}

TEST_CASE("hyp2f1 domain checks") {
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 0.0, 0.5), ValidationError);
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, -2.0, 0.5), ValidationError);
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, -0.1), ValidationError);
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, 1.0), ValidationError);
  CHECK_NOTHROW(hyp2f1(1.0, 1.0, -0.5, 0.3));  // non-integer negative c is fine
}

TEST_CASE("hyp2f1 agrees with the 50k-term extended-precision reference") {
  oracle::CounterRng rng(oracle::kDefaultSeed, 3);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double a = -5.0 + 10.0 * rng.next_unit();
    double b = -5.0 + 10.0 * rng.next_unit();
    double c = rng.next_unit() < 0.5 ? 0.5 : 1.5;
    double x = 0.99 * rng.next_unit();
    SignedLog got = hyp2f1(a, b, c, x);
    SignedLog ref =
        SignedLog::from_value(static_cast<double>(hyp2f1_reference(a, b, c, x)));
    worst = std::max(worst, relative_deviation(got, ref));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("hyp2f1 euler transformation self-consistency") {
  oracle::CounterRng rng(oracle::kDefaultSeed, 4);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double a = -5.0 + 10.0 * rng.next_unit();
    double b = -5.0 + 10.0 * rng.next_unit();
    double c = rng.next_unit() < 0.5 ? 0.5 : 1.5;
    double x = 0.99 * rng.next_unit();
    SignedLog lhs = hyp2f1(a, b, c, x);
    SignedLog rhs = hyp2f1(c - a, c - b, c, x)
                        .scaled_by_log((c - a - b) * std::log1p(-x));
    worst = std::max(worst, relative_deviation(lhs, rhs));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("bessel_k closed forms and symmetry") {
  // K_{1/2}(x) = sqrt(pi/2x) e^{-x}
  CHECK(bessel_k(0.5, 2.0).value() ==
        doctest::Approx(std::sqrt(3.14159265358979323846 / 4.0) *
                        std::exp(-2.0)).epsilon(1e-12));
  SignedLog pos = bessel_k(3.2, 1.5);
  SignedLog neg = bessel_k(-3.2, 1.5);
  CHECK(pos.log_abs == neg.log_abs);
  // Small-argument limiting form, 1e-4 relative.
  CHECK(bessel_k(1.0, 1e-6).value() == doctest::Approx(1e6).epsilon(1e-4));
  CHECK_THROWS_AS(bessel_k(1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(bessel_k(1.0, -3.0), ValidationError);
}

TEST_CASE("bessel_k reference grid") {
  // Reference: mpmath log(besselk(nu, x)) at 40 digits; spans both the
  // small-argument series and the continued-fraction branch plus the
  // order recurrence up to nu = 30.
  const struct { double nu, x, log_ref; } cases[] = {
      {0.0, 1e-08, 2.919747817422440051845},
      {0.0, 0.0001, 2.232835354453717650814},
      {0.0, 0.1, 0.8866843666787421268019},
      {0.0, 0.5, -0.07858976986908141689524},
      {0.0, 1.0, -0.8650643989067880967988},
      {0.0, 1.9, -2.049137547057892030229},
      {0.0, 2.0, -2.172488204975709934738},
      {0.0, 2.1, -2.294778237049997420478},
      {0.0, 5.0, -5.601831213717063179475},
      {0.0, 17.0, -18.19796416167104314629},
      {0.0, 80.0, -81.96677482380621984138},
      {0.0, 350.0, -352.7035318587617996016},
      {0.0, 700.0, -703.0499272589439122322},
      {0.3, 1e-08, 6.1367840679062074189},
      {0.3, 0.0001, 3.369890975180346826522},
      {0.3, 0.1, 1.031423672469509668922},
      {0.3, 0.5, -0.02380702734543257338},
      {0.3, 1.0, -0.8322344948675558752663},
      {0.3, 1.9, -2.029665766020717929686},
      {0.3, 2.0, -2.153846394283631955371},
      {0.3, 2.1, -2.276897166774938188978},
      {0.3, 5.0, -5.593582967031889989529},
      {0.3, 17.0, -18.19539047481811514714},
      {0.3, 80.0, -81.96621579339574498422},
      {0.3, 350.0, -352.7034034704485973706},
      {0.3, 700.0, -703.0498630190780729896},
      {0.5, 1e-08, 9.436131714620910157974},
      {0.5, 0.0001, 4.830861538632818776433},
      {0.5, 0.1, 1.277083899141750241065},
      {0.5, 0.5, 0.07236494292470008707171},
      {0.5, 1.0, -0.7742086473552725676369},
      {0.5, 2.0, -2.120782237635245222346},
      {0.5, 5.0, -5.578927603572322754937},
      {0.5, 80.0, -81.96522196469221337377},
      {0.5, 700.0, -703.0497488148769749042},
      {1.0, 1e-08, 18.42068074395236449939},
      {1.0, 0.0001, 9.21034032284482197693},
      {1.0, 0.1, 2.287861712107167664391},
      {1.0, 0.5, 0.5046713973046511773084},
      {1.0, 1.0, -0.5076519482107523309479},
      {1.0, 1.9, -1.834707766273977603873},
      {1.0, 2.0, -1.967071302560513891477},
      {1.0, 2.1, -2.097634746677736323119},
      {1.0, 5.0, -5.5103692965852233155},
      {1.0, 17.0, -18.1693741856839109211},
      {1.0, 80.0, -81.96056344617240532094},
      {1.0, 700.0, -703.049213482766881857},
      {2.0, 1e-08, 37.53450866846467618686},
      {2.0, 0.0001, 19.11382792201231074557},
      {2.0, 0.1, 5.295834109025257421035},
      {2.0, 0.5, 2.021571874388047203255},
      {2.0, 1.0, 0.485408671565646198148},
      {2.0, 1.9, -1.214328579892768487031},
      {2.0, 2.0, -1.371367307725371840892},
      {2.0, 2.1, -1.524705823848395601899},
      {2.0, 5.0, -5.238362387768045259772},
      {2.0, 17.0, -18.08369027276924957025},
      {2.0, 80.0, -81.94193025426817353472},
      {2.0, 350.0, -352.6978257265782219019},
      {5.5, 1e-08, 108.3907203718764801624},
      {5.5, 0.0001, 57.73384832545191941557},
      {5.5, 0.1, 19.74063878012882067217},
      {5.5, 0.5, 10.87542424072810910026},
      {5.5, 1.0, 7.021849326960850792728},
      {5.5, 1.9, 3.351458249002542761752},
      {5.5, 2.0, 3.048813578998307211602},
      {5.5, 2.1, 2.758991960668209000014},
      {5.5, 5.0, -2.985585171609568130022},
      {5.5, 17.0, -17.33932242659377911264},
      {5.5, 80.0, -81.77894995274807865418},
      {5.5, 700.0, -703.0283356366124536969},
      {7.25, 1e-08, 144.9342907228928471461},
      {7.25, 0.1, 28.07769726868121186627},
      {7.25, 1.0, 11.34450583897452403135},
      {7.25, 2.1, 5.831723105489190475064},
      {7.25, 17.0, -16.7138724330743367851},
      {7.25, 350.0, -352.628552174738641535},
      {13.0, 1e-08, 267.7738303337619807263},
      {13.0, 0.1, 58.23837853994328843596},
      {13.0, 0.5, 37.31068690850528286983},
      {13.0, 1.9, 19.88592637375322295975},
      {13.0, 2.1, 18.56829924954284893865},
      {13.0, 5.0, 6.87300888189835140138},
      {13.0, 80.0, -80.91926211802538847504},
      {13.0, 700.0, -702.9293025189289412403},
      {22.5, 1e-08, 476.2879599167758245221},
      {22.5, 0.1, 113.6306914914736345963},
      {22.5, 1.0, 61.81101856601343952277},
      {22.5, 2.0, 46.18037258449933413094},
      {22.5, 5.0, 25.32161376021237761468},
      {22.5, 17.0, -5.057730118512177302993},
      {22.5, 350.0, -351.9815941993256651531},
      {30.0, 1e-08, 643.978729521977386519},
      {30.0, 0.0001, 367.6685183626056967311},
      {30.0, 0.1, 160.4357737864639472102},
      {30.0, 0.5, 112.1505675307244512125},
      {30.0, 1.0, 91.34968784026325464125},
      {30.0, 1.9, 72.07158719665480168754},
      {30.0, 2.0, 70.52943022514507993809},
      {30.0, 2.1, 69.06219538094195436739},
      {30.0, 5.0, 42.86047331817053676537},
      {30.0, 17.0, 3.969734440824988014454},
      {30.0, 80.0, -76.4375748770632970385},
      {30.0, 350.0, -351.4204274315138741296},
      {30.0, 700.0, -702.4076265136180914406},
  };
  for (const auto& c : cases) {
    SignedLog got = bessel_k(c.nu, c.x);
    CHECK(got.sign == 1);
    // Relative error on K itself.
    CHECK(std::fabs(std::expm1(got.log_abs - c.log_ref)) <= 1e-10);
  }
}

TEST_CASE("bessel_k large-argument decay bound") {
  for (double x : {50.0, 100.0, 500.0}) {
    for (double nu : {0.0, 0.5, 2.0, 7.5}) {
      double log_asym =
          0.5 * (std::log(3.14159265358979323846) - std::log(2.0 * x)) - x;
      double dev = std::fabs(std::expm1(bessel_k(nu, x).log_abs - log_asym));
      double bound = (2.0 * (4.0 * nu * nu - 1.0) / 8.0 + 1.0) / x;
      CHECK(dev <= bound);
    }
  }
}

TEST_CASE("bessel_k_moment_integral closed form") {
  CHECK(bessel_k_moment_integral(2.0, 0.0).value() == doctest::Approx(1.0));
  CHECK(bessel_k_moment_integral(3.0, 1.0).value() == doctest::Approx(2.0));
  CHECK_THROWS_AS(bessel_k_moment_integral(0.8, 0.8), ValidationError);
  CHECK_THROWS_AS(bessel_k_moment_integral(1.0, -1.5), ValidationError);
}

TEST_CASE("bessel_k_moment_integral matches quadrature") {
  // (2.6, 0.8) is the worked example; the grid walks r - |nu| through the
  // singular-endpoint, unit, and smooth regimes.
  {
    SignedLog closed = bessel_k_moment_integral(2.6, 0.8);
    auto quad = oracle::bessel_moment_integral_by_quadrature(2.6, 0.8);
    CHECK(relative_deviation(closed, quad.value) <= 1e-8);
  }
  for (double nu : {0.0, 0.5, 1.0, 2.7, 5.0}) {
    for (double dr : {0.2, 1.0, 3.0}) {
      double r = std::fabs(nu) + dr;
      SignedLog closed = bessel_k_moment_integral(r, nu);
      auto quad = oracle::bessel_moment_integral_by_quadrature(r, nu);
      CHECK(relative_deviation(closed, quad.value) <= 1e-8);
    }
  }
}
