/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vgmom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "vgmom/detail/numeric.hpp"
#include "vgmom/errors.hpp"

namespace vgmom::oracle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (positive half; the rule
// is symmetric). Kronrod nodes with odd index are the embedded 7-point
// Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double a, b;
  double log_integral;  // ln of the 15-point estimate (integrand >= 0)
  double log_error;     // ln |K15 - G7|
};

Panel evaluate_panel(const std::function<double(double)>& log_f, double a,
                     double b) {
  double center = 0.5 * (a + b);
  double half = 0.5 * (b - a);
  double logs[15];
  double max_log = kNegInf;
  for (int i = 0; i < 7; ++i) {
    logs[i] = log_f(center - half * kXgk[i]);
    logs[14 - i] = log_f(center + half * kXgk[i]);
    max_log = std::max({max_log, logs[i], logs[14 - i]});
  }
  logs[7] = log_f(center);
  max_log = std::max(max_log, logs[7]);
  if (max_log == kNegInf) return {a, b, kNegInf, kNegInf};

  double fk = 0.0, fg = 0.0;
  for (int i = 0; i < 7; ++i) {
    double lo = std::exp(logs[i] - max_log);
    double hi = std::exp(logs[14 - i] - max_log);
    fk += kWgk[i] * (lo + hi);
    if (i % 2 == 1) fg += kWg[(i - 1) / 2] * (lo + hi);
  }
  double fc = std::exp(logs[7] - max_log);
  fk += kWgk[7] * fc;
  fg += kWg[3] * fc;

  double scale = max_log + std::log(half);
  double diff = std::fabs(fk - fg);
  return {a, b, scale + std::log(fk),
          diff > 0.0 ? scale + std::log(diff) : kNegInf};
}

}  // namespace

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw ValidationError("rel_tol",
                          "QuadratureSettings: rel_tol must lie in (0, 1)");
  if (!(abs_tol > 0.0))
    throw ValidationError("abs_tol",
                          "QuadratureSettings: abs_tol must be positive");
  if (max_subdivisions < 10)
    throw ValidationError("max_subdivisions",
                          "QuadratureSettings: max_subdivisions must be >= 10");
}

QuadratureResult integrate_log(const std::function<double(double)>& log_f,
                               double a, double b,
                               const QuadratureSettings& settings,
                               const std::vector<double>& seeds) {
  settings.validate();
  if (!(b > a))
    throw ValidationError("interval", "integrate_log: requires b > a");

  std::vector<double> edges = {a, b};
  for (double s : seeds)
    if (s > a && s < b) edges.push_back(s);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<Panel> initial;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    initial.push_back(evaluate_panel(log_f, edges[i], edges[i + 1]));

  // All bookkeeping runs in linear space relative to a fixed scale taken
  // from the initial pass; contributions more than ~700 nats below it
  // underflow to zero, which is far beneath any admissible tolerance.
  double scale = kNegInf;
  for (const Panel& p : initial) scale = std::max(scale, p.log_integral);
  int panels = static_cast<int>(initial.size());
  if (scale == kNegInf) return {SignedLog::zero(), 0.0, panels};

  auto lin = [scale](double lg) {
    return lg == kNegInf ? 0.0 : std::exp(lg - scale);
  };

  auto worse = [](const Panel& p, const Panel& q) {
    return p.log_error < q.log_error;
  };
  std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(worse);
  double total_i = 0.0, total_e = 0.0;
  for (const Panel& p : initial) {
    total_i += lin(p.log_integral);
    total_e += lin(p.log_error);
    queue.push(p);
  }

  const double abs_target = settings.abs_tol * std::exp(-scale);
  std::vector<Panel> settled;
  while (panels < settings.max_subdivisions && !queue.empty()) {
    if (total_e <= std::max(settings.rel_tol * total_i, abs_target)) break;
    Panel worst = queue.top();
    if (worst.log_error == kNegInf) break;  // nothing left to improve
    queue.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {  // interval at double resolution
      settled.push_back(worst);
      continue;
    }
    Panel left = evaluate_panel(log_f, worst.a, mid);
    Panel right = evaluate_panel(log_f, mid, worst.b);
    total_i += lin(left.log_integral) + lin(right.log_integral) -
               lin(worst.log_integral);
    total_e += lin(left.log_error) + lin(right.log_error) -
               lin(worst.log_error);
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  // Clean recombination pass over every panel.
  std::vector<Panel> all = std::move(settled);
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  detail::KahanSum sum_i, sum_e;
  for (const Panel& p : all) {
    sum_i.add(lin(p.log_integral));
    sum_e.add(lin(p.log_error));
  }
  if (sum_i.sum <= 0.0) return {SignedLog::zero(), 0.0, panels};
  double log_value = scale + std::log(sum_i.sum);
  double rel_err = sum_e.sum / sum_i.sum;
  bool within_abs =
      sum_e.sum > 0.0 ? scale + std::log(sum_e.sum) <= std::log(settings.abs_tol)
                      : true;
  if (rel_err > settings.rel_tol && !within_abs &&
      panels >= settings.max_subdivisions) {
    throw ToleranceError(
        "integrate_log: subdivision budget exhausted (achieved relative "
        "error " + std::to_string(rel_err) + ")",
        rel_err, 1.0, log_value);
  }
  return {SignedLog::positive(log_value), rel_err, panels};
}

}  // namespace vgmom::oracle
