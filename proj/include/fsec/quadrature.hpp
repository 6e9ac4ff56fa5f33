// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "fsec/errors.hpp"

namespace fsec::quad {

struct QuadOutcome {
  double value = 0.0;
  double abs_err_est = 0.0;
  std::size_t subdivisions = 0;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (QUADPACK constants).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double a, double b, double& result, double& err) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double res_g = fc * kWg[3];
  double res_k = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    res_k += kWgk[j] * fsum;
    if (j % 2 == 1) res_g += kWg[j / 2] * fsum;
  }
  result = res_k * half;
  err = std::fabs((res_k - res_g) * half);
  // QUADPACK-style sharpening of the raw difference
  if (err > 0.0) {
    const double scale = std::pow(200.0 * err / std::fabs(result + 1e-300), 1.5);
    if (scale < 1.0) err = std::fabs(result) * scale;
  }
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration over a panel list. Panels are given by
/// consecutive breakpoints; the worst panel is split until the summed error
/// estimate meets max(atol, rtol*|I|) or the subdivision budget runs out.
template <class F>
QuadOutcome integrate_panels(const F& f, std::vector<double> breakpoints,
                             double rtol, double atol,
                             std::size_t max_subdivisions = 4000) {
  struct Panel {
    double a, b, value, err;
  };
  std::vector<Panel> panels;
  panels.reserve(breakpoints.size() + max_subdivisions);
  std::sort(breakpoints.begin(), breakpoints.end());
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] <= breakpoints[i]) continue;
    Panel p{breakpoints[i], breakpoints[i + 1], 0, 0};
    detail::gk15(f, p.a, p.b, p.value, p.err);
    panels.push_back(p);
  }

  QuadOutcome out;
  for (;;) {
    double total = 0.0, total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      total_err += panels[i].err;
      if (panels[i].err > panels[worst].err) worst = i;
    }
    out.value = total;
    out.abs_err_est = total_err;
    if (total_err <= std::max(atol, rtol * std::fabs(total))) return out;
    if (out.subdivisions >= max_subdivisions) {
      throw accuracy_error("integrate_panels: subdivision budget exhausted",
                           total, total, total_err);
    }
    const Panel old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    Panel left{old.a, mid, 0, 0}, right{mid, old.b, 0, 0};
    detail::gk15(f, left.a, left.b, left.value, left.err);
    detail::gk15(f, right.a, right.b, right.value, right.err);
    panels[worst] = left;
    panels.push_back(right);
    ++out.subdivisions;
  }
}

/// Geometric breakpoints from lo to hi with roughly `per_decade` points per
/// decade; endpoints always included.
inline std::vector<double> log_breakpoints(double lo, double hi,
                                           int per_decade = 4) {
  std::vector<double> pts{lo};
  const double ratio = std::pow(10.0, 1.0 / per_decade);
  for (double x = lo * ratio; x < hi; x *= ratio) pts.push_back(x);
  pts.push_back(hi);
  return pts;
}

}  // namespace fsec::quad
