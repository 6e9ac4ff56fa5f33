// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "fsec/errors.hpp"

namespace fsec::special {

enum class EvalMethod {
  residue_series,
  contour_quadrature,
  double_contour,
  elementary_identity,
};

/// Numeric value plus an absolute-error estimate. Non-finite values are
/// never returned silently; routines throw instead.
struct EvalResult {
  double value = 0.0;
  double abs_err_est = 0.0;
  EvalMethod method = EvalMethod::residue_series;
};

/// Parameter block of G^{m,n}_{p,q}(z | a_1..a_p ; b_1..b_q) with real
/// parameters. Construction validates the order indices and rejects specs
/// whose left and right pole families intersect (a_i - b_j a positive
/// integer for i <= n, j <= m), which would pinch every contour.
class MeijerSpec {
 public:
  MeijerSpec(int m, int n, std::vector<double> a, std::vector<double> b);

  int m() const { return m_; }
  int n() const { return n_; }
  int p() const { return static_cast<int>(a_.size()); }
  int q() const { return static_cast<int>(b_.size()); }
  const std::vector<double>& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }

  /// G^{m,n}_{p,q}(z|a;b) = G^{n,m}_{q,p}(1/z|1-b;1-a).
  MeijerSpec inverted() const;

 private:
  int m_, n_;
  std::vector<double> a_, b_;
};

/// Mellin-Barnes path choice. When the classic separating strip
/// max_j(-b_j) < c < min_i(1-a_i) is non-empty, `abscissa` is its midpoint
/// and `bend` is false. When it is empty the two pole families interleave:
/// `abscissa` is a pole-free line left of all right poles, `bend` is set,
/// and `crossed_left_poles` lists the left-family poles lying on or right
/// of the line, whose residues the quadrature must add back.
struct ContourPlan {
  double abscissa = 0.0;
  bool bend = false;
  std::vector<double> crossed_left_poles;
};

ContourPlan contour_abscissa(const MeijerSpec& spec);

/// Residue-series backend (left-pole Slater expansion; z > 1 via the
/// inversion identity). Coincident poles are regularized by parameter
/// shifts of eps and eps/2 with Richardson extrapolation. Refuses
/// z in [0.9, 1.1] where the p = q series converges too slowly.
EvalResult meijer_g_series(const MeijerSpec& spec, double z,
                           double log_scale = 0.0);

/// Mellin-Barnes quadrature backend: trapezoid on the vertical line with
/// adaptive truncation and node doubling; 45-degree end bends restore
/// exponential decay for balanced slowly-decaying integrands; residue
/// corrections handle interleaved pole families.
EvalResult meijer_g_contour(const MeijerSpec& spec, double z,
                            double log_scale = 0.0);

/// Backend-agreement evaluation: runs both backends (contour only inside
/// the |z|~1 guard band), cross-checks them, and returns the better
/// estimate. Throws accuracy_error carrying both values on disagreement.
/// The result is exp(log_scale) * G(z|a;b); log_scale keeps gamma-product
/// normalizations representable for large shape parameters.
EvalResult meijer_g(const MeijerSpec& spec, double z, double log_scale = 0.0);

}  // namespace fsec::special
