// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

namespace fsec::special {

/// log|Gamma(x)| together with the sign of Gamma(x). At a pole
/// (x = 0, -1, -2, ...) log_abs is +infinity and sign is 0, so that
/// exp(-log_abs) naturally yields the correct 1/Gamma = 0 in downstream
/// products.
struct SignedLogGamma {
  double log_abs;
  int sign;  // +1, -1, or 0 at poles
};

SignedLogGamma log_gamma_signed(double x);

/// Principal-branch log-gamma for complex arguments. Lanczos for
/// Re z >= 0.5, recurrence pushdown otherwise (branch-exact off the real
/// axis). Throws std::domain_error at the poles z = 0, -1, -2, ...
std::complex<double> log_gamma(std::complex<double> z);

double log_beta(double a, double b);

/// Distance from x to the nearest integer.
double integer_distance(double x);

}  // namespace fsec::special
