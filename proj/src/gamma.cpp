// SPDX-License-Identifier: Apache-2.0
#include "fsec/gamma.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fsec::special {

namespace {

// Lanczos approximation, g = 607/128, N = 15 (Godfrey's coefficients).
// Relative error ~1e-15 for Re z >= 0.5.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosCoef[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    3.3994649984811888699e-5,
    4.6523628927048575665e-5,   -9.8374475304879564677e-5,
    1.5808870322491248884e-4,   -2.1026444172410488319e-4,
    2.1743961811521264320e-4,   -1.6431810653676389022e-4,
    8.4418223983852743293e-5,   -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
};

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2*pi)

std::complex<double> lanczos_log_gamma(std::complex<double> z) {
  // valid for Re z >= 0.5
  std::complex<double> sum = kLanczosCoef[0];
  for (int k = 1; k < 15; ++k) sum += kLanczosCoef[k] / (z - 1.0 + double(k));
  const std::complex<double> t = z + (kLanczosG - 0.5);
  return (z - 0.5) * std::log(t) - t + kLogSqrt2Pi + std::log(sum);
}

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

}  // namespace

double integer_distance(double x) { return std::fabs(x - std::round(x)); }

SignedLogGamma log_gamma_signed(double x) {
  if (x > 0.0) return {std::lgamma(x), 1};
  if (is_nonpositive_integer(x)) {
    return {std::numeric_limits<double>::infinity(), 0};
  }
  // reflection: |Gamma(x)| = pi / (|sin(pi x)| * Gamma(1-x))
  const double r = x - std::round(x);  // in (-0.5, 0.5), nonzero here
  const double log_abs = std::log(std::numbers::pi) -
                         std::log(std::fabs(std::sin(std::numbers::pi * r))) -
                         std::lgamma(1.0 - x);
  const int k = static_cast<int>(std::floor(-x));
  const int sign = (k % 2 == 0) ? -1 : 1;
  return {log_abs, sign};
}

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && is_nonpositive_integer(z.real())) {
    std::ostringstream msg;
    msg << "log_gamma: pole at z = " << z.real();
    throw std::domain_error(msg.str());
  }
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  // Push into the Lanczos half-plane. log Gamma(z) = log Gamma(z+n) - sum
  // log(z+j); principal Log keeps the branch exact for Im z != 0, and gives
  // the limit-from-above value on the negative real axis.
  const int n = static_cast<int>(std::ceil(0.5 - z.real()));
  std::complex<double> shift = 0.0;
  for (int j = 0; j < n; ++j) shift += std::log(z + double(j));
  return lanczos_log_gamma(z + double(n)) - shift;
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace fsec::special
