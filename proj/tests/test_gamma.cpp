// SPDX-License-Identifier: Apache-2.0
#include "fsec/gamma.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"

using fsec::special::integer_distance;
using fsec::special::log_beta;
using fsec::special::log_gamma;
using fsec::special::log_gamma_signed;

namespace {
void check_close(std::complex<double> got, std::complex<double> want,
                 double rtol) {
  CHECK(std::abs(got - want) <= rtol * std::abs(want));
}
}  // namespace

TEST_CASE("log_gamma at classic points") {
  CHECK(std::abs(log_gamma({1.0, 0.0})) < 1e-14);
  CHECK(std::abs(log_gamma({2.0, 0.0})) < 1e-14);
  // Gamma(1/2) = sqrt(pi)
  CHECK(log_gamma({0.5, 0.0}).real() ==
        doctest::Approx(0.57236494292470008707).epsilon(1e-14));
  CHECK(log_gamma({12.25, 0.0}).real() ==
        doctest::Approx(18.11566950571089261902).epsilon(1e-14));
}

TEST_CASE("log_gamma complex reference values") {
  // high-precision references computed with an independent
  // arbitrary-precision package before the build
  check_close(log_gamma({3.0, 4.0}),
              {-1.756626784603784110531, 4.742664438034657928195}, 1e-13);
  check_close(log_gamma({-2.5, 1.5}),
              {-3.717513451191791846159, -7.713065525834192525969}, 1e-13);
  check_close(log_gamma({-4.3, -2.2}),
              {-8.226902686595622861665, 11.55281400127974119316}, 1e-13);
  check_close(log_gamma({0.5, 200.0}),
              {-313.2403268257746511045, 859.6636816432444906711}, 1e-13);
  check_close(log_gamma({-30.7, 90.0}),
              {-281.4502486880969783506, 260.6698634505789923729}, 1e-13);
  check_close(log_gamma({0.001, 0.001}),
              {6.560604473837552639565, -0.785973734929653434836}, 1e-13);
}

TEST_CASE("log_gamma pole rejection") {
  CHECK_THROWS_AS((void)log_gamma({0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS((void)log_gamma({-3.0, 0.0}), std::domain_error);
}

TEST_CASE("log_gamma agrees with lgamma on the positive axis") {
  for (double x = 0.05; x < 60.0; x += 0.173) {
    const auto lg = log_gamma({x, 0.0});
    CHECK(lg.imag() == 0.0);
    CHECK(lg.real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  }
}

TEST_CASE("signed log gamma on the negative axis") {
  // Gamma(-0.5) = -2 sqrt(pi), Gamma(-1.5) = 4 sqrt(pi)/3
  auto g = log_gamma_signed(-0.5);
  CHECK(g.sign == -1);
  CHECK(std::exp(g.log_abs) == doctest::Approx(2.0 * std::sqrt(M_PI)).epsilon(1e-13));
  g = log_gamma_signed(-1.5);
  CHECK(g.sign == 1);
  CHECK(std::exp(g.log_abs) ==
        doctest::Approx(4.0 * std::sqrt(M_PI) / 3.0).epsilon(1e-13));
  g = log_gamma_signed(-4.0);
  CHECK(g.sign == 0);
  CHECK(std::isinf(g.log_abs));
}

TEST_CASE("signed log gamma matches reflection identity") {
  // Gamma(x) Gamma(1-x) = pi / sin(pi x)
  for (double x : {-0.3, -1.7, -2.2, -5.9, -10.45}) {
    const auto g = log_gamma_signed(x);
    const double lhs = g.log_abs + std::lgamma(1.0 - x);
    const double rhs = std::log(std::fabs(M_PI / std::sin(M_PI * x)));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(g.sign == (std::sin(M_PI * x) > 0 ? 1 : -1));
  }
}

TEST_CASE("log_beta") {
  CHECK(log_beta(1.0, 1.0) == doctest::Approx(0.0));
  CHECK(log_beta(0.6, 3.7) ==
        doctest::Approx(-0.3547148616325463178286).epsilon(1e-14));
}

TEST_CASE("integer_distance") {
  CHECK(integer_distance(3.0) == 0.0);
  CHECK(integer_distance(2.5) == doctest::Approx(0.5));
  CHECK(integer_distance(-1.9999) == doctest::Approx(0.0001).epsilon(1e-8));
}
