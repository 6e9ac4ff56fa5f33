// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace fsec::special {

/// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0,1].
/// Continued fraction (modified Lentz), switching to the mirrored tail for
/// x above the mean so the CF always converges quickly.
double reg_inc_beta(double a, double b, double x);

}  // namespace fsec::special
