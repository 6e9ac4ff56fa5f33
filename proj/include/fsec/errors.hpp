// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace fsec {

// Raised when a numerical routine cannot certify its result: backend
// disagreement, non-convergent refinement, exhausted budgets. Carries the
// competing values so callers and tests can inspect how far apart they were.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double primary, double secondary,
                 double err_est)
      : std::runtime_error(what),
        primary_value(primary),
        secondary_value(secondary),
        abs_err_est(err_est) {}

  explicit accuracy_error(const std::string& what)
      : accuracy_error(what, 0.0, 0.0, 0.0) {}

  double primary_value;
  double secondary_value;
  double abs_err_est;
};

}  // namespace fsec
