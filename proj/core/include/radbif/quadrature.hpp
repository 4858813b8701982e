#pragma once

#include <functional>

namespace radbif {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive 15-point Gauss-Kronrod on [a, b] with absolute tolerance.
/// Throws ComputationError when the error estimate stays above the
/// tolerance after the maximum bisection depth; the message carries the
/// estimate.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, unsigned max_depth = 30);

/// Composite 15-point Gauss-Kronrod over `panels` equal panels; the error
/// estimate is the summed |K15 - G7| difference.
QuadratureResult integrate_composite(const std::function<double(double)>& f, double a, double b,
                                     int panels);

}  // namespace radbif
