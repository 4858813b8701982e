#pragma once

// Time map of a monotone hump.
//
// For an extremum value h (h > 0, or -1/sqrt(lambda) < h < 0) and s between
// 0 and h,
//
//   T_{lambda,h}(s) = int_0^s dxi / sqrt(2 (F_lambda(xi) - F_lambda(h))),
//
// the rho-length a one-dimensional hump needs to travel from 0 to s. In
// rescaled form T_{lambda,h}(h) = PhiBar(sqrt(lambda) h) / sqrt(2 lambda) with
//
//   PhiBar(s) = int_0^1 s dsigma / sqrt(F_1(sigma s) - F_1(s)).
//
// The inverse-square-root endpoint singularity is removed by sigma = 1 - t^2
// and the potential gap F_1(x) - F_1(s) is evaluated without cancellation,
// including amplitudes whose 1 + s underflows (pass ln(1 + s) instead).

#include "radbif/model.hpp"

namespace radbif {

inline constexpr double kTimeMapTolerance = 1e-10;

struct TimeMapSample {
  double lambda = 0.0;
  double h = 0.0;
  double phi = 0.0;  // T_{lambda,h}(h), sign of h
  double quadrature_error_estimate = 0.0;
};

struct PhiBarValue {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// PhiBar(s) for s > -1, s != 0. Throws DomainError otherwise and
/// ComputationError if the quadrature misses `tol` (absolute).
PhiBarValue phi_bar(double s, double tol = kTimeMapTolerance);

/// PhiBar for the amplitude s = expm1(log_one_plus_s); usable when 1 + s
/// is below the smallest double.
PhiBarValue phi_bar_from_log(double log_one_plus_s, double tol = kTimeMapTolerance);

/// T_{lambda,h}(h).
TimeMapSample phi(const ProblemParams& p, double h, double tol = kTimeMapTolerance);

/// Same with the amplitude given as eta = ln(1 + sqrt(lambda) h).
TimeMapSample phi_from_log(const ProblemParams& p, double eta, double tol = kTimeMapTolerance);

/// T_{lambda,h}(s) for s between 0 and h (inclusive). Throws DomainError for
/// s outside that interval.
double phi_partial(const ProblemParams& p, double h, double s, double tol = kTimeMapTolerance);

/// s between 0 and h with T_{lambda,h}(s) = target. Throws RangeError when
/// target lies outside [0, T(h)] (or [T(h), 0]).
double phi_inverse(const ProblemParams& p, double h, double target, double tol = 1e-12);

/// Versions of phi_partial / phi_inverse keyed by eta = ln(1 + sqrt(lambda) h).
double phi_partial_from_log(const ProblemParams& p, double eta, double s,
                            double tol = kTimeMapTolerance);
double phi_inverse_from_log(const ProblemParams& p, double eta, double target, double tol = 1e-12);

/// Limits of T_{lambda,h}(h) at the ends of the admissible amplitude range.
struct TimeMapLimits {
  double zero_plus = 0.0;   // h -> 0+:  pi / (2 sqrt(2 lambda))
  double infinity = 0.0;    // h -> +inf: pi / (2 sqrt(lambda))
  double zero_minus = 0.0;  // h -> 0-:  -pi / (2 sqrt(2 lambda))
  double floor = 0.0;       // sqrt(lambda) h -> -1+: 0
};
TimeMapLimits time_map_limits(double lambda);

/// F_1(s + d) - F_1(s) with s = expm1(log_one_plus_s), free of cancellation
/// for small |d| and valid when 1 + s underflows. Exposed for testing.
double potential_gap(double log_one_plus_s, double d);

}  // namespace radbif
