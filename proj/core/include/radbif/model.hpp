#pragma once

// The nonlinearity of the radial problem
//
//   w'' + w'/rho = f_lambda(w) = -lambda w - lambda w / (1 + sqrt(lambda) w),
//
// its potential F_lambda (F' = f, F(0) = 0), the shifted nonlinearities
// h_lambda / h_1 and their C^2 truncation, the substitution u = 1/sqrt(lambda) + w,
// and the radial energy functional whose critical points solve the problem.

#include <span>
#include <vector>

namespace radbif {

/// (lambda, R) with lambda > 0 and R > 0. The admissible states are
/// w > admissible_floor() = -1/sqrt(lambda).
class ProblemParams {
 public:
  ProblemParams(double lambda, double R = 1.0);

  double lambda() const { return lambda_; }
  double radius() const { return R_; }
  double sqrt_lambda() const { return sqrt_lambda_; }
  double admissible_floor() const { return -1.0 / sqrt_lambda_; }

  /// 1 + sqrt(lambda) s > 0
  bool admissible(double s) const;

 private:
  double lambda_;
  double R_;
  double sqrt_lambda_;
};

// Unit-scale forms (lambda = 1), used by the time map and by the log-state
// integrator. v is sqrt(lambda) * w.

/// F_1(v) = -v^2/2 - v + ln(1 + v), cancellation-free near v = 0.
double potential_unit(double v);

/// F_1 evaluated from eta = ln(1 + v); exact even when 1 + v underflows.
double potential_unit_from_log(double eta);

/// H_1(v) = v^2/2 - v + ln(1 + v), the primitive of h_1 with H_1(0) = 0.
double h_one_primitive(double v);

/// f_lambda(s). Throws AdmissibilityError unless 1 + sqrt(lambda) s > 0.
double f_lambda(const ProblemParams& p, double s);

/// df_lambda/ds
double f_lambda_prime(const ProblemParams& p, double s);

/// F_lambda(s) = -lambda s^2/2 - sqrt(lambda) s + ln(1 + sqrt(lambda) s) = F_1(sqrt(lambda) s).
/// Returns -infinity exactly at the floor, throws below it.
double F_lambda(const ProblemParams& p, double s);

/// h_1(s) = s^2 / (1 + s), s > -1.
double h_one(double s);

/// h_lambda(s) = lambda sqrt(lambda) s^2 / (1 + sqrt(lambda) s). Satisfies
/// 2 lambda s - h_lambda(s) = -f_lambda(s).
double h_lambda(const ProblemParams& p, double s);

/// C^2 quadratic continuation of h_1 below a junction s0 in ]-1, 0[.
struct Truncation {
  double s0 = -0.5;
  double value = 0.0;   // h_1(s0)
  double slope = 0.0;   // h_1'(s0)
  double curvature = 0.0;  // h_1''(s0)
};

/// Build the truncation at s0; throws ParameterError unless -1 < s0 < 0.
Truncation truncate_h(double s0 = -0.5);

/// h~_1(s): h_1(s) for s >= s0, quadratic Taylor tail of h_1 at s0 below.
double h_tilde(const Truncation& t, double s);

/// One-sided derivatives (order 0, 1, 2) of the two pieces at the junction.
/// The left values come from the polynomial tail's coefficients, the right
/// values from closed-form derivatives of h_1.
struct JunctionDerivatives {
  double left[3];
  double right[3];
};
JunctionDerivatives junction_derivatives(const Truncation& t);

/// u = 1/sqrt(lambda) + w. Throws AdmissibilityError for w <= floor.
double to_u(const ProblemParams& p, double w);

/// w = u - 1/sqrt(lambda). Throws AdmissibilityError for u <= 0.
double to_w(const ProblemParams& p, double u);

/// Radial profile sampled on a strictly increasing grid in [0, R].
struct SampledProfile {
  std::vector<double> rho;
  std::vector<double> w;
  std::vector<double> wdot;
};

/// Pieces of the radial energy
///   I(w) = 1/2 int rho w'^2 - lambda int rho w^2 + int rho H_1(sqrt(lambda) w),
/// all integrals over [0, R] by composite quadrature on the sample grid.
struct RadialEnergy {
  double gradient = 0.0;   // 1/2 int rho w'^2
  double mass = 0.0;       // lambda int rho w^2
  double nonlinear = 0.0;  // int rho H_1(sqrt(lambda) w)

  double quadratic() const { return gradient - mass; }
  double total() const { return gradient - mass + nonlinear; }
};

/// Throws AdmissibilityError if any sample violates 1 + sqrt(lambda) w > 0,
/// ParameterError for malformed grids.
RadialEnergy radial_energy(const ProblemParams& p, const SampledProfile& profile);

/// Composite Simpson on a (possibly non-uniform) grid; the last interval
/// falls back to the trapezoid rule when the interval count is odd.
double composite_simpson(std::span<const double> x, std::span<const double> y);

}  // namespace radbif
