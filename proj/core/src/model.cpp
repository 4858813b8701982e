#include "radbif/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "radbif/errors.hpp"

namespace radbif {
namespace {

// log1p(v) - v + v^2/2 - ... starting at the v^n term; |v| < 0.1 only.
double log1p_tail(double v, int first_power) {
  double term = std::pow(v, first_power);
  double sum = 0.0;
  for (int n = first_power; n < first_power + 40; ++n) {
    const double contrib = (n % 2 == 1 ? term : -term) / n;
    sum += contrib;
    if (std::fabs(contrib) < 1e-18 * std::fabs(sum)) break;
    term *= v;
  }
  return sum;
}

constexpr double kSeriesRadius = 0.1;

void require_admissible(const ProblemParams& p, double s, const char* who) {
  if (!p.admissible(s)) {
    throw AdmissibilityError(std::string(who) + ": 1 + sqrt(lambda) s must be positive");
  }
}

}  // namespace

ProblemParams::ProblemParams(double lambda, double R) : lambda_(lambda), R_(R) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be positive");
  if (!(R > 0.0) || !std::isfinite(R)) throw ParameterError("R must be positive");
  sqrt_lambda_ = std::sqrt(lambda);
}

bool ProblemParams::admissible(double s) const {
  return std::isfinite(s) && 1.0 + sqrt_lambda_ * s > 0.0;
}

double potential_unit(double v) {
  if (std::fabs(v) < kSeriesRadius) {
    // -v^2/2 + (log1p(v) - v), with log1p(v) - v = -v^2/2 + v^3/3 - ...
    return -v * v + log1p_tail(v, 3);
  }
  return -0.5 * v * v - v + std::log1p(v);
}

double potential_unit_from_log(double eta) {
  const double v = std::expm1(eta);
  if (std::fabs(v) < kSeriesRadius) return potential_unit(v);
  return -0.5 * v * v - v + eta;
}

double h_one_primitive(double v) {
  if (!(v > -1.0)) throw AdmissibilityError("h_one_primitive: argument must exceed -1");
  if (std::fabs(v) < kSeriesRadius) return log1p_tail(v, 3);
  return 0.5 * v * v - v + std::log1p(v);
}

double f_lambda(const ProblemParams& p, double s) {
  require_admissible(p, s, "f_lambda");
  const double l = p.lambda();
  return -l * s - l * s / (1.0 + p.sqrt_lambda() * s);
}

double f_lambda_prime(const ProblemParams& p, double s) {
  require_admissible(p, s, "f_lambda_prime");
  const double d = 1.0 + p.sqrt_lambda() * s;
  return -p.lambda() - p.lambda() / (d * d);
}

double F_lambda(const ProblemParams& p, double s) {
  if (std::isfinite(s) && 1.0 + p.sqrt_lambda() * s == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  require_admissible(p, s, "F_lambda");
  return potential_unit(p.sqrt_lambda() * s);
}

double h_one(double s) {
  if (!(s > -1.0)) throw AdmissibilityError("h_one: argument must exceed -1");
  return s * s / (1.0 + s);
}

double h_lambda(const ProblemParams& p, double s) {
  require_admissible(p, s, "h_lambda");
  return p.lambda() * p.sqrt_lambda() * s * s / (1.0 + p.sqrt_lambda() * s);
}

Truncation truncate_h(double s0) {
  if (!(s0 > -1.0 && s0 < 0.0)) throw ParameterError("truncation junction s0 must lie in ]-1, 0[");
  const double d = 1.0 + s0;
  Truncation t;
  t.s0 = s0;
  t.value = s0 * s0 / d;
  t.slope = 1.0 - 1.0 / (d * d);
  t.curvature = 2.0 / (d * d * d);
  return t;
}

double h_tilde(const Truncation& t, double s) {
  if (s >= t.s0) return h_one(s);
  const double ds = s - t.s0;
  return t.value + t.slope * ds + 0.5 * t.curvature * ds * ds;
}

JunctionDerivatives junction_derivatives(const Truncation& t) {
  const double d = 1.0 + t.s0;
  JunctionDerivatives j{};
  // Quadratic tail a + b (s - s0) + c/2 (s - s0)^2 at s = s0.
  j.left[0] = t.value;
  j.left[1] = t.slope;
  j.left[2] = t.curvature;
  // h_1 = s^2/(1+s), h_1' = 1 - (1+s)^-2, h_1'' = 2 (1+s)^-3.
  j.right[0] = t.s0 * t.s0 / d;
  j.right[1] = 1.0 - 1.0 / (d * d);
  j.right[2] = 2.0 / (d * d * d);
  return j;
}

double to_u(const ProblemParams& p, double w) {
  require_admissible(p, w, "to_u");
  return 1.0 / p.sqrt_lambda() + w;
}

double to_w(const ProblemParams& p, double u) {
  if (!(u > 0.0) || !std::isfinite(u)) throw AdmissibilityError("to_w: u must be positive");
  return u - 1.0 / p.sqrt_lambda();
}

double composite_simpson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ParameterError("composite_simpson: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double sum = 0.0;
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    const double hs = h0 + h1;
    // Simpson's rule for unequal sub-intervals.
    sum += hs / 6.0 *
           ((2.0 - h1 / h0) * y[i] + hs * hs / (h0 * h1) * y[i + 1] + (2.0 - h0 / h1) * y[i + 2]);
  }
  if (i + 1 < n) sum += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
  return sum;
}

RadialEnergy radial_energy(const ProblemParams& p, const SampledProfile& profile) {
  const auto& rho = profile.rho;
  const std::size_t n = rho.size();
  if (profile.w.size() != n || profile.wdot.size() != n) {
    throw ParameterError("radial_energy: profile columns differ in length");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(rho[i] > rho[i - 1])) throw ParameterError("radial_energy: grid must increase strictly");
  }
  std::vector<double> grad(n), mass(n), nonlin(n);
  for (std::size_t i = 0; i < n; ++i) {
    require_admissible(p, profile.w[i], "radial_energy");
    grad[i] = rho[i] * profile.wdot[i] * profile.wdot[i];
    mass[i] = rho[i] * profile.w[i] * profile.w[i];
    nonlin[i] = rho[i] * h_one_primitive(p.sqrt_lambda() * profile.w[i]);
  }
  RadialEnergy e;
  e.gradient = 0.5 * composite_simpson(rho, grad);
  e.mass = p.lambda() * composite_simpson(rho, mass);
  e.nonlinear = composite_simpson(rho, nonlin);
  return e;
}

}  // namespace radbif
