#include "radbif/timemap.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "radbif/errors.hpp"
#include "radbif/quadrature.hpp"

namespace radbif {
namespace {

// log1p(x) - x
double log1p_minus_x(double x) {
  if (std::fabs(x) < 0.1) {
    double term = x * x;
    double sum = 0.0;
    for (int n = 2; n < 40; ++n) {
      const double contrib = (n % 2 == 1 ? term : -term) / n;
      sum += contrib;
      if (std::fabs(contrib) < 1e-18 * std::fabs(sum)) break;
      term *= x;
    }
    return sum;
  }
  return std::log1p(x) - x;
}

double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

// Unit-scale amplitude v = sqrt(lambda) h, carried with eta = ln(1 + v).
struct Amplitude {
  double eta;
  double v;
};

Amplitude make_amplitude(double eta) {
  if (!std::isfinite(eta)) throw DomainError("time map: amplitude outside ]-1, inf[");
  const double v = std::expm1(eta);
  if (v == 0.0) throw DomainError("time map: amplitude must be nonzero");
  return {eta, v};
}

// Length measure between a (unit scale, between 0 and v) and the extremum v:
//   K(a) = int |dx| / sqrt(2 (F_1(x) - F_1(v))),   x from a to v,
// computed with x = v + (a - v) t^2.
QuadratureResult length_to_extremum(const Amplitude& amp, double a, double tol) {
  const double span = a - amp.v;
  if (span == 0.0) return {0.0, 0.0};
  // |f_1(v)| for the t -> 0 limit of the integrand.
  const double slope = std::fabs(-amp.v - amp.v * std::exp(-amp.eta));
  auto integrand = [&](double t) {
    const double gap = potential_gap(amp.eta, span * t * t);
    if (!(gap > 0.0)) {
      return std::numbers::sqrt2 * std::sqrt(std::fabs(span) / slope);
    }
    return 2.0 * std::fabs(span) * t / std::sqrt(2.0 * gap);
  };
  return integrate_adaptive(integrand, 0.0, 1.0, tol);
}

void require_between(double s, double h, const char* who) {
  const bool ok = h > 0.0 ? (s >= 0.0 && s <= h) : (s <= 0.0 && s >= h);
  if (!ok) throw DomainError(std::string(who) + ": s must lie between 0 and h");
}

double eta_of(const ProblemParams& p, double h) {
  if (!p.admissible(h)) throw DomainError("time map: h must satisfy 1 + sqrt(lambda) h > 0");
  return std::log1p(p.sqrt_lambda() * h);
}

}  // namespace

double potential_gap(double log_one_plus_s, double d) {
  const double s = std::expm1(log_one_plus_s);
  const double one_plus_s = std::exp(log_one_plus_s);
  if (one_plus_s > 1e-300 && std::fabs(d) <= 0.5 * one_plus_s) {
    const double x = d / one_plus_s;
    return -s * d * (2.0 + s) / one_plus_s - 0.5 * d * d + log1p_minus_x(x);
  }
  // 1 + s + d > 0 whenever s + d lies in the admissible range.
  const double one_plus_x = one_plus_s + d;
  return -s * d - 0.5 * d * d - d + (std::log(one_plus_x) - log_one_plus_s);
}

PhiBarValue phi_bar_from_log(double log_one_plus_s, double tol) {
  const Amplitude amp = make_amplitude(log_one_plus_s);
  const auto k = length_to_extremum(amp, 0.0, tol / std::numbers::sqrt2);
  return {sign(amp.v) * std::numbers::sqrt2 * k.value, std::numbers::sqrt2 * k.error_estimate};
}

PhiBarValue phi_bar(double s, double tol) {
  if (!std::isfinite(s) || !(s > -1.0)) throw DomainError("phi_bar: s must exceed -1");
  if (s == 0.0) throw DomainError("phi_bar: s must be nonzero");
  return phi_bar_from_log(std::log1p(s), tol);
}

TimeMapSample phi_from_log(const ProblemParams& p, double eta, double tol) {
  const double scale = std::sqrt(2.0 * p.lambda());
  const auto pb = phi_bar_from_log(eta, tol * scale);
  TimeMapSample out;
  out.lambda = p.lambda();
  out.h = std::expm1(eta) / p.sqrt_lambda();
  out.phi = pb.value / scale;
  out.quadrature_error_estimate = pb.error_estimate / scale;
  return out;
}

TimeMapSample phi(const ProblemParams& p, double h, double tol) {
  if (h == 0.0) throw DomainError("phi: h must be nonzero");
  return phi_from_log(p, eta_of(p, h), tol);
}

double phi_partial_from_log(const ProblemParams& p, double eta, double s, double tol) {
  const Amplitude amp = make_amplitude(eta);
  const double h = amp.v / p.sqrt_lambda();
  // h rebuilt from eta can be an ulp off the caller's h; K grows like the
  // square root of the distance to the extremum, so snap instead of
  // integrating a spurious sliver.
  if (std::fabs(s - h) <= 1e-14 * std::fabs(h)) s = h;
  require_between(s, h, "phi_partial");
  if (s == 0.0) return 0.0;
  const double ktol = 0.5 * tol * p.sqrt_lambda();
  const double full = length_to_extremum(amp, 0.0, ktol).value;
  if (s == h) return sign(amp.v) * full / p.sqrt_lambda();
  const double rest = length_to_extremum(amp, p.sqrt_lambda() * s, ktol).value;
  return sign(amp.v) * (full - rest) / p.sqrt_lambda();
}

double phi_partial(const ProblemParams& p, double h, double s, double tol) {
  if (h == 0.0) throw DomainError("phi_partial: h must be nonzero");
  return phi_partial_from_log(p, eta_of(p, h), s, tol);
}

double phi_inverse_from_log(const ProblemParams& p, double eta, double target, double tol) {
  const Amplitude amp = make_amplitude(eta);
  const double sl = p.sqrt_lambda();
  const double h = amp.v / sl;
  const double ktol = tol * sl;
  const double full = length_to_extremum(amp, 0.0, ktol).value;
  const double t_h = sign(amp.v) * full / sl;
  const double lo = std::min(0.0, t_h);
  const double hi = std::max(0.0, t_h);
  // Targets computed from T(h) at a different tolerance may overshoot slightly.
  const double margin = 1e-8 * std::fabs(t_h);
  if (target < lo && target >= lo - margin) target = lo;
  if (target > hi && target <= hi + margin) target = hi;
  if (!(target >= lo && target <= hi)) {
    throw RangeError("phi_inverse: target outside the range of the time map");
  }
  if (target == 0.0) return 0.0;
  if (target == t_h) return h;
  // K decreases from `full` at a = 0 to 0 at a = v.
  const double goal = full - std::fabs(target) * sl;
  auto residual = [&](double a) { return length_to_extremum(amp, a, ktol).value - goal; };
  double a0 = 0.0;
  double a1 = amp.v;
  if (a0 > a1) std::swap(a0, a1);
  const double r0 = residual(a0);
  const double r1 = residual(a1);
  if (r0 == 0.0) return a0 / sl;
  if (r1 == 0.0) return a1 / sl;
  std::uintmax_t iters = 200;
  const auto [x0, x1] = boost::math::tools::toms748_solve(
      residual, a0, a1, r0, r1, boost::math::tools::eps_tolerance<double>(50), iters);
  if (iters >= 200) throw ComputationError("phi_inverse: root finder did not converge");
  return 0.5 * (x0 + x1) / sl;
}

double phi_inverse(const ProblemParams& p, double h, double target, double tol) {
  if (h == 0.0) throw DomainError("phi_inverse: h must be nonzero");
  return phi_inverse_from_log(p, eta_of(p, h), target, tol);
}

TimeMapLimits time_map_limits(double lambda) {
  if (!(lambda > 0.0)) throw ParameterError("time_map_limits: lambda must be positive");
  TimeMapLimits l;
  l.zero_plus = std::numbers::pi / (2.0 * std::sqrt(2.0 * lambda));
  l.infinity = std::numbers::pi / (2.0 * std::sqrt(lambda));
  l.zero_minus = -l.zero_plus;
  l.floor = 0.0;
  return l;
}

}  // namespace radbif
