#include "radbif/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "radbif/errors.hpp"

namespace radbif {
namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

// Recursive bisection with a per-panel share of the absolute tolerance.
QuadratureResult adapt(const std::function<double(double)>& f, double a, double b, double tol,
                       unsigned depth, bool& converged) {
  double err = 0.0;
  const double k = Kronrod::integrate(f, a, b, 0, 0.0, &err);
  if (err <= tol || depth == 0 || b - a < 64.0 * std::numeric_limits<double>::epsilon() * std::fabs(b)) {
    if (err > tol) converged = false;
    return {k, err};
  }
  const double m = 0.5 * (a + b);
  const auto left = adapt(f, a, m, 0.5 * tol, depth - 1, converged);
  const auto right = adapt(f, m, b, 0.5 * tol, depth - 1, converged);
  return {left.value + right.value, left.error_estimate + right.error_estimate};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, unsigned max_depth) {
  bool converged = true;
  auto r = adapt(f, a, b, abs_tol, max_depth, converged);
  if (!std::isfinite(r.value)) throw ComputationError("integrate_adaptive: non-finite integrand");
  if (!converged && r.error_estimate > abs_tol) {
    std::ostringstream os;
    os << "integrate_adaptive: error estimate " << r.error_estimate << " above tolerance "
       << abs_tol;
    throw ComputationError(os.str());
  }
  return r;
}

QuadratureResult integrate_composite(const std::function<double(double)>& f, double a, double b,
                                     int panels) {
  if (panels < 1) throw ParameterError("integrate_composite: panels must be >= 1");
  QuadratureResult r;
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * h;
    const double hi = i + 1 == panels ? b : lo + h;
    double err = 0.0;
    r.value += Kronrod::integrate(f, lo, hi, 0, 0.0, &err);
    r.error_estimate += err;
  }
  return r;
}

}  // namespace radbif
