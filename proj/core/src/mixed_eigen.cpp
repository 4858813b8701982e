#include "radbif/mixed_eigen.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>

#include "radbif/errors.hpp"
#include "radbif/ode.hpp"

namespace radbif {
namespace {

using State2 = ode::State<2>;  // (w, rho w')

void require_interval(MixedKind kind, double a, double b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) {
    throw ParameterError("mixed eigenproblem: need 0 <= a < b");
  }
  if (kind == MixedKind::DirichletNeumann && a == 0.0) {
    throw ParameterError("mixed eigenproblem: Dirichlet end at the centre is singular");
  }
}

State2 shoot_to(MixedKind kind, double a, double b, double mu) {
  const auto rhs = [mu](double rho, const State2& y) { return State2{y[1] / rho, -mu * rho * y[0]}; };
  double t = a;
  State2 y;
  if (kind == MixedKind::NeumannDirichlet) {
    if (a == 0.0) {
      // Regular solution J0(sqrt(mu) rho) ~ 1 - mu rho^2 / 4.
      t = 1e-6 * b;
      y = {1.0 - 0.25 * mu * t * t, -0.5 * mu * t * t};
    } else {
      y = {1.0, 0.0};
    }
  } else {
    y = {0.0, a};
  }
  State2 k1 = rhs(t, y);
  double h = 1e-3 * (b - a);
  for (int guard = 0; guard < 1'000'000; ++guard) {
    if (t >= b) return y;
    const bool last = t + h >= b;
    const double step = last ? b - t : h;
    const auto res = ode::dopri5_step(rhs, t, y, k1, step, 1e-13, 1e-15);
    if (res.error_norm > 1.0) {
      h = step * std::max(0.2, ode::step_factor(res.error_norm));
      continue;
    }
    t = last ? b : t + step;
    y = res.y;
    k1 = res.dydt;
    h = step * ode::step_factor(res.error_norm);
  }
  throw ComputationError("mixed eigenproblem: integration did not finish");
}

}  // namespace

double mixed_residual(MixedKind kind, double a, double b, double mu) {
  require_interval(kind, a, b);
  const State2 y = shoot_to(kind, a, b, mu);
  return kind == MixedKind::NeumannDirichlet ? y[0] : y[1] / b;
}

double mixed_eigenvalue(MixedKind kind, double a, double b, double tol) {
  require_interval(kind, a, b);
  const double L = b - a;
  auto f = [&](double mu) { return mixed_residual(kind, a, b, mu); };
  // The residual is positive for small mu; march until the first sign change.
  double lo = 1e-2 / (L * L);
  double f_lo = f(lo);
  if (!(f_lo > 0.0)) throw ComputationError("mixed eigenproblem: starting value above the first eigenvalue");
  double hi = lo, f_hi = f_lo;
  for (int i = 0; i < 400 && f_hi > 0.0; ++i) {
    lo = hi;
    f_lo = f_hi;
    hi = lo * 1.1;
    f_hi = f(hi);
  }
  if (f_hi > 0.0) throw ComputationError("mixed eigenproblem: no sign change found");
  if (f_hi == 0.0) return hi;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      f, lo, hi, f_lo, f_hi,
      [tol](double x, double y) { return std::fabs(x - y) <= tol * std::fabs(x); }, iters);
  if (iters >= 200) throw ComputationError("mixed eigenproblem: root finder did not converge");
  return 0.5 * (r.first + r.second);
}

LambdaBounds lambda_bounds(int k, double R) {
  if (k < 1) throw ParameterError("lambda_bounds: k must be at least 1");
  if (!(R > 0.0) || !std::isfinite(R)) throw ParameterError("lambda_bounds: R must be positive");
  LambdaBounds out;
  out.k = k;
  out.radius = R;
  out.lower = 0.5 * mixed_eigenvalue(MixedKind::NeumannDirichlet, 0.0, R);

  const double L = R / (2.0 * k);
  const double span = R - L;
  auto best_at = [&](double a, MixedKind& kind) {
    double v = mixed_eigenvalue(MixedKind::NeumannDirichlet, a, a + L, 1e-10);
    kind = MixedKind::NeumannDirichlet;
    if (a > 0.0) {
      const double d = mixed_eigenvalue(MixedKind::DirichletNeumann, a, a + L, 1e-10);
      if (d > v) {
        v = d;
        kind = MixedKind::DirichletNeumann;
      }
    }
    return v;
  };
  constexpr int kGrid = 32;
  double best = -1.0, best_a = 0.0;
  MixedKind best_kind = MixedKind::NeumannDirichlet;
  for (int i = 0; i <= kGrid; ++i) {
    const double a = span * i / kGrid;
    MixedKind kind;
    const double v = best_at(a, kind);
    if (v > best) {
      best = v;
      best_a = a;
      best_kind = kind;
    }
  }
  // Golden-section refinement between the neighbouring grid points.
  if (span > 0.0) {
    const double lo = std::max(0.0, best_a - span / kGrid);
    const double hi = std::min(span, best_a + span / kGrid);
    auto neg = [&](double a) {
      MixedKind kind;
      return -best_at(a, kind);
    };
    const auto [a_opt, v_opt] = boost::math::tools::brent_find_minima(neg, lo, hi, 30);
    if (-v_opt > best) {
      best = -v_opt;
      best_a = a_opt;
      best_at(a_opt, best_kind);
    }
  }
  out.upper = best;
  out.upper_at = best_a;
  out.upper_kind = best_kind;
  return out;
}

}  // namespace radbif
