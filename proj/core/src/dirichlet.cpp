#include "radbif/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radbif/errors.hpp"

namespace radbif {

DirichletShot dirichlet_shot(double lambda, double u0, double R, double u_tol, const Tolerances& tol) {
  if (!(u0 > 0.0) || !std::isfinite(u0)) throw ParameterError("dirichlet_shot: u0 must be positive");
  const ProblemParams p(lambda, R);
  const double inv = 1.0 / p.sqrt_lambda();
  DirichletShot d;
  d.lambda = lambda;
  d.u0 = u0;
  const double h0 = u0 - inv;
  // u = e^eta / sqrt(lambda)
  const double log_scale = -std::log(p.sqrt_lambda());
  if (h0 == 0.0) {
    // Constant solution u = 1/sqrt(lambda).
    d.u_R = d.min_u = u0;
    d.log_u_R = d.log_min_u = std::log(u0);
  } else {
    const ShotSummary s = shoot(p, h0, tol);
    d.escaped = s.escaped;
    d.log_u_R = s.eta_R + log_scale;
    d.log_min_u = std::min(s.min_log_admissibility, s.eta_R) + log_scale;
    d.u_R = std::exp(d.log_u_R);
    d.min_u = std::exp(d.log_min_u);
    d.udot_R = s.wdot_R;
    d.singular_rho = s.floor_rho;
    d.singular = s.floor_rho >= 0.0;
  }
  d.hit = !d.escaped && std::isfinite(d.udot_R) && d.u_R < u_tol;
  return d;
}

DirichletReport dirichlet_probe(const std::vector<double>& lambdas, const std::vector<double>& u0s, double R,
                                double u_tol, const Tolerances& tol) {
  DirichletReport rep;
  rep.radius = R;
  rep.u_tol = u_tol;
  rep.lambdas = lambdas;
  rep.u0s = u0s;
  rep.min_log_u_R = std::numeric_limits<double>::infinity();
  rep.shots.reserve(lambdas.size() * u0s.size());
  for (double l : lambdas) {
    for (double u0 : u0s) {
      const DirichletShot d = dirichlet_shot(l, u0, R, u_tol, tol);
      rep.hits += d.hit;
      rep.singular += d.singular;
      rep.escaped += d.escaped;
      if (!d.escaped) rep.min_log_u_R = std::min(rep.min_log_u_R, d.log_u_R);
      rep.shots.push_back(d);
    }
  }
  return rep;
}

std::vector<double> default_probe_lambdas(int n) {
  if (n < 2) throw ParameterError("default_probe_lambdas: need at least 2 points");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = 1.0 + 29.0 * i / (n - 1);
  return out;
}

std::vector<double> default_probe_u0s(int n) {
  if (n < 2) throw ParameterError("default_probe_u0s: need at least 2 points");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = 1e-3 * std::pow(1e4, static_cast<double>(i) / (n - 1));
  return out;
}

}  // namespace radbif
