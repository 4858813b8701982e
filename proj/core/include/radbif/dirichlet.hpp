#pragma once

// Exploratory probe for radial solutions of the Dirichlet problem
//   u'' + u'/rho = -lambda u + 1/u,  u'(0) = 0,  u(R) = 0.
// Shots are taken in the shifted variable w = u - 1/sqrt(lambda); the
// log-state integrator keeps u > 0 representable down to exp(-1e6).

#include <vector>

#include "radbif/shooting.hpp"

namespace radbif {

struct DirichletShot {
  double lambda = 0.0;
  double u0 = 0.0;
  double u_R = 0.0;      // may underflow to 0; see log_u_R
  double log_u_R = 0.0;  // ln u(R)
  double min_u = 0.0;
  double log_min_u = 0.0;
  double udot_R = 0.0;
  bool singular = false;     // sqrt(lambda) u fell below the floor tolerance
  double singular_rho = -1;  // first such rho, negative when not singular
  bool escaped = false;
  bool hit = false;  // u(R) < u_tol with finite u'(R)
};

/// One shot from u(0) = u0 > 0.
DirichletShot dirichlet_shot(double lambda, double u0, double R = 1.0, double u_tol = 1e-6,
                             const Tolerances& tol = {});

struct DirichletReport {
  double radius = 1.0;
  double u_tol = 1e-6;
  std::vector<double> lambdas;
  std::vector<double> u0s;
  std::vector<DirichletShot> shots;  // row-major: lambda outer, u0 inner
  int hits = 0;
  int singular = 0;
  int escaped = 0;
  // Smallest u(R) over the non-escaped shots (in log form, never underflows).
  double min_log_u_R = 0.0;
};

DirichletReport dirichlet_probe(const std::vector<double>& lambdas, const std::vector<double>& u0s,
                                double R = 1.0, double u_tol = 1e-6, const Tolerances& tol = {});

/// Defaults of the desk-scale scan: 20 lambdas evenly in [1, 30] and 20
/// geometric u0 in [1e-3, 10].
std::vector<double> default_probe_lambdas(int n = 20);
std::vector<double> default_probe_u0s(int n = 20);

}  // namespace radbif
