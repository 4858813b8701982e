#pragma once

// First eigenvalue of the radial operator on a sub-interval [a, b] of [0, R]
//
//   -(rho w')' = mu rho w
//
// with one Neumann and one Dirichlet end, computed by shooting in mu.

namespace radbif {

enum class MixedKind {
  NeumannDirichlet,  // w'(a) = 0, w(b) = 0 (regular at a = 0)
  DirichletNeumann,  // w(a) = 0, w'(b) = 0 (requires a > 0)
};

/// Smallest positive eigenvalue. Throws ParameterError for an invalid
/// interval and ComputationError if the eigenvalue cannot be bracketed.
double mixed_eigenvalue(MixedKind kind, double a, double b, double tol = 1e-12);

/// Boundary residual of the shot at mu: w(b) for NeumannDirichlet, w'(b) for
/// DirichletNeumann. Exposed for tests.
double mixed_residual(MixedKind kind, double a, double b, double mu);

/// A priori bracket for lambda on Neumann solutions with k nodes:
///   lower = first NeumannDirichlet eigenvalue on [0, R] / 2,
///   upper = sup over a of the first mixed eigenvalue (either orientation)
///           on [a, a + R/(2k)].
struct LambdaBounds {
  int k = 0;
  double radius = 1.0;
  double lower = 0.0;
  double upper = 0.0;
  double upper_at = 0.0;  // left end a of the maximizing sub-interval
  MixedKind upper_kind = MixedKind::NeumannDirichlet;
};
LambdaBounds lambda_bounds(int k, double R = 1.0);

}  // namespace radbif
