#pragma once

// Bessel functions of order 0 and 1 on the real line, their zeros, and the
// radial Neumann / Dirichlet eigenpairs of the disk Laplacian.

namespace radbif {

/// J0(x). Absolute error below 1e-13 times max(|J0(x)|, min(1, sqrt(2/(pi|x|))))
/// on |x| <= 200. Throws DomainError for non-finite x.
double bessel_j0(double x);

/// J1(x), same accuracy contract as bessel_j0.
double bessel_j1(double x);

/// J0'(x) = -J1(x).
double bessel_j0_prime(double x);

/// k-th positive zero of J0 (k >= 1).
double bessel_j0_zero(int k);

/// k-th nontrivial zero of J0' (equivalently of J1), k >= 1. The trivial zero
/// at x = 0 is not counted.
double bessel_j0_prime_zero(int k);

/// Radial eigenvalues and eigenfunctions of the disk of radius R.
///
/// mu_k = (y_k / R)^2 with y_k the k-th nontrivial zero of J0' (Neumann,
/// w'(0) = w'(R) = 0); nu_k = (z_k / R)^2 with z_k the k-th zero of J0
/// (Dirichlet at R). By convention mu_0 = 0 and w_0 == 1; nu_0 is undefined.
struct SpectralData {
  double R = 1.0;
  int k = 0;
  double y_k = 0.0;  // 0 for k == 0
  double z_k = 0.0;  // 0 for k == 0 (undefined)
  double mu_k = 0.0;
  double nu_k = 0.0;  // 0 for k == 0 (undefined)
};

/// Neumann eigenpair (mu_k, w_k); w_k(rho) = J0(y_k rho / R) has exactly k
/// zeros in ]0, R[.
class NeumannMode {
 public:
  NeumannMode(int k, double R);

  int k() const { return k_; }
  double radius() const { return R_; }
  double y() const { return y_; }
  double mu() const { return mu_; }

  double operator()(double rho) const;
  double derivative(double rho) const;

 private:
  int k_;
  double R_;
  double y_;
  double mu_;
};

/// Dirichlet eigenpair (nu_k, v_k) with v_k(rho) = J0(z_k rho / R), k >= 1.
class DirichletMode {
 public:
  DirichletMode(int k, double R);

  int k() const { return k_; }
  double radius() const { return R_; }
  double z() const { return z_; }
  double nu() const { return nu_; }

  double operator()(double rho) const;
  double derivative(double rho) const;

 private:
  int k_;
  double R_;
  double z_;
  double nu_;
};

NeumannMode neumann_eigen(int k, double R);
DirichletMode dirichlet_eigen(int k, double R);

/// Both spectra at index k (the Dirichlet fields stay 0 for k == 0).
SpectralData spectral_data(int k, double R);

}  // namespace radbif
