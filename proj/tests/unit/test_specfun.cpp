#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <cmath>

#include "radbif/errors.hpp"
#include "radbif/specfun.hpp"

using namespace radbif;

TEST_CASE("J0 and J1 agree with the reference implementation") {
  for (double x = 0.0; x <= 80.0; x += 0.137) {
    const double env = std::min(1.0, std::sqrt(2.0 / (M_PI * std::max(x, 1e-300))));
    CHECK(std::fabs(bessel_j0(x) - boost::math::cyl_bessel_j(0, x)) <= 1e-13 * std::max(env, 1e-3));
    CHECK(std::fabs(bessel_j1(x) - boost::math::cyl_bessel_j(1, x)) <= 1e-13 * std::max(env, 1e-3));
    CHECK(bessel_j0_prime(x) == doctest::Approx(boost::math::cyl_bessel_j_prime(0, x)).epsilon(1e-12).scale(1.0));
  }
  CHECK(bessel_j0(-3.0) == doctest::Approx(bessel_j0(3.0)).epsilon(1e-15));
}

TEST_CASE("zeros: tabulated values and residuals") {
  // j_{0,1}, j_{1,1}, j_{0,2}, j_{1,2}
  CHECK(bessel_j0_zero(1) == doctest::Approx(2.404825557695773).epsilon(1e-15));
  CHECK(bessel_j0_prime_zero(1) == doctest::Approx(3.831705970207512).epsilon(1e-15));
  CHECK(bessel_j0_zero(2) == doctest::Approx(5.520078110286311).epsilon(1e-15));
  CHECK(bessel_j0_prime_zero(2) == doctest::Approx(7.015586669815619).epsilon(1e-15));
  for (int k = 1; k <= 30; ++k) {
    CHECK(std::fabs(bessel_j0(bessel_j0_zero(k))) < 1e-11);
    CHECK(std::fabs(bessel_j0_prime(bessel_j0_prime_zero(k))) < 1e-11);
    CHECK(bessel_j0_zero(k) == doctest::Approx(boost::math::cyl_bessel_j_zero(0.0, k)).epsilon(1e-13));
    CHECK(bessel_j0_prime_zero(k) == doctest::Approx(boost::math::cyl_bessel_j_zero(1.0, k)).epsilon(1e-13));
  }
}

TEST_CASE("interlacing z_k < y_k < z_{k+1}") {
  for (int k = 1; k <= 10; ++k) {
    CHECK(bessel_j0_zero(k) < bessel_j0_prime_zero(k));
    CHECK(bessel_j0_prime_zero(k) < bessel_j0_zero(k + 1));
  }
}

TEST_CASE("spectral data scales like 1/R^2") {
  const SpectralData s = spectral_data(1, 1.0);
  CHECK(s.mu_k == doctest::Approx(14.6819706421).epsilon(1e-10));
  CHECK(s.nu_k == doctest::Approx(5.7831859629).epsilon(1e-10));
  const SpectralData t = spectral_data(2, 2.0);
  CHECK(t.mu_k == doctest::Approx(spectral_data(2, 1.0).mu_k / 4.0).epsilon(1e-14));
  const SpectralData z = spectral_data(0, 1.0);
  CHECK(z.mu_k == 0.0);
  CHECK(z.y_k == 0.0);
  CHECK_THROWS_AS(spectral_data(-1, 1.0), ParameterError);
  CHECK_THROWS_AS(spectral_data(1, 0.0), ParameterError);
}

TEST_CASE("Neumann mode k has k interior zeros and zero slope at R") {
  for (int k = 1; k <= 4; ++k) {
    const NeumannMode m = neumann_eigen(k, 1.5);
    int sign_changes = 0;
    double prev = m(0.0);
    for (int i = 1; i <= 3000; ++i) {
      const double v = m(1.5 * i / 3000.0);
      if ((v > 0) != (prev > 0)) ++sign_changes;
      prev = v;
    }
    CHECK(sign_changes == k);
    CHECK(std::fabs(m.derivative(1.5)) < 1e-12);
    CHECK(m(0.0) == doctest::Approx(1.0));
  }
  const DirichletMode d = dirichlet_eigen(2, 1.0);
  CHECK(std::fabs(d(1.0)) < 1e-12);
}
