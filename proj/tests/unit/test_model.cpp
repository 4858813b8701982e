#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "radbif/errors.hpp"
#include "radbif/model.hpp"

using namespace radbif;

namespace {

// Independent primitive: adaptive Gauss-Kronrod of f from 0 to s.
double F_by_quadrature(const ProblemParams& p, double s) {
  auto f = [&](double x) { return f_lambda(p, x); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, s, 15, 1e-14);
}

}  // namespace

TEST_CASE("f_lambda matches its definition") {
  const ProblemParams p(3.0);
  for (double s : {-0.5, -0.1, 0.0, 0.3, 2.0, 40.0}) {
    const double expect = -3.0 * s - 3.0 * s / (1.0 + std::sqrt(3.0) * s);
    CHECK(f_lambda(p, s) == doctest::Approx(expect).epsilon(1e-14).scale(1.0));
  }
  CHECK_THROWS_AS(f_lambda(p, -1.0 / std::sqrt(3.0)), AdmissibilityError);
  CHECK_THROWS_AS(f_lambda(p, -1.0), AdmissibilityError);
}

TEST_CASE("F_lambda is the primitive of f_lambda with F(0) = 0") {
  for (double lambda : {0.2, 1.0, 7.5, 40.0}) {
    const ProblemParams p(lambda);
    CHECK(F_lambda(p, 0.0) == 0.0);
    for (double v : {-0.95, -0.5, -1e-3, 1e-6, 0.2, 3.0, 25.0}) {
      const double s = v / p.sqrt_lambda();
      CHECK(F_lambda(p, s) == doctest::Approx(F_by_quadrature(p, s)).epsilon(1e-11).scale(1e-12));
      const double d = 1e-5 * (1.0 + v) / p.sqrt_lambda();
      const double fd = (F_lambda(p, s + d) - F_lambda(p, s - d)) / (2.0 * d);
      CHECK(fd == doctest::Approx(f_lambda(p, s)).epsilon(1e-6));
    }
  }
}

TEST_CASE("F_1 near zero has no cancellation") {
  // F_1(v) = -v^2 + 2v^3/3 - v^4/2 + ... for small v
  for (double v : {1e-4, -1e-5, 3e-7}) {
    const double series = -v * v + 2.0 * v * v * v / 3.0 - v * v * v * v / 2.0;
    CHECK(potential_unit(v) == doctest::Approx(series).epsilon(1e-10));
  }
}

TEST_CASE("F_lambda at and below the floor") {
  const ProblemParams p(4.0);
  CHECK(std::isinf(F_lambda(p, -0.5)));
  CHECK(F_lambda(p, -0.5) < 0.0);
  CHECK_THROWS_AS(F_lambda(p, -0.6), AdmissibilityError);
  CHECK(potential_unit_from_log(-1e6) == doctest::Approx(-1e6 + 0.5).epsilon(1e-15));
}

TEST_CASE("2 lambda s - h_lambda(s) = -f_lambda(s)") {
  for (double lambda : {0.5, 2.0, 30.0}) {
    const ProblemParams p(lambda);
    for (double v : {-0.9, -0.2, 0.1, 5.0}) {
      const double s = v / p.sqrt_lambda();
      CHECK(2.0 * lambda * s - h_lambda(p, s) == doctest::Approx(-f_lambda(p, s)).epsilon(1e-13));
    }
  }
}

TEST_CASE("truncated h_1 is C^2 at the junction and matches h_1 above it") {
  for (double s0 : {-0.9, -0.5, -0.1}) {
    const Truncation t = truncate_h(s0);
    const double e = 1e-4 * (1.0 + s0);
    // Independent difference quotients of the assembled function.
    const double left1 = (h_tilde(t, s0) - h_tilde(t, s0 - e)) / e;
    const double right1 = (h_tilde(t, s0 + e) - h_tilde(t, s0)) / e;
    CHECK(left1 == doctest::Approx(right1).epsilon(1e-3));
    const JunctionDerivatives j = junction_derivatives(t);
    for (int i = 0; i < 3; ++i) CHECK(j.left[i] == doctest::Approx(j.right[i]).epsilon(1e-12));
    CHECK(h_tilde(t, 0.7) == h_one(0.7));
    CHECK(std::isfinite(h_tilde(t, -5.0)));
  }
  CHECK_THROWS_AS(truncate_h(0.0), ParameterError);
  CHECK_THROWS_AS(truncate_h(-1.0), ParameterError);
}

TEST_CASE("u and w substitution") {
  const ProblemParams p(9.0);
  CHECK(to_u(p, 0.0) == doctest::Approx(1.0 / 3.0));
  CHECK(to_w(p, 1.0) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(to_w(p, 0.0), AdmissibilityError);
  CHECK_THROWS_AS(to_u(p, -1.0 / 3.0), AdmissibilityError);
  CHECK_THROWS_AS(ProblemParams(0.0), ParameterError);
  CHECK_THROWS_AS(ProblemParams(1.0, -1.0), ParameterError);
}

TEST_CASE("radial energy of a constant profile") {
  const ProblemParams p(1.0);
  SampledProfile prof;
  for (int i = 0; i <= 100; ++i) {
    prof.rho.push_back(i / 100.0);
    prof.w.push_back(0.5);
    prof.wdot.push_back(0.0);
  }
  const RadialEnergy e = radial_energy(p, prof);
  CHECK(e.gradient == 0.0);
  CHECK(e.mass == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(e.nonlinear == doctest::Approx(0.5 * h_one_primitive(0.5)).epsilon(1e-12));
}

TEST_CASE("composite Simpson is exact for quadratics on a non-uniform grid") {
  std::vector<double> x, y;
  for (int i = 0; i <= 10; ++i) {
    const double t = std::pow(i / 10.0, 1.5);
    x.push_back(t);
    y.push_back(3.0 * t * t - t);
  }
  CHECK(composite_simpson(x, y) == doctest::Approx(0.5).epsilon(1e-14));
}
