#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "radbif/errors.hpp"
#include "radbif/model.hpp"
#include "radbif/timemap.hpp"

using namespace radbif;

namespace {

// Direct quadrature of the travel time int_0^h dxi / sqrt(2 (F(xi) - F(h)))
// (energy conservation for w'' = f(w)), with xi = h (1 - t^2). The potential
// difference is expanded by hand so it keeps full relative accuracy as t -> 0:
//   F_1(x) - F_1(v) = d (x + v)/2 + d + log1p(-d / (1 + v)),  d = v - x = v t^2.
double direct_time_map(const ProblemParams& p, double h) {
  const double v = p.sqrt_lambda() * h;
  auto g = [&](double t) {
    if (t == 0.0) return 2.0 * std::fabs(v) / std::sqrt(2.0 * v * (v + 1.0 - 1.0 / (1.0 + v)));
    const double d = v * t * t;
    const double x = v - d;
    const double diff = d * (x + v) / 2.0 + d + std::log1p(-d / (1.0 + v));
    return 2.0 * std::fabs(v) * t / std::sqrt(2.0 * diff);
  };
  const double k = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 15, 1e-14);
  return (h > 0 ? k : -k) / p.sqrt_lambda();
}

}  // namespace

TEST_CASE("direct quadrature agrees with the rescaled map at lambda = 1, h = 1") {
  const ProblemParams p(1.0);
  CHECK(direct_time_map(p, 1.0) == doctest::Approx(phi_bar(1.0).value / std::sqrt(2.0)).epsilon(1e-8));
  CHECK(direct_time_map(p, 1.0) == doctest::Approx(phi(p, 1.0).phi).epsilon(1e-8));
}

TEST_CASE("direct quadrature agrees for a few other amplitudes") {
  for (double lambda : {0.5, 4.0}) {
    const ProblemParams p(lambda);
    for (double v : {-0.7, -0.2, 0.3, 5.0}) {
      const double h = v / p.sqrt_lambda();
      CHECK(direct_time_map(p, h) == doctest::Approx(phi(p, h).phi).epsilon(1e-7));
    }
  }
}

TEST_CASE("sign convention and domain") {
  const ProblemParams p(2.0);
  CHECK(phi(p, 0.3).phi > 0.0);
  CHECK(phi(p, -0.3).phi < 0.0);
  CHECK_THROWS_AS(phi_bar(-1.0), DomainError);
  CHECK_THROWS_AS(phi_bar(0.0), DomainError);
  CHECK_THROWS_AS(phi_bar(std::nan("")), DomainError);
}

TEST_CASE("limits at lambda = 1") {
  const ProblemParams p(1.0);
  const double pi = std::numbers::pi;
  CHECK(std::fabs(phi(p, 1e-6).phi - pi / (2.0 * std::sqrt(2.0))) < 1e-4);
  CHECK(std::fabs(phi(p, -1e-6).phi + pi / (2.0 * std::sqrt(2.0))) < 1e-4);
  CHECK(std::fabs(phi(p, 1e6).phi - pi / 2.0) < 1e-2);
  const TimeMapLimits l = time_map_limits(4.0);
  CHECK(l.zero_plus == doctest::Approx(pi / (2.0 * std::sqrt(8.0))));
  CHECK(l.infinity == doctest::Approx(pi / 4.0));
  CHECK(l.floor == 0.0);
}

TEST_CASE("approach to the floor is monotone but slow") {
  // |Phi| ~ c / sqrt(-ln(1 + s)): the decay is real but still ~0.16 at
  // 1 + s = 1e-9.
  double prev = 1e300;
  for (double e : {1e-2, 1e-4, 1e-9, 1e-15}) {
    const double t = std::fabs(phi_bar(-1.0 + e).value);
    CHECK(t < prev);
    prev = t;
  }
  const double far = std::fabs(phi_bar_from_log(-1e8).value);
  CHECK(far < 1e-2);
  CHECK(far < std::fabs(phi_bar(-1.0 + 1e-15).value));
}

TEST_CASE("scaling identity on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ul(std::log(1e-2), std::log(1e2));
  std::uniform_real_distribution<double> uv(-0.99, 50.0);
  for (int i = 0; i < 100; ++i) {
    const ProblemParams p(std::exp(ul(rng)));
    double v = uv(rng);
    if (std::fabs(v) < 1e-6) v = 1e-3;
    const double h = v / p.sqrt_lambda();
    CHECK(std::fabs(std::sqrt(2.0) * p.sqrt_lambda() * phi(p, h).phi - phi_bar(v).value) < 1e-9);
  }
}

TEST_CASE("partial map and its inverse") {
  const ProblemParams p(3.0);
  for (double h : {0.4, -0.3, 10.0}) {
    const double total = phi(p, h).phi;
    CHECK(phi_partial(p, h, h) == doctest::Approx(total).epsilon(1e-9));
    CHECK(phi_partial(p, h, 0.0) == 0.0);
    for (double frac : {0.1, 0.5, 0.9}) {
      const double s = phi_inverse(p, h, frac * total);
      CHECK(phi_partial(p, h, s) == doctest::Approx(frac * total).epsilon(1e-9));
    }
  }
  CHECK_THROWS(phi_inverse(p, 0.4, 2.0 * phi(p, 0.4).phi));
}

TEST_CASE("large amplitudes against direct quadrature") {
  const ProblemParams p(3.0);
  for (double h : {10.0, 100.0}) {
    CHECK(phi(p, h).phi == doctest::Approx(direct_time_map(p, h)).epsilon(1e-10));
  }
}
