#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <cmath>

#include "radbif/branch.hpp"
#include "radbif/errors.hpp"
#include "radbif/mixed_eigen.hpp"
#include "radbif/specfun.hpp"

using namespace radbif;

TEST_CASE("mixed eigenvalues against the Bessel cross-product") {
  // Neumann at a, Dirichlet at b: J0'(x a) Y0(x b) - Y0'(x a) J0(x b) = 0.
  using boost::math::cyl_bessel_j;
  using boost::math::cyl_neumann;
  for (auto [a, b] : {std::pair{0.2, 0.7}, {0.5, 1.0}, {0.05, 0.3}}) {
    const double mu = mixed_eigenvalue(MixedKind::NeumannDirichlet, a, b);
    const double x = std::sqrt(mu);
    const double cross = cyl_bessel_j(1, x * a) * cyl_neumann(0, x * b) - cyl_neumann(1, x * a) * cyl_bessel_j(0, x * b);
    CHECK(std::fabs(cross) < 1e-9);
    const double mu2 = mixed_eigenvalue(MixedKind::DirichletNeumann, a, b);
    const double x2 = std::sqrt(mu2);
    const double cross2 = cyl_bessel_j(0, x2 * a) * cyl_neumann(1, x2 * b) - cyl_neumann(0, x2 * a) * cyl_bessel_j(1, x2 * b);
    CHECK(std::fabs(cross2) < 1e-9);
  }
  // On [0, R] the Neumann-Dirichlet problem is the Dirichlet disc problem.
  CHECK(mixed_eigenvalue(MixedKind::NeumannDirichlet, 0.0, 1.0) == doctest::Approx(spectral_data(1, 1.0).nu_k).epsilon(1e-10));
  CHECK_THROWS_AS(mixed_eigenvalue(MixedKind::DirichletNeumann, 0.0, 1.0), ParameterError);
}

TEST_CASE("lambda bounds bracket both branch limits") {
  for (int k = 1; k <= 3; ++k) {
    const LambdaBounds b = lambda_bounds(k, 1.0);
    CHECK(b.lower == doctest::Approx(spectral_data(1, 1.0).nu_k / 2.0));
    CHECK(b.lower < bifurcation_target(k));
    CHECK(bifurcation_target(k) < b.upper);
    CHECK(b.lower < asymptote_target(k));
    CHECK(asymptote_target(k) < b.upper);
  }
  CHECK(asymptote_target(1) == doctest::Approx(spectral_data(1, 1.0).nu_k));
  CHECK(asymptote_target(2) == doctest::Approx(spectral_data(1, 1.0).mu_k));
  CHECK(asymptote_target(3) == doctest::Approx(spectral_data(2, 1.0).nu_k));
}

TEST_CASE("geometric schedule") {
  const auto s = geometric_schedule(1e-3, 1e3, 7);
  REQUIRE(s.size() == 7);
  CHECK(s.front() == doctest::Approx(1e-3));
  CHECK(s.back() == doctest::Approx(1e3));
  CHECK(s[3] == doctest::Approx(1.0));
  CHECK_THROWS_AS(geometric_schedule(0.0, 1.0, 3), ParameterError);
}

TEST_CASE("asymptote fits recover a synthetic limit") {
  std::vector<BranchPoint> tail;
  for (double h : {100.0, 200.0, 400.0, 800.0}) {
    BranchPoint p;
    p.h0 = h;
    p.lambda = 3.0 + 5.0 / (h * h);
    tail.push_back(p);
  }
  const AsymptoteFit f = fit_asymptote(tail, "1/h0^2");
  CHECK(f.limit == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.coefficient == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(fit_asymptote(tail, "1/h0").rms_residual > f.rms_residual);
  CHECK_THROWS_AS(fit_asymptote(tail, "exp"), ParameterError);
}

TEST_CASE("single solves near the bifurcation point") {
  for (int k = 1; k <= 2; ++k) {
    const BranchPoint p = solve_at_amplitude(k, 1, 1e-5);
    CHECK(p.lambda == doctest::Approx(bifurcation_target(k)).epsilon(1e-4));
    CHECK(p.k == k);
    CHECK(std::fabs(p.boundary_residual) < 1e-8);
    CHECK(reverify(p, 1.0));
  }
}

TEST_CASE("k = 1 plus branch: endpoints, bounds and tail shape") {
  const Branch br = trace_branch(1, 1, geometric_schedule(1e-5, 1e3, 25));
  REQUIRE(br.points.size() == 25);
  CHECK_FALSE(br.breakdown.has_value());
  CHECK(br.points.front().lambda == doctest::Approx(7.3410).epsilon(1e-3));
  CHECK(br.points.back().lambda == doctest::Approx(5.7832).epsilon(2e-2));
  for (const auto& p : br.points) {
    CHECK(p.lambda >= br.bounds.lower);
    CHECK(p.lambda <= br.bounds.upper);
  }
  const BranchPoint& t = br.points.back();
  CHECK(t.sup_w > 1e2);
  CHECK(t.min_log_admissibility < std::log(1e-2));
  CHECK(t.max_odd_width < 0.2);
  REQUIRE(br.best_fit() != nullptr);
  CHECK(br.best_fit()->limit == doctest::Approx(5.783185962946785).epsilon(1e-5));
  const ExistenceWindow w = existence_window(1, true, br);
  CHECK(w.nonempty());
  CHECK(w.coverage_gap() < 1e-3);
}

TEST_CASE("minus branch is traced but not asserted") {
  const Branch br = trace_branch(1, -1, geometric_schedule(1e-5, 0.3, 15));
  CHECK_FALSE(br.asymptote_asserted);
  CHECK(br.points.size() == 15);
  for (const auto& p : br.points) CHECK(p.h0 < 0.0);
}

TEST_CASE("admissibility region faces") {
  const AdmissibilityRegion r = admissibility_region(0.1);
  BranchPoint p;
  p.k = 1;
  p.lambda = 6.0;
  p.min_admissibility = 0.5;
  p.sup_w = 1.0;
  CHECK(r.classify(p) == RegionFace::Inside);
  p.min_admissibility = 0.01;
  CHECK(r.classify(p) == RegionFace::Floor);
}
