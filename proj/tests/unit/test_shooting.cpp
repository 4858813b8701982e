#include <doctest.h>

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "radbif/dirichlet.hpp"
#include "radbif/errors.hpp"
#include "radbif/model.hpp"
#include "radbif/shooting.hpp"
#include "radbif/specfun.hpp"

using namespace radbif;

namespace {

using Y = std::array<double, 2>;

// Reference shot in the plain (rho, w, w') variables: series start at rho0,
// then odeint's controlled Dormand-Prince. Only valid away from the floor.
Y reference_shot(const ProblemParams& p, double h0, double rho_end) {
  const double f0 = f_lambda(p, h0);
  const double rho0 = 1e-4;
  Y y{h0 + f0 * rho0 * rho0 / 4.0, f0 * rho0 / 2.0};
  auto rhs = [&](const Y& s, Y& d, double rho) {
    d[0] = s[1];
    d[1] = f_lambda(p, s[0]) - s[1] / rho;
  };
  namespace oi = boost::numeric::odeint;
  oi::integrate_adaptive(oi::make_controlled<oi::runge_kutta_dopri5<Y>>(1e-13, 1e-13), rhs, y, rho0, rho_end, 1e-5);
  return y;
}

}  // namespace

TEST_CASE("shot agrees with an independent integrator") {
  for (auto [lambda, h0] : {std::pair{4.0, 0.3}, {12.0, -0.1}, {30.0, 1.5}, {7.0, -0.25}}) {
    const ProblemParams p(lambda);
    const RadialSolution sol = integrate(p, h0);
    REQUIRE_FALSE(sol.escaped());
    for (double rho : {0.25, 0.6, 1.0}) {
      const Y ref = reference_shot(p, h0, rho);
      const TrajectoryPoint pt = sol.at(rho);
      CHECK(pt.w == doctest::Approx(ref[0]).epsilon(1e-7).scale(std::fabs(h0)));
      CHECK(pt.wdot == doctest::Approx(ref[1]).epsilon(1e-7).scale(std::fabs(h0)));
    }
    const ShotSummary s = shoot(p, h0);
    const Y refR = reference_shot(p, h0, 1.0);
    CHECK(s.wdot_R == doctest::Approx(refR[1]).epsilon(1e-7).scale(std::fabs(h0)));
    CHECK(s.node_count == static_cast<int>(sol.node_count()));
  }
}

TEST_CASE("linearization at the bifurcation points") {
  for (int k = 1; k <= 3; ++k) {
    const NeumannMode m = neumann_eigen(k, 1.0);
    const ProblemParams p(0.5 * m.mu());
    const double h0 = 1e-6;
    const RadialSolution sol = integrate(p, h0);
    double dev = 0.0;
    for (int i = 0; i <= 500; ++i) {
      const double r = i / 500.0;
      dev = std::max(dev, std::fabs(sol.at(r).w - h0 * m(r)));
    }
    CHECK(dev < 1e-4 * h0);
    CHECK(std::fabs(sol.boundary_residual()) < 1e-8);
    CHECK(sol.node_count() == static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < sol.nodes().size(); ++i) {
      CHECK(sol.nodes()[i].rho == doctest::Approx(bessel_j0_zero(static_cast<int>(i) + 1) / m.y()).epsilon(1e-5));
    }
  }
}

TEST_CASE("trivial and inadmissible shots") {
  const RadialSolution sol = integrate(ProblemParams(5.0), 0.0);
  CHECK(sol.trivial());
  for (double v : sol.w()) CHECK(v == 0.0);
  CHECK(sol.node_count() == 0);
  CHECK_THROWS_AS(integrate(ProblemParams(4.0), -0.5), AdmissibilityError);
  CHECK_THROWS_AS(integrate(ProblemParams(4.0), -0.7), AdmissibilityError);
}

TEST_CASE("deep humps stay resolved in the log variable") {
  // Large positive h0 drives 1 + sqrt(lambda) w far below any double.
  const ProblemParams p(5.7832);
  const RadialSolution sol = integrate(p, 1000.0);
  CHECK_FALSE(sol.escaped());
  CHECK(sol.min_log_admissibility() < -1e4);
  CHECK(sol.node_count() >= 1);
}

TEST_CASE("energy identity holds on every nodal interval") {
  for (auto [lambda, h0] : {std::pair{10.0, 0.8}, {25.0, -0.15}, {50.0, 4.0}}) {
    const RadialSolution sol = integrate(ProblemParams(lambda), h0);
    const auto checks = energy_identity_on_nodal_intervals(sol);
    CHECK(checks.size() == sol.node_count() + 1);
    for (const auto& c : checks) CHECK(c.relative_residual() < 1e-7);
  }
}

TEST_CASE("segments cover [0, R] and the inequality suite holds") {
  const RadialSolution sol = integrate(ProblemParams(20.0), 2.0, verification_tolerances());
  const auto& segs = sol.segments();
  REQUIRE_FALSE(segs.empty());
  CHECK(segs.front().r1 == 0.0);
  CHECK(segs.back().r2 == doctest::Approx(1.0));
  for (std::size_t i = 1; i < segs.size(); ++i) CHECK(segs[i].r1 == doctest::Approx(segs[i - 1].r2));
  for (const auto& seg : segs) {
    const SegmentReport rep = verify_segment_inequalities(sol, seg);
    CHECK(rep.all_hold(1e-8));
  }
  for (const auto& c : positive_interval_bounds(sol)) CHECK(c.holds(1e-8));
}

TEST_CASE("log inequality") {
  for (auto [a, b] : {std::pair{0.1, 0.2}, {1.0, 1.0000001}, {0.01, 10.0}}) {
    for (const auto& c : log_inequality(a, b)) CHECK(c.slack() >= 0.0);
  }
  const auto c = log_inequality(1.0, std::exp(1.0));
  CHECK(c.size() == 2);
}

TEST_CASE("Dirichlet probe") {
  const DirichletReport rep = dirichlet_probe(default_probe_lambdas(), default_probe_u0s());
  CHECK(rep.shots.size() == 400);
  CHECK(rep.hits == 0);
  const DirichletShot c = dirichlet_shot(4.0, 0.5);
  CHECK(c.u_R == 0.5);
  CHECK_FALSE(c.hit);
  const DirichletShot tiny = dirichlet_shot(4.0, 1e-12);
  CHECK(tiny.singular);
}
