#include "radbif/shooting.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <sstream>
#include <cstdint>
#include <limits>

#include "radbif/errors.hpp"

namespace radbif {
namespace {

// |w'(R)| below this fraction of max |w'| closes the trailing hump.
constexpr double kBoundaryTolerance = 1e-6;
// A critical point this far (relative) beyond R still closes the last hump.
constexpr double kClosureWindow = 1e-9;
// |w'| at a zero below this fraction of max |w'| is a tangential zero.
constexpr double kTangentialTolerance = 1e-9;

struct Logistic {
  double g;  // e^eta / (1 + e^eta)
  double c;  // 1 / (1 + e^eta)
};

Logistic logistic(double eta) {
  if (eta >= 0.0) {
    const double e = std::exp(-eta);
    return {1.0 / (1.0 + e), e / (1.0 + e)};
  }
  const double e = std::exp(eta);
  return {e / (1.0 + e), 1.0 / (1.0 + e)};
}

bool finite_state(const ShotState& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

struct Series {
  double rho_start;
  double a2;
  double a4;
  double one_plus_v0;  // 1 + sqrt(lambda) h0
};

Series make_series(const ProblemParams& p, double h0, const Tolerances& tol) {
  Series s{};
  s.one_plus_v0 = 1.0 + p.sqrt_lambda() * h0;
  const double f0 = f_lambda(p, h0);
  s.a2 = f0 / 4.0;
  s.a4 = f_lambda_prime(p, h0) * f0 / 64.0;
  // Near the floor f and f' blow up like 1/(1 + v0) and 1/(1 + v0)^2.
  s.rho_start = tol.series_start * p.radius() * std::min(1.0, s.one_plus_v0);
  return s;
}

ShotState series_state(const ProblemParams& p, double h0, const Series& s, double rho) {
  const double sl = p.sqrt_lambda();
  const double r2 = rho * rho;
  const double dw = s.a2 * r2 + s.a4 * r2 * r2;
  const double eta0 = std::log(s.one_plus_v0);
  ShotState y{};
  y[kRho] = rho;
  y[kEta] = std::log(s.one_plus_v0 + sl * dw);
  y[kWdot] = 2.0 * s.a2 * rho + 4.0 * s.a4 * r2 * rho;
  const double F0 = potential_unit_from_log(eta0);
  const double f0 = 4.0 * s.a2;
  y[kEnergyIntegral] = 2.0 * r2 * F0 + f0 * s.a2 * r2 * r2;
  y[kGradIntegral] = s.a2 * s.a2 * r2 * r2;
  y[kMassIntegral] = 0.5 * h0 * h0 * r2 + 0.5 * h0 * s.a2 * r2 * r2;
  return y;
}

struct Rhs {
  const ProblemParams* p;
  ShotState operator()(double, const ShotState& y) const { return shot_rhs(*p, y); }
};

using Step = ode::StepResult<kStateSize>;

struct RunOutcome {
  ShotState y{};
  bool escaped = false;
  bool stopped = false;
  double last_dt = 0.0;
  std::string reason;
};

// Adaptive DOPRI5 in the rescaled time from y0 to rho = R, landing exactly
// on R. on_step returns false to stop early. dt0 <= 0 picks a start step.
template <class OnStep>
RunOutcome run(const ProblemParams& p, double h0, const ShotState& y0, double R, Tolerances tol,
               double dt0, OnStep&& on_step) {
  const Rhs rhs{&p};
  // Small amplitudes: every component except rho scales like h0 or h0^2.
  const double v0 = p.sqrt_lambda() * std::fabs(h0);
  tol.abs *= std::min(1.0, v0 * v0);
  RunOutcome out;
  ShotState y = y0;
  ShotState k1 = rhs(0.0, y);
  double t = 0.0;
  double dt = dt0 > 0.0 ? dt0 : 1e-3 * R / std::max(k1[kRho], 1e-300);
  long steps = 0;
  while (true) {
    if (++steps > tol.max_steps) {
      out.escaped = true;
      out.reason = "step limit reached";
      break;
    }
    if (!(dt > 1e-15 * std::fabs(t)) || !(dt > 0.0)) {
      out.escaped = true;
      out.reason = "step size underflow";
      break;
    }
    Step res = ode::dopri5_step(rhs, t, y, k1, dt, tol.rel, tol.abs);
    if (!finite_state(res.y) || !std::isfinite(res.error_norm)) {
      dt *= 0.25;
      continue;
    }
    if (res.error_norm > 1.0) {
      dt *= std::max(0.2, ode::step_factor(res.error_norm));
      continue;
    }
    if (res.y[kRho] >= R) {
      // rho grows monotonically with the step length; at the bottom of a deep
      // bounce drho/dtau ~ 1 + sqrt(lambda) w is tiny, so bracket instead of
      // Newton.
      auto miss = [&](double h) { return ode::dopri5_step(rhs, t, y, k1, h, tol.rel, tol.abs).y[kRho] - R; };
      const double f_hi = res.y[kRho] - R;
      double h = dt;
      if (f_hi > 0.0) {
        std::uintmax_t iters = 100;
        const auto [a, b] = boost::math::tools::toms748_solve(
            miss, 0.0, dt, y[kRho] - R, f_hi,
            [dt](double x0, double x1) { return std::fabs(x1 - x0) <= 1e-15 * dt; }, iters);
        h = std::fabs(miss(a)) < std::fabs(miss(b)) ? a : b;
      }
      Step land = ode::dopri5_step(rhs, t, y, k1, h, tol.rel, tol.abs);
      const double delta = R - land.y[kRho];
      land.y[kRho] = R;
      land.dense.r[1][kRho] += delta;
      on_step(land);
      y = land.y;
      break;
    }
    out.last_dt = dt;
    const bool go_on = on_step(res);
    t += dt;
    y = res.y;
    k1 = res.dydt;
    dt *= ode::step_factor(res.error_norm);
    if (!go_on) {
      out.stopped = true;
      break;
    }
  }
  out.y = y;
  return out;
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

struct Crossing {
  std::size_t step;
  double tau;
  ShotState y;
};

// Zero of component c inside a step: bisection on the continuous extension,
// then Newton with fresh steps from the step start.
Crossing refine_in_step(const ode::DenseStep<kStateSize>& st, const Rhs& rhs, std::size_t c) {
  const int s_hi = sgn(st.end()[c]);
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (sgn(st.at_theta(mid)[c]) == s_hi ? hi : lo) = mid;
  }
  const double theta0 = 0.5 * (lo + hi);
  const ShotState dense = st.at_theta(theta0);
  double theta = theta0;
  const ShotState y0 = st.begin();
  const ShotState k1 = rhs(st.t0, y0);
  ShotState y = dense;
  for (int it = 0; it < 6; ++it) {
    if (theta <= 0.0) {
      y = y0;
      break;
    }
    // Tolerances only scale the (unused) error estimate of these steps.
    const Step s = ode::dopri5_step(rhs, st.t0, y0, k1, theta * st.h, 1.0, 1.0);
    y = s.y;
    const double d = s.dydt[c] * st.h;
    if (d == 0.0 || y[c] == 0.0) break;
    const double next = std::clamp(theta - y[c] / d, 0.0, 1.0);
    if (std::fabs(next - theta) < 1e-16) break;
    theta = next;
  }
  // A sub-step through a stiff dive can be far off the accepted step; keep
  // the polish only where it agrees with the dense output.
  for (std::size_t j = 0; j < kStateSize; ++j) {
    const double sc = std::max({std::fabs(y0[j]), std::fabs(st.end()[j]), 1e-300});
    if (!std::isfinite(y[j]) || std::fabs(y[j] - dense[j]) > 1e-6 * sc) return {0, st.t0 + theta0 * st.h, dense};
  }
  return {0, st.t0 + theta * st.h, y};
}

Crossing refine_crossing(const RadialSolution& sol, std::size_t i, std::size_t c) {
  Crossing x = refine_in_step(sol.steps()[i], Rhs{&sol.params()}, c);
  x.step = i;
  return x;
}

std::vector<Crossing> crossings(const RadialSolution& sol, std::size_t c) {
  std::vector<Crossing> out;
  const auto& steps = sol.steps();
  if (steps.empty()) return out;
  int prev = sgn(steps.front().begin()[c]);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const int now = sgn(steps[i].end()[c]);
    if (now != 0 && prev != 0 && now != prev) out.push_back(refine_crossing(sol, i, c));
    if (now != 0) prev = now;
  }
  return out;
}

double w_of_eta(const ProblemParams& p, double eta) { return std::expm1(eta) / p.sqrt_lambda(); }

std::vector<Extremum> detect_extrema(const RadialSolution& sol) {
  std::vector<Extremum> out;
  for (const auto& c : crossings(sol, kWdot)) {
    Extremum e;
    e.rho = c.y[kRho];
    e.tau = c.tau;
    e.eta = c.y[kEta];
    e.w = w_of_eta(sol.params(), e.eta);
    e.state = c.y;
    out.push_back(e);
  }
  return out;
}

EnergyIdentityCheck identity_between(const ShotState& a, const ShotState& b) {
  auto terms = [](const ShotState& y, double& grad, double& pot) {
    const double r2 = y[kRho] * y[kRho];
    grad = r2 * y[kWdot] * y[kWdot];
    pot = y[kRho] == 0.0 ? 0.0 : 2.0 * r2 * potential_unit_from_log(y[kEta]);
  };
  double ga, pa, gb, pb;
  terms(a, ga, pa);
  terms(b, gb, pb);
  const double q = b[kEnergyIntegral] - a[kEnergyIntegral];
  EnergyIdentityCheck e;
  e.rho1 = a[kRho];
  e.rho2 = b[kRho];
  e.lhs = gb - ga;
  e.rhs = pb - pa - q;
  e.scale = std::max({std::fabs(ga), std::fabs(gb), std::fabs(pa), std::fabs(pb), std::fabs(q)});
  return e;
}

}  // namespace

char to_char(CaseTag tag) {
  switch (tag) {
    case CaseTag::A: return 'A';
    case CaseTag::B: return 'B';
    case CaseTag::C: return 'C';
    case CaseTag::D: return 'D';
  }
  return '?';
}

ShotState shot_rhs(const ProblemParams& p, const ShotState& y) {
  const double sl = p.sqrt_lambda();
  const double rho = y[kRho];
  const double eta = y[kEta];
  const double wdot = y[kWdot];
  const auto [g, c] = logistic(eta);
  const double w = std::expm1(eta) / sl;
  ShotState d;
  d[kRho] = g;
  d[kEta] = sl * wdot * c;
  // g f(w) = -g lambda w - sqrt(lambda) tanh(eta/2)
  d[kWdot] = g * (-wdot / rho - p.lambda() * w) - sl * std::tanh(0.5 * eta);
  d[kEnergyIntegral] = g * 4.0 * rho * potential_unit_from_log(eta);
  d[kGradIntegral] = g * rho * wdot * wdot;
  d[kMassIntegral] = g * rho * w * w;
  return d;
}

RadialSolution integrate(const ProblemParams& p, double h0, const Tolerances& tol) {
  if (!p.admissible(h0)) throw AdmissibilityError("integrate: 1 + sqrt(lambda) h0 must be positive");
  RadialSolution sol(p);
  sol.h0_ = h0;
  sol.tol_ = tol;
  const Series s = make_series(p, h0, tol);
  sol.rho_start_ = s.rho_start;
  sol.series_a2_ = s.a2;
  sol.series_a4_ = s.a4;
  const ShotState y0 = series_state(p, h0, s, s.rho_start);

  sol.sup_w_ = sol.inf_w_ = h0;
  sol.min_eta_ = y0[kEta];
  sol.max_abs_wdot_ = std::fabs(y0[kWdot]);
  const auto track = [&](const ShotState& y) {
    const double w = w_of_eta(p, y[kEta]);
    sol.sup_w_ = std::max(sol.sup_w_, w);
    sol.inf_w_ = std::min(sol.inf_w_, w);
    sol.min_eta_ = std::min(sol.min_eta_, y[kEta]);
    sol.max_abs_wdot_ = std::max(sol.max_abs_wdot_, std::fabs(y[kWdot]));
  };
  if (h0 == 0.0) {
    // Trivial solution: w = 0 on [0, R], nothing to integrate.
    sol.steps_.clear();
    return sol;
  }
  const double R = p.radius();
  const RunOutcome out = run(p, h0, y0, R, tol, 0.0, [&](const Step& st) {
    sol.steps_.push_back(st.dense);
    track(st.y);
    return true;
  });
  sol.escaped_ = out.escaped;
  sol.escape_reason_ = out.reason;
  sol.escape_rho_ = out.escaped ? out.y[kRho] : 0.0;
  sol.wdot_R_ = out.y[kWdot];
  sol.e_norm_ = std::sqrt(out.y[kGradIntegral] + out.y[kMassIntegral]);

  if (!out.escaped && out.y[kWdot] != 0.0) {
    // Look just past R for the critical point of a hump whose bottom sits
    // within rounding of R (w'(R) itself is then not resolvable).
    const Rhs rhs{&p};
    int prev_eta = sgn(out.y[kEta]);
    const int wdot_sign = sgn(out.y[kWdot]);
    run(p, h0, out.y, R * (1.0 + kClosureWindow), tol, out.last_dt, [&](const Step& st) {
      if (sgn(st.y[kEta]) != prev_eta) return false;  // a zero first: not a closing extremum
      if (sgn(st.y[kWdot]) != wdot_sign) {
        const Crossing c = refine_in_step(st.dense, rhs, kWdot);
        Extremum e;
        e.rho = c.y[kRho];
        e.tau = std::numeric_limits<double>::infinity();
        e.eta = c.y[kEta];
        e.w = w_of_eta(p, e.eta);
        e.state = c.y;
        sol.closing_ = e;
        track(c.y);
        return false;
      }
      prev_eta = sgn(st.y[kEta]);
      return true;
    });
  }

  sol.extrema_ = detect_extrema(sol);
  for (const auto& e : sol.extrema_) track(e.state);
  sol.nodes_ = detect_nodes(sol);
  if (!sol.escaped_) sol.segments_ = classify_segments(sol);
  return sol;
}

ShotSummary shoot(const ProblemParams& p, double h0, const Tolerances& tol) {
  if (!p.admissible(h0)) throw AdmissibilityError("shoot: 1 + sqrt(lambda) h0 must be positive");
  const Series s = make_series(p, h0, tol);
  const ShotState y0 = series_state(p, h0, s, s.rho_start);
  ShotSummary sum;
  if (h0 == 0.0) return sum;
  sum.min_log_admissibility = y0[kEta];
  sum.max_abs_wdot = std::fabs(y0[kWdot]);
  int prev = sgn(y0[kEta]);
  const double log_floor = std::log(tol.floor);
  if (y0[kEta] < log_floor) sum.floor_rho = 0.0;
  const RunOutcome out = run(p, h0, y0, p.radius(), tol, 0.0, [&](const Step& st) {
    if (sum.floor_rho < 0.0 && st.y[kEta] < log_floor) {
      const double lo_eta = st.dense.begin()[kEta];
      // Bisect the dense output for the crossing of the floor.
      double a = 0.0, b = 1.0;
      for (int i = 0; i < 60 && lo_eta >= log_floor; ++i) {
        const double m = 0.5 * (a + b);
        (st.dense.at_theta(m)[kEta] < log_floor ? b : a) = m;
      }
      sum.floor_rho = lo_eta < log_floor ? st.dense.begin()[kRho] : st.dense.at_theta(b)[kRho];
    }
    const int now = sgn(st.y[kEta]);
    if (now != 0 && prev != 0 && now != prev) ++sum.node_count;
    if (now != 0) prev = now;
    sum.min_log_admissibility = std::min(sum.min_log_admissibility, st.y[kEta]);
    sum.max_abs_wdot = std::max(sum.max_abs_wdot, std::fabs(st.y[kWdot]));
    return true;
  });
  sum.wdot_R = out.y[kWdot];
  sum.w_R = w_of_eta(p, out.y[kEta]);
  sum.eta_R = out.y[kEta];
  sum.escaped = out.escaped;
  return sum;
}

CriticalShot shoot_to_critical(const ProblemParams& p, double h0, int k, const Tolerances& tol,
                               double rho_max) {
  if (k < 1) throw ParameterError("shoot_to_critical: k must be at least 1");
  if (!(rho_max > 1.0)) throw ParameterError("shoot_to_critical: rho_max must exceed 1");
  if (!p.admissible(h0)) throw AdmissibilityError("shoot_to_critical: 1 + sqrt(lambda) h0 must be positive");
  CriticalShot out;
  if (h0 == 0.0) return out;
  const Series s = make_series(p, h0, tol);
  const ShotState y0 = series_state(p, h0, s, s.rho_start);
  const Rhs rhs{&p};
  out.min_log_admissibility = y0[kEta];
  int prev_eta = sgn(y0[kEta]);
  int prev_wdot = sgn(y0[kWdot]);
  int extrema = 0;
  const RunOutcome res = run(p, h0, y0, rho_max * p.radius(), tol, 0.0, [&](const Step& st) {
    const int e = sgn(st.y[kEta]);
    const int d = sgn(st.y[kWdot]);
    if (e != 0 && prev_eta != 0 && e != prev_eta) ++out.nodes;
    if (e != 0) prev_eta = e;
    if (d != 0 && prev_wdot != 0 && d != prev_wdot && ++extrema == k) {
      const Crossing c = refine_in_step(st.dense, rhs, kWdot);
      out.found = true;
      out.rho = c.y[kRho];
      out.eta = c.y[kEta];
      out.w = w_of_eta(p, c.y[kEta]);
      out.min_log_admissibility = std::min(out.min_log_admissibility, c.y[kEta]);
      return false;
    }
    if (d != 0) prev_wdot = d;
    out.min_log_admissibility = std::min(out.min_log_admissibility, st.y[kEta]);
    return true;
  });
  out.escaped = res.escaped;
  if (!out.found) out.rho = res.y[kRho];
  return out;
}

std::vector<Node> detect_nodes(const RadialSolution& sol) {
  std::vector<Node> out;
  const double scale = std::max(sol.max_abs_wdot(), std::numeric_limits<double>::min());
  for (const auto& c : crossings(sol, kEta)) {
    Node n;
    n.rho = c.y[kRho];
    n.tau = c.tau;
    n.wdot = c.y[kWdot];
    n.state = c.y;
    if (std::fabs(n.wdot) <= kTangentialTolerance * scale) {
      std::ostringstream os;
      os.precision(17);
      os << "detect_nodes: w and w' vanish together (tangential zero) at rho = " << n.rho << ", w' = " << n.wdot
         << ", eta = " << c.y[kEta] << ", max |w'| = " << scale;
      throw ClassificationError(os.str());
    }
    out.push_back(n);
  }
  return out;
}

std::vector<NodalSegment> classify_segments(const RadialSolution& sol) {
  std::vector<NodalSegment> out;
  if (sol.trivial()) return out;
  const ProblemParams& p = sol.params();
  const double R = p.radius();

  struct Event {
    bool node;
    double tau;
    std::size_t index;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < sol.nodes().size(); ++i) events.push_back({true, sol.nodes()[i].tau, i});
  for (std::size_t i = 0; i < sol.extrema().size(); ++i) {
    events.push_back({false, sol.extrema()[i].tau, i});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.tau < b.tau; });

  // The centre is the first critical point.
  Extremum centre;
  centre.rho = 0.0;
  centre.w = sol.h0();
  centre.eta = std::log1p(p.sqrt_lambda() * sol.h0());
  bool prev_node = false;
  Extremum last_ext = centre;
  Node last_node;

  auto from_extremum = [&](const Extremum& e, double r2, double wdot_end, bool complete) {
    NodalSegment s;
    s.r1 = e.rho;
    s.r2 = r2;
    s.tag = e.w > 0.0 ? CaseTag::A : CaseTag::C;
    s.h = e.w;
    s.eta_h = e.eta;
    s.rho_bar = e.rho;
    s.rho_0 = r2;
    s.wdot_rho0 = wdot_end;
    s.complete = complete;
    return s;
  };
  auto from_node = [&](const Node& n, double r2, double h, double eta_h, bool complete) {
    NodalSegment s;
    s.r1 = n.rho;
    s.r2 = r2;
    s.tag = h < 0.0 ? CaseTag::B : CaseTag::D;
    s.h = h;
    s.eta_h = eta_h;
    s.rho_0 = n.rho;
    s.rho_bar = r2;
    s.wdot_rho0 = n.wdot;
    s.complete = complete;
    return s;
  };

  for (const auto& ev : events) {
    if (ev.node) {
      const Node& n = sol.nodes()[ev.index];
      if (prev_node) throw ClassificationError("classify_segments: two zeros without a critical point");
      const bool descending = last_ext.w > 0.0;
      if ((descending && n.wdot >= 0.0) || (!descending && n.wdot <= 0.0)) {
        throw ClassificationError("classify_segments: non-monotone piece before a zero");
      }
      out.push_back(from_extremum(last_ext, n.rho, n.wdot, true));
      last_node = n;
      prev_node = true;
    } else {
      const Extremum& e = sol.extrema()[ev.index];
      if (!prev_node) {
        throw ClassificationError("classify_segments: two critical points without a zero (non-monotone piece)");
      }
      out.push_back(from_node(last_node, e.rho, e.w, e.eta, true));
      last_ext = e;
      prev_node = false;
    }
  }

  // Trailing piece up to R.
  const TrajectoryPoint end = sol.at(R);
  const bool closed = std::fabs(end.wdot) <= kBoundaryTolerance * sol.max_abs_wdot();
  if (prev_node) {
    if (!closed && sol.closing_extremum()) {
      const Extremum& e = *sol.closing_extremum();
      NodalSegment seg = from_node(last_node, R, e.w, e.eta, true);
      seg.rho_bar = e.rho;
      out.push_back(seg);
    } else {
      out.push_back(from_node(last_node, R, end.w, end.eta, closed));
    }
  } else if (R - last_ext.rho > kClosureWindow * R) {
    // A hump moving towards zero and cut by the boundary. Sign noise of w'
    // right at R (a closed boundary) does not open a new hump.
    out.push_back(from_extremum(last_ext, R, end.wdot, false));
  }
  return out;
}

double e_norm(const RadialSolution& sol) { return sol.e_norm(); }

double EnergyIdentityCheck::relative_residual() const {
  const double d = std::fabs(lhs - rhs);
  return scale > 0.0 ? d / scale : d;
}

EnergyIdentityCheck energy_identity(const RadialSolution& sol, double rho1, double rho2) {
  if (!(rho1 >= 0.0 && rho1 <= rho2 && rho2 <= sol.end_rho())) {
    throw RangeError("energy_identity: need 0 <= rho1 <= rho2 <= R");
  }
  auto state = [&](double r) {
    const TrajectoryPoint t = sol.at(r);
    ShotState y{};
    y[kRho] = t.rho;
    y[kEta] = t.eta;
    y[kWdot] = t.wdot;
    y[kEnergyIntegral] = t.energy_integral;
    return y;
  };
  return identity_between(state(rho1), state(rho2));
}

std::vector<EnergyIdentityCheck> energy_identity_on_nodal_intervals(const RadialSolution& sol) {
  std::vector<ShotState> marks;
  ShotState origin{};
  origin[kEta] = std::log1p(sol.params().sqrt_lambda() * sol.h0());
  marks.push_back(origin);
  for (const auto& n : sol.nodes()) marks.push_back(n.state);
  if (!sol.steps().empty()) marks.push_back(sol.steps().back().end());
  std::vector<EnergyIdentityCheck> out;
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) out.push_back(identity_between(marks[i], marks[i + 1]));
  return out;
}

// ---------------------------------------------------------------------------
// RadialSolution

double RadialSolution::end_rho() const {
  if (steps_.empty()) return trivial() ? params_.radius() : rho_start_;
  return escaped_ ? steps_.back().end()[kRho] : params_.radius();
}

ShotState RadialSolution::evaluate_state(double rho) const {
  if (!(rho >= 0.0) || rho > end_rho()) throw RangeError("RadialSolution::at: rho outside [0, end]");
  if (rho <= rho_start_ || steps_.empty()) {
    Series s{rho_start_, series_a2_, series_a4_, 1.0 + params_.sqrt_lambda() * h0_};
    return series_state(params_, h0_, s, rho);
  }
  const auto it = std::lower_bound(steps_.begin(), steps_.end(), rho,
                                   [](const auto& st, double r) { return st.end()[kRho] < r; });
  const auto& st = it == steps_.end() ? steps_.back() : *it;
  double lo = 0.0, hi = 1.0;
  if (st.begin()[kRho] >= rho) return st.begin();
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (st.at_theta(mid)[kRho] < rho ? lo : hi) = mid;
  }
  ShotState y = st.at_theta(0.5 * (lo + hi));
  y[kRho] = rho;
  return y;
}

TrajectoryPoint RadialSolution::to_point(const ShotState& y) const {
  TrajectoryPoint t;
  t.rho = y[kRho];
  t.eta = y[kEta];
  t.w = w_of_eta(params_, y[kEta]);
  t.wdot = y[kWdot];
  t.energy_integral = y[kEnergyIntegral];
  t.grad_integral = y[kGradIntegral];
  t.mass_integral = y[kMassIntegral];
  return t;
}

TrajectoryPoint RadialSolution::at(double rho) const {
  TrajectoryPoint t = to_point(evaluate_state(rho));
  if (rho == 0.0) t.w = h0_;
  return t;
}

TrajectoryPoint RadialSolution::step_end(std::size_t i) const {
  if (i >= steps_.size()) throw RangeError("RadialSolution::step_end: index out of range");
  return to_point(steps_[i].end());
}

std::vector<double> RadialSolution::grid() const {
  if (trivial()) return {0.0, params_.radius()};
  std::vector<double> g{0.0, rho_start_};
  for (const auto& st : steps_) g.push_back(st.end()[kRho]);
  return g;
}

std::vector<double> RadialSolution::w() const {
  if (trivial()) return {0.0, 0.0};
  std::vector<double> v{h0_, to_point(evaluate_state(rho_start_)).w};
  for (const auto& st : steps_) v.push_back(w_of_eta(params_, st.end()[kEta]));
  return v;
}

std::vector<double> RadialSolution::wdot() const {
  if (trivial()) return {0.0, 0.0};
  std::vector<double> v{0.0, evaluate_state(rho_start_)[kWdot]};
  for (const auto& st : steps_) v.push_back(st.end()[kWdot]);
  return v;
}

bool RadialSolution::boundary_closed(double rel) const {
  if (trivial()) return true;
  if (escaped_) return false;
  if (std::fabs(wdot_R_) <= rel * max_abs_wdot_ || closing_) return true;
  if (extrema_.empty()) return false;
  const Extremum& e = extrema_.back();
  const bool after_nodes = nodes_.empty() || nodes_.back().tau < e.tau;
  return after_nodes && params_.radius() - e.rho <= kClosureWindow * params_.radius();
}

double RadialSolution::min_admissibility() const { return std::exp(min_eta_); }

std::vector<double> RadialSolution::nodal_interval_widths() const {
  std::vector<double> out;
  double prev = 0.0;
  for (const auto& n : nodes_) {
    out.push_back(n.rho - prev);
    prev = n.rho;
  }
  out.push_back(end_rho() - prev);
  return out;
}

}  // namespace radbif
