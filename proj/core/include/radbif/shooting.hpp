#pragma once

// Shooting for the radial problem
//
//   w'' + w'/rho = f_lambda(w),   w(0) = h0,  w'(0) = 0,
//
// on [0, R]. The state is carried as eta = ln(1 + sqrt(lambda) w) and the
// independent variable is a rescaled time tau with
//
//   drho/dtau = e^eta / (1 + e^eta),
//
// which keeps every component bounded when the trajectory passes within
// exp(-10^6) of the singular floor w = -1/sqrt(lambda) (the regime of
// large-amplitude branch solutions). Four running integrals ride along so
// that energy identities and norms use the same accepted steps.

#include <optional>
#include <string>
#include <vector>

#include "radbif/model.hpp"
#include "radbif/ode.hpp"

namespace radbif {

struct Tolerances {
  double rel = 1e-10;
  double abs = 1e-12;
  // Below this value of 1 + sqrt(lambda) w a trajectory counts as singular
  // (used by the Dirichlet probe; the log-state integrator itself never
  // needs to stop there).
  double floor = 1e-10;
  // Relative slack allowed in inequality checks.
  double slack = 1e-8;
  // Starting radius of the series expansion, relative to R.
  double series_start = 1e-4;
  long max_steps = 2'000'000;
};

/// Tighter tolerances for re-verifying solutions: on humps that dive to
/// 1 + sqrt(lambda) w ~ e^-1e6 the slope reaches |w'| ~ 1e3, so the default
/// 1e-10 relative accuracy in rho shows up as ~1e-8 |h| in pointwise checks.
inline Tolerances verification_tolerances() {
  Tolerances t;
  t.rel = 1e-12;
  t.abs = 1e-14;
  return t;
}

/// Components of the integrated state.
enum StateIndex : std::size_t {
  kRho = 0,
  kEta = 1,      // ln(1 + sqrt(lambda) w)
  kWdot = 2,
  kEnergyIntegral = 3,  // int_0^rho 4 s F_lambda(w(s)) ds
  kGradIntegral = 4,    // int_0^rho s w'(s)^2 ds
  kMassIntegral = 5,    // int_0^rho s w(s)^2 ds
  kStateSize = 6,
};
using ShotState = ode::State<kStateSize>;

/// Point on a trajectory with every component resolved.
struct TrajectoryPoint {
  double rho = 0.0;
  double w = 0.0;
  double wdot = 0.0;
  double eta = 0.0;
  double energy_integral = 0.0;
  double grad_integral = 0.0;
  double mass_integral = 0.0;
};

enum class CaseTag { A, B, C, D };
char to_char(CaseTag tag);

/// One monotone hump [r1, r2].
///   A: w(r1) > 0, w'(r1) = 0, w' < 0, w(r2) = 0    rho_bar = r1, rho_0 = r2
///   B: w(r1) = 0, w' < 0, w'(r2) = 0, w(r2) < 0    rho_0 = r1, rho_bar = r2
///   C: w(r1) < 0, w'(r1) = 0, w' > 0, w(r2) = 0    rho_bar = r1, rho_0 = r2
///   D: w(r1) = 0, w' > 0, w'(r2) = 0, w(r2) > 0    rho_0 = r1, rho_bar = r2
/// h = w(rho_bar). A segment is incomplete when it is cut by rho = R before
/// reaching its zero / critical end (non-solutions of the boundary problem).
struct NodalSegment {
  double r1 = 0.0;
  double r2 = 0.0;
  CaseTag tag = CaseTag::A;
  double h = 0.0;
  double eta_h = 0.0;  // ln(1 + sqrt(lambda) h), exact near the floor
  double rho_bar = 0.0;
  double rho_0 = 0.0;
  double wdot_rho0 = 0.0;  // w'(rho_0)
  bool complete = true;
};

struct Node {
  double rho = 0.0;
  double tau = 0.0;
  double wdot = 0.0;
  ShotState state{};
};

struct Extremum {
  double rho = 0.0;
  double tau = 0.0;
  double w = 0.0;
  double eta = 0.0;
  ShotState state{};
};

class RadialSolution {
 public:
  const ProblemParams& params() const { return params_; }
  double h0() const { return h0_; }
  const Tolerances& tolerances() const { return tol_; }

  bool trivial() const { return h0_ == 0.0; }
  bool escaped() const { return escaped_; }
  double escape_rho() const { return escape_rho_; }
  const std::string& escape_reason() const { return escape_reason_; }

  /// Sample points: rho = 0 followed by every accepted step end.
  std::vector<double> grid() const;
  std::vector<double> w() const;
  std::vector<double> wdot() const;
  std::size_t step_count() const { return steps_.size(); }
  /// Accepted steps in the rescaled time, each with its continuous extension.
  const std::vector<ode::DenseStep<kStateSize>>& steps() const { return steps_; }
  double series_start() const { return rho_start_; }

  /// Full state at rho in [0, end_rho()], from the dense output.
  TrajectoryPoint at(double rho) const;
  /// State at the end of the i-th accepted step (exact integrator output).
  TrajectoryPoint step_end(std::size_t i) const;
  double end_rho() const;

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Extremum>& extrema() const { return extrema_; }
  const std::vector<NodalSegment>& segments() const { return segments_; }
  std::size_t node_count() const { return nodes_.size(); }
  int sign_class() const { return h0_ > 0.0 ? 1 : (h0_ < 0.0 ? -1 : 0); }

  double boundary_residual() const { return wdot_R_; }
  /// Critical point at most 1e-9 R beyond R, found when w'(R) != 0. At the
  /// bottom of a hump with 1 + sqrt(lambda) w ~ e^-30 the slope w' swings
  /// through its whole range within one rounding unit of rho, so such a
  /// trajectory is a boundary solution even though w'(R) is not small.
  const std::optional<Extremum>& closing_extremum() const { return closing_; }
  /// w'(R) = 0 up to rel * max|w'|, or a critical point within 1e-9 R of R
  /// (on either side).
  bool boundary_closed(double rel) const;
  double sup_w() const { return sup_w_; }
  double inf_w() const { return inf_w_; }
  double max_abs_wdot() const { return max_abs_wdot_; }
  /// min over [0, R] of ln(1 + sqrt(lambda) w).
  double min_log_admissibility() const { return min_eta_; }
  double min_admissibility() const;
  double e_norm() const { return e_norm_; }

  /// Widths rho_{i+1} - rho_i of the nodal intervals, rho_0 = 0, rho_{k+1} = R.
  std::vector<double> nodal_interval_widths() const;

 private:
  friend RadialSolution integrate(const ProblemParams&, double, const Tolerances&);

  explicit RadialSolution(const ProblemParams& p) : params_(p) {}

  ShotState evaluate_state(double rho) const;
  TrajectoryPoint to_point(const ShotState& y) const;

  ProblemParams params_;
  double h0_ = 0.0;
  Tolerances tol_;
  double rho_start_ = 0.0;
  double series_a2_ = 0.0;
  double series_a4_ = 0.0;
  std::vector<ode::DenseStep<kStateSize>> steps_;
  std::vector<Node> nodes_;
  std::vector<Extremum> extrema_;
  std::vector<NodalSegment> segments_;
  bool escaped_ = false;
  double escape_rho_ = 0.0;
  std::string escape_reason_;
  double wdot_R_ = 0.0;
  std::optional<Extremum> closing_;
  double sup_w_ = 0.0;
  double inf_w_ = 0.0;
  double max_abs_wdot_ = 0.0;
  double min_eta_ = 0.0;
  double e_norm_ = 0.0;
};

/// Integrate from rho = 0 to R. Throws AdmissibilityError for an
/// inadmissible h0 and ClassificationError for a degenerate (tangential)
/// zero. A trajectory that cannot be continued is returned with escaped()
/// set and its last valid state.
RadialSolution integrate(const ProblemParams& p, double h0, const Tolerances& tol = {});

/// Boundary data of a shot without keeping the trajectory: w'(R), the number
/// of sign changes of w in ]0, R[ and the floor distance.
struct ShotSummary {
  double wdot_R = 0.0;
  double w_R = 0.0;
  double eta_R = 0.0;  // ln(1 + sqrt(lambda) w(R))
  int node_count = 0;
  double min_log_admissibility = 0.0;
  double max_abs_wdot = 0.0;
  // First rho where 1 + sqrt(lambda) w drops below tol.floor; negative if never.
  double floor_rho = -1.0;
  bool escaped = false;
};
ShotSummary shoot(const ProblemParams& p, double h0, const Tolerances& tol = {});

/// Shot continued past R (up to rho_max * R) until the k-th critical point
/// after the centre. Its distance to R is a well-conditioned boundary residual:
/// rho = R exactly when w'(R) = 0 with k zeros in ]0, R[.
struct CriticalShot {
  bool found = false;
  double rho = 0.0;  // position of the critical point (end of run if not found)
  double w = 0.0;
  double eta = 0.0;
  int nodes = 0;  // zeros of w before it
  double min_log_admissibility = 0.0;
  bool escaped = false;
};
CriticalShot shoot_to_critical(const ProblemParams& p, double h0, int k, const Tolerances& tol = {},
                               double rho_max = 4.0);

/// Right-hand side of the rescaled system for the given parameters.
ShotState shot_rhs(const ProblemParams& p, const ShotState& y);

/// Refined zeros of w in ]0, R[: |w| < 1e-11 ||w||_inf at each returned node.
/// Throws ClassificationError when w and w' vanish together.
std::vector<Node> detect_nodes(const RadialSolution& sol);

/// Split [0, R] into monotone humps tagged A-D. Throws ClassificationError
/// for a non-monotone piece between consecutive critical points.
std::vector<NodalSegment> classify_segments(const RadialSolution& sol);

/// sqrt(int rho w'^2 + int rho w^2) over [0, R].
double e_norm(const RadialSolution& sol);

/// rho_2^2 p(rho_2) - rho_1^2 p(rho_1) against
/// 2 rho_2^2 F(w(rho_2)) - 2 rho_1^2 F(w(rho_1)) - int 4 s F(w(s)) ds, p = w'^2.
struct EnergyIdentityCheck {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double scale = 0.0;
  double relative_residual() const;
};
EnergyIdentityCheck energy_identity(const RadialSolution& sol, double rho1, double rho2);

/// The identity on every inter-node interval [0, rho_1], ..., [rho_k, R].
std::vector<EnergyIdentityCheck> energy_identity_on_nodal_intervals(const RadialSolution& sol);

// ---------------------------------------------------------------------------
// Inequality certification

/// lhs <= rhs, reported as slack = rhs - lhs; holds when
/// slack >= -tolerance * scale.
struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double scale = 0.0;
  double slack() const { return rhs - lhs; }
  bool holds(double tolerance) const;
};

struct SegmentReport {
  NodalSegment segment;
  std::vector<InequalityCheck> checks;
  bool all_hold(double tolerance) const;
  const InequalityCheck* worst() const;  // smallest slack / scale
};

/// (AC)/(BD) on sub-intervals, interval estimate chain, derivative estimate,
/// and the pointwise envelope built from the inverse time map. Incomplete
/// segments only get the sub-interval and envelope checks that do not need
/// the missing end.
SegmentReport verify_segment_inequalities(const RadialSolution& sol, const NodalSegment& seg);

/// (b - a)/b <= ln(b/a) <= (b - a)/a for 0 < a < b, as two checks.
std::vector<InequalityCheck> log_inequality(double a, double b);

/// rho_{i+1} - rho_i >= pi / (4 sqrt(lambda)) on every nodal interval where
/// w > 0 (i even for w(0) > 0, i odd for w(0) < 0). Requires a solution of
/// the boundary problem; incomplete trailing intervals are skipped.
std::vector<InequalityCheck> positive_interval_bounds(const RadialSolution& sol);

}  // namespace radbif
