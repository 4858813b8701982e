#pragma once

// Branches of Neumann solutions with k nodes, parametrized by the amplitude
// h0 = w(0). At each amplitude lambda is found by bracketing the distance
// from R to the k-th critical point of the shot and refining with TOMS 748;
// consecutive amplitudes are linked by a secant predictor in (log |h0|, lambda).
//
// The critical-point residual replaces w'(R; lambda): when the last hump
// dives towards 1 + sqrt(lambda) w = 0, w' crosses its full range within a
// rounding unit of rho and w'(R; lambda) degenerates to a step function.

#include <optional>
#include <string>
#include <vector>

#include "radbif/mixed_eigen.hpp"
#include "radbif/shooting.hpp"

namespace radbif {

struct BranchPoint {
  double lambda = 0.0;
  double h0 = 0.0;
  int k = 0;
  int sign_class = 0;
  double sup_w = 0.0;
  double inf_w = 0.0;
  double e_norm = 0.0;
  double min_admissibility = 0.0;      // min (1 + sqrt(lambda) w), may underflow to 0
  double min_log_admissibility = 0.0;  // its logarithm
  double boundary_residual = 0.0;      // w'(R)
  double critical_offset = 0.0;        // rho_k - R, the residual actually solved
  double max_abs_wdot = 0.0;
  // Largest nodal interval on which w has the sign opposite to w(0).
  double max_odd_width = 0.0;
  int shots = 0;  // integrations spent on this point
};

struct SolveOptions {
  Tolerances tol{};
  int scan_points = 400;  // uniform scan of [lower, upper] without a hint
  double root_rel_tol = 1e-13;
};

/// Every lambda in the scan whose k-th critical point after the centre lies
/// on R (so w'(R) = 0 with k zeros in ]0, R[), ascending.
/// Throws NotFoundError (message carries the scan trace) when there is none.
std::vector<BranchPoint> solve_all_at_amplitude(int k, double h0, const LambdaBounds& bounds,
                                                const SolveOptions& opt = {});

/// The root closest to `hint` (the smallest one without a hint).
BranchPoint solve_at_amplitude(int k, double h0, const LambdaBounds& bounds,
                               std::optional<double> hint = std::nullopt,
                               const SolveOptions& opt = {});

/// Convenience overload: sign +1 / -1, |h0| given, bounds computed for R.
BranchPoint solve_at_amplitude(int k, int sign, double amplitude, double R = 1.0,
                               const SolveOptions& opt = {});

/// Fresh integration at the point: k nodes and either |w'(R)| <= rel max|w'|
/// or a closing critical point within rounding of R (deep humps ending at R).
bool reverify(const BranchPoint& pt, double R, double rel = 1e-8, const Tolerances& tol = {});

/// Least-squares fit lambda = a + b g(h0) over the tail of a branch.
struct AsymptoteFit {
  std::string model;  // "1/log(h0)", "1/h0" or "1/h0^2"
  double limit = 0.0;
  double coefficient = 0.0;
  double rms_residual = 0.0;
  int points = 0;
};

struct BranchBreak {
  double h0 = 0.0;
  std::string reason;
};

struct Branch {
  int k = 0;
  int sign_class = 0;
  double radius = 1.0;
  LambdaBounds bounds;
  std::vector<BranchPoint> points;
  double bifurcation_end = 0.0;  // lambda extrapolated to h0 -> 0
  double bifurcation_target = 0.0;  // mu_k / 2
  std::vector<AsymptoteFit> asymptote_fits;  // all models, best first
  double asymptote_target = 0.0;  // mu_{k/2} or nu_{(k+1)/2}; 0 when not asserted
  bool asymptote_asserted = false;  // false for the minus branches
  std::vector<double> turning_h0;  // amplitudes where the lambda secant reverses
  std::optional<BranchBreak> breakdown;

  const AsymptoteFit* best_fit() const { return asymptote_fits.empty() ? nullptr : &asymptote_fits.front(); }
};

/// Geometric amplitudes from h0_min to h0_max (both > 0).
std::vector<double> geometric_schedule(double h0_min, double h0_max, int points);

/// Trace the branch with w(0) = sign * amplitude for each amplitude in the
/// (increasing) schedule. Inadmissible lambdas are skipped; a lost root ends
/// the trace with `breakdown` set.
Branch trace_branch(int k, int sign, const std::vector<double>& amplitudes, double R = 1.0,
                    const SolveOptions& opt = {});

struct BranchRequest {
  int k = 1;
  int sign = 1;
  std::vector<double> amplitudes;
};
/// Independent branches traced concurrently; results in request order.
std::vector<Branch> trace_branches(const std::vector<BranchRequest>& requests, double R = 1.0,
                                   const SolveOptions& opt = {});

/// Limit targets of the plus branch: mu_k / 2 at the bifurcation end,
/// mu_{k/2} (k even) or nu_{(k+1)/2} (k odd) at infinity.
double bifurcation_target(int k, double R = 1.0);
double asymptote_target(int k, double R = 1.0);

AsymptoteFit fit_asymptote(const std::vector<BranchPoint>& tail, const std::string& model);

// ---------------------------------------------------------------------------

/// The open set O_eps = { eps < lambda < 1/eps, 1 + sqrt(lambda) w > eps, w < 1/eps }.
enum class RegionFace { Inside, LambdaWindow, Floor, Ceiling };
const char* to_string(RegionFace f);

class AdmissibilityRegion {
 public:
  explicit AdmissibilityRegion(double eps);
  double eps() const { return eps_; }
  /// Inside, or the first face violated (lambda window, then floor, then ceiling).
  RegionFace classify(double lambda, double min_admissibility, double sup_w) const;
  RegionFace classify(const BranchPoint& pt) const;
  bool contains(const BranchPoint& pt) const { return classify(pt) == RegionFace::Inside; }

 private:
  double eps_;
};
AdmissibilityRegion admissibility_region(double eps);

/// Spectral existence windows: for index h, the odd window
/// ]nu_h, mu_{2h-1}/2[ is swept by the k = 2h-1 branch and the even window
/// ]mu_h, mu_{2h}/2[ by the k = 2h branch.
struct ExistenceWindow {
  int h = 0;
  bool odd = true;
  int k = 0;
  double lower = 0.0;  // theoretical open window
  double upper = 0.0;
  double swept_lower = 0.0;  // range of lambda over the traced branch
  double swept_upper = 0.0;
  bool nonempty() const { return lower < upper; }
  bool covered() const { return swept_lower <= lower && swept_upper >= upper; }
  /// Uncovered part of the window relative to its length (0 when covered).
  /// Both window ends are limits of the branch, so a traced branch only
  /// approaches them.
  double coverage_gap() const;
};
ExistenceWindow existence_window(int h, bool odd, double R = 1.0);
/// Fill the swept range from a traced branch with the window's k.
ExistenceWindow existence_window(int h, bool odd, const Branch& branch);

}  // namespace radbif
