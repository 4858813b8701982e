#include "radbif/branch.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <future>
#include <sstream>

#include "radbif/errors.hpp"
#include "radbif/specfun.hpp"

namespace radbif {
namespace {

// Residual G(lambda) = rho_k - R, rho_k the k-th critical point after the
// centre (continued past R when needed).
struct Sample {
  double lambda;
  double residual;
  bool ok;
};

class Shooter {
 public:
  Shooter(int k, double h0, double R, const SolveOptions& opt) : k_(k), h0_(h0), R_(R), opt_(opt) {}

  Sample eval(double lambda) {
    const ProblemParams p(lambda, R_);
    if (!p.admissible(h0_)) return {lambda, 0.0, false};
    ++shots_;
    const CriticalShot s = shoot_to_critical(p, h0_, k_, opt_.tol);
    if (s.escaped) return {lambda, 0.0, false};
    return {lambda, s.rho - R_, true};
  }

  static bool brackets(const Sample& a, const Sample& b) {
    if (!a.ok || !b.ok) return false;
    return (a.residual <= 0.0 && b.residual >= 0.0) || (a.residual >= 0.0 && b.residual <= 0.0);
  }

  std::optional<BranchPoint> refine(Sample a, Sample b) {
    double lambda;
    double offset;
    if (a.residual == 0.0) {
      lambda = a.lambda;
      offset = 0.0;
    } else if (b.residual == 0.0) {
      lambda = b.lambda;
      offset = 0.0;
    } else {
      auto f = [&](double l) {
        const Sample s = eval(l);
        if (!s.ok) throw ComputationError("branch: inadmissible shot inside a bracket");
        return s.residual;
      };
      std::uintmax_t iters = 100;
      const double rtol = opt_.root_rel_tol;
      try {
        const auto r = boost::math::tools::toms748_solve(
            f, a.lambda, b.lambda, a.residual, b.residual,
            [rtol](double x, double y) { return std::fabs(x - y) <= rtol * std::fabs(x); }, iters);
        const Sample lo = eval(r.first), hi = eval(r.second);
        const bool pick_lo = std::fabs(lo.residual) <= std::fabs(hi.residual);
        lambda = pick_lo ? r.first : r.second;
        offset = pick_lo ? lo.residual : hi.residual;
      } catch (const ComputationError&) {
        return std::nullopt;
      }
    }
    ++shots_;
    std::optional<RadialSolution> solved;
    try {
      solved.emplace(integrate(ProblemParams(lambda, R_), h0_, opt_.tol));
    } catch (const ClassificationError&) {
      return std::nullopt;
    }
    const RadialSolution& sol = *solved;
    if (sol.escaped() || static_cast<int>(sol.node_count()) != k_) {
      return std::nullopt;
    }
    BranchPoint pt;
    pt.lambda = lambda;
    pt.h0 = h0_;
    pt.k = k_;
    pt.sign_class = sol.sign_class();
    pt.sup_w = sol.sup_w();
    pt.inf_w = sol.inf_w();
    pt.e_norm = sol.e_norm();
    pt.min_log_admissibility = sol.min_log_admissibility();
    pt.min_admissibility = sol.min_admissibility();
    pt.boundary_residual = sol.boundary_residual();
    pt.critical_offset = offset;
    pt.max_abs_wdot = sol.max_abs_wdot();
    const auto widths = sol.nodal_interval_widths();
    for (std::size_t i = 1; i < widths.size(); i += 2) pt.max_odd_width = std::max(pt.max_odd_width, widths[i]);
    return pt;
  }

  int shots() const { return shots_; }

 private:
  int k_;
  double h0_;
  double R_;
  SolveOptions opt_;
  int shots_ = 0;
};

std::string describe(const std::vector<Sample>& samples) {
  std::ostringstream os;
  os.precision(6);
  os << "scan trace (lambda, rho_k - R):";
  const std::size_t step = std::max<std::size_t>(1, samples.size() / 12);
  for (std::size_t i = 0; i < samples.size(); i += step) {
    const auto& s = samples[i];
    os << " (" << s.lambda << ", ";
    if (s.ok) {
      os << s.residual << ")";
    } else {
      os << "inadmissible)";
    }
  }
  return os.str();
}

// Expanding symmetric search around `center`; the bracket closest to the
// centre wins.
std::optional<BranchPoint> local_search(Shooter& sh, double center, double delta0,
                                        const LambdaBounds& b) {
  center = std::clamp(center, b.lower, b.upper);
  std::vector<Sample> samples{sh.eval(center)};
  std::vector<std::pair<double, double>> tried;
  for (int j = 0; j < 48; ++j) {
    const double d = delta0 * std::ldexp(1.0, j);
    const double lo = std::max(b.lower, center - d);
    const double hi = std::min(b.upper, center + d);
    bool added = false;
    for (double l : {lo, hi}) {
      const bool seen = std::any_of(samples.begin(), samples.end(), [&](const Sample& s) { return s.lambda == l; });
      if (!seen) {
        samples.push_back(sh.eval(l));
        added = true;
      }
    }
    std::sort(samples.begin(), samples.end(), [](const Sample& x, const Sample& y) { return x.lambda < y.lambda; });
    std::vector<std::pair<Sample, Sample>> cands;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      if (sh.brackets(samples[i], samples[i + 1])) cands.emplace_back(samples[i], samples[i + 1]);
    }
    std::sort(cands.begin(), cands.end(), [&](const auto& x, const auto& y) {
      return std::fabs(0.5 * (x.first.lambda + x.second.lambda) - center) <
             std::fabs(0.5 * (y.first.lambda + y.second.lambda) - center);
    });
    for (const auto& [a, c] : cands) {
      const std::pair<double, double> key{a.lambda, c.lambda};
      if (std::find(tried.begin(), tried.end(), key) != tried.end()) continue;
      tried.push_back(key);
      if (auto pt = sh.refine(a, c)) return pt;
    }
    if (!added && lo == b.lower && hi == b.upper) break;
  }
  return std::nullopt;
}

double least_squares_limit(const std::vector<double>& g, const std::vector<double>& y, double& slope,
                           double& rms) {
  const double n = static_cast<double>(g.size());
  double sg = 0, sy = 0, sgg = 0, sgy = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    sg += g[i];
    sy += y[i];
    sgg += g[i] * g[i];
    sgy += g[i] * y[i];
  }
  const double det = n * sgg - sg * sg;
  slope = det != 0.0 ? (n * sgy - sg * sy) / det : 0.0;
  const double a = (sy - slope * sg) / n;
  double ss = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = y[i] - a - slope * g[i];
    ss += r * r;
  }
  rms = std::sqrt(ss / n);
  return a;
}

}  // namespace

std::vector<BranchPoint> solve_all_at_amplitude(int k, double h0, const LambdaBounds& bounds,
                                                const SolveOptions& opt) {
  if (k < 1) throw ParameterError("solve_at_amplitude: k must be at least 1");
  if (h0 == 0.0 || !std::isfinite(h0)) throw ParameterError("solve_at_amplitude: h0 must be nonzero");
  Shooter sh(k, h0, bounds.radius, opt);
  const int n = std::max(opt.scan_points, 2);
  std::vector<Sample> samples;
  samples.reserve(n);
  for (int i = 0; i < n; ++i) {
    samples.push_back(sh.eval(bounds.lower + (bounds.upper - bounds.lower) * i / (n - 1)));
  }
  std::vector<BranchPoint> out;
  for (int i = 0; i + 1 < n; ++i) {
    if (!sh.brackets(samples[i], samples[i + 1])) continue;
    if (auto pt = sh.refine(samples[i], samples[i + 1])) {
      if (out.empty() || std::fabs(out.back().lambda - pt->lambda) > 1e-12 * pt->lambda) out.push_back(*pt);
    }
  }
  if (out.empty()) {
    throw NotFoundError("solve_at_amplitude: no lambda in [lower, upper] puts critical point " +
                        std::to_string(k) + " on R; " + describe(samples));
  }
  for (auto& p : out) p.shots = sh.shots();
  return out;
}

BranchPoint solve_at_amplitude(int k, double h0, const LambdaBounds& bounds, std::optional<double> hint,
                               const SolveOptions& opt) {
  if (hint) {
    if (k < 1) throw ParameterError("solve_at_amplitude: k must be at least 1");
    if (h0 == 0.0 || !std::isfinite(h0)) throw ParameterError("solve_at_amplitude: h0 must be nonzero");
    Shooter sh(k, h0, bounds.radius, opt);
    if (auto pt = local_search(sh, *hint, 1e-3 * std::fabs(*hint), bounds)) {
      pt->shots = sh.shots();
      return *pt;
    }
  }
  auto all = solve_all_at_amplitude(k, h0, bounds, opt);
  if (!hint) return all.front();
  return *std::min_element(all.begin(), all.end(), [&](const auto& a, const auto& b) {
    return std::fabs(a.lambda - *hint) < std::fabs(b.lambda - *hint);
  });
}

BranchPoint solve_at_amplitude(int k, int sign, double amplitude, double R, const SolveOptions& opt) {
  if (sign != 1 && sign != -1) throw ParameterError("solve_at_amplitude: sign must be +1 or -1");
  if (!(amplitude > 0.0)) throw ParameterError("solve_at_amplitude: amplitude must be positive");
  return solve_at_amplitude(k, sign * amplitude, lambda_bounds(k, R), bifurcation_target(k, R), opt);
}

bool reverify(const BranchPoint& pt, double R, double rel, const Tolerances& tol) {
  const RadialSolution sol = integrate(ProblemParams(pt.lambda, R), pt.h0, tol);
  return !sol.escaped() && static_cast<int>(sol.node_count()) == pt.k && sol.boundary_closed(rel);
}

double bifurcation_target(int k, double R) { return 0.5 * spectral_data(k, R).mu_k; }

double asymptote_target(int k, double R) {
  if (k < 1) throw ParameterError("asymptote_target: k must be at least 1");
  return k % 2 == 0 ? spectral_data(k / 2, R).mu_k : spectral_data((k + 1) / 2, R).nu_k;
}

std::vector<double> geometric_schedule(double h0_min, double h0_max, int points) {
  if (!(h0_min > 0.0) || !(h0_max >= h0_min) || points < 1) {
    throw ParameterError("geometric_schedule: need 0 < h0_min <= h0_max and points >= 1");
  }
  std::vector<double> out(points);
  if (points == 1) return {h0_min};
  const double l0 = std::log(h0_min), l1 = std::log(h0_max);
  for (int i = 0; i < points; ++i) out[i] = std::exp(l0 + (l1 - l0) * i / (points - 1));
  out.front() = h0_min;
  out.back() = h0_max;
  return out;
}

AsymptoteFit fit_asymptote(const std::vector<BranchPoint>& tail, const std::string& model) {
  AsymptoteFit fit;
  fit.model = model;
  fit.points = static_cast<int>(tail.size());
  if (tail.size() < 2) {
    if (!tail.empty()) fit.limit = tail.back().lambda;
    return fit;
  }
  std::vector<double> g, y;
  for (const auto& p : tail) {
    const double a = std::fabs(p.h0);
    if (model == "1/log(h0)") {
      g.push_back(1.0 / std::log(a));
    } else if (model == "1/h0") {
      g.push_back(1.0 / a);
    } else if (model == "1/h0^2") {
      g.push_back(1.0 / (a * a));
    } else {
      throw ParameterError("fit_asymptote: unknown model " + model);
    }
    y.push_back(p.lambda);
  }
  fit.limit = least_squares_limit(g, y, fit.coefficient, fit.rms_residual);
  return fit;
}

Branch trace_branch(int k, int sign, const std::vector<double>& amplitudes, double R, const SolveOptions& opt) {
  if (sign != 1 && sign != -1) throw ParameterError("trace_branch: sign must be +1 or -1");
  if (amplitudes.empty()) throw ParameterError("trace_branch: empty schedule");
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    if (!(amplitudes[i] > 0.0) || (i > 0 && !(amplitudes[i] > amplitudes[i - 1]))) {
      throw ParameterError("trace_branch: amplitudes must be positive and increasing");
    }
  }
  Branch br;
  br.k = k;
  br.sign_class = sign;
  br.radius = R;
  br.bounds = lambda_bounds(k, R);
  br.bifurcation_target = bifurcation_target(k, R);
  br.asymptote_asserted = sign > 0;
  br.asymptote_target = sign > 0 ? asymptote_target(k, R) : 0.0;

  for (double amp : amplitudes) {
    const double h0 = sign * amp;
    auto& pts = br.points;
    double predict = pts.empty() ? br.bifurcation_target : pts.back().lambda;
    double delta = 1e-3 * predict;
    if (pts.size() >= 2) {
      const auto& a = pts[pts.size() - 2];
      const auto& b = pts.back();
      const double la = std::log(std::fabs(a.h0)), lb = std::log(std::fabs(b.h0));
      const double slope = (b.lambda - a.lambda) / (lb - la);
      predict = b.lambda + slope * (std::log(amp) - lb);
      delta = std::max(std::fabs(predict - b.lambda), 1e-4 * b.lambda);
    }
    // Negative amplitudes are only admissible for lambda < 1/h0^2.
    LambdaBounds bnd = br.bounds;
    if (sign < 0) bnd.upper = std::min(bnd.upper, (1.0 - 1e-12) / (amp * amp));
    if (!(bnd.upper > bnd.lower)) {
      br.breakdown = BranchBreak{h0, "no admissible lambda in the a priori bracket"};
      break;
    }
    Shooter sh(k, h0, R, opt);
    auto pt = local_search(sh, predict, delta, bnd);
    int extra_shots = 0;
    if (!pt) {
      // Near the admissibility cap the secant overshoots; scan the whole bracket.
      try {
        const auto all = solve_all_at_amplitude(k, h0, bnd, opt);
        pt = *std::min_element(all.begin(), all.end(), [&](const auto& a, const auto& b) {
          return std::fabs(a.lambda - predict) < std::fabs(b.lambda - predict);
        });
        extra_shots = pt->shots;
      } catch (const NotFoundError&) {
      }
    }
    if (!pt) {
      std::ostringstream os;
      os << "root lost near predicted lambda " << predict << " (local search and full scan)";
      if (!pts.empty()) {
        os << "; last sqrt(lambda) |h0| = " << std::sqrt(pts.back().lambda) * std::fabs(pts.back().h0);
      }
      br.breakdown = BranchBreak{h0, os.str()};
      break;
    }
    pt->shots = sh.shots() + extra_shots;
    if (pts.size() >= 2) {
      const double d1 = pts.back().lambda - pts[pts.size() - 2].lambda;
      const double d2 = pt->lambda - pts.back().lambda;
      if (d1 * d2 < 0.0) br.turning_h0.push_back(pts.back().h0);
    }
    pts.push_back(*pt);
  }

  const auto& pts = br.points;
  if (pts.size() >= 2) {
    const auto& a = pts[0];
    const auto& b = pts[1];
    br.bifurcation_end = a.lambda - (b.lambda - a.lambda) / (b.h0 - a.h0) * a.h0;
  } else if (!pts.empty()) {
    br.bifurcation_end = pts[0].lambda;
  }
  if (pts.size() >= 3) {
    const std::size_t m = std::min<std::size_t>(6, pts.size());
    const std::vector<BranchPoint> tail(pts.end() - static_cast<std::ptrdiff_t>(m), pts.end());
    if (std::fabs(tail.front().h0) > 1.0) {
      br.asymptote_fits = {fit_asymptote(tail, "1/log(h0)"), fit_asymptote(tail, "1/h0"),
                            fit_asymptote(tail, "1/h0^2")};
      std::stable_sort(br.asymptote_fits.begin(), br.asymptote_fits.end(),
                       [](const auto& x, const auto& y) { return x.rms_residual < y.rms_residual; });
    }
  }
  return br;
}

std::vector<Branch> trace_branches(const std::vector<BranchRequest>& requests, double R, const SolveOptions& opt) {
  std::vector<std::future<Branch>> futures;
  futures.reserve(requests.size());
  for (const auto& r : requests) {
    futures.push_back(std::async(std::launch::async, [&r, R, &opt] { return trace_branch(r.k, r.sign, r.amplitudes, R, opt); }));
  }
  std::vector<Branch> out;
  out.reserve(futures.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(RegionFace f) {
  switch (f) {
    case RegionFace::Inside: return "inside";
    case RegionFace::LambdaWindow: return "lambda-window";
    case RegionFace::Floor: return "floor";
    case RegionFace::Ceiling: return "ceiling";
  }
  return "?";
}

AdmissibilityRegion::AdmissibilityRegion(double eps) : eps_(eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("admissibility_region: eps must lie in ]0, 1[");
}

RegionFace AdmissibilityRegion::classify(double lambda, double min_admissibility, double sup_w) const {
  if (!(lambda > eps_ && lambda < 1.0 / eps_)) return RegionFace::LambdaWindow;
  if (!(min_admissibility > eps_)) return RegionFace::Floor;
  if (!(sup_w < 1.0 / eps_)) return RegionFace::Ceiling;
  return RegionFace::Inside;
}

RegionFace AdmissibilityRegion::classify(const BranchPoint& pt) const {
  return classify(pt.lambda, pt.min_admissibility, pt.sup_w);
}

AdmissibilityRegion admissibility_region(double eps) { return AdmissibilityRegion(eps); }

double ExistenceWindow::coverage_gap() const {
  const double len = upper - lower;
  if (!(len > 0.0)) return 0.0;
  const double miss = std::max(0.0, swept_lower - lower) + std::max(0.0, upper - swept_upper);
  return std::min(1.0, miss / len);
}

ExistenceWindow existence_window(int h, bool odd, double R) {
  if (h < 1) throw ParameterError("existence_window: h must be at least 1");
  ExistenceWindow w;
  w.h = h;
  w.odd = odd;
  w.k = odd ? 2 * h - 1 : 2 * h;
  w.lower = odd ? spectral_data(h, R).nu_k : spectral_data(h, R).mu_k;
  w.upper = 0.5 * spectral_data(w.k, R).mu_k;
  return w;
}

ExistenceWindow existence_window(int h, bool odd, const Branch& branch) {
  ExistenceWindow w = existence_window(h, odd, branch.radius);
  if (branch.k != w.k) throw ParameterError("existence_window: branch has the wrong node count");
  if (branch.points.empty()) return w;
  const auto [lo, hi] = std::minmax_element(branch.points.begin(), branch.points.end(),
                                            [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
  w.swept_lower = lo->lambda;
  w.swept_upper = hi->lambda;
  return w;
}

}  // namespace radbif
