#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "radbif/branch.hpp"
#include "radbif/errors.hpp"
#include "radbif/specfun.hpp"
#include "radbif/timemap.hpp"

namespace radbif::cli {
namespace {

Cell real(double v) { return v; }
Cell integer(long long v) { return static_cast<std::int64_t>(v); }
Cell text(std::string s) { return s; }

}  // namespace

std::vector<double> parse_real_list(const std::string& textual) {
  std::vector<double> out;
  std::stringstream ss(textual);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    const std::string tok = item.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ParameterError("not a number: '" + tok + "'");
    }
    if (used != tok.size()) throw ParameterError("not a number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

Document cmd_eigs(int kmax, double R) {
  if (kmax < 0) throw ParameterError("eigs: --kmax must be non-negative");
  if (!(R > 0.0) || !std::isfinite(R)) throw ParameterError("eigs: --radius must be positive");
  Document doc;
  doc.command = "eigs";
  doc.set("radius", real(R));
  doc.set("kmax", integer(kmax));
  doc.main.columns = {"k", "y_k", "z_k", "mu_k", "nu_k"};
  for (int k = 0; k <= kmax; ++k) {
    const SpectralData s = spectral_data(k, R);
    if (k == 0) {
      doc.main.rows.push_back({integer(0), Cell{}, Cell{}, real(0.0), Cell{}});
    } else {
      doc.main.rows.push_back({integer(k), real(s.y_k), real(s.z_k), real(s.mu_k), real(s.nu_k)});
    }
  }
  return doc;
}

Document cmd_timemap(double lambda, const std::vector<double>& h_grid, double tol) {
  const ProblemParams p(lambda);
  for (double h : h_grid) {
    if (h == 0.0 || !std::isfinite(h)) throw ParameterError("timemap: h must be finite and nonzero");
    if (!p.admissible(h)) throw AdmissibilityError("timemap: h must satisfy 1 + sqrt(lambda) h > 0");
  }
  Document doc;
  doc.command = "timemap";
  doc.set("lambda", real(lambda));
  const TimeMapLimits lim = time_map_limits(lambda);
  doc.set("limit_zero_plus", real(lim.zero_plus));
  doc.set("limit_infinity", real(lim.infinity));
  doc.set("limit_zero_minus", real(lim.zero_minus));
  doc.set("limit_floor", real(lim.floor));
  doc.main.columns = {"h", "phi", "error_estimate"};
  for (double h : h_grid) {
    const TimeMapSample s = phi(p, h, tol);
    doc.main.rows.push_back({real(h), real(s.phi), real(s.quadrature_error_estimate)});
  }
  return doc;
}

Document cmd_shoot(double lambda, double h0, double R, const Tolerances& tol) {
  const ProblemParams p(lambda, R);
  if (!std::isfinite(h0)) throw ParameterError("shoot: h0 must be finite");
  const RadialSolution sol = integrate(p, h0, tol);
  Document doc;
  doc.command = "shoot";
  doc.set("lambda", real(lambda));
  doc.set("h0", real(h0));
  doc.set("radius", real(R));
  doc.set("escaped", integer(sol.escaped()));
  if (sol.escaped()) doc.set("escape_reason", text(sol.escape_reason()));
  doc.set("nodes", integer(static_cast<long long>(sol.node_count())));
  doc.set("boundary_residual", real(sol.boundary_residual()));
  doc.set("max_abs_wdot", real(sol.max_abs_wdot()));
  doc.set("boundary_closed", integer(sol.boundary_closed(1e-8)));
  doc.set("sup_w", real(sol.sup_w()));
  doc.set("inf_w", real(sol.inf_w()));
  doc.set("min_admissibility", real(sol.min_admissibility()));
  doc.set("min_log_admissibility", real(sol.min_log_admissibility()));
  doc.set("e_norm", real(sol.e_norm()));

  doc.main.columns = {"rho", "w", "wdot"};
  const auto g = sol.grid();
  const auto w = sol.w();
  const auto wd = sol.wdot();
  for (std::size_t i = 0; i < g.size(); ++i) doc.main.rows.push_back({real(g[i]), real(w[i]), real(wd[i])});

  Table nodes{"nodes", {"index", "rho", "wdot"}, {}};
  for (std::size_t i = 0; i < sol.nodes().size(); ++i) {
    nodes.rows.push_back({integer(static_cast<long long>(i + 1)), real(sol.nodes()[i].rho), real(sol.nodes()[i].wdot)});
  }
  doc.tables.push_back(std::move(nodes));

  Table segs{"segments",
             {"index", "tag", "r1", "r2", "h", "rho_bar", "rho_0", "complete", "checks", "failures",
              "worst_check", "worst_relative_slack"},
             {}};
  int n_checks = 0, n_fail = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sol.segments().size(); ++i) {
    const NodalSegment& s = sol.segments()[i];
    const SegmentReport rep = verify_segment_inequalities(sol, s);
    int fails = 0;
    for (const auto& c : rep.checks) fails += !c.holds(tol.slack);
    const InequalityCheck* wc = rep.worst();
    const double rel = wc ? wc->slack() / std::max(wc->scale, std::numeric_limits<double>::min()) : 0.0;
    worst = std::min(worst, rel);
    n_checks += static_cast<int>(rep.checks.size());
    n_fail += fails;
    segs.rows.push_back({integer(static_cast<long long>(i)), text(std::string(1, to_char(s.tag))), real(s.r1),
                         real(s.r2), real(s.h), real(s.rho_bar), real(s.rho_0), integer(s.complete),
                         integer(static_cast<long long>(rep.checks.size())), integer(fails),
                         text(wc ? wc->name : ""), real(rel)});
  }
  if (!sol.trivial() && !sol.escaped()) {
    for (const auto& c : positive_interval_bounds(sol)) {
      ++n_checks;
      n_fail += !c.holds(tol.slack);
      worst = std::min(worst, c.slack() / c.scale);
    }
  }
  doc.tables.push_back(std::move(segs));
  doc.set("inequality_checks", integer(n_checks));
  doc.set("inequality_failures", integer(n_fail));
  doc.set("inequality_worst_relative_slack", n_checks > 0 ? real(worst) : Cell{});

  Table energy{"energy_identity", {"rho1", "rho2", "lhs", "rhs", "relative_residual"}, {}};
  double emax = 0.0;
  if (!sol.trivial() && !sol.escaped()) {
    for (const auto& c : energy_identity_on_nodal_intervals(sol)) {
      emax = std::max(emax, c.relative_residual());
      energy.rows.push_back({real(c.rho1), real(c.rho2), real(c.lhs), real(c.rhs), real(c.relative_residual())});
    }
  }
  doc.tables.push_back(std::move(energy));
  doc.set("energy_identity_max_residual", real(emax));
  return doc;
}

Document cmd_branch(int k, int sign, double h0_min, double h0_max, int points, double R, const Tolerances& tol) {
  if (k < 1) throw ParameterError("branch: --k must be at least 1");
  if (sign != 1 && sign != -1) throw ParameterError("branch: --sign must be + or -");
  if (!(h0_min > 0.0) || !(h0_max > h0_min) || !std::isfinite(h0_max)) {
    throw ParameterError("branch: need 0 < --h0-min < --h0-max");
  }
  if (points < 2) throw ParameterError("branch: --points must be at least 2");
  SolveOptions opt;
  opt.tol = tol;
  const Branch br = trace_branch(k, sign, geometric_schedule(h0_min, h0_max, points), R, opt);

  Document doc;
  doc.command = "branch";
  doc.set("k", integer(k));
  doc.set("sign", text(sign > 0 ? "+" : "-"));
  doc.set("radius", real(R));
  doc.set("lambda_lower", real(br.bounds.lower));
  doc.set("lambda_upper", real(br.bounds.upper));
  doc.set("points", integer(static_cast<long long>(br.points.size())));
  doc.set("bifurcation_end", br.points.empty() ? Cell{} : real(br.bifurcation_end));
  doc.set("bifurcation_target", real(br.bifurcation_target));
  const AsymptoteFit* fit = br.best_fit();
  if (br.asymptote_asserted) {
    doc.set("asymptote", fit ? real(fit->limit) : Cell{});
    doc.set("asymptote_model", fit ? text(fit->model) : Cell{});
    doc.set("asymptote_target", real(br.asymptote_target));
  } else {
    doc.set("asymptote", text("unasserted"));
  }
  doc.set("tail_lambda", br.points.empty() ? Cell{} : real(br.points.back().lambda));
  doc.set("tail_h0", br.points.empty() ? Cell{} : real(br.points.back().h0));
  std::string turns;
  for (double t : br.turning_h0) turns += (turns.empty() ? "" : ";") + format_real(t);
  doc.set("turning_h0", text(turns));
  if (br.breakdown) {
    doc.set("breakdown_h0", real(br.breakdown->h0));
    doc.set("breakdown_reason", text(br.breakdown->reason));
  }

  doc.main.columns = {"h0", "lambda", "sup_w", "inf_w", "min_admissibility", "min_log_admissibility", "e_norm",
                      "boundary_residual", "critical_offset", "max_abs_wdot", "max_odd_width", "shots",
                      "reverified"};
  for (const auto& p : br.points) {
    doc.main.rows.push_back({real(p.h0), real(p.lambda), real(p.sup_w), real(p.inf_w), real(p.min_admissibility),
                             real(p.min_log_admissibility), real(p.e_norm), real(p.boundary_residual),
                             real(p.critical_offset), real(p.max_abs_wdot), real(p.max_odd_width),
                             integer(p.shots), integer(reverify(p, R, 1e-8, tol))});
  }
  Table fits{"fits", {"model", "limit", "coefficient", "rms_residual", "points"}, {}};
  for (const auto& f : br.asymptote_fits) {
    fits.rows.push_back({text(f.model), real(f.limit), real(f.coefficient), real(f.rms_residual), integer(f.points)});
  }
  doc.tables.push_back(std::move(fits));
  return doc;
}

}  // namespace radbif::cli
