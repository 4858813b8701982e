#include <algorithm>
#include <cmath>
#include <numbers>

#include "radbif/errors.hpp"
#include "radbif/shooting.hpp"
#include "radbif/timemap.hpp"

namespace radbif {
namespace {

constexpr int kSubIntervals = 8;

InequalityCheck check(std::string name, double lhs, double rhs, double scale) {
  return {std::move(name), lhs, rhs, scale};
}

// rho_bar ln(x) with the rho_bar = 0 limit.
double scaled_log(double rho_bar, double x) { return rho_bar == 0.0 ? 0.0 : rho_bar * std::log(x); }

// Quadrature tolerance relative to the hump: deep humps are only ~1e-4 wide.
double relative_tolerance(double t_h) {
  return kTimeMapTolerance * std::min(1.0, std::max(std::fabs(t_h), 1e-8));
}

// T^{-1} with the argument clamped to the range of the time map.
double inverse_clamped(const ProblemParams& p, double eta_h, double t_h, double arg) {
  const double lo = std::min(0.0, t_h);
  const double hi = std::max(0.0, t_h);
  return phi_inverse_from_log(p, eta_h, std::clamp(arg, lo, hi), relative_tolerance(t_h));
}

void interval_chain(const NodalSegment& s, double t_h, std::vector<InequalityCheck>& out) {
  const double rb = s.rho_bar;
  const double r0 = s.rho_0;
  const double scale = rb + r0;
  switch (s.tag) {
    case CaseTag::A:
    case CaseTag::C: {
      // A uses T(h), C uses -T(h) = |T(h)|.
      const double t = std::fabs(t_h);
      const double ratio = r0 > 0.0 ? rb / r0 * (r0 - rb) : 0.0;
      const double lg = scaled_log(rb, r0 / std::max(rb, 1e-300));
      out.push_back(check("interval:ratio<=log", ratio, lg, scale));
      out.push_back(check("interval:log<=T", lg, t, scale));
      out.push_back(check("interval:T<=width", t, r0 - rb, scale));
      break;
    }
    case CaseTag::B:
    case CaseTag::D: {
      const double t = std::fabs(t_h);
      const double lg = scaled_log(rb, rb / r0);
      out.push_back(check("interval:width<=T", rb - r0, t, scale));
      out.push_back(check("interval:T<=log", t, lg, scale));
      out.push_back(check("interval:log<=ratio", lg, rb / r0 * (rb - r0), scale));
      break;
    }
  }
}

void derivative_bounds(const NodalSegment& s, std::vector<InequalityCheck>& out) {
  const double root = std::numbers::sqrt2 * std::sqrt(-potential_unit_from_log(s.eta_h));
  const double ratio = s.rho_bar / s.rho_0;
  // -w' on descending humps (A, B), +w' on ascending ones (C, D).
  const bool descending = s.tag == CaseTag::A || s.tag == CaseTag::B;
  const double slope = descending ? -s.wdot_rho0 : s.wdot_rho0;
  if (s.tag == CaseTag::A || s.tag == CaseTag::C) {
    out.push_back(check("derivative:lower", ratio * root, slope, root));
    out.push_back(check("derivative:upper", slope, root, root));
  } else {
    out.push_back(check("derivative:lower", root, slope, root));
    out.push_back(check("derivative:upper", slope, ratio * root, root));
  }
}

void sub_intervals(const RadialSolution& sol, const NodalSegment& s, std::vector<InequalityCheck>& out) {
  const bool ac = s.tag == CaseTag::A || s.tag == CaseTag::C;
  TrajectoryPoint prev = sol.at(s.r1);
  for (int j = 1; j <= kSubIntervals; ++j) {
    const double r = j == kSubIntervals ? s.r2 : s.r1 + (s.r2 - s.r1) * j / kSubIntervals;
    const TrajectoryPoint cur = sol.at(r);
    const double p1 = prev.rho * prev.rho * prev.wdot * prev.wdot;
    const double p2 = cur.rho * cur.rho * cur.wdot * cur.wdot;
    const double dF = potential_unit_from_log(cur.eta) - potential_unit_from_log(prev.eta);
    const double lo = 2.0 * prev.rho * prev.rho * dF;
    const double hi = 2.0 * cur.rho * cur.rho * dF;
    const double mid = p2 - p1;
    const double scale = std::max({std::fabs(p1), std::fabs(p2), std::fabs(lo), std::fabs(hi)});
    if (ac) {
      out.push_back(check("subinterval:lower", lo, mid, scale));
      out.push_back(check("subinterval:upper", mid, hi, scale));
    } else {
      out.push_back(check("subinterval:lower", hi, mid, scale));
      out.push_back(check("subinterval:upper", mid, lo, scale));
    }
    prev = cur;
  }
}

void envelope(const RadialSolution& sol, const NodalSegment& s, double t_h,
              std::vector<InequalityCheck>& out) {
  const ProblemParams& p = sol.params();
  const double rb = s.rho_bar;
  const double scale = std::fabs(s.h);
  const bool ab = s.tag == CaseTag::A || s.tag == CaseTag::B;
  for (int j = 1; j < kSubIntervals; ++j) {
    const double r = s.r1 + (s.r2 - s.r1) * j / kSubIntervals;
    if (r <= 0.0) continue;
    const double w = sol.at(r).w;
    double lower_arg, upper_arg;
    if (ab) {
      lower_arg = t_h + (rb - r);
      upper_arg = t_h + scaled_log(rb, rb / r);
    } else {
      lower_arg = t_h + scaled_log(rb, r / rb);
      upper_arg = t_h + (r - rb);
    }
    out.push_back(check("envelope:lower", inverse_clamped(p, s.eta_h, t_h, lower_arg), w, scale));
    out.push_back(check("envelope:upper", w, inverse_clamped(p, s.eta_h, t_h, upper_arg), scale));
  }
}

}  // namespace

bool InequalityCheck::holds(double tolerance) const {
  return slack() >= -tolerance * std::max(scale, std::numeric_limits<double>::min());
}

bool SegmentReport::all_hold(double tolerance) const {
  return std::all_of(checks.begin(), checks.end(), [&](const auto& c) { return c.holds(tolerance); });
}

const InequalityCheck* SegmentReport::worst() const {
  const InequalityCheck* w = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : checks) {
    const double r = c.scale > 0.0 ? c.slack() / c.scale : c.slack();
    if (r < best) {
      best = r;
      w = &c;
    }
  }
  return w;
}

SegmentReport verify_segment_inequalities(const RadialSolution& sol, const NodalSegment& seg) {
  SegmentReport rep;
  rep.segment = seg;
  if (seg.h == 0.0) throw DomainError("verify_segment_inequalities: segment with zero extremum");
  sub_intervals(sol, seg, rep.checks);
  const bool has_extremum = seg.complete || seg.tag == CaseTag::A || seg.tag == CaseTag::C;
  if (!has_extremum) return rep;
  const double rough = phi_from_log(sol.params(), seg.eta_h).phi;
  const double t_h = phi_from_log(sol.params(), seg.eta_h, relative_tolerance(rough)).phi;
  envelope(sol, seg, t_h, rep.checks);
  if (!seg.complete) return rep;
  interval_chain(seg, t_h, rep.checks);
  derivative_bounds(seg, rep.checks);
  return rep;
}

std::vector<InequalityCheck> log_inequality(double a, double b) {
  if (!(a > 0.0 && b > a)) throw DomainError("log_inequality: need 0 < a < b");
  const double lg = std::log(b / a);
  const double scale = (b - a) / a;
  return {check("log:lower", (b - a) / b, lg, scale), check("log:upper", lg, (b - a) / a, scale)};
}

std::vector<InequalityCheck> positive_interval_bounds(const RadialSolution& sol) {
  std::vector<InequalityCheck> out;
  if (sol.trivial()) return out;
  const auto widths = sol.nodal_interval_widths();
  const bool closed = !sol.segments().empty() && sol.segments().back().complete;
  const double bound = std::numbers::pi / (4.0 * sol.params().sqrt_lambda());
  const std::size_t first = sol.h0() > 0.0 ? 0 : 1;
  for (std::size_t i = first; i < widths.size(); i += 2) {
    if (i + 1 == widths.size() && !closed) break;
    out.push_back(check("positive_interval:" + std::to_string(i), bound, widths[i], bound));
  }
  return out;
}

}  // namespace radbif
