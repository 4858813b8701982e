#include "verify.hpp"

#include <algorithm>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "radbif/branch.hpp"
#include "radbif/dirichlet.hpp"
#include "radbif/errors.hpp"
#include "radbif/model.hpp"
#include "radbif/specfun.hpp"
#include "radbif/timemap.hpp"

namespace radbif::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Collector {
 public:
  Collector(std::string suite, std::optional<double> injected, std::vector<CheckResult>& out)
      : suite_(std::move(suite)), injected_(injected), out_(out) {}

  void at_most(const std::string& name, double value, double limit) {
    const double l = injected_.value_or(limit);
    out_.push_back({suite_, name, CheckKind::AtMost, value, l, value <= l});
  }
  void at_least(const std::string& name, double value, double limit) {
    const double l = injected_.value_or(limit);
    out_.push_back({suite_, name, CheckKind::AtLeast, value, l, value >= -l});
  }
  void property(const std::string& name, bool holds, double value) {
    out_.push_back({suite_, name, CheckKind::Property, value, kNaN, holds});
  }
  void info(const std::string& name, double value) {
    out_.push_back({suite_, name, CheckKind::Info, value, kNaN, true});
  }

 private:
  std::string suite_;
  std::optional<double> injected_;
  std::vector<CheckResult>& out_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double relative_slack(const InequalityCheck& c) {
  return c.scale > 0.0 ? c.slack() / c.scale : c.slack();
}

// Independent stream per suite so selecting suites does not shift samples.
std::mt19937_64 suite_rng(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double a, double b) {
  // Explicit mapping: the standard distributions are not pinned across
  // library implementations.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

double log_uniform(std::mt19937_64& rng, double a, double b) {
  return std::exp(uniform(rng, std::log(a), std::log(b)));
}

void suite_specfun(Collector& c, std::mt19937_64& rng) {
  for (int k = 1; k <= 10; ++k) {
    const double y = bessel_j0_prime_zero(k);
    const double z = bessel_j0_zero(k);
    const std::string ks = " k=" + std::to_string(k);
    c.at_most("|J0'(y_k)|" + ks, std::fabs(bessel_j0_prime(y)), 1e-11);
    c.at_most("|J0(z_k)|" + ks, std::fabs(bessel_j0(z)), 1e-11);
    c.at_most("y_k vs reference (relative)" + ks,
              std::fabs(y - boost::math::cyl_bessel_j_zero(1.0, k)) / y, 1e-13);
    c.at_most("z_k vs reference (relative)" + ks,
              std::fabs(z - boost::math::cyl_bessel_j_zero(0.0, k)) / z, 1e-13);
    const SpectralData s = spectral_data(k, 1.0);
    const SpectralData n = spectral_data(k + 1, 1.0);
    c.property("interlacing nu_k < mu_k < nu_{k+1}" + ks, s.nu_k < s.mu_k && s.mu_k < n.nu_k, s.mu_k);
  }
  c.property("mu_0 = 0", spectral_data(0, 1.0).mu_k == 0.0, spectral_data(0, 1.0).mu_k);
  for (int i = 0; i < 16; ++i) {
    const double x = uniform(rng, 0.0, 60.0);
    const double env = std::max(std::fabs(boost::math::cyl_bessel_j(0, x)), std::min(1.0, std::sqrt(2.0 / (std::numbers::pi * x))));
    c.at_most("J0 vs reference at x=" + fmt(x), std::fabs(bessel_j0(x) - boost::math::cyl_bessel_j(0, x)) / env, 1e-12);
    const double env1 = std::max(std::fabs(boost::math::cyl_bessel_j(1, x)), std::min(1.0, std::sqrt(2.0 / (std::numbers::pi * x))));
    c.at_most("J1 vs reference at x=" + fmt(x), std::fabs(bessel_j1(x) - boost::math::cyl_bessel_j(1, x)) / env1, 1e-12);
  }
}

void suite_model(Collector& c, std::mt19937_64& rng) {
  double worst_id = 0.0, worst_fd = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double lambda = log_uniform(rng, 0.1, 60.0);
    const ProblemParams p(lambda);
    const double v = uniform(rng, -0.9, 50.0);
    const double s = v / p.sqrt_lambda();
    const double f = f_lambda(p, s);
    const double scale = std::max(1.0, std::fabs(f));
    worst_id = std::max(worst_id, std::fabs(2.0 * lambda * s - h_lambda(p, s) + f) / scale);
    const double d = 1e-5 * (1.0 + v) / p.sqrt_lambda();
    const double fd = (F_lambda(p, s + d) - F_lambda(p, s - d)) / (2.0 * d);
    worst_fd = std::max(worst_fd, std::fabs(fd - f) / scale);
  }
  c.at_most("2 lambda s - h_lambda(s) = -f_lambda(s), worst of 40", worst_id, 1e-12);
  c.at_most("F_lambda' = f_lambda by central differences, worst of 40", worst_fd, 1e-6);

  for (double lambda : {0.5, 4.0, 30.0}) {
    const ProblemParams p(lambda);
    bool inc = true, dec = true;
    double prev = F_lambda(p, p.admissible_floor() * (1.0 - 1e-6));
    for (int i = 1; i <= 200; ++i) {
      const double s = p.admissible_floor() * (1.0 - 1e-6) * (1.0 - i / 200.0);
      const double F = F_lambda(p, s);
      inc = inc && F >= prev;
      prev = F;
    }
    prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double F = F_lambda(p, 0.05 * i / p.sqrt_lambda());
      dec = dec && F < prev;
      prev = F;
    }
    c.property("F_lambda increasing on ]-1/sqrt(lambda), 0[, lambda=" + fmt(lambda), inc, lambda);
    c.property("F_lambda decreasing on ]0, inf[, lambda=" + fmt(lambda), dec, lambda);
  }

  for (double s0 : {-0.9, -0.5, -0.1}) {
    const JunctionDerivatives j = junction_derivatives(truncate_h(s0));
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::fabs(j.left[i] - j.right[i]) / std::max(1.0, std::fabs(j.right[i])));
    c.at_most("truncated h C^2 junction at s0=" + fmt(s0), worst, 1e-12);
  }

  double worst_log = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 40; ++i) {
    const double a = log_uniform(rng, 1e-3, 10.0);
    const double b = a * (1.0 + log_uniform(rng, 1e-6, 100.0));
    for (const auto& chk : log_inequality(a, b)) worst_log = std::min(worst_log, relative_slack(chk));
  }
  c.at_least("log inequality (b-a)/b <= ln(b/a) <= (b-a)/a, worst of 40", worst_log, 1e-12);

  double worst_rt = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ProblemParams p(log_uniform(rng, 0.1, 60.0));
    const double u = log_uniform(rng, 1e-3, 10.0);
    worst_rt = std::max(worst_rt, std::fabs(to_u(p, to_w(p, u)) - u) / u);
  }
  c.at_most("u = 1/sqrt(lambda) + w round trip, worst of 20", worst_rt, 1e-13);
}

void suite_timemap(Collector& c, std::mt19937_64& rng) {
  const ProblemParams one(1.0);
  const double pi = std::numbers::pi;
  c.at_most("limit h->0+: |T(1e-6) - pi/(2 sqrt 2)| at lambda=1", std::fabs(phi(one, 1e-6).phi - pi / (2.0 * std::sqrt(2.0))), 1e-4);
  c.at_most("limit h->+inf: |T(1e6) - pi/2| at lambda=1", std::fabs(phi(one, 1e6).phi - pi / 2.0), 1e-2);
  c.at_most("limit h->0-: |T(-1e-6) + pi/(2 sqrt 2)| at lambda=1", std::fabs(phi(one, -1e-6).phi + pi / (2.0 * std::sqrt(2.0))), 1e-4);
  // The floor limit is approached like 1/sqrt(-ln(1 + sqrt(lambda) h)); only
  // the monotone decay is checkable at representable distances.
  double prev = std::numeric_limits<double>::infinity();
  bool decays = true;
  double at9 = 0.0;
  for (double delta : {1e-3, 1e-6, 1e-9, 1e-12, 1e-15}) {
    const double t = std::fabs(phi(one, -1.0 + delta).phi);
    decays = decays && t < prev;
    prev = t;
    if (delta == 1e-9) at9 = t;
  }
  c.property("|T| decreases towards sqrt(lambda) h -> -1 (value: |T| at -1+1e-9)", decays, at9);

  for (int i = 0; i < 100; ++i) {
    const double lambda = log_uniform(rng, 1e-2, 1e2);
    const ProblemParams p(lambda);
    const double v = i % 2 == 0 ? log_uniform(rng, 1e-4, 1e3) : -uniform(rng, 1e-4, 0.999);
    const double h = v / p.sqrt_lambda();
    const double lhs = std::sqrt(2.0) * p.sqrt_lambda() * phi(p, h).phi;
    const double rhs = phi_bar(v).value;
    c.at_most("scaling identity sqrt(2 lambda) T = PhiBar, lambda=" + fmt(lambda) + " v=" + fmt(v),
              std::fabs(lhs - rhs), 1e-9);
  }
  for (int i = 0; i < 20; ++i) {
    const ProblemParams p(log_uniform(rng, 0.1, 50.0));
    const double v = i % 2 == 0 ? log_uniform(rng, 1e-2, 1e2) : -uniform(rng, 0.01, 0.99);
    const double h = v / p.sqrt_lambda();
    const double target = uniform(rng, 0.05, 0.95) * phi(p, h).phi;
    const double s = phi_inverse(p, h, target);
    c.at_most("T(T^-1(t)) = t, h=" + fmt(h), std::fabs(phi_partial(p, h, s) - target), 1e-9);
  }
}

void suite_shooting(Collector& c, std::mt19937_64& rng, const Tolerances& tol) {
  for (int k = 1; k <= 3; ++k) {
    const NeumannMode mode = neumann_eigen(k, 1.0);
    const ProblemParams p(0.5 * mode.mu());
    const double h0 = 1e-6;
    const RadialSolution sol = integrate(p, h0, tol);
    double dev = 0.0;
    const auto g = sol.grid();
    const auto w = sol.w();
    for (std::size_t i = 0; i < g.size(); ++i) dev = std::max(dev, std::fabs(w[i] - h0 * mode(g[i])));
    for (int j = 0; j <= 400; ++j) {
      const double r = j / 400.0;
      dev = std::max(dev, std::fabs(sol.at(r).w - h0 * mode(r)));
    }
    const std::string ks = " k=" + std::to_string(k);
    c.at_most("linearization max|w - h0 J0(y_k rho)| / h0 at lambda=mu_k/2" + ks, dev / h0, 1e-4);
    c.at_most("linearization |w'(R)|" + ks, std::fabs(sol.boundary_residual()), 1e-8);
    c.property("linearization node count = k" + ks, static_cast<int>(sol.node_count()) == k,
               static_cast<double>(sol.node_count()));
  }
  const RadialSolution triv = integrate(ProblemParams(5.0), 0.0, tol);
  const auto tw = triv.w();
  const bool zero = std::all_of(tw.begin(), tw.end(), [](double v) { return v == 0.0; }) && triv.boundary_residual() == 0.0;
  c.property("h0 = 0 gives w = 0", zero, 0.0);

  for (int i = 0; i < 8; ++i) {
    const ProblemParams p(uniform(rng, 3.0, 60.0));
    const double v = i % 2 == 0 ? log_uniform(rng, 1e-3, 20.0) : -uniform(rng, 1e-3, 0.9);
    const double h0 = v / p.sqrt_lambda();
    const RadialSolution sol = integrate(p, h0, tol);
    double worst = 0.0;
    for (const auto& e : energy_identity_on_nodal_intervals(sol)) worst = std::max(worst, e.relative_residual());
    c.at_most("energy identity on random shot lambda=" + fmt(p.lambda()) + " h0=" + fmt(h0), worst, 1e-7);
  }
}

std::string branch_tag(int k, int sign) { return "k=" + std::to_string(k) + (sign > 0 ? ",+" : ",-"); }

void check_solution(Collector& c, const BranchPoint& pt, const Tolerances& tol, double R) {
  const RadialSolution sol = integrate(ProblemParams(pt.lambda, R), pt.h0, tol);
  const std::string tag = "[" + branch_tag(pt.k, pt.h0 > 0 ? 1 : -1) + " h0=" + fmt(pt.h0) + "] ";
  const auto energy = energy_identity_on_nodal_intervals(sol);
  for (std::size_t i = 0; i < energy.size(); ++i) {
    c.at_most(tag + "energy identity on interval " + std::to_string(i), energy[i].relative_residual(), 1e-7);
  }
  for (std::size_t i = 0; i < sol.segments().size(); ++i) {
    const NodalSegment& seg = sol.segments()[i];
    const SegmentReport rep = verify_segment_inequalities(sol, seg);
    std::map<std::string, double> worst;
    for (const auto& chk : rep.checks) {
      const double r = relative_slack(chk);
      auto [it, fresh] = worst.emplace(chk.name, r);
      if (!fresh) it->second = std::min(it->second, r);
    }
    const std::string st = tag + "segment " + std::to_string(i) + " (" + to_char(seg.tag) + ") ";
    for (const auto& [name, r] : worst) c.at_least(st + name, r, 1e-8);
    const double a = std::min(seg.rho_bar, seg.rho_0);
    const double b = std::max(seg.rho_bar, seg.rho_0);
    if (a > 0.0 && b > a) {
      double r = std::numeric_limits<double>::infinity();
      for (const auto& chk : log_inequality(a, b)) r = std::min(r, relative_slack(chk));
      c.at_least(st + "log inequality on [rho_bar, rho_0]", r, 1e-8);
    }
  }
  for (const auto& chk : positive_interval_bounds(sol)) c.at_least(tag + chk.name + " >= pi/(4 sqrt(lambda))", relative_slack(chk), 1e-8);
}

void suite_branch(Collector& c, std::mt19937_64& rng, const VerifyOptions& opt) {
  const double R = 1.0;
  std::vector<BranchRequest> req;
  for (int sign : {1, -1}) {
    for (int k = 1; k <= 3; ++k) {
      req.push_back({k, sign, geometric_schedule(1e-5, sign > 0 ? 1e3 : 0.3, 41)});
    }
  }
  const std::vector<Branch> branches = trace_branches(req, R);

  for (const Branch& br : branches) {
    const std::string tag = branch_tag(br.k, br.sign_class) + ": ";
    const auto& pts = br.points;
    if (pts.empty()) {
      c.property(tag + "branch traced", false, 0.0);
      continue;
    }
    c.at_most(tag + "|lambda(h0=1e-5) - mu_k/2| / (mu_k/2)",
              std::fabs(pts.front().lambda - br.bifurcation_target) / br.bifurcation_target, 1e-3);
    c.info(tag + "bifurcation end (extrapolated)", br.bifurcation_end);
    bool inside = true;
    int bad = 0;
    for (const auto& p : pts) {
      inside = inside && p.lambda >= br.bounds.lower && p.lambda <= br.bounds.upper;
      bad += !reverify(p, R);
    }
    c.property(tag + "lower_k <= lambda <= upper_k at every point", inside, static_cast<double>(pts.size()));
    c.property(tag + "every point re-verified (value: failures)", bad == 0, bad);
    if (br.asymptote_asserted) {
      c.property(tag + "traced to h0 = 1e3 (value: last h0)", !br.breakdown, pts.back().h0);
      c.at_most(tag + "|lambda(h0=1e3) - limit| / limit", std::fabs(pts.back().lambda - br.asymptote_target) / br.asymptote_target, 2e-2);
      bool improves = true;
      for (std::size_t i = pts.size() - 10; i + 1 < pts.size(); ++i) {
        improves = improves && std::fabs(pts[i + 1].lambda - br.asymptote_target) <= std::fabs(pts[i].lambda - br.asymptote_target);
      }
      c.property(tag + "distance to the limit decreases over the last 10 points", improves, pts.back().lambda);
      if (const AsymptoteFit* f = br.best_fit()) c.info(tag + "extrapolated limit (" + f->model + ")", f->limit);
    } else {
      c.info(tag + "asymptote unasserted; last lambda", pts.back().lambda);
      if (br.breakdown) c.info(tag + "trace ended at h0", br.breakdown->h0);
    }
  }

  const Branch& k1 = branches.front();
  const BranchPoint& tail = k1.points.back();
  c.property("k=1,+ tail: sup w > 1e2 (value: sup w)", tail.sup_w > 1e2, tail.sup_w);
  c.property("k=1,+ tail: min(1 + sqrt(lambda) w) < 1e-2 (value: log of it)", tail.min_log_admissibility < std::log(1e-2), tail.min_log_admissibility);
  c.property("k=1,+ tail: max odd-hump width < 0.2 R (value: width)", tail.max_odd_width < 0.2 * R, tail.max_odd_width);

  for (bool odd : {true, false}) {
    const int k = odd ? 1 : 2;
    const ExistenceWindow w = existence_window(1, odd, branches[k - 1]);
    c.property(std::string("existence window h=1 ") + (odd ? "odd" : "even") + " nonempty", w.nonempty(), w.upper - w.lower);
    c.info(std::string("existence window h=1 ") + (odd ? "odd" : "even") + " coverage gap", w.coverage_gap());
  }

  std::vector<const BranchPoint*> pool;
  for (const Branch& br : branches) {
    for (const auto& p : br.points) pool.push_back(&p);
  }
  // Partial Fisher-Yates with the explicit generator.
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(std::max(opt.samples, 0)), pool.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<const BranchPoint*> chosen(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(chosen.begin(), chosen.end(), [](const BranchPoint* a, const BranchPoint* b) {
    if (a->k != b->k) return a->k < b->k;
    if ((a->h0 > 0) != (b->h0 > 0)) return a->h0 > 0;
    return std::fabs(a->h0) < std::fabs(b->h0);
  });
  c.info("sampled branch solutions", static_cast<double>(n));
  for (const BranchPoint* p : chosen) check_solution(c, *p, opt.tol, R);
}

void suite_dirichlet(Collector& c) {
  const DirichletReport rep = dirichlet_probe(default_probe_lambdas(), default_probe_u0s());
  c.property("20x20 scan: no shot with u(R) < 1e-6 and finite u'(R) (value: hits)", rep.hits == 0, rep.hits);
  c.info("20x20 scan: singular shots", rep.singular);
  c.info("20x20 scan: smallest ln u(R)", rep.min_log_u_R);
  const double lambda = 4.0;
  const DirichletShot cst = dirichlet_shot(lambda, 1.0 / std::sqrt(lambda));
  c.property("u0 = 1/sqrt(lambda) stays constant", cst.u_R == cst.u0 && cst.min_u == cst.u0, cst.min_u);
  const DirichletShot tiny = dirichlet_shot(lambda, 1e-12);
  c.property("u0 -> 0+ is flagged singular before R", tiny.singular && tiny.singular_rho < 1.0, tiny.singular_rho);
}

}  // namespace

const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::AtMost: return "at_most";
    case CheckKind::AtLeast: return "at_least";
    case CheckKind::Property: return "property";
    case CheckKind::Info: return "info";
  }
  return "?";
}

std::vector<std::string> known_suites() { return {"specfun", "model", "timemap", "shooting", "branch", "dirichlet"}; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

Document VerifyReport::to_document() const {
  Document doc;
  doc.command = "verify";
  std::string names;
  for (const auto& s : suites) names += (names.empty() ? "" : ";") + s;
  doc.set("suites", names);
  doc.set("seed", static_cast<std::int64_t>(seed));
  doc.set("check_tol", check_tol ? Cell{*check_tol} : Cell{});
  doc.set("checks", static_cast<std::int64_t>(checks.size()));
  doc.set("failures", static_cast<std::int64_t>(failures()));
  doc.main.columns = {"suite", "check", "kind", "value", "limit", "passed"};
  for (const auto& c : checks) {
    doc.main.rows.push_back({c.suite, c.name, std::string(to_string(c.kind)), c.value,
                             std::isnan(c.limit) ? Cell{} : Cell{c.limit}, static_cast<std::int64_t>(c.passed)});
  }
  return doc;
}

VerifyReport run_verify(const VerifyOptions& opt) {
  const auto all = known_suites();
  std::vector<std::string> selected;
  for (const auto& s : opt.suites) {
    if (s == "all") {
      selected = all;
      break;
    }
    if (std::find(all.begin(), all.end(), s) == all.end()) throw ParameterError("verify: unknown suite '" + s + "'");
    if (std::find(selected.begin(), selected.end(), s) == selected.end()) selected.push_back(s);
  }
  if (selected.empty()) selected = all;
  // Canonical order regardless of how the suites were listed.
  std::sort(selected.begin(), selected.end(), [&](const auto& a, const auto& b) {
    return std::find(all.begin(), all.end(), a) < std::find(all.begin(), all.end(), b);
  });

  VerifyReport rep;
  rep.seed = opt.seed;
  rep.suites = selected;
  rep.check_tol = opt.check_tol;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::string& s = all[i];
    if (std::find(selected.begin(), selected.end(), s) == selected.end()) continue;
    Collector c(s, opt.check_tol, rep.checks);
    auto rng = suite_rng(opt.seed, i + 1);
    if (s == "specfun") suite_specfun(c, rng);
    if (s == "model") suite_model(c, rng);
    if (s == "timemap") suite_timemap(c, rng);
    if (s == "shooting") suite_shooting(c, rng, opt.tol);
    if (s == "branch") suite_branch(c, rng, opt);
    if (s == "dirichlet") suite_dirichlet(c);
  }
  return rep;
}

}  // namespace radbif::cli
