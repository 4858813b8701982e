// One PASS/FAIL line per acceptance criterion. argv[1] is the radbif binary
// (used for the reproducibility criterion).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "radbif/branch.hpp"
#include "radbif/dirichlet.hpp"
#include "radbif/shooting.hpp"
#include "radbif/specfun.hpp"
#include "radbif/timemap.hpp"

using namespace radbif;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;
std::map<int, std::string> report;  // printed in criterion order

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0) o.require(secs < budget_s, "runtime " + std::to_string(secs) + " s over " + std::to_string(budget_s) + " s");
  std::ostringstream line;
  line.precision(6);
  line << (o.pass ? "PASS" : "FAIL") << " " << id << " " << title << " (" << secs << " s)" << o.detail.str();
  report[id] = line.str();
  failures += !o.pass;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  criterion(1, "Bessel zeros and interlacing", 1.0, [](Outcome& o) {
    double worst = 0.0;
    for (int k = 1; k <= 10; ++k) {
      const double y = bessel_j0_prime_zero(k), z = bessel_j0_zero(k);
      worst = std::max({worst, std::fabs(bessel_j0_prime(y)), std::fabs(bessel_j0(z))});
      o.require(z < y && y < bessel_j0_zero(k + 1), "interlacing at k=" + std::to_string(k));
    }
    o.detail << " worst residual " << worst;
    o.require(worst < 1e-11, "residual");
  });

  criterion(2, "time-map limits and scaling identity", 10.0, [](Outcome& o) {
    const ProblemParams one(1.0);
    const double pi = std::numbers::pi;
    const double e0 = std::fabs(phi(one, 1e-6).phi - pi / (2.0 * std::sqrt(2.0)));
    const double einf = std::fabs(phi(one, 1e6).phi - pi / 2.0);
    const double floor_val = std::fabs(phi(one, -1.0 + 1e-9).phi);
    o.detail << " |dT(0+)| " << e0 << ", |dT(inf)| " << einf << ", |T(-1+1e-9)| " << floor_val;
    o.require(e0 < 1e-4, "h -> 0+ limit");
    o.require(einf < 1e-2, "h -> inf limit");
    o.require(floor_val < 1e-2, "|T| < 1e-2 at sqrt(lambda) h = -1 + 1e-9");
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ul(std::log(1e-2), std::log(1e2)), uv(-0.999, 100.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const ProblemParams p(std::exp(ul(rng)));
      double v = uv(rng);
      if (v == 0.0) v = 0.5;
      worst = std::max(worst, std::fabs(std::sqrt(2.0) * p.sqrt_lambda() * phi(p, v / p.sqrt_lambda()).phi - phi_bar(v).value));
    }
    o.detail << ", scaling " << worst;
    o.require(worst < 1e-9, "scaling identity");
  });

  criterion(3, "linearization at the bifurcation points", 5.0, [](Outcome& o) {
    for (int k = 1; k <= 3; ++k) {
      const NeumannMode m = neumann_eigen(k, 1.0);
      const double h0 = 1e-6;
      const RadialSolution sol = integrate(ProblemParams(0.5 * m.mu()), h0);
      double dev = 0.0;
      for (int i = 0; i <= 1000; ++i) dev = std::max(dev, std::fabs(sol.at(i / 1000.0).w - h0 * m(i / 1000.0)));
      o.detail << " k=" << k << ": " << dev / h0 << "/" << std::fabs(sol.boundary_residual());
      o.require(dev < 1e-4 * h0, "max-norm at k=" + std::to_string(k));
      o.require(std::fabs(sol.boundary_residual()) < 1e-8, "w'(R) at k=" + std::to_string(k));
    }
  });

  // Branches shared by 4-7.
  std::vector<Branch> branches;
  criterion(6, "branch endpoints and lambda bounds (k = 1..3, plus)", 120.0, [&](Outcome& o) {
    std::vector<BranchRequest> req;
    for (int k = 1; k <= 3; ++k) req.push_back({k, 1, geometric_schedule(1e-5, 1e3, 41)});
    for (int k = 1; k <= 3; ++k) req.push_back({k, -1, geometric_schedule(1e-5, 0.3, 41)});
    branches = trace_branches(req);
    for (int k = 1; k <= 3; ++k) {
      const Branch& br = branches[k - 1];
      o.require(!br.points.empty() && !br.breakdown, "k=" + std::to_string(k) + " traced");
      if (br.points.empty()) continue;
      const double b = bifurcation_target(k), a = asymptote_target(k);
      const double eb = std::fabs(br.points.front().lambda - b) / b;
      const double ea = std::fabs(br.points.back().lambda - a) / a;
      o.detail << " k=" << k << ": " << eb << "/" << ea;
      o.require(eb < 1e-3, "bifurcation end k=" + std::to_string(k));
      o.require(ea < 2e-2, "asymptote k=" + std::to_string(k));
      for (const auto& p : br.points) {
        if (p.lambda < br.bounds.lower || p.lambda > br.bounds.upper) o.require(false, "bounds k=" + std::to_string(k));
      }
    }
  });

  std::vector<RadialSolution> sampled;
  criterion(4, "energy identity on 50 sampled branch solutions", 0.0, [&](Outcome& o) {
    std::vector<const BranchPoint*> pool;
    for (const auto& br : branches)
      for (const auto& p : br.points) pool.push_back(&p);
    o.require(pool.size() >= 50, "enough branch points");
    std::mt19937_64 rng(99);
    std::shuffle(pool.begin(), pool.end(), rng);
    double worst = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(50, pool.size()); ++i) {
      sampled.push_back(integrate(ProblemParams(pool[i]->lambda), pool[i]->h0, verification_tolerances()));
      for (const auto& e : energy_identity_on_nodal_intervals(sampled.back())) worst = std::max(worst, e.relative_residual());
    }
    o.detail << " worst " << worst;
    o.require(worst < 1e-7, "relative residual");
  });

  criterion(5, "inequality suite on every classified segment", 0.0, [&](Outcome& o) {
    double worst = INFINITY;
    std::string where;
    std::size_t segments = 0;
    for (const auto& sol : sampled) {
      for (const auto& seg : sol.segments()) {
        ++segments;
        for (const auto& c : verify_segment_inequalities(sol, seg).checks) {
          const double r = c.scale > 0 ? c.slack() / c.scale : c.slack();
          if (r < worst) {
            worst = r;
            where = c.name;
          }
        }
      }
    }
    o.detail << " " << segments << " segments, worst relative slack " << worst << " (" << where << ")";
    o.require(segments > 0, "segments");
    o.require(worst >= -1e-8, where);
  });

  criterion(7, "k = 1 plus tail: large, near the floor, thin odd humps", 0.0, [&](Outcome& o) {
    const BranchPoint& t = branches.at(0).points.back();
    o.detail << " sup w " << t.sup_w << ", ln min(1+sqrt(lambda) w) " << t.min_log_admissibility << ", odd width " << t.max_odd_width;
    o.require(t.sup_w > 1e2, "sup w");
    o.require(t.min_log_admissibility < std::log(1e-2), "floor distance");
    o.require(t.max_odd_width < 0.2, "odd hump width");
  });

  criterion(8, "Dirichlet probe finds no solution", 30.0, [](Outcome& o) {
    const DirichletReport rep = dirichlet_probe(default_probe_lambdas(), default_probe_u0s());
    o.detail << " " << rep.shots.size() << " shots, hits " << rep.hits << ", singular " << rep.singular;
    o.require(rep.shots.size() == 400, "20x20 grid");
    o.require(rep.hits == 0, "hits");
  });

  criterion(9, "verify is reproducible for a seed", 0.0, [&](Outcome& o) {
    if (argc < 2) {
      o.require(false, "radbif binary path not given");
      return;
    }
    const auto dir = std::filesystem::temp_directory_path() / ("radbif_acc_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::string base = std::string("\"") + argv[1] + "\" verify --seed 7 --out ";
    const int r1 = std::system((base + "\"" + (dir / "a.csv").string() + "\"").c_str());
    const int r2 = std::system((base + "\"" + (dir / "b.csv").string() + "\"").c_str());
    o.require(r1 == 0 && r2 == 0, "verify exit status");
    const std::string a = slurp(dir / "a.csv"), b = slurp(dir / "b.csv");
    o.detail << " " << a.size() << " bytes";
    o.require(!a.empty() && a == b, "identical reports");
    std::filesystem::remove_all(dir);
  });

  for (const auto& [id, line] : report) std::cout << line << "\n";
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed") << "\n";
  return failures == 0 ? 0 : 1;
}
