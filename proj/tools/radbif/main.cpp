#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "radbif/errors.hpp"
#include "radbif/timemap.hpp"
#include "report.hpp"
#include "verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;

struct Common {
  std::optional<double> tol_rel;
  std::optional<double> tol_abs;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--tol-rel", c.tol_rel, "Relative integration tolerance")->check(CLI::PositiveNumber);
  app->add_option("--tol-abs", c.tol_abs, "Absolute integration tolerance")->check(CLI::PositiveNumber);
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", c.out, "Write to PATH (atomically) instead of stdout");
  app->add_option("--seed", c.seed, "Seed for sampled checks");
}

radbif::Tolerances tolerances(const Common& c, radbif::Tolerances t = {}) {
  if (c.tol_rel) t.rel = *c.tol_rel;
  if (c.tol_abs) t.abs = *c.tol_abs;
  return t;
}

void emit(const radbif::cli::Document& doc, const Common& c) {
  using radbif::cli::Format;
  const std::string text = radbif::cli::render(doc, c.format == "json" ? Format::Json : Format::Csv);
  if (c.out.empty()) {
    std::cout << text << std::flush;
  } else {
    radbif::cli::write_atomic(c.out, text);
  }
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial nodal solutions of u'' + u'/r = lambda u - lambda/u: eigenvalues, time map, shooting, branches"};
  app.require_subcommand(1);

  Common common;

  int kmax = 3;
  double radius = 1.0;
  auto* eigs = app.add_subcommand("eigs", "Neumann/Dirichlet eigenvalues of the disc");
  eigs->add_option("--kmax", kmax, "Largest index")->required();
  eigs->add_option("--radius", radius, "Disc radius");
  add_common(eigs, common);

  double lambda = 1.0;
  std::string h_grid;
  auto* timemap = app.add_subcommand("timemap", "Time map T(h) on a grid of amplitudes");
  timemap->add_option("--lambda", lambda, "lambda > 0")->required();
  timemap->add_option("--h-grid", h_grid, "Comma-separated amplitudes")->required()->allow_extra_args(false);
  add_common(timemap, common);

  double h0 = 0.0;
  auto* shoot = app.add_subcommand("shoot", "Integrate the radial problem from w(0) = h0");
  shoot->add_option("--lambda", lambda, "lambda > 0")->required();
  shoot->add_option("--h0", h0, "Initial amplitude")->required();
  shoot->add_option("--radius", radius, "Disc radius");
  add_common(shoot, common);

  int k = 1;
  std::string sign = "+";
  double h0_min = 1e-5, h0_max = 1e3;
  int points = 41;
  auto* branch = app.add_subcommand("branch", "Trace the branch of radial solutions with k nodes");
  branch->add_option("--k", k, "Node count")->required();
  branch->add_option("--sign", sign, "Sign of w(0)")->check(CLI::IsMember({"+", "-", "plus", "minus"}));
  branch->add_option("--h0-min", h0_min, "Smallest |h0|");
  branch->add_option("--h0-max", h0_max, "Largest |h0|");
  branch->add_option("--points", points, "Number of amplitudes");
  branch->add_option("--radius", radius, "Disc radius");
  add_common(branch, common);

  std::string suite = "all";
  std::optional<double> check_tol;
  int samples = 50;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--suite", suite, "Comma-separated suites or 'all'");
  verify->add_option("--check-tol", check_tol, "Replace every tolerance limit by this value")->check(CLI::PositiveNumber);
  verify->add_option("--samples", samples, "Branch solutions re-integrated")->check(CLI::NonNegativeNumber);
  add_common(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    using namespace radbif::cli;
    if (*eigs) {
      emit(cmd_eigs(kmax, radius), common);
    } else if (*timemap) {
      emit(cmd_timemap(lambda, parse_real_list(h_grid), common.tol_abs.value_or(radbif::kTimeMapTolerance)), common);
    } else if (*shoot) {
      emit(cmd_shoot(lambda, h0, radius, tolerances(common)), common);
    } else if (*branch) {
      const int s = (sign == "+" || sign == "plus") ? 1 : -1;
      emit(cmd_branch(k, s, h0_min, h0_max, points, radius, tolerances(common)), common);
    } else if (*verify) {
      VerifyOptions opt;
      opt.suites = split(suite);
      opt.seed = common.seed;
      opt.check_tol = check_tol;
      opt.samples = samples;
      opt.tol = tolerances(common, radbif::verification_tolerances());
      const VerifyReport rep = run_verify(opt);
      emit(rep.to_document(), common);
      if (rep.failures() > 0) {
        std::cerr << "radbif verify: " << rep.failures() << " of " << rep.checks.size() << " checks failed\n";
        for (const auto& c : rep.checks) {
          if (!c.passed) std::cerr << "  FAIL [" << c.suite << "] " << c.name << '\n';
        }
        return kVerificationFailure;
      }
    }
  } catch (const radbif::ParameterError& e) {
    std::cerr << "radbif: " << e.what() << '\n';
    return kUsageError;
  } catch (const radbif::AdmissibilityError& e) {
    std::cerr << "radbif: " << e.what() << '\n';
    return kUsageError;
  } catch (const radbif::DomainError& e) {
    std::cerr << "radbif: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "radbif: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kOk;
}
