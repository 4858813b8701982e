#include "radbif/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "radbif/errors.hpp"

namespace radbif {
namespace {

// Below this the power series (long double) is used, above it the Hankel
// expansion. At 15 the series' largest term is ~1e5 (absolute rounding
// ~1e-14 in long double) and the Hankel remainder is ~exp(-30).
constexpr double kSeriesLimit = 15.0;

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(who) + ": non-finite argument");
  }
}

long double series_j0(long double x) {
  const long double q = -x * x / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int m = 1; m < 200; ++m) {
    term *= q / (static_cast<long double>(m) * m);
    sum += term;
    if (std::fabs(term) < 1e-22L && m > x) break;
  }
  return sum;
}

long double series_j1(long double x) {
  const long double q = -x * x / 4.0L;
  long double term = x / 2.0L;
  long double sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= q / (static_cast<long double>(m) * (m + 1));
    sum += term;
    if (std::fabs(term) < 1e-22L && m > x) break;
  }
  return sum;
}

// Hankel asymptotic amplitudes P, Q for order nu (mu = 4 nu^2).
std::pair<double, double> hankel_pq(double x, double mu) {
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    if (std::fabs(term) > std::fabs(prev)) break;  // divergent tail
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    if (std::fabs(term) < 1e-17) break;
    prev = term;
  }
  return {p, q};
}

double hankel_j0(double x) {
  const auto [p, q] = hankel_pq(x, 0.0);
  const double s = std::sin(x);
  const double c = std::cos(x);
  // cos(x - pi/4), sin(x - pi/4) without subtracting a rounded pi/4.
  const double cchi = (c + s) * std::numbers::sqrt2 / 2.0;
  const double schi = (s - c) * std::numbers::sqrt2 / 2.0;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cchi - q * schi);
}

double hankel_j1(double x) {
  const auto [p, q] = hankel_pq(x, 4.0);
  const double s = std::sin(x);
  const double c = std::cos(x);
  // chi = x - 3 pi / 4
  const double cchi = (s - c) * std::numbers::sqrt2 / 2.0;
  const double schi = -(s + c) * std::numbers::sqrt2 / 2.0;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cchi - q * schi);
}

enum class ZeroKind { kJ0, kJ1 };

double find_zero(ZeroKind kind, int k) {
  if (k < 1) throw ParameterError("Bessel zero index must be >= 1");
  const double beta = kind == ZeroKind::kJ0 ? (k - 0.25) * std::numbers::pi
                                            : (k + 0.25) * std::numbers::pi;
  const double mu = kind == ZeroKind::kJ0 ? 0.0 : 4.0;
  const double guess = beta - (mu - 1.0) / (8.0 * beta);
  auto f = [kind](double x) { return kind == ZeroKind::kJ0 ? bessel_j0(x) : bessel_j1(x); };

  double a = guess - 0.3;
  double b = guess + 0.3;
  double fa = f(a);
  double fb = f(b);
  if (fa * fb > 0.0) {
    throw ComputationError("Bessel zero " + std::to_string(k) + " not bracketed");
  }
  for (int it = 0; it < 200 && b - a > 1e-9 * b; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  // Newton polish: J0' = -J1, J1' = J0 - J1 / x.
  double x = 0.5 * (a + b);
  for (int it = 0; it < 4; ++it) {
    const double fx = f(x);
    const double dfx = kind == ZeroKind::kJ0 ? -bessel_j1(x) : bessel_j0(x) - bessel_j1(x) / x;
    const double step = fx / dfx;
    x -= step;
    if (std::fabs(step) < 1e-16 * x) break;
  }
  if (!(x > a - 1e-9 && x < b + 1e-9)) {
    throw ComputationError("Bessel zero " + std::to_string(k) + ": Newton polish left bracket");
  }
  return x;
}

double cached_zero(ZeroKind kind, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, double> cache;
  const auto key = std::make_pair(static_cast<int>(kind), k);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double z = find_zero(kind, k);
  std::lock_guard lock(mutex);
  cache.emplace(key, z);
  return z;
}

void require_radius(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw ParameterError("radius must be positive and finite");
}

}  // namespace

double bessel_j0(double x) {
  require_finite(x, "bessel_j0");
  const double ax = std::fabs(x);
  if (ax <= kSeriesLimit) return static_cast<double>(series_j0(ax));
  return hankel_j0(ax);
}

double bessel_j1(double x) {
  require_finite(x, "bessel_j1");
  const double ax = std::fabs(x);
  const double v = ax <= kSeriesLimit ? static_cast<double>(series_j1(ax)) : hankel_j1(ax);
  return x < 0.0 ? -v : v;
}

double bessel_j0_prime(double x) { return -bessel_j1(x); }

double bessel_j0_zero(int k) { return cached_zero(ZeroKind::kJ0, k); }

double bessel_j0_prime_zero(int k) { return cached_zero(ZeroKind::kJ1, k); }

NeumannMode::NeumannMode(int k, double R) : k_(k), R_(R), y_(0.0), mu_(0.0) {
  if (k < 0) throw ParameterError("Neumann index must be >= 0");
  require_radius(R);
  if (k > 0) {
    y_ = bessel_j0_prime_zero(k);
    mu_ = (y_ / R) * (y_ / R);
  }
}

double NeumannMode::operator()(double rho) const { return bessel_j0(y_ * rho / R_); }

double NeumannMode::derivative(double rho) const {
  return -(y_ / R_) * bessel_j1(y_ * rho / R_);
}

DirichletMode::DirichletMode(int k, double R) : k_(k), R_(R) {
  if (k < 1) throw ParameterError("Dirichlet index must be >= 1");
  require_radius(R);
  z_ = bessel_j0_zero(k);
  nu_ = (z_ / R) * (z_ / R);
}

double DirichletMode::operator()(double rho) const { return bessel_j0(z_ * rho / R_); }

double DirichletMode::derivative(double rho) const {
  return -(z_ / R_) * bessel_j1(z_ * rho / R_);
}

NeumannMode neumann_eigen(int k, double R) { return NeumannMode(k, R); }

DirichletMode dirichlet_eigen(int k, double R) { return DirichletMode(k, R); }

SpectralData spectral_data(int k, double R) {
  const NeumannMode n(k, R);
  SpectralData d;
  d.R = R;
  d.k = k;
  d.y_k = n.y();
  d.mu_k = n.mu();
  if (k >= 1) {
    const DirichletMode dm(k, R);
    d.z_k = dm.z();
    d.nu_k = dm.nu();
  }
  return d;
}

}  // namespace radbif
