#pragma once

// Dormand-Prince 5(4) with the order-4 continuous extension (Hairer's
// DOPRI5 dense output). Fixed-size states; the caller owns step-size control
// so that termination conditions on arbitrary state components can be
// handled exactly.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace radbif::ode {

template <std::size_t N>
using State = std::array<double, N>;

/// Continuous extension of one accepted step on [t0, t0 + h].
template <std::size_t N>
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  std::array<State<N>, 5> r{};

  double t1() const { return t0 + h; }

  State<N> at_theta(double theta) const {
    State<N> y;
    const double one_minus = 1.0 - theta;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = r[0][i] +
             theta * (r[1][i] + one_minus * (r[2][i] + theta * (r[3][i] + one_minus * r[4][i])));
    }
    return y;
  }

  State<N> at(double t) const { return at_theta(h == 0.0 ? 0.0 : (t - t0) / h); }
  State<N> begin() const { return r[0]; }
  State<N> end() const { return at_theta(1.0); }
};

template <std::size_t N>
struct StepResult {
  State<N> y;
  State<N> dydt;  // derivative at the new point (FSAL)
  double error_norm = 0.0;  // RMS of err_i / (atol + rtol max(|y0_i|, |y0_i + h k1_i|))
  DenseStep<N> dense;
};

/// One DOPRI5 step from (t, y) with derivative k1 = f(t, y).
template <std::size_t N, class Rhs>
StepResult<N> dopri5_step(const Rhs& f, double t, const State<N>& y, const State<N>& k1, double h,
                          double rtol, double atol) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                   d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                   d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

  State<N> tmp, k2, k3, k4, k5, k6, k7;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
  k2 = f(t + c2 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  k3 = f(t + c3 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  k4 = f(t + c4 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) {
    tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  }
  k5 = f(t + c5 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) {
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  }
  k6 = f(t + h, tmp);

  StepResult<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out.y[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
  }
  k7 = f(t + h, out.y);
  out.dydt = k7;

  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double err =
        h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    // Scale from the start and the Euler predictor: a blown-up result must
    // not widen its own tolerance.
    const double sc = atol + rtol * std::max(std::fabs(y[i]), std::fabs(y[i] + h * k1[i]));
    sum += (err / sc) * (err / sc);
  }
  out.error_norm = std::sqrt(sum / static_cast<double>(N));

  auto& d = out.dense;
  d.t0 = t;
  d.h = h;
  for (std::size_t i = 0; i < N; ++i) {
    const double ydiff = out.y[i] - y[i];
    const double bspl = h * k1[i] - ydiff;
    d.r[0][i] = y[i];
    d.r[1][i] = ydiff;
    d.r[2][i] = bspl;
    d.r[3][i] = ydiff - h * k7[i] - bspl;
    d.r[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
  }
  return out;
}

/// Step-size factor for the next attempt after an error norm `err`.
inline double step_factor(double err) {
  if (err == 0.0) return 5.0;
  return std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
}

}  // namespace radbif::ode
