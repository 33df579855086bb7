#pragma once

// Adaptive Gauss-Kronrod (G7, K15) integration on finite intervals.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace mixr2 {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, double error_estimate)
      : std::runtime_error(msg), error_estimate_(error_estimate) {}
  double error_estimate() const { return error_estimate_; }

 private:
  double error_estimate_;
};

namespace detail {

// 15-point Kronrod nodes on [-1, 1] (positive half; symmetric) and weights,
// with the embedded 7-point Gauss rule at the odd-indexed nodes.
inline constexpr std::array<double, 8> kGk15Nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kGk15Weights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kG7Weights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
std::pair<double, double> gk15(const F& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double center = 0.5 * (a + b);

  const double fc = f(center);
  double kronrod = kGk15Weights[7] * fc;
  double gauss = kG7Weights[3] * fc;

  for (int i = 0; i < 7; ++i) {
    const double dx = half * kGk15Nodes[i];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kGk15Weights[i] * fsum;
    if (i % 2 == 1) gauss += kG7Weights[i / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace detail

// Integrates f over [a, b], splitting the worst interval until the summed
// error estimate drops below abs_tol or max_subdivisions splits were spent.
template <typename F>
QuadratureResult integrate_adaptive(const F& f, double a, double b,
                                    double abs_tol = 1e-10,
                                    int max_subdivisions = 60) {
  QuadratureResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }

  std::priority_queue<detail::Interval> queue;
  auto [v0, e0] = detail::gk15(f, a, b);
  queue.push({a, b, v0, e0});
  double total_value = v0;
  double total_error = e0;

  while (total_error > abs_tol && res.subdivisions < max_subdivisions) {
    detail::Interval worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto [vl, el] = detail::gk15(f, worst.a, mid);
    auto [vr, er] = detail::gk15(f, mid, worst.b);
    total_value += vl + vr - worst.value;
    total_error += el + er - worst.error;
    queue.push({worst.a, mid, vl, el});
    queue.push({mid, worst.b, vr, er});
    ++res.subdivisions;
  }

  res.value = total_value;
  res.abs_error = std::max(total_error, 0.0);
  res.converged = total_error <= abs_tol;
  return res;
}

}  // namespace mixr2
