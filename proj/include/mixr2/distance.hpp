#pragma once

// Arc length of the variance function between two mean values and the
// squared-arc-length distance d_V that replaces squared Euclidean distance
// for heteroscedastic responses.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mixr2/family.hpp"
#include "mixr2/quadrature.hpp"

namespace mixr2 {

enum class DistanceMethod { closed_form, quadrature };

struct DistanceResult {
  double arc_length = 0.0;
  double d_v = 0.0;  // always arc_length^2
  DistanceMethod method = DistanceMethod::closed_form;
  double abs_error_estimate = 0.0;
};

namespace detail {

// Antiderivative of sqrt(1 + u^2).
inline double asinh_form(double u) {
  return 0.5 * (u * std::sqrt(1.0 + u * u) + std::asinh(u));
}

inline void check_mean_domain(const Family& fam, double v, const char* which) {
  if (!(fam.in_mean_closure(v)) || std::isnan(v)) {
    throw std::domain_error(std::string(which) + "=" + std::to_string(v) +
                            " outside the mean domain of family " + fam.name);
  }
}

}  // namespace detail

// Length of the curve t -> (t, V(t)) between a and b (orientation-free):
// integral of sqrt(1 + V'(t)^2) over [min(a,b), max(a,b)].
inline DistanceResult arc_length_detail(const Family& fam, double a, double b,
                                        double abs_tol = 1e-10,
                                        int max_subdivisions = 60) {
  detail::check_mean_domain(fam, a, "a");
  detail::check_mean_domain(fam, b, "b");

  DistanceResult res;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (lo == hi) return res;

  switch (fam.kind) {
    case FamilyKind::gaussian:
      res.arc_length = hi - lo;
      break;
    case FamilyKind::poisson:
      res.arc_length = std::sqrt(2.0) * (hi - lo);
      break;
    case FamilyKind::binomial:
      // V' = 1 - 2t; substitute u = 1 - 2t.
      res.arc_length =
          0.5 * std::abs(detail::asinh_form(1.0 - 2.0 * lo) -
                         detail::asinh_form(1.0 - 2.0 * hi));
      break;
    case FamilyKind::gamma:
      // V' = 2t; substitute u = 2t.
      res.arc_length =
          0.5 * (detail::asinh_form(2.0 * hi) - detail::asinh_form(2.0 * lo));
      break;
    case FamilyKind::inverse_gaussian:
    case FamilyKind::quasi: {
      const auto& vp = fam.variance_deriv;
      auto integrand = [&vp](double t) {
        const double d = vp(t);
        return std::sqrt(1.0 + d * d);
      };
      QuadratureResult q =
          integrate_adaptive(integrand, lo, hi, abs_tol, max_subdivisions);
      if (!q.converged) {
        throw QuadratureError(
            "arc_length quadrature did not reach tolerance " +
                std::to_string(abs_tol) + " (estimate " +
                std::to_string(q.abs_error) + ")",
            q.abs_error);
      }
      res.arc_length = q.value;
      res.method = DistanceMethod::quadrature;
      res.abs_error_estimate = q.abs_error;
      break;
    }
  }
  res.d_v = res.arc_length * res.arc_length;
  return res;
}

inline double arc_length(const Family& fam, double a, double b) {
  return arc_length_detail(fam, a, b).arc_length;
}

// d_V(a, b): squared length of the variance function between a and b.
inline double d_v(const Family& fam, double a, double b) {
  return arc_length_detail(fam, a, b).d_v;
}

// Sum of d_V(y_i, mu_i) over paired vectors.
inline double sum_d_v(const Family& fam,
                      const Eigen::Ref<const Eigen::VectorXd>& y,
                      const Eigen::Ref<const Eigen::VectorXd>& mu) {
  if (y.size() != mu.size()) {
    throw std::invalid_argument("sum_d_v: y has length " +
                                std::to_string(y.size()) + ", mu has length " +
                                std::to_string(mu.size()));
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    try {
      total += d_v(fam, y[i], mu[i]);
    } catch (const std::domain_error& e) {
      throw std::domain_error("sum_d_v at index " + std::to_string(i) + ": " +
                              e.what());
    }
  }
  return total;
}

// Sum of d_V(y_i, c) against a common reference mean (typically the grand mean).
inline double sum_d_v(const Family& fam,
                      const Eigen::Ref<const Eigen::VectorXd>& y, double c) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    try {
      total += d_v(fam, y[i], c);
    } catch (const std::domain_error& e) {
      throw std::domain_error("sum_d_v at index " + std::to_string(i) + ": " +
                              e.what());
    }
  }
  return total;
}

}  // namespace mixr2
