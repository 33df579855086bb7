#pragma once

// Exponential-family / quasi-family catalogue: link functions, variance
// functions and their derivatives, unit deviances, dispersion.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace mixr2 {

enum class FamilyKind { gaussian, binomial, poisson, gamma, inverse_gaussian, quasi };
enum class LinkKind { identity, logit, log, inverse, custom };

inline const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::gaussian: return "gaussian";
    case FamilyKind::binomial: return "binomial";
    case FamilyKind::poisson: return "poisson";
    case FamilyKind::gamma: return "gamma";
    case FamilyKind::inverse_gaussian: return "inverse-gaussian";
    case FamilyKind::quasi: return "quasi";
  }
  return "?";
}

inline const char* to_string(LinkKind k) {
  switch (k) {
    case LinkKind::identity: return "identity";
    case LinkKind::logit: return "logit";
    case LinkKind::log: return "log";
    case LinkKind::inverse: return "inverse";
    case LinkKind::custom: return "custom";
  }
  return "?";
}

namespace detail {

// log(1 + e^x) without overflow.
inline double log1pexp(double x) {
  if (x > 35.0) return x;
  if (x < -35.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

inline double logistic(double eta) {
  if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

inline double y_log_y(double y, double mu) {
  return y > 0.0 ? y * std::log(y / mu) : 0.0;
}

}  // namespace detail

struct Family {
  FamilyKind kind = FamilyKind::gaussian;
  LinkKind link_kind = LinkKind::identity;
  std::string name = "gaussian";
  double phi = 1.0;  // dispersion; var(Y|mu) = phi * V(mu)

  std::function<double(double)> variance;        // V(mu), > 0 on the interior
  std::function<double(double)> variance_deriv;  // V'(mu)
  std::function<double(double)> link;            // g(mu)
  std::function<double(double)> inv_link;        // g^-1(eta)
  std::function<double(double)> mu_eta;          // d mu / d eta, as a function of eta
  std::function<double(double, double)> unit_deviance;  // d(y, mu) >= 0

  // Closure of the mean domain; arc-length limits may sit on the boundary.
  double mean_lo = -std::numeric_limits<double>::infinity();
  double mean_hi = std::numeric_limits<double>::infinity();

  bool in_mean_closure(double mu) const { return mu >= mean_lo && mu <= mean_hi; }

  static Family gaussian();
  static Family binomial();
  static Family poisson();
  static Family gamma();
  static Family inverse_gaussian();

  // Quasi family: user-supplied variance function on (lo, hi) with the given
  // link; unit deviance defaults to the quasi-deviance 2*int_mu^y (y-t)/V(t) dt,
  // evaluated by the caller if needed (left unset here).
  static Family quasi(std::function<double(double)> v,
                      std::function<double(double)> v_deriv,
                      LinkKind link = LinkKind::identity,
                      double lo = -std::numeric_limits<double>::infinity(),
                      double hi = std::numeric_limits<double>::infinity(),
                      std::string name = "quasi");

  // Power-variance quasi family V(mu) = scale * mu^power on (0, inf).
  static Family quasi_power(double scale, double power, LinkKind link = LinkKind::log);

  static Family from_name(const std::string& name);
};

namespace detail {

inline void set_link(Family& f, LinkKind lk) {
  f.link_kind = lk;
  switch (lk) {
    case LinkKind::identity:
      f.link = [](double mu) { return mu; };
      f.inv_link = [](double eta) { return eta; };
      f.mu_eta = [](double) { return 1.0; };
      break;
    case LinkKind::logit:
      f.link = [](double mu) { return std::log(mu / (1.0 - mu)); };
      f.inv_link = [](double eta) { return logistic(eta); };
      f.mu_eta = [](double eta) {
        const double p = logistic(eta);
        return p * (1.0 - p);
      };
      break;
    case LinkKind::log:
      f.link = [](double mu) { return std::log(mu); };
      f.inv_link = [](double eta) { return std::exp(std::min(eta, 700.0)); };
      f.mu_eta = [](double eta) { return std::exp(std::min(eta, 700.0)); };
      break;
    case LinkKind::inverse:
      f.link = [](double mu) { return 1.0 / mu; };
      f.inv_link = [](double eta) { return 1.0 / eta; };
      f.mu_eta = [](double eta) { return -1.0 / (eta * eta); };
      break;
    case LinkKind::custom:
      break;
  }
}

}  // namespace detail

inline Family Family::gaussian() {
  Family f;
  f.kind = FamilyKind::gaussian;
  f.name = "gaussian";
  f.variance = [](double) { return 1.0; };
  f.variance_deriv = [](double) { return 0.0; };
  f.unit_deviance = [](double y, double mu) { return (y - mu) * (y - mu); };
  detail::set_link(f, LinkKind::identity);
  return f;
}

inline Family Family::binomial() {
  Family f;
  f.kind = FamilyKind::binomial;
  f.name = "binomial";
  f.variance = [](double mu) { return mu * (1.0 - mu); };
  f.variance_deriv = [](double mu) { return 1.0 - 2.0 * mu; };
  f.unit_deviance = [](double y, double mu) {
    return 2.0 * (detail::y_log_y(y, mu) + detail::y_log_y(1.0 - y, 1.0 - mu));
  };
  f.mean_lo = 0.0;
  f.mean_hi = 1.0;
  detail::set_link(f, LinkKind::logit);
  return f;
}

inline Family Family::poisson() {
  Family f;
  f.kind = FamilyKind::poisson;
  f.name = "poisson";
  f.variance = [](double mu) { return mu; };
  f.variance_deriv = [](double) { return 1.0; };
  f.unit_deviance = [](double y, double mu) {
    return 2.0 * (detail::y_log_y(y, mu) - (y - mu));
  };
  f.mean_lo = 0.0;
  detail::set_link(f, LinkKind::log);
  return f;
}

inline Family Family::gamma() {
  Family f;
  f.kind = FamilyKind::gamma;
  f.name = "gamma";
  f.variance = [](double mu) { return mu * mu; };
  f.variance_deriv = [](double mu) { return 2.0 * mu; };
  f.unit_deviance = [](double y, double mu) {
    return 2.0 * (-std::log(y / mu) + (y - mu) / mu);
  };
  f.mean_lo = 0.0;
  detail::set_link(f, LinkKind::log);
  return f;
}

inline Family Family::inverse_gaussian() {
  Family f;
  f.kind = FamilyKind::inverse_gaussian;
  f.name = "inverse-gaussian";
  f.variance = [](double mu) { return mu * mu * mu; };
  f.variance_deriv = [](double mu) { return 3.0 * mu * mu; };
  f.unit_deviance = [](double y, double mu) {
    return (y - mu) * (y - mu) / (mu * mu * y);
  };
  f.mean_lo = 0.0;
  detail::set_link(f, LinkKind::inverse);
  return f;
}

inline Family Family::quasi(std::function<double(double)> v,
                            std::function<double(double)> v_deriv,
                            LinkKind link, double lo, double hi, std::string name) {
  Family f;
  f.kind = FamilyKind::quasi;
  f.name = std::move(name);
  f.variance = std::move(v);
  f.variance_deriv = std::move(v_deriv);
  f.mean_lo = lo;
  f.mean_hi = hi;
  detail::set_link(f, link);
  return f;
}

inline Family Family::quasi_power(double scale, double power, LinkKind link) {
  if (scale <= 0.0) throw std::invalid_argument("quasi_power: scale must be positive");
  Family f = quasi([scale, power](double mu) { return scale * std::pow(mu, power); },
                   [scale, power](double mu) { return scale * power * std::pow(mu, power - 1.0); },
                   link, 0.0, std::numeric_limits<double>::infinity(),
                   "quasi");
  return f;
}

inline Family Family::from_name(const std::string& name) {
  if (name == "gaussian" || name == "normal") return gaussian();
  if (name == "binomial") return binomial();
  if (name == "poisson") return poisson();
  if (name == "gamma") return gamma();
  if (name == "inverse-gaussian" || name == "inverse.gaussian") return inverse_gaussian();
  throw std::invalid_argument("unknown family: " + name);
}

}  // namespace mixr2
