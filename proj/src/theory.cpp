#include "oneshot/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "oneshot/mathkit.hpp"

namespace oneshot::theory {

using mathkit::ln_gamma;

void TheoryParams::validate() const {
  if (d < 1) {
    throw std::domain_error("theory: dimension must be >= 1");
  }
  if (mu < 1 || mu >= lambda) {
    throw std::domain_error("theory: mu must satisfy 1 <= mu < lambda");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::domain_error("theory: radius must be positive and finite");
  }
  if (!(epsilon >= 0.0) || !(epsilon < 1.0)) {
    throw std::domain_error("theory: epsilon must lie in [0, 1)");
  }
}

bool AsymptoticSpec::rate_hypothesis_holds() const {
  return c < std::pow(1.0 - epsilon, static_cast<double>(d));
}

double regret_mu_avg_centered(const TheoryParams& p) {
  p.validate();
  const double d = static_cast<double>(p.d);
  const double lam = static_cast<double>(p.lambda);
  const double mu = static_cast<double>(p.mu);
  const double two_over_d = 2.0 / d;
  const double log_ratio = ln_gamma(lam + 1.0) + ln_gamma(mu + 1.0 + two_over_d) -
                           ln_gamma(mu + 1.0) - ln_gamma(lam + 1.0 + two_over_d);
  return p.r * p.r * d / (mu * (d + 2.0)) * std::exp(log_ratio);
}

double regret_one_best_centered(std::size_t d, std::size_t lambda, double r) {
  if (d < 1) {
    throw std::domain_error("theory: dimension must be >= 1");
  }
  if (lambda < 1) {
    throw std::domain_error("theory: lambda must be >= 1");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::domain_error("theory: radius must be positive and finite");
  }
  const double dd = static_cast<double>(d);
  const double lam = static_cast<double>(lambda);
  const double two_over_d = 2.0 / dd;
  const double log_value = ln_gamma((dd + 2.0) / dd) + ln_gamma(lam + 1.0) -
                           ln_gamma(lam + 1.0 + two_over_d);
  return r * r * std::exp(log_value);
}

double conditional_regret_mu_avg(std::size_t d, std::size_t mu, double h) {
  if (d < 1 || mu < 1) {
    throw std::domain_error("theory: d and mu must be >= 1");
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::domain_error("theory: conditioning level h must be positive and finite");
  }
  const double dd = static_cast<double>(d);
  return h / static_cast<double>(mu) * dd / (dd + 2.0);
}

double conditional_regret_one_best(std::size_t d, std::size_t mu, double h) {
  if (d < 1 || mu < 1) {
    throw std::domain_error("theory: d and mu must be >= 1");
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::domain_error("theory: conditioning level h must be positive and finite");
  }
  const double dd = static_cast<double>(d);
  const double m = static_cast<double>(mu);
  const double two_over_d = 2.0 / dd;
  const double log_value =
      ln_gamma((dd + 2.0) / dd) + ln_gamma(m + 1.0) - ln_gamma(m + 1.0 + two_over_d);
  return h * std::exp(log_value);
}

RegretBounds regret_bounds_noncentered(const TheoryParams& p) {
  p.validate();
  RegretBounds bounds;
  bounds.lower = regret_mu_avg_centered(p);
  const double keep_prob = std::pow(1.0 - p.epsilon, static_cast<double>(p.d));
  const double tail = mathkit::binomial_cdf(static_cast<std::int64_t>(p.lambda), keep_prob,
                                            static_cast<std::int64_t>(p.mu));
  bounds.upper = bounds.lower + 4.0 * p.r * p.r * tail;
  return bounds;
}

double regret_asymptotic(const AsymptoticSpec& a, std::size_t lambda) {
  if (!(a.c > 0.0) || !(a.c < 1.0)) {
    throw std::domain_error("theory: selection ratio c must lie in (0, 1)");
  }
  if (a.d < 1) {
    throw std::domain_error("theory: dimension must be >= 1");
  }
  if (!(a.r > 0.0) || !std::isfinite(a.r)) {
    throw std::domain_error("theory: radius must be positive and finite");
  }
  if (lambda < 1) {
    throw std::domain_error("theory: lambda must be >= 1");
  }
  const double d = static_cast<double>(a.d);
  return d * a.r * a.r * std::pow(a.c, 2.0 / d - 1.0) /
         ((d + 2.0) * static_cast<double>(lambda));
}

}  // namespace oneshot::theory
