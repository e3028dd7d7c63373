#pragma once

#include <cstddef>

namespace oneshot::theory {

/// Parameter bundle for the closed-form regret expressions: sampling in a
/// ball of radius r around the origin in dimension d, keeping the mu best
/// of lambda points, with the optimum offset ||y|| = epsilon * r.
struct TheoryParams {
  std::size_t d = 1;
  std::size_t lambda = 2;
  std::size_t mu = 1;
  double r = 1.0;
  double epsilon = 0.0;

  /// Throws std::domain_error unless d >= 1, 1 <= mu < lambda, r > 0 and
  /// 0 <= epsilon < 1.
  void validate() const;
};

struct RegretBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Parameters of the large-lambda regime with proportional selection
/// mu = floor(c * lambda).
struct AsymptoticSpec {
  double c = 0.1;
  std::size_t d = 1;
  double r = 1.0;
  double epsilon = 0.0;

  /// True when c < (1 - epsilon)^d, the hypothesis under which the
  /// asymptotic rate is proved. Callers should warn (not fail) when it is
  /// violated: the expression itself stays well defined.
  bool rate_hypothesis_holds() const;
};

/// Exact expected regret of the mean of the mu best points, centered case
/// (epsilon ignored):
///   r^2 d Gamma(lambda+1) Gamma(mu+1+2/d) / (mu (d+2) Gamma(mu+1) Gamma(lambda+1+2/d)).
/// Evaluated in log space; result lies in (0, r^2).
double regret_mu_avg_centered(const TheoryParams& p);

/// Exact expected regret of the single best point, centered case:
///   r^2 Gamma((d+2)/d) Gamma(lambda+1) / Gamma(lambda+1+2/d).
/// Defined for lambda >= 1; equals regret_mu_avg_centered at mu = 1.
double regret_one_best_centered(std::size_t d, std::size_t lambda, double r);

/// Expected regret of the mu-mean conditioned on all mu points having
/// fitness below h: (h / mu) * d / (d + 2). Linear in h.
double conditional_regret_mu_avg(std::size_t d, std::size_t mu, double h);

/// Expected regret of the best of mu points conditioned on fitness below
/// h: h * Gamma((d+2)/d) * Gamma(mu+1) / Gamma(mu+1+2/d). Linear in h.
double conditional_regret_one_best(std::size_t d, std::size_t mu, double h);

/// Sandwich bounds for the non-centered case: lower is the centered
/// formula; upper adds 4 r^2 * P[Binomial(lambda, (1-epsilon)^d) <= mu].
RegretBounds regret_bounds_noncentered(const TheoryParams& p);

/// Leading-order regret for mu = floor(c * lambda) as lambda grows:
///   d r^2 c^(2/d - 1) / ((d + 2) lambda).
double regret_asymptotic(const AsymptoticSpec& a, std::size_t lambda);

}  // namespace oneshot::theory
