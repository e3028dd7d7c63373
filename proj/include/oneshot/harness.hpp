#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "oneshot/mathkit.hpp"
#include "oneshot/objectives.hpp"
#include "oneshot/report.hpp"
#include "oneshot/rng.hpp"
#include "oneshot/selection.hpp"

namespace oneshot::harness {

/// Candidate sampler for one trial: either uniform in a ball or an
/// isotropic Gaussian centered at the origin with the given scale.
struct GaussianSampler {
  double scale = 1.0;
};
using SamplerSpec = std::variant<mathkit::BallSpec, GaussianSampler>;

/// Mean and standard error of the mean (sample standard deviation divided
/// by sqrt(reps)) of a set of trial regrets.
struct RegretEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t reps = 0;
};

/// Aggregates raw per-trial values (compensated summation in index
/// order, so the result is independent of how trials were scheduled).
RegretEstimate estimate_from_samples(std::span<const double> values);

enum class ExperimentKind { centered_validation, noncentered_validation, rule_comparison };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::centered_validation;
  std::size_t d = 1;
  std::vector<std::size_t> lambdas;             // validations use exactly one entry
  std::vector<std::size_t> mu_grid;             // validation experiments
  std::vector<selection::MuRule> rules;         // rule comparison
  double r = 1.0;                               // ball radius (validations)
  double gaussian_scale = 1.0;                  // rule-comparison sampling scale
  double epsilon = 0.0;                         // noncentered offset ||y|| / r
  objectives::Kind objective = objectives::Kind::sphere;
  objectives::TranslationScale translation_scale = objectives::TranslationScale::variance;
  std::size_t reps = 1;
  std::uint64_t master_seed = 1;
  std::size_t threads = 0;                      // 0 = hardware concurrency

  /// Throws std::invalid_argument on violated invariants (lists empty,
  /// lambda < 2, mu out of [1, lambda-1], epsilon out of [0,1), ...).
  void validate() const;
};

/// Full diagnostics of a single trial.
struct TrialOutcome {
  double regret = 0.0;
  std::size_t mu_used = 0;
  std::optional<std::size_t> h_used;  // set when the rule consulted the hull scan
};

/// Runs one complete trial: samples lambda points from the sampler,
/// ranks them by objective value, computes the hull prefix only if the
/// rule requires it, selects mu, averages, and returns the simple regret
/// of the recommendation. Identical streams give identical results.
double one_shot_trial(RngStream& rng, const objectives::Objective& obj,
                      const SamplerSpec& sampler, std::size_t lambda,
                      const selection::MuRule& rule);
/// Same, also reporting mu and (for hull rules) the h statistic used.
TrialOutcome one_shot_trial_detail(RngStream& rng, const objectives::Objective& obj,
                                   const SamplerSpec& sampler, std::size_t lambda,
                                   const selection::MuRule& rule);

struct CenteredValidation {
  report::CurveSeries empirical;  // x = mu, Monte Carlo estimate
  report::CurveSeries theory;     // x = mu, exact expectation
};

/// Sphere objective with optimum at the origin, candidates uniform in
/// B(0, r): estimates the regret of the mu-mean for every mu in the grid
/// and pairs it with the exact expectation. Repetition i draws from
/// stream i of the master seed regardless of thread count.
CenteredValidation run_validation_centered(const ExperimentConfig& cfg);

struct NoncenteredValidation {
  report::CurveSeries empirical;
  report::CurveSeries lower;   // exact lower bound per mu
  report::CurveSeries upper;   // lower + binomial excess term
  std::size_t argmin_mu = 0;   // grid mu with the smallest empirical mean
};

/// Same protocol with the optimum moved to epsilon * r along the first
/// axis; empirical curve sandwiched between the exact bounds.
NoncenteredValidation run_validation_noncentered(const ExperimentConfig& cfg);

/// Range of the hull statistic observed across the repetitions at one
/// lambda (populated only when some rule consulted the hull scan; the
/// scan is capped at floor(lambda/4)+1, which the capped selection rules
/// cannot distinguish from a full scan).
struct HullStats {
  std::size_t lambda = 0;
  double mean_h = 0.0;
  std::size_t min_h = 0;
  std::size_t max_h = 0;
};

struct RuleComparison {
  std::vector<report::CurveSeries> series;  // one per rule, x = lambda
  std::vector<HullStats> hull_stats;        // one per lambda when computed
};

/// For each lambda and rule: mean regret over reps trials, each with a
/// fresh randomly translated objective and Gaussian candidates. All rules
/// of one repetition share its batch (paired comparison). Repetition rep
/// of the g-th lambda uses stream g * reps + rep.
RuleComparison run_rule_comparison(const ExperimentConfig& cfg);

}  // namespace oneshot::harness
