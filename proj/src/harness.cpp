#include "oneshot/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "oneshot/hull.hpp"
#include "oneshot/theory.hpp"

namespace oneshot::harness {

namespace {

// Compensated (Neumaier) accumulator; summation always runs in trial
// index order so aggregate values never depend on thread scheduling.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double total() const { return sum + comp; }
};

// Runs body(begin, end) over a partition of [0, n) on the configured
// number of threads. Writes inside the body must target disjoint
// per-index slots; exceptions are re-thrown in the caller.
void parallel_over(std::size_t n, std::size_t threads_cfg,
                   const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  std::size_t threads = threads_cfg;
  if (threads == 0) {
    threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
  }
  threads = std::min(threads, n);
  if (threads <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        body(t * n / threads, (t + 1) * n / threads);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  try {
    body(0, n / threads);
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (std::thread& th : pool) th.join();
  for (std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void sample_batch(RngStream& rng, const SamplerSpec& sampler, std::size_t d,
                  std::size_t lambda, std::vector<double>& points) {
  points.resize(lambda * d);
  if (const auto* ball = std::get_if<mathkit::BallSpec>(&sampler)) {
    if (ball->dim() != d) {
      throw std::invalid_argument("one_shot_trial: ball dimension does not match the objective");
    }
    for (std::size_t i = 0; i < lambda; ++i) {
      mathkit::sample_uniform_ball(rng, *ball, {points.data() + i * d, d});
    }
  } else {
    const auto& gauss = std::get<GaussianSampler>(sampler);
    for (std::size_t i = 0; i < lambda; ++i) {
      mathkit::sample_gaussian(rng, d, gauss.scale, {}, {points.data() + i * d, d});
    }
  }
}

// The hull rules cap h at lambda/4, so scanning one point past that cap
// yields the same selection size as a full scan at a fraction of the cost.
std::size_t hull_scan_cap(std::size_t lambda) { return lambda / 4 + 1; }

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

RegretEstimate estimate_from_samples(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("estimate_from_samples: need at least one value");
  }
  RegretEstimate est;
  est.reps = values.size();
  const double n = static_cast<double>(values.size());
  Accumulator acc;
  for (double v : values) acc.add(v);
  est.mean = acc.total() / n;
  if (values.size() >= 2) {
    Accumulator dev;
    for (double v : values) {
      const double z = v - est.mean;
      dev.add(z * z);
    }
    const double sd = std::sqrt(std::max(dev.total(), 0.0) / (n - 1.0));
    est.std_error = sd / std::sqrt(n);
  }
  return est;
}

void ExperimentConfig::validate() const {
  if (d < 1) {
    throw std::invalid_argument("config: dimension must be >= 1");
  }
  if (reps < 1) {
    throw std::invalid_argument("config: repetitions must be >= 1");
  }
  if (lambdas.empty()) {
    throw std::invalid_argument("config: lambda list must be non-empty");
  }
  for (std::size_t lam : lambdas) {
    if (lam < 2) {
      throw std::invalid_argument("config: every lambda must be >= 2");
    }
  }
  switch (kind) {
    case ExperimentKind::centered_validation:
    case ExperimentKind::noncentered_validation: {
      if (lambdas.size() != 1) {
        throw std::invalid_argument("config: validation experiments take exactly one lambda");
      }
      if (mu_grid.empty()) {
        throw std::invalid_argument("config: mu grid must be non-empty");
      }
      for (std::size_t mu : mu_grid) {
        if (mu < 1 || mu >= lambdas[0]) {
          throw std::invalid_argument("config: every mu must lie in [1, lambda-1]");
        }
      }
      if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("config: radius must be positive and finite");
      }
      if (kind == ExperimentKind::noncentered_validation &&
          (!(epsilon >= 0.0) || !(epsilon < 1.0))) {
        throw std::invalid_argument("config: epsilon must lie in [0, 1)");
      }
      break;
    }
    case ExperimentKind::rule_comparison: {
      if (rules.empty()) {
        throw std::invalid_argument("config: rule list must be non-empty");
      }
      if (!(gaussian_scale > 0.0) || !std::isfinite(gaussian_scale)) {
        throw std::invalid_argument("config: sampling scale must be positive and finite");
      }
      break;
    }
  }
}

TrialOutcome one_shot_trial_detail(RngStream& rng, const objectives::Objective& obj,
                                   const SamplerSpec& sampler, std::size_t lambda,
                                   const selection::MuRule& rule) {
  if (lambda < 1) {
    throw std::invalid_argument("one_shot_trial: lambda must be >= 1");
  }
  const std::size_t d = obj.d;
  std::vector<double> points;
  sample_batch(rng, sampler, d, lambda, points);
  std::vector<double> fitness(lambda);
  for (std::size_t i = 0; i < lambda; ++i) {
    fitness[i] = objectives::evaluate(obj, {points.data() + i * d, d});
  }
  const auto batch = selection::rank(std::move(points), d, std::move(fitness));

  std::optional<std::size_t> h;
  if (rule.needs_hull()) {
    h = hull::frontier_prefix_h(batch, std::nullopt, hull_scan_cap(lambda)).h;
  }
  const std::size_t mu = selection::compute_mu(rule, lambda, d, h);
  const auto rec = selection::recommend(batch, mu);

  TrialOutcome out;
  out.regret = objectives::optimum_regret(obj, rec.point);
  out.mu_used = mu;
  out.h_used = h;
  return out;
}

double one_shot_trial(RngStream& rng, const objectives::Objective& obj,
                      const SamplerSpec& sampler, std::size_t lambda,
                      const selection::MuRule& rule) {
  return one_shot_trial_detail(rng, obj, sampler, lambda, rule).regret;
}

namespace {

// Shared Monte Carlo core of both validation experiments: candidates
// uniform in B(0, r), sphere objective with optimum at y, every mu of the
// grid evaluated on the same batches via running prefix sums. The mean
// at each mu is formed with exactly the arithmetic recommend() uses, so
// per-trial regrets match one_shot_trial with a fixed-mu rule bit for
// bit.
report::CurveSeries empirical_validation_curve(const ExperimentConfig& cfg,
                                               const std::vector<std::size_t>& grid,
                                               const objectives::Objective& obj) {
  const std::size_t lambda = cfg.lambdas[0];
  const std::size_t d = cfg.d;
  const std::size_t n_mu = grid.size();
  const std::size_t max_mu = grid.back();
  std::vector<double> values(n_mu * cfg.reps);

  parallel_over(cfg.reps, cfg.threads, [&](std::size_t begin, std::size_t end) {
    const mathkit::BallSpec ball = mathkit::BallSpec::origin(d, cfg.r);
    std::vector<double> points(lambda * d);
    std::vector<double> fitness(lambda);
    std::vector<std::size_t> order(lambda);
    std::vector<double> sum(d);
    std::vector<double> mean(d);

    for (std::size_t rep = begin; rep < end; ++rep) {
      RngStream rng(cfg.master_seed, rep);
      for (std::size_t i = 0; i < lambda; ++i) {
        mathkit::sample_uniform_ball(rng, ball, {points.data() + i * d, d});
      }
      for (std::size_t i = 0; i < lambda; ++i) {
        fitness[i] = objectives::evaluate(obj, {points.data() + i * d, d});
      }
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });

      std::fill(sum.begin(), sum.end(), 0.0);
      std::size_t gi = 0;
      for (std::size_t rank_pos = 0; rank_pos < max_mu && gi < n_mu; ++rank_pos) {
        const double* p = points.data() + order[rank_pos] * d;
        for (std::size_t j = 0; j < d; ++j) sum[j] += p[j];
        const std::size_t m = rank_pos + 1;
        if (grid[gi] != m) continue;
        double regret = 0.0;
        if (m == 1) {
          regret = objectives::evaluate(obj, {p, d});
        } else {
          const double inv = 1.0 / static_cast<double>(m);
          for (std::size_t j = 0; j < d; ++j) mean[j] = sum[j] * inv;
          regret = objectives::evaluate(obj, mean);
        }
        values[gi * cfg.reps + rep] = regret;
        ++gi;
      }
    }
  });

  report::CurveSeries series;
  series.label = "empirical";
  series.xs.reserve(n_mu);
  series.means.reserve(n_mu);
  series.std_errors.reserve(n_mu);
  for (std::size_t gi = 0; gi < n_mu; ++gi) {
    const RegretEstimate est =
        estimate_from_samples({values.data() + gi * cfg.reps, cfg.reps});
    series.xs.push_back(static_cast<double>(grid[gi]));
    series.means.push_back(est.mean);
    series.std_errors.push_back(est.std_error);
  }
  return series;
}

}  // namespace

CenteredValidation run_validation_centered(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::centered_validation) {
    throw std::invalid_argument("run_validation_centered: config kind mismatch");
  }
  cfg.validate();
  const std::vector<std::size_t> grid = sorted_unique(cfg.mu_grid);
  const objectives::Objective obj(objectives::Kind::sphere, cfg.d);

  CenteredValidation out;
  out.empirical = empirical_validation_curve(cfg, grid, obj);
  out.theory.label = "theory";
  for (std::size_t mu : grid) {
    theory::TheoryParams p{cfg.d, cfg.lambdas[0], mu, cfg.r, 0.0};
    out.theory.xs.push_back(static_cast<double>(mu));
    out.theory.means.push_back(theory::regret_mu_avg_centered(p));
    out.theory.std_errors.push_back(0.0);
  }
  return out;
}

NoncenteredValidation run_validation_noncentered(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::noncentered_validation) {
    throw std::invalid_argument("run_validation_noncentered: config kind mismatch");
  }
  cfg.validate();
  const std::vector<std::size_t> grid = sorted_unique(cfg.mu_grid);

  std::vector<double> y(cfg.d, 0.0);
  y[0] = cfg.epsilon * cfg.r;
  const objectives::Objective obj(objectives::Kind::sphere, cfg.d, std::move(y));

  NoncenteredValidation out;
  out.empirical = empirical_validation_curve(cfg, grid, obj);
  out.lower.label = "lower";
  out.upper.label = "upper";
  for (std::size_t mu : grid) {
    theory::TheoryParams p{cfg.d, cfg.lambdas[0], mu, cfg.r, cfg.epsilon};
    const theory::RegretBounds bounds = theory::regret_bounds_noncentered(p);
    const double x = static_cast<double>(mu);
    out.lower.xs.push_back(x);
    out.lower.means.push_back(bounds.lower);
    out.lower.std_errors.push_back(0.0);
    out.upper.xs.push_back(x);
    out.upper.means.push_back(bounds.upper);
    out.upper.std_errors.push_back(0.0);
  }

  const auto it = std::min_element(out.empirical.means.begin(), out.empirical.means.end());
  out.argmin_mu = grid[static_cast<std::size_t>(it - out.empirical.means.begin())];
  return out;
}

RuleComparison run_rule_comparison(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::rule_comparison) {
    throw std::invalid_argument("run_rule_comparison: config kind mismatch");
  }
  cfg.validate();
  const std::vector<std::size_t> lambdas = sorted_unique(cfg.lambdas);
  const std::size_t n_rules = cfg.rules.size();
  const bool need_hull = std::any_of(cfg.rules.begin(), cfg.rules.end(),
                                     [](const selection::MuRule& r) { return r.needs_hull(); });

  RuleComparison out;
  out.series.resize(n_rules);
  for (std::size_t k = 0; k < n_rules; ++k) {
    out.series[k].label = cfg.rules[k].name();
  }

  std::vector<double> values(n_rules * cfg.reps);
  std::vector<std::size_t> h_values(need_hull ? cfg.reps : 0);

  for (std::size_t g = 0; g < lambdas.size(); ++g) {
    const std::size_t lambda = lambdas[g];

    parallel_over(cfg.reps, cfg.threads, [&](std::size_t begin, std::size_t end) {
      std::vector<double> points;
      std::vector<double> fitness;
      for (std::size_t rep = begin; rep < end; ++rep) {
        RngStream rng(cfg.master_seed, g * cfg.reps + rep);
        const objectives::Objective obj =
            objectives::make_translated(rng, cfg.objective, cfg.d, cfg.translation_scale);
        points.resize(lambda * cfg.d);
        for (std::size_t i = 0; i < lambda; ++i) {
          mathkit::sample_gaussian(rng, cfg.d, cfg.gaussian_scale, {},
                                   {points.data() + i * cfg.d, cfg.d});
        }
        fitness.resize(lambda);
        for (std::size_t i = 0; i < lambda; ++i) {
          fitness[i] = objectives::evaluate(obj, {points.data() + i * cfg.d, cfg.d});
        }
        const auto batch = selection::rank(std::move(points), cfg.d, std::move(fitness));
        points.clear();
        fitness.clear();

        std::optional<std::size_t> h;
        if (need_hull) {
          h = hull::frontier_prefix_h(batch, std::nullopt, hull_scan_cap(lambda)).h;
          h_values[rep] = *h;
        }
        for (std::size_t k = 0; k < n_rules; ++k) {
          const std::size_t mu = selection::compute_mu(cfg.rules[k], lambda, cfg.d, h);
          const auto rec = selection::recommend(batch, mu);
          values[k * cfg.reps + rep] = objectives::optimum_regret(obj, rec.point);
        }
      }
    });

    for (std::size_t k = 0; k < n_rules; ++k) {
      const RegretEstimate est =
          estimate_from_samples({values.data() + k * cfg.reps, cfg.reps});
      out.series[k].xs.push_back(static_cast<double>(lambda));
      out.series[k].means.push_back(est.mean);
      out.series[k].std_errors.push_back(est.std_error);
    }
    if (need_hull) {
      Accumulator acc;
      std::size_t h_min = h_values[0];
      std::size_t h_max = h_values[0];
      for (std::size_t h : h_values) {
        acc.add(static_cast<double>(h));
        h_min = std::min(h_min, h);
        h_max = std::max(h_max, h);
      }
      out.hull_stats.push_back(
          {lambda, acc.total() / static_cast<double>(cfg.reps), h_min, h_max});
    }
  }
  return out;
}

}  // namespace oneshot::harness
