// Acceptance gate: ten numbered checks, one [PASS]/[FAIL] line each.
// Exits 0 only when every check passes. argv[1] must be the path of the
// command-line binary (used by the determinism check).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "oneshot/harness.hpp"
#include "oneshot/hull.hpp"
#include "oneshot/mathkit.hpp"
#include "oneshot/objectives.hpp"
#include "oneshot/rng.hpp"
#include "oneshot/selection.hpp"
#include "oneshot/theory.hpp"

namespace {

namespace fs = std::filesystem;
namespace harness = oneshot::harness;
namespace hull = oneshot::hull;
namespace mathkit = oneshot::mathkit;
namespace selection = oneshot::selection;
namespace theory = oneshot::theory;

bool all_ok = true;

void report(int index, bool ok, const std::string& detail) {
  std::printf("[%s] %2d: %s\n", ok ? "PASS" : "FAIL", index, detail.c_str());
  if (!ok) all_ok = false;
}

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", v);
  return buffer;
}

// Least-squares slope of ln(y) against ln(x).
double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

// Exact Binomial(n, a/10) CDF by integer enumeration (n <= 20), an oracle
// independent of the log-space implementation under test.
long double enumerated_binomial_cdf(int n, int a, int k) {
  if (k < 0) return 0.0L;
  if (k > n) k = n;
  std::vector<std::vector<unsigned long long>> choose(
      static_cast<std::size_t>(n) + 1,
      std::vector<unsigned long long>(static_cast<std::size_t>(n) + 1, 0));
  for (int row = 0; row <= n; ++row) {
    choose[row][0] = 1;
    for (int col = 1; col <= row; ++col) {
      choose[row][col] = choose[row - 1][col - 1] + (col <= row - 1 ? choose[row - 1][col] : 0);
    }
  }
  const auto ipow = [](int base, int exp) {
    unsigned __int128 value = 1;
    for (int i = 0; i < exp; ++i) value *= static_cast<unsigned>(base);
    return value;
  };
  unsigned __int128 numerator = 0;
  for (int i = 0; i <= k; ++i) {
    numerator += static_cast<unsigned __int128>(choose[n][i]) * ipow(a, i) * ipow(10 - a, n - i);
  }
  return static_cast<long double>(numerator) / static_cast<long double>(ipow(10, n));
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return {};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void check_centered_validation() {
  harness::ExperimentConfig cfg;
  cfg.kind = harness::ExperimentKind::centered_validation;
  cfg.d = 5;
  cfg.lambdas = {1000};
  cfg.mu_grid = {1, 2, 5, 10, 20, 50, 100, 200, 500, 999};
  cfg.reps = 1000;
  cfg.master_seed = 1;
  cfg.threads = 1;

  const auto start = std::chrono::steady_clock::now();
  const auto result = harness::run_validation_centered(cfg);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  double worst_z = 0.0;
  for (std::size_t i = 0; i < result.empirical.size(); ++i) {
    const double z = std::abs(result.empirical.means[i] - result.theory.means[i]) /
                     result.empirical.std_errors[i];
    if (z > worst_z) worst_z = z;
  }
  const bool ok = worst_z < 4.0 && seconds < 60.0;
  report(1, ok,
         "centered validation d=5 lambda=1000 reps=1000: max |z| = " + fmt(worst_z) +
             " (< 4), " + fmt(seconds) + " s single-threaded (< 60)");
}

void check_monotone_in_mu() {
  double worst_margin = -1.0;  // most violated relative increase
  for (std::size_t d : {2, 3, 5, 10}) {
    for (std::size_t lambda : {10, 100, 1000}) {
      theory::TheoryParams p;
      p.d = d;
      p.lambda = lambda;
      p.mu = 1;
      double prev = theory::regret_mu_avg_centered(p);
      for (std::size_t mu = 2; mu < lambda; ++mu) {
        p.mu = mu;
        const double cur = theory::regret_mu_avg_centered(p);
        const double margin = (cur - prev) / prev;  // must stay below 1e-12
        if (margin > worst_margin) worst_margin = margin;
        prev = cur;
      }
    }
  }
  report(2, worst_margin < 1e-12,
         "expected regret strictly decreasing in mu on {2,3,5,10}x{10,100,1000}: worst "
         "relative increase = " +
             fmt(worst_margin));
}

void check_mu_one_reduction() {
  double worst = 0.0;
  for (std::size_t d : {2, 3, 5, 10}) {
    for (std::size_t lambda : {10, 100, 1000}) {
      theory::TheoryParams p;
      p.d = d;
      p.lambda = lambda;
      p.mu = 1;
      const double general = theory::regret_mu_avg_centered(p);
      const double direct = theory::regret_one_best_centered(d, lambda, 1.0);
      const double rel = std::abs(general - direct) / direct;
      if (rel > worst) worst = rel;
    }
  }
  report(3, worst < 1e-10,
         "mu=1 reduction to the one-best formula: max relative gap = " + fmt(worst) +
             " (< 1e-10)");
}

void check_rate_exponents() {
  const std::vector<double> lambdas = {1e2, 1e3, 1e4, 1e5};
  std::vector<double> one_best(lambdas.size());
  std::vector<double> proportional(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto lambda = static_cast<std::size_t>(lambdas[i]);
    theory::TheoryParams p;
    p.d = 5;
    p.lambda = lambda;
    p.mu = 1;
    one_best[i] = theory::regret_mu_avg_centered(p);
    p.mu = lambda / 10;
    proportional[i] = theory::regret_mu_avg_centered(p);
  }
  const double slope_one = log_log_slope(lambdas, one_best);
  const double slope_prop = log_log_slope(lambdas, proportional);
  const bool ok = std::abs(slope_one - (-2.0 / 5.0)) < 0.02 &&
                  std::abs(slope_prop - (-1.0)) < 0.05;
  report(4, ok,
         "log-log rate exponents at d=5: mu=1 slope " + fmt(slope_one) +
             " (-0.4 +/- 0.02), mu=lambda/10 slope " + fmt(slope_prop) + " (-1 +/- 0.05)");
}

void check_asymptotic_constant() {
  theory::TheoryParams p;
  p.d = 5;
  p.lambda = 100000;
  p.mu = 10000;
  const double exact = theory::regret_mu_avg_centered(p);
  theory::AsymptoticSpec spec;
  spec.c = 0.1;
  spec.d = 5;
  const double limit = theory::regret_asymptotic(spec, p.lambda);
  const double ratio = exact / limit;
  report(5, std::abs(ratio - 1.0) < 0.02,
         "exact / asymptotic at d=5, c=0.1, lambda=1e5: ratio = " + fmt(ratio) +
             " (within 2% of 1)");
}

void check_noncentered_sandwich() {
  harness::ExperimentConfig cfg;
  cfg.kind = harness::ExperimentKind::noncentered_validation;
  cfg.d = 5;
  cfg.epsilon = 1.0 / 3.0;
  cfg.reps = 10000;
  cfg.master_seed = 7;
  cfg.threads = 0;

  cfg.lambdas = {100};
  cfg.mu_grid = {1, 2, 3, 5, 8, 13, 21, 35, 60, 99};
  const auto small = harness::run_validation_noncentered(cfg);
  double worst_below = 0.0, worst_above = 0.0;
  for (std::size_t i = 0; i < small.empirical.size(); ++i) {
    const double sem = small.empirical.std_errors[i];
    worst_below = std::max(worst_below,
                           (small.lower.means[i] - 3 * sem) - small.empirical.means[i]);
    worst_above = std::max(worst_above,
                           small.empirical.means[i] - (small.upper.means[i] + 3 * sem));
  }
  const bool sandwich_ok = worst_below <= 0.0 && worst_above <= 0.0;

  cfg.lambdas = {10000};
  cfg.mu_grid = {50, 100, 200, 400, 700, 1000, 1300, 1700, 2500, 5000};
  const auto large = harness::run_validation_noncentered(cfg);
  const double center = std::pow(2.0 / 3.0, 5) * 10000.0;
  const auto argmin = static_cast<double>(large.argmin_mu);
  const bool argmin_ok = argmin >= 0.3 * center && argmin <= 1.5 * center;

  report(6, sandwich_ok && argmin_ok,
         "noncentered eps=1/3 d=5: lambda=100 curve inside [lower-3se, upper+3se] (worst "
         "excess " +
             fmt(std::max(worst_below, worst_above)) + "), lambda=1e4 argmin mu = " +
             fmt(argmin) + " in [" + fmt(0.3 * center) + ", " + fmt(1.5 * center) + "]");
}

void check_binomial_kernel() {
  long double worst = 0.0L;
  for (int n = 1; n <= 20; ++n) {
    for (int a = 0; a <= 10; ++a) {
      for (int k = -1; k <= n + 1; ++k) {
        const long double reference = enumerated_binomial_cdf(n, a, k);
        const long double got = mathkit::binomial_cdf(n, a / 10.0, k);
        const long double diff = std::fabs(got - reference);
        if (diff > worst) worst = diff;
      }
    }
  }
  // True value ~ 4.9e-454: below the smallest positive double, so the
  // correctly rounded result is 0, comfortably under the 1e-6 bar.
  const double tail = mathkit::binomial_cdf(10000, std::pow(2.0 / 3.0, 5), 100);
  const bool ok = worst < 1e-12L && tail >= 0.0 && tail < 1e-6;
  report(7, ok,
         "binomial cdf: max |error| vs exact enumeration (n<=20) = " +
             fmt(static_cast<double>(worst)) + ", far tail at (1e4, (2/3)^5, 100) = " +
             fmt(tail) + " (< 1e-6)");
}

void check_hull_statistic() {
  // Constructed 2-D instance: ranks 0-2 sit on their own hull frontier,
  // rank 3 lies strictly inside the triangle of its predecessors.
  const std::vector<double> points = {1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, 0.1};
  const std::vector<double> fitness = {0.0, 1.0, 2.0, 3.0};
  const auto batch = selection::rank(points, 2, fitness);
  const auto constructed = hull::frontier_prefix_h(batch);
  const bool constructed_ok =
      constructed.h == 3 && constructed.first_interior_index.has_value() &&
      *constructed.first_interior_index == 3;

  // Centered sphere in d=3: ranked points have strictly growing norms, so
  // the whole batch should stay on the frontier in almost every run.
  const std::size_t lambda = 200, d = 3;
  const auto ball = mathkit::BallSpec::origin(d, 1.0);
  std::size_t full = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    oneshot::RngStream rng(800, seed);
    std::vector<double> batch_points(lambda * d);
    std::vector<double> batch_fitness(lambda);
    for (std::size_t i = 0; i < lambda; ++i) {
      std::span<double> row{batch_points.data() + i * d, d};
      mathkit::sample_uniform_ball(rng, ball, row);
      double norm2 = 0.0;
      for (double v : row) norm2 += v * v;
      batch_fitness[i] = norm2;
    }
    const auto ranked = selection::rank(batch_points, d, batch_fitness);
    if (hull::frontier_prefix_h(ranked).h == lambda) ++full;
  }
  report(8, constructed_ok && full >= 95,
         "hull statistic: constructed instance h = " + std::to_string(constructed.h) +
             " (= 3), sphere-ranked d=3 lambda=200 gave h = lambda in " +
             std::to_string(full) + "/100 seeds (>= 95)");
}

void check_rule_ordering() {
  harness::ExperimentConfig cfg;
  cfg.kind = harness::ExperimentKind::rule_comparison;
  cfg.d = 3;
  cfg.lambdas = {1024};
  cfg.rules = {selection::MuRule::thchavg(), selection::MuRule::single_best()};
  cfg.objective = oneshot::objectives::Kind::sphere;
  cfg.translation_scale = oneshot::objectives::TranslationScale::stddev;
  cfg.reps = 200;
  cfg.master_seed = 1;
  cfg.threads = 0;
  const auto result = harness::run_rule_comparison(cfg);

  const auto& thch = result.series[0];
  const auto& best = result.series[1];
  const double gap = best.means[0] - thch.means[0];
  const double combined = std::sqrt(best.std_errors[0] * best.std_errors[0] +
                                    thch.std_errors[0] * thch.std_errors[0]);
  report(9, gap >= 3 * combined,
         "sphere d=3 lambda=1024 reps=200: thchavg beats single best by " + fmt(gap) +
             " = " + fmt(combined > 0 ? gap / combined : 0.0) +
             " combined standard errors (>= 3)");
}

void check_cli_determinism(const std::string& cli) {
  const fs::path base = fs::temp_directory_path();
  const fs::path dir_a = base / "oneshot_accept_a";
  const fs::path dir_b = base / "oneshot_accept_b";
  std::error_code ec;
  fs::remove_all(dir_a, ec);
  fs::remove_all(dir_b, ec);

  const std::string flags =
      " bench --objective sphere --d 2 --lambdas 16,64 --rules best,avg,thchavg"
      " --reps 30 --seed 12 --out ";
  const std::string quiet = " > /dev/null 2>&1";
  const int rc_a = std::system(("\"" + cli + "\"" + flags + dir_a.string() + quiet).c_str());
  const int rc_b = std::system(("\"" + cli + "\"" + flags + dir_b.string() + quiet).c_str());

  const std::string csv_a = slurp(dir_a / "bench_sphere.csv");
  const std::string csv_b = slurp(dir_b / "bench_sphere.csv");
  const bool ok = rc_a == 0 && rc_b == 0 && !csv_a.empty() && csv_a == csv_b;
  report(10, ok,
         "bench run twice with identical flags and seed: " +
             std::to_string(csv_a.size()) + " CSV bytes, identical = " +
             (csv_a == csv_b && !csv_a.empty() ? "yes" : "no"));
  fs::remove_all(dir_a, ec);
  fs::remove_all(dir_b, ec);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli-binary>\n", argv[0]);
    return 2;
  }
  check_centered_validation();
  check_monotone_in_mu();
  check_mu_one_reduction();
  check_rate_exponents();
  check_asymptotic_constant();
  check_noncentered_sandwich();
  check_binomial_kernel();
  check_hull_statistic();
  check_rule_ordering();
  check_cli_determinism(argv[1]);
  return all_ok ? 0 : 1;
}
