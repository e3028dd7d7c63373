#include "oneshot/mathkit.hpp"

#include <cmath>
#include <stdexcept>

namespace oneshot::mathkit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640562;

// Lanczos coefficients, g = 7, n = 9 (Godfrey's set).
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double ln_gamma_lanczos(double z) {
  // Valid for z >= 0.5; callers reflect below that.
  const double zm1 = z - 1.0;
  double series = kLanczos[0];
  for (int i = 1; i < 9; ++i) {
    series += kLanczos[i] / (zm1 + i);
  }
  const double t = zm1 + 7.5;
  return kHalfLogTwoPi + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

double ln_gamma(double z) {
  if (!(z > 0.0)) {
    throw std::domain_error("ln_gamma: argument must be > 0");
  }
  if (z < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(kPi / std::sin(kPi * z)) - ln_gamma_lanczos(1.0 - z);
  }
  return ln_gamma_lanczos(z);
}

double binomial_cdf(std::int64_t n, double p, std::int64_t k) {
  if (n < 1) {
    throw std::domain_error("binomial_cdf: n must be >= 1");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("binomial_cdf: p must lie in [0, 1]");
  }
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  if (p == 0.0) return 1.0;        // U = 0 almost surely
  if (p == 1.0) return 0.0;        // U = n almost surely and k < n here

  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  double log_term = (double)n * log_q;  // term i = 0
  double log_sum = log_term;
  for (std::int64_t i = 1; i <= k; ++i) {
    // term ratio: C(n,i)/C(n,i-1) * p/q = (n-i+1)/i * p/q
    log_term += std::log((double)(n - i + 1) / (double)i) + log_p - log_q;
    if (log_term > log_sum) {
      log_sum = log_term + std::log1p(std::exp(log_sum - log_term));
    } else {
      log_sum += std::log1p(std::exp(log_term - log_sum));
    }
  }
  const double cdf = std::exp(log_sum);
  return cdf < 1.0 ? cdf : 1.0;
}

BallSpec::BallSpec(std::vector<double> center_, double radius_)
    : center(std::move(center_)), radius(radius_) {
  if (center.empty()) {
    throw std::invalid_argument("BallSpec: dimension must be >= 1");
  }
  if (!(radius > 0.0)) {
    throw std::invalid_argument("BallSpec: radius must be > 0");
  }
}

BallSpec BallSpec::origin(std::size_t dim, double radius_) {
  return BallSpec(std::vector<double>(dim, 0.0), radius_);
}

void sample_uniform_ball(RngStream& rng, const BallSpec& spec, std::span<double> out) {
  const std::size_t d = spec.dim();
  if (out.size() != d) {
    throw std::invalid_argument("sample_uniform_ball: output size mismatch");
  }
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      out[i] = rng.next_gaussian();
      norm2 += out[i] * out[i];
    }
  } while (norm2 == 0.0);

  const double u = rng.next_unit_open();
  const double dist = spec.radius * std::pow(u, 1.0 / (double)d);
  const double s = dist / std::sqrt(norm2);

  double off2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    out[i] *= s;
    off2 += out[i] * out[i];
  }
  if (off2 > spec.radius * spec.radius) {
    // Rounding at u == 1 can land a hair outside; pull back onto the ball.
    const double fix = spec.radius / std::sqrt(off2);
    for (std::size_t i = 0; i < d; ++i) out[i] *= fix;
  }
  for (std::size_t i = 0; i < d; ++i) out[i] += spec.center[i];
}

std::vector<double> sample_uniform_ball(RngStream& rng, const BallSpec& spec) {
  std::vector<double> out(spec.dim());
  sample_uniform_ball(rng, spec, out);
  return out;
}

void sample_gaussian(RngStream& rng, std::size_t dim, double scale,
                     std::span<const double> center, std::span<double> out) {
  if (dim < 1) {
    throw std::invalid_argument("sample_gaussian: dimension must be >= 1");
  }
  if (!(scale > 0.0)) {
    throw std::invalid_argument("sample_gaussian: scale must be > 0");
  }
  if (out.size() != dim || (!center.empty() && center.size() != dim)) {
    throw std::invalid_argument("sample_gaussian: size mismatch");
  }
  for (std::size_t i = 0; i < dim; ++i) {
    const double c = center.empty() ? 0.0 : center[i];
    out[i] = c + scale * rng.next_gaussian();
  }
}

std::vector<double> sample_gaussian(RngStream& rng, std::size_t dim, double scale,
                                    std::span<const double> center) {
  std::vector<double> out(dim);
  sample_gaussian(rng, dim, scale, center, out);
  return out;
}

}  // namespace oneshot::mathkit
