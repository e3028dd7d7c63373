#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oneshot/rng.hpp"

namespace oneshot::mathkit {

/// ln Gamma(z) for z > 0.
///
/// Lanczos approximation (g = 7, 9 terms) with the reflection formula
/// below z = 0.5. Evaluated in log space so Gamma arguments up to 1e6
/// and beyond never overflow. Throws std::domain_error for z <= 0.
double ln_gamma(double z);

/// P(U <= k) for U ~ Binomial(n, p).
///
/// Log-space term recursion with running log-sum-exp accumulation, so
/// far-tail probabilities (terms around e^-1400) come out without
/// underflow. k >= n returns 1, k < 0 returns 0. Throws std::domain_error
/// for n < 1 or p outside [0, 1]. Intended for n up to ~1e5 (the loop is
/// O(k)).
double binomial_cdf(std::int64_t n, double p, std::int64_t k);

/// Closed Euclidean ball, the support of the uniform sampler.
struct BallSpec {
  std::vector<double> center;  // length d >= 1
  double radius = 1.0;         // > 0

  BallSpec(std::vector<double> center_, double radius_);
  static BallSpec origin(std::size_t dim, double radius_);

  std::size_t dim() const { return center.size(); }
};

/// Uniform draw from the ball: direction from a normalized Gaussian
/// vector, distance radius * U^(1/d) with U uniform on (0, 1]. The
/// returned point always satisfies ||point - center|| <= radius.
void sample_uniform_ball(RngStream& rng, const BallSpec& spec, std::span<double> out);
std::vector<double> sample_uniform_ball(RngStream& rng, const BallSpec& spec);

/// Isotropic Gaussian draw: out[i] = center[i] + scale * N(0,1).
/// scale must be > 0; the center span may be empty (treated as the origin).
void sample_gaussian(RngStream& rng, std::size_t dim, double scale,
                     std::span<const double> center, std::span<double> out);
std::vector<double> sample_gaussian(RngStream& rng, std::size_t dim, double scale,
                                    std::span<const double> center = {});

}  // namespace oneshot::mathkit
