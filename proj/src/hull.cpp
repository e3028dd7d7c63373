#include "oneshot/hull.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oneshot::hull {

namespace {

// Solves (A) gamma = 1 with A = Gram(S) + ones, via Cholesky. Returns
// false when a pivot falls below the relative threshold (affinely
// dependent working set).
bool solve_affine_weights(const std::vector<double>& gram, std::size_t m,
                          std::vector<double>& gamma) {
  std::vector<double> chol(m * m, 0.0);
  double diag_max = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    diag_max = std::max(diag_max, gram[i * m + i] + 1.0);
  }
  const double pivot_floor = 1e-12 * std::max(diag_max, 1e-300);

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = gram[i * m + j] + 1.0;
      for (std::size_t t = 0; t < j; ++t) {
        s -= chol[i * m + t] * chol[j * m + t];
      }
      if (j == i) {
        if (s <= pivot_floor) return false;
        chol[i * m + i] = std::sqrt(s);
      } else {
        chol[i * m + j] = s / chol[j * m + j];
      }
    }
  }

  gamma.assign(m, 0.0);
  // Forward substitution: L y = 1.
  for (std::size_t i = 0; i < m; ++i) {
    double s = 1.0;
    for (std::size_t t = 0; t < i; ++t) {
      s -= chol[i * m + t] * gamma[t];
    }
    gamma[i] = s / chol[i * m + i];
  }
  // Back substitution: L^T gamma = y.
  for (std::size_t ii = m; ii-- > 0;) {
    double s = gamma[ii];
    for (std::size_t t = ii + 1; t < m; ++t) {
      s -= chol[t * m + ii] * gamma[t];
    }
    gamma[ii] = s / chol[ii * m + ii];
  }
  return true;
}

}  // namespace

double dist_to_hull(std::span<const double> x, std::span<const double> vertices,
                    std::size_t count) {
  const std::size_t dim = x.size();
  if (dim == 0) {
    throw std::invalid_argument("dist_to_hull: point must have dimension >= 1");
  }
  if (count == 0) {
    throw std::invalid_argument("dist_to_hull: vertex set must be non-empty");
  }
  if (vertices.size() != count * dim) {
    throw std::invalid_argument("dist_to_hull: vertex matrix does not match count * dim");
  }

  // Shift so the query point sits at the origin; the distance becomes the
  // norm of the minimum-norm point of conv{w_i}.
  std::vector<double> w(count * dim);
  double scale2 = 1.0;
  std::size_t start = 0;
  double start_norm2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    double n2 = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double c = vertices[i * dim + j] - x[j];
      w[i * dim + j] = c;
      n2 += c * c;
    }
    scale2 = std::max(scale2, n2);
    if (n2 < start_norm2) {
      start_norm2 = n2;
      start = i;
    }
  }
  if (start_norm2 == 0.0) return 0.0;

  const double opt_tol = 1e-12 * scale2;
  const auto dot = [&](std::span<const double> a, std::size_t i) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim; ++j) s += a[j] * w[i * dim + j];
    return s;
  };

  std::vector<std::size_t> corral{start};
  std::vector<double> alpha{1.0};
  std::vector<double> p(w.begin() + static_cast<std::ptrdiff_t>(start * dim),
                        w.begin() + static_cast<std::ptrdiff_t>((start + 1) * dim));

  std::vector<double> gram;
  std::vector<double> gamma;
  std::vector<double> beta;
  const std::size_t max_major = 10 * (dim + count);

  for (std::size_t major = 0; major < max_major; ++major) {
    // Most violating vertex: smallest <p, w_i>.
    double pp = 0.0;
    for (std::size_t j = 0; j < dim; ++j) pp += p[j] * p[j];
    std::size_t best = 0;
    double best_ip = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
      const double ip = dot(p, i);
      if (ip < best_ip) {
        best_ip = ip;
        best = i;
      }
    }
    if (best_ip >= pp - opt_tol) break;  // optimal within tolerance
    if (std::find(corral.begin(), corral.end(), best) != corral.end()) {
      break;  // numerical stall: the violating vertex is already active
    }
    corral.push_back(best);
    alpha.push_back(0.0);

    // Minor loop: pull the weights to the affine minimizer of the corral,
    // dropping boundary vertices until the minimizer is feasible.
    bool degenerate = false;
    while (true) {
      const std::size_t m = corral.size();
      gram.assign(m * m, 0.0);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b <= a; ++b) {
          double s = 0.0;
          for (std::size_t j = 0; j < dim; ++j) {
            s += w[corral[a] * dim + j] * w[corral[b] * dim + j];
          }
          gram[a * m + b] = s;
          gram[b * m + a] = s;
        }
      }
      if (!solve_affine_weights(gram, m, gamma)) {
        degenerate = true;
        break;
      }
      double gsum = 0.0;
      for (double g : gamma) gsum += g;
      if (!(gsum > 0.0) || !std::isfinite(gsum)) {
        degenerate = true;
        break;
      }
      beta.assign(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) beta[i] = gamma[i] / gsum;

      constexpr double kInteriorEps = 1e-12;
      bool interior = true;
      for (double b : beta) {
        if (b <= kInteriorEps) {
          interior = false;
          break;
        }
      }
      if (interior) {
        alpha = beta;
        break;
      }

      // Step toward beta until the first weight hits zero.
      double theta = 1.0;
      std::size_t drop = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (beta[i] < alpha[i] && beta[i] <= kInteriorEps) {
          const double t = alpha[i] / (alpha[i] - beta[i]);
          if (t < theta) {
            theta = t;
            drop = i;
          }
        }
      }
      if (drop == m) {
        degenerate = true;  // no blocking constraint found: bail out
        break;
      }
      for (std::size_t i = 0; i < m; ++i) {
        alpha[i] += theta * (beta[i] - alpha[i]);
      }
      alpha[drop] = 0.0;
      std::size_t keep = 0;
      double asum = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (alpha[i] > kInteriorEps) {
          corral[keep] = corral[i];
          alpha[keep] = alpha[i];
          asum += alpha[i];
          ++keep;
        }
      }
      corral.resize(keep);
      alpha.resize(keep);
      for (double& a : alpha) a /= asum;
      if (keep <= 1) break;  // singleton corral is its own minimizer
    }

    p.assign(dim, 0.0);
    for (std::size_t i = 0; i < corral.size(); ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        p[j] += alpha[i] * w[corral[i] * dim + j];
      }
    }
    if (degenerate) break;  // return the feasible upper bound reached so far
  }

  double pp = 0.0;
  for (std::size_t j = 0; j < dim; ++j) pp += p[j] * p[j];
  return std::sqrt(std::max(pp, 0.0));
}

double default_tolerance(const selection::RankedBatch& batch) {
  double max_norm2 = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto pt = batch.point(i);
    double n2 = 0.0;
    for (double c : pt) n2 += c * c;
    max_norm2 = std::max(max_norm2, n2);
  }
  return 1e-9 * (1.0 + std::sqrt(max_norm2));
}

HullPrefixResult frontier_prefix_h(const selection::RankedBatch& batch,
                                   std::optional<double> tol, std::size_t max_scan) {
  if (batch.size() == 0) {
    throw std::invalid_argument("frontier_prefix_h: batch must contain at least one point");
  }
  const double threshold = tol.has_value() ? *tol : default_tolerance(batch);
  if (!(threshold >= 0.0)) {
    throw std::invalid_argument("frontier_prefix_h: tol must be nonnegative");
  }

  const std::size_t lambda = batch.size();
  const std::size_t dim = batch.dim;
  const std::size_t limit = std::min(lambda, max_scan);

  HullPrefixResult result;
  result.distances.reserve(limit);

  // Predecessors in rank order, packed row-major as the scan advances.
  std::vector<double> prefix;
  prefix.reserve(limit * dim);

  for (std::size_t r = 0; r < limit; ++r) {
    const auto pt = batch.ranked_point(r);
    if (r == 0) {
      result.distances.push_back(std::numeric_limits<double>::infinity());
    } else {
      const double dist = dist_to_hull(pt, prefix, r);
      result.distances.push_back(dist);
      if (!(dist > threshold)) {
        result.h = r;
        result.first_interior_index = r;
        return result;
      }
    }
    prefix.insert(prefix.end(), pt.begin(), pt.end());
  }

  result.h = limit;
  return result;
}

}  // namespace oneshot::hull
