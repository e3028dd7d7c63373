#include "oneshot/selection.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oneshot::selection {

RankedBatch rank(std::vector<double> points, std::size_t dim, std::vector<double> fitness) {
  if (dim == 0) {
    throw std::invalid_argument("rank: dim must be >= 1");
  }
  if (fitness.empty()) {
    throw std::invalid_argument("rank: batch must contain at least one point");
  }
  if (points.size() != fitness.size() * dim) {
    throw std::invalid_argument("rank: points size does not match lambda * dim");
  }
  for (double f : fitness) {
    if (!std::isfinite(f)) {
      throw std::invalid_argument("rank: fitness values must be finite");
    }
  }

  RankedBatch batch;
  batch.dim = dim;
  batch.points = std::move(points);
  batch.fitness = std::move(fitness);
  batch.order.resize(batch.fitness.size());
  std::iota(batch.order.begin(), batch.order.end(), std::size_t{0});
  std::stable_sort(batch.order.begin(), batch.order.end(),
                   [&](std::size_t a, std::size_t b) { return batch.fitness[a] < batch.fitness[b]; });
  return batch;
}

double clip(double lo, double hi, double v) { return std::max(lo, std::min(hi, v)); }

MuRule MuRule::fixed_ratio(double c) {
  if (!(c > 0.0) || !(c < 1.0)) {
    throw std::invalid_argument("fixed_ratio: ratio must lie in (0, 1)");
  }
  return {Kind::fixed_ratio, c, 0};
}

MuRule MuRule::fixed(std::size_t m) {
  if (m == 0) {
    throw std::invalid_argument("fixed: count must be >= 1");
  }
  return {Kind::fixed, 0.0, m};
}

MuRule MuRule::parse(std::string_view name) {
  if (name == "best") return single_best();
  if (name == "avg") return avg();
  if (name == "eavg") return eavg();
  if (name == "hchavg") return hchavg();
  if (name == "teavg") return teavg();
  if (name == "thchavg") return thchavg();
  constexpr std::string_view kRatio = "ratio:";
  constexpr std::string_view kFixed = "fixed:";
  if (name.substr(0, kRatio.size()) == kRatio) {
    const std::string_view arg = name.substr(kRatio.size());
    double c = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), c);
    if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
      throw std::invalid_argument("rule: malformed ratio argument '" + std::string(name) + "'");
    }
    return fixed_ratio(c);
  }
  if (name.substr(0, kFixed.size()) == kFixed) {
    const std::string_view arg = name.substr(kFixed.size());
    std::size_t m = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), m);
    if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
      throw std::invalid_argument("rule: malformed fixed argument '" + std::string(name) + "'");
    }
    return fixed(m);
  }
  throw std::invalid_argument("rule: unknown rule name '" + std::string(name) + "'");
}

std::string MuRule::name() const {
  switch (kind) {
    case Kind::single_best: return "best";
    case Kind::avg: return "avg";
    case Kind::eavg: return "eavg";
    case Kind::hchavg: return "hchavg";
    case Kind::teavg: return "teavg";
    case Kind::thchavg: return "thchavg";
    case Kind::fixed_ratio: {
      char buf[48];
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), ratio, std::chars_format::general);
      (void)ec;
      return "ratio:" + std::string(buf, ptr);
    }
    case Kind::fixed: return "fixed:" + std::to_string(count);
  }
  throw std::logic_error("MuRule::name: unreachable");
}

namespace {

// Floor the clip expression and clamp to the admissible range [1, lambda].
std::size_t finalize_mu(double value, std::size_t lambda) {
  if (!std::isfinite(value)) {
    throw std::domain_error("compute_mu: rule expression is not finite");
  }
  const double floored = std::floor(value);
  if (floored <= 1.0) return 1;
  const double lam = static_cast<double>(lambda);
  if (floored >= lam) return lambda;
  return static_cast<std::size_t>(floored);
}

}  // namespace

std::size_t compute_mu(const MuRule& rule, std::size_t lambda, std::size_t dim,
                       std::optional<std::size_t> h) {
  if (lambda == 0) {
    throw std::invalid_argument("compute_mu: lambda must be >= 1");
  }
  if (dim == 0) {
    throw std::invalid_argument("compute_mu: dim must be >= 1");
  }
  if (rule.needs_hull() && !h.has_value()) {
    throw std::invalid_argument("compute_mu: rule '" + rule.name() + "' requires the hull statistic h");
  }

  const double lam = static_cast<double>(lambda);
  const double d = static_cast<double>(dim);
  double value = 0.0;
  switch (rule.kind) {
    case MuRule::Kind::single_best:
      value = 1.0;
      break;
    case MuRule::Kind::avg:
      value = clip(1.0, d, lam / 4.0);
      break;
    case MuRule::Kind::eavg:
      // Upper clip bound is +inf; the final clamp to lambda supplies it.
      value = clip(1.0, lam, lam / std::pow(1.1, d));
      break;
    case MuRule::Kind::hchavg: {
      const double cap = std::min(static_cast<double>(*h), lam / 4.0);
      value = clip(1.0, cap, d + lam / std::pow(1.1, d));
      break;
    }
    case MuRule::Kind::teavg:
      value = clip(1.0, lam, lam / std::pow(1.01, d));
      break;
    case MuRule::Kind::thchavg: {
      const double cap = std::min(static_cast<double>(*h), lam / 4.0);
      value = clip(1.0, cap, d + lam / std::pow(1.01, d));
      break;
    }
    case MuRule::Kind::fixed_ratio:
      value = std::max(1.0, std::floor(rule.ratio * lam));
      break;
    case MuRule::Kind::fixed:
      value = static_cast<double>(std::min(rule.count, lambda));
      break;
  }
  return finalize_mu(value, lambda);
}

Recommendation recommend(const RankedBatch& batch, std::size_t mu) {
  if (mu == 0 || mu > batch.size()) {
    throw std::invalid_argument("recommend: mu must lie in [1, lambda]");
  }
  Recommendation rec;
  rec.mu_used = mu;
  if (mu == 1) {
    const auto best = batch.ranked_point(0);
    rec.point.assign(best.begin(), best.end());
    return rec;
  }
  rec.point.assign(batch.dim, 0.0);
  for (std::size_t r = 0; r < mu; ++r) {
    const auto p = batch.ranked_point(r);
    for (std::size_t j = 0; j < batch.dim; ++j) {
      rec.point[j] += p[j];
    }
  }
  const double inv = 1.0 / static_cast<double>(mu);
  for (double& c : rec.point) {
    c *= inv;
  }
  return rec;
}

}  // namespace oneshot::selection
