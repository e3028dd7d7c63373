#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oneshot::selection {

/// A batch of lambda sampled points together with the ascending fitness
/// order. Immutable after construction; `order` is the permutation that
/// sorts fitness (ties broken by original index).
struct RankedBatch {
  std::size_t dim = 0;
  std::vector<double> points;       // row-major, lambda x dim
  std::vector<double> fitness;      // length lambda
  std::vector<std::size_t> order;   // ascending fitness

  std::size_t size() const { return fitness.size(); }

  std::span<const double> point(std::size_t index) const {
    return {points.data() + index * dim, dim};
  }
  /// Point with the (rank+1)-th smallest fitness; rank is 0-based.
  std::span<const double> ranked_point(std::size_t rank) const {
    return point(order[rank]);
  }
  double ranked_fitness(std::size_t rank) const { return fitness[order[rank]]; }
};

/// Stable ascending sort of a batch by fitness. `points` is row-major with
/// `dim` columns. Non-finite fitness values are rejected.
RankedBatch rank(std::vector<double> points, std::size_t dim, std::vector<double> fitness);

/// max(lo, min(hi, v)): projection of v onto [lo, hi]. If lo > hi the
/// result is lo.
double clip(double lo, double hi, double v);

/// One of the selection-size formulas. `avg` keeps at most the dimension,
/// the exponential variants keep lambda/base^d points, and the hull
/// variants additionally cap at the quasi-convexity prefix h.
struct MuRule {
  enum class Kind {
    single_best,
    avg,
    eavg,      // lambda / 1.1^d
    hchavg,    // eavg shifted by d, capped at min(h, lambda/4)
    teavg,     // lambda / 1.01^d
    thchavg,   // teavg shifted by d, capped at min(h, lambda/4)
    fixed_ratio,
    fixed,
  };

  Kind kind = Kind::single_best;
  double ratio = 0.0;      // fixed_ratio only, in (0, 1)
  std::size_t count = 0;   // fixed only, >= 1

  static MuRule single_best() { return {Kind::single_best, 0.0, 0}; }
  static MuRule avg() { return {Kind::avg, 0.0, 0}; }
  static MuRule eavg() { return {Kind::eavg, 0.0, 0}; }
  static MuRule hchavg() { return {Kind::hchavg, 0.0, 0}; }
  static MuRule teavg() { return {Kind::teavg, 0.0, 0}; }
  static MuRule thchavg() { return {Kind::thchavg, 0.0, 0}; }
  static MuRule fixed_ratio(double c);
  static MuRule fixed(std::size_t m);

  /// Parses the CLI spelling: best, avg, eavg, hchavg, teavg, thchavg,
  /// ratio:<c>, fixed:<m>. Throws std::invalid_argument otherwise.
  static MuRule parse(std::string_view name);
  std::string name() const;

  bool needs_hull() const { return kind == Kind::hchavg || kind == Kind::thchavg; }
};

/// Selection size for a rule: the rule's clip expression, floored, then
/// clamped to [1, lambda]. `h` is required for the hull rules and ignored
/// otherwise.
std::size_t compute_mu(const MuRule& rule, std::size_t lambda, std::size_t dim,
                       std::optional<std::size_t> h = std::nullopt);

struct Recommendation {
  std::vector<double> point;          // mean of the mu best points
  std::size_t mu_used = 0;
  std::optional<std::size_t> h_used;  // set by pipelines that computed h
};

/// Arithmetic mean of the mu best-ranked points. mu = 1 returns the best
/// point bit-exactly.
Recommendation recommend(const RankedBatch& batch, std::size_t mu);

}  // namespace oneshot::selection
