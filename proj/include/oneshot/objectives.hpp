#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oneshot/rng.hpp"

namespace oneshot::objectives {

enum class Kind { sphere, cigar, hm, rastrigin };

/// Parses a CLI spelling (sphere, cigar, hm, rastrigin).
Kind parse_kind(std::string_view name);
std::string kind_name(Kind kind);

/// A benchmark objective: one of the four standard kinds, shifted so the
/// global optimizer sits at the translation vector y (minimum value 0 for
/// every kind). Immutable after construction; safe to evaluate
/// concurrently.
struct Objective {
  Kind kind = Kind::sphere;
  std::size_t d = 0;
  std::vector<double> y;

  Objective(Kind kind, std::size_t d, std::vector<double> y);
  /// Untranslated objective (y = 0).
  Objective(Kind kind, std::size_t d);
};

/// Evaluates the objective at x. With z = x - y:
///   sphere:    ||z||^2
///   cigar:     z_1^2 + 1e6 * sum_{i>=2} z_i^2
///   hm:        sum z_i^2 (1.1 + cos(1/z_i)), a term with z_i = 0 being 0
///   rastrigin: 10 d + ||z||^2 - 10 sum cos(2 pi z_i)
double evaluate(const Objective& obj, std::span<const double> x);

/// How the translation scale parameter 0.2 is interpreted when drawing y.
enum class TranslationScale {
  variance,  // coordinates ~ N(0, 0.2): standard deviation sqrt(0.2)
  stddev,    // coordinates ~ N(0, 0.04): standard deviation 0.2
};

/// Draws a random translation y with i.i.d. Gaussian coordinates from the
/// given stream and returns the translated objective. The default reads
/// 0.2 as the coordinate variance.
Objective make_translated(RngStream& rng, Kind kind, std::size_t d,
                          TranslationScale scale = TranslationScale::variance);

/// Simple regret of x: f(x) - min f = evaluate(obj, x), since all four
/// kinds have minimum value 0 at y.
double optimum_regret(const Objective& obj, std::span<const double> x);

}  // namespace oneshot::objectives
