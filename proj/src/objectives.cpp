#include "oneshot/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oneshot::objectives {

Kind parse_kind(std::string_view name) {
  if (name == "sphere") return Kind::sphere;
  if (name == "cigar") return Kind::cigar;
  if (name == "hm") return Kind::hm;
  if (name == "rastrigin") return Kind::rastrigin;
  throw std::invalid_argument("objective: unknown kind '" + std::string(name) + "'");
}

std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::sphere: return "sphere";
    case Kind::cigar: return "cigar";
    case Kind::hm: return "hm";
    case Kind::rastrigin: return "rastrigin";
  }
  throw std::logic_error("kind_name: unreachable");
}

Objective::Objective(Kind kind_, std::size_t d_, std::vector<double> y_)
    : kind(kind_), d(d_), y(std::move(y_)) {
  if (d == 0) {
    throw std::invalid_argument("Objective: dimension must be >= 1");
  }
  if (y.size() != d) {
    throw std::invalid_argument("Objective: translation length must equal d");
  }
  for (double c : y) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("Objective: translation must be finite");
    }
  }
}

Objective::Objective(Kind kind_, std::size_t d_)
    : Objective(kind_, d_, std::vector<double>(d_, 0.0)) {}

double evaluate(const Objective& obj, std::span<const double> x) {
  if (x.size() != obj.d) {
    throw std::invalid_argument("evaluate: point length must equal d");
  }
  switch (obj.kind) {
    case Kind::sphere: {
      double s = 0.0;
      for (std::size_t i = 0; i < obj.d; ++i) {
        const double z = x[i] - obj.y[i];
        s += z * z;
      }
      return s;
    }
    case Kind::cigar: {
      const double z0 = x[0] - obj.y[0];
      double tail = 0.0;
      for (std::size_t i = 1; i < obj.d; ++i) {
        const double z = x[i] - obj.y[i];
        tail += z * z;
      }
      return z0 * z0 + 1e6 * tail;
    }
    case Kind::hm: {
      double s = 0.0;
      for (std::size_t i = 0; i < obj.d; ++i) {
        const double z = x[i] - obj.y[i];
        if (z != 0.0) {
          s += z * z * (1.1 + std::cos(1.0 / z));
        }
      }
      return s;
    }
    case Kind::rastrigin: {
      double norm2 = 0.0;
      double cosum = 0.0;
      for (std::size_t i = 0; i < obj.d; ++i) {
        const double z = x[i] - obj.y[i];
        norm2 += z * z;
        cosum += std::cos(2.0 * std::numbers::pi * z);
      }
      return 10.0 * static_cast<double>(obj.d) + norm2 - 10.0 * cosum;
    }
  }
  throw std::logic_error("evaluate: unreachable");
}

Objective make_translated(RngStream& rng, Kind kind, std::size_t d, TranslationScale scale) {
  if (d == 0) {
    throw std::invalid_argument("make_translated: dimension must be >= 1");
  }
  const double sd = scale == TranslationScale::variance ? std::sqrt(0.2) : 0.2;
  std::vector<double> y(d);
  for (double& c : y) {
    c = sd * rng.next_gaussian();
  }
  return Objective(kind, d, std::move(y));
}

double optimum_regret(const Objective& obj, std::span<const double> x) {
  return evaluate(obj, x);
}

}  // namespace oneshot::objectives
