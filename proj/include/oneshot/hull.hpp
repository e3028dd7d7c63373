#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "oneshot/selection.hpp"

namespace oneshot::hull {

/// Result of the ranked-prefix frontier scan.
///
/// `h` is the length of the longest prefix (in rank order) in which every
/// point lies on the frontier of the convex hull of itself and its
/// predecessors. `first_interior_index` is the 0-based rank of the first
/// point that failed the test (equal to h when a failure occurred; empty
/// when the scan exhausted its range without failure). `distances` holds
/// one entry per scanned point: the hull distance used in its test, with
/// +infinity at rank 0 (no predecessors, trivially on the frontier).
struct HullPrefixResult {
  std::size_t h = 0;
  std::optional<std::size_t> first_interior_index;
  std::vector<double> distances;
};

/// Euclidean distance from x to the convex hull of `count` vertices
/// (row-major, count x dim with dim = x.size()), i.e. the minimum of
/// ||x - sum a_i v_i|| over convex weights a. Computed with the Wolfe
/// min-norm-point active-set method on the shifted set {v_i - x}. The
/// returned value is always attained by a feasible convex combination, so
/// on the rare failure to converge within the iteration cap it is an upper
/// bound on the true distance.
double dist_to_hull(std::span<const double> x, std::span<const double> vertices,
                    std::size_t count);

/// Default frontier tolerance for a batch: 1e-9 * (1 + max point norm).
double default_tolerance(const selection::RankedBatch& batch);

/// Scans ranks 0, 1, ... and tests each point against the hull of its
/// strict predecessors; a point passes when its hull distance exceeds
/// `tol` (rank 0 passes trivially). The scan stops at the first failure
/// or after `max_scan` points, whichever comes first; h is the number of
/// points that passed. Pass an empty `tol` to use default_tolerance().
/// With max_scan < lambda the result is the statistic of the truncated
/// prefix (a lower bound on the full-batch h), which is exact for any
/// consumer that caps h at max_scan or less.
HullPrefixResult frontier_prefix_h(
    const selection::RankedBatch& batch, std::optional<double> tol = std::nullopt,
    std::size_t max_scan = std::numeric_limits<std::size_t>::max());

}  // namespace oneshot::hull
