#pragma once

#include <cstdint>

namespace oneshot {

/// Reproducible random stream with explicit sub-stream selection.
///
/// Generator: pcg64 (PCG XSL-RR 128/64). The 128-bit LCG increment is
/// derived from `stream_id`, so distinct stream ids select provably
/// distinct sequences of the underlying congruential generator;
/// `master_seed` sets the starting state. A given (master_seed, stream_id)
/// pair reproduces the same draw sequence byte-for-byte across runs and
/// thread schedules. Streams are plain values and may be moved freely
/// between threads; there is no shared state.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Next raw 64-bit output.
  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_unit();

  /// Uniform double in (0, 1]; safe as a log() argument.
  double next_unit_open();

  /// Standard normal deviate (Box-Muller; the second deviate of each
  /// pair is cached inside the stream, so it stays a pure value).
  double next_gaussian();

 private:
  using u128 = unsigned __int128;

  u128 state_;
  u128 inc_;
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace oneshot
