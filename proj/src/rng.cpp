#include "oneshot/rng.hpp"

#include <cmath>

namespace oneshot {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// 128-bit multiplier of the pcg64 reference implementation.
constexpr unsigned __int128 pcg_mult() {
  return ((unsigned __int128)0x2360ed051fc65da4ULL << 64) | 0x4385df649fccf645ULL;
}

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotr64(std::uint64_t v, unsigned rot) {
  return (v >> rot) | (v << ((-rot) & 63u));
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
  std::uint64_t s = master_seed;
  const u128 initstate = ((u128)splitmix64(s) << 64) | splitmix64(s);
  std::uint64_t t = stream_id;
  const u128 initseq = ((u128)splitmix64(t) << 64) | splitmix64(t);

  // pcg setseq initialization: the increment must be odd and encodes the
  // stream; splitmix64 is injective per call, so distinct stream ids give
  // distinct increments.
  inc_ = (initseq << 1) | 1;
  state_ = 0;
  next_u64();
  state_ += initstate;
  next_u64();
  has_spare_ = false;
}

std::uint64_t RngStream::next_u64() {
  state_ = state_ * pcg_mult() + inc_;
  const std::uint64_t xored = (std::uint64_t)(state_ >> 64) ^ (std::uint64_t)state_;
  const unsigned rot = (unsigned)(state_ >> 122);
  return rotr64(xored, rot);
}

double RngStream::next_unit() {
  return (double)(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_unit_open() {
  return 1.0 - next_unit();
}

double RngStream::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_unit_open();
  const double u2 = next_unit();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double ang = kTwoPi * u2;
  spare_ = mag * std::sin(ang);
  has_spare_ = true;
  return mag * std::cos(ang);
}

}  // namespace oneshot
