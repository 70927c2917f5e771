#pragma once

#include <array>
#include <cstdint>

namespace crs {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// One block maps a 128-bit counter and 64-bit key to 128 output bits;
/// distinct (key, counter) pairs give independent values, which is what
/// makes per-replicate substreams trivial to derive.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key);
};

/// A deterministic substream of Philox output.
///
/// key   = 64-bit user seed
/// ctr   = (block_lo, block_hi, stream_lo, stream_hi)
///
/// so streams are indexed by a 64-bit stream id and each stream yields
/// 2^128 blocks. Samplers draw from the stream sequentially; replicate
/// r of an experiment uses stream id r (possibly combined with a part
/// index), which makes results independent of threading and replicate
/// order, and truncations of one realization prefix-consistent.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double next_double();

  /// Standard normal via Box-Muller; generates pairs, caches the second.
  double next_normal();

  /// Poisson(mean) by CDF inversion from a single uniform. Exact for the
  /// mean range used here; requires mean < 600 so exp(-mean) stays normal.
  int next_poisson(double mean);

  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Stream id for (replicate, part) pairs: parts get the high 16 bits.
std::uint64_t substream_id(std::uint64_t replicate, std::uint32_t part);

}  // namespace crs
