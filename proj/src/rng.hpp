#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "sign_matrix.hpp"

namespace hga {

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(Seed, Seed) = default;
};

/// Parses a decimal or 0x-prefixed hexadecimal 64-bit seed.
std::optional<Seed> parse_seed(std::string_view text);

/// Seed for runs without a user seed. HGA_SEED in the environment, when it
/// parses, replaces the operating-system entropy source.
Seed entropy_seed();

/// What a stream is used for; part of the stream id so that draws for
/// different phases never share a sequence.
enum class StreamPurpose : std::uint64_t {
  Init = 1,
  Select = 2,
  Crossover = 3,
  Mutation = 4,
  Restart = 5,
  Test = 15,
};

/// Stream id for (purpose, generation, index). Pure; no state is consumed.
std::uint64_t stream_id(StreamPurpose purpose, std::uint64_t generation, std::uint64_t index);

/// Deterministic generator addressed by (seed, stream id). Construction
/// jumps straight to the stream, so any stream can be created in any order.
/// Single-owner: not safe to share between threads.
class RngStream {
 public:
  RngStream(Seed seed, std::uint64_t id) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform integer in [lo, hi], both inclusive. Throws ArgumentError when
  /// lo > hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

/// Fisher-Yates shuffle of column col in place: for i1 = 0..m-2 swap rows i1
/// and i2 with i2 uniform in [i1, m-1]. Column 0 is never shuffled.
void shuffle_column(MutableSignMatrixView q, int col, RngStream& stream);

}  // namespace hga
