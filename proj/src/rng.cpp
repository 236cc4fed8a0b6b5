#include "rng.hpp"

#include <charconv>
#include <cstdlib>
#include <random>
#include <string>
#include <utility>

#include "errors.hpp"

namespace hga {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::optional<Seed> parse_seed(std::string_view text) {
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
    base = 16;
  }
  if (text.empty()) return std::nullopt;
  std::uint64_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  return Seed{value};
}

Seed entropy_seed() {
  if (const char* env = std::getenv("HGA_SEED")) {
    if (auto seed = parse_seed(env)) return *seed;
  }
  std::random_device device;
  return Seed{(static_cast<std::uint64_t>(device()) << 32) ^ device()};
}

std::uint64_t stream_id(StreamPurpose purpose, std::uint64_t generation, std::uint64_t index) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(purpose) * kGolden);
  h = mix64(h ^ (generation + kGolden));
  return mix64(h ^ (index * kGolden + 0x632be59bd9b4e019ULL));
}

RngStream::RngStream(Seed seed, std::uint64_t id) noexcept
    : state_(mix64(seed.value ^ mix64(id ^ 0xd1b54a32d192ed03ULL))) {}

std::uint64_t RngStream::next_u64() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw ArgumentError("uniform_int: lo " + std::to_string(lo) + " > hi " + std::to_string(hi));
  }
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == ~std::uint64_t{0}) return static_cast<std::int64_t>(next_u64());
  const std::uint64_t range = span + 1;
  // Lemire's multiply-shift with rejection; unbiased for every range.
  unsigned __int128 product = static_cast<unsigned __int128>(next_u64()) * range;
  auto low = static_cast<std::uint64_t>(product);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(next_u64()) * range;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + static_cast<std::uint64_t>(product >> 64));
}

void shuffle_column(MutableSignMatrixView q, int col, RngStream& stream) {
  const int m = q.order();
  if (col < 1 || col >= m) {
    throw IndexError("shuffle_column: column " + std::to_string(col) + " outside [1, " + std::to_string(m - 1) + "]");
  }
  for (int i1 = 0; i1 < m - 1; ++i1) {
    const auto i2 = static_cast<int>(stream.uniform_int(i1, m - 1));
    std::swap(q(i1, col), q(i2, col));
  }
}

}  // namespace hga
