#include "sign_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <cstdlib>
#include <string>

#include "errors.hpp"

namespace hga {

namespace {

void check_order(int order) {
  if (order < 1) throw ArgumentError("matrix order must be at least 1, got " + std::to_string(order));
}

}  // namespace

SignMatrix::SignMatrix(int order, Sign fill) {
  check_order(order);
  if (fill != 1 && fill != -1) throw ArgumentError("sign matrix entries must be +1 or -1");
  order_ = order;
  entries_.assign(static_cast<std::size_t>(order) * order, fill);
}

SignMatrix SignMatrix::from_entries(int order, std::vector<Sign> entries) {
  check_order(order);
  if (entries.size() != static_cast<std::size_t>(order) * order) {
    throw ArgumentError("expected " + std::to_string(order * order) + " entries, got " +
                        std::to_string(entries.size()));
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] != 1 && entries[i] != -1) {
      throw ArgumentError("entry " + std::to_string(i) + " is " + std::to_string(entries[i]) +
                          ", expected +1 or -1");
    }
  }
  return SignMatrix(order, std::move(entries));
}

SignMatrix SignMatrix::from_view(SignMatrixView view) {
  return from_entries(view.order(), std::vector<Sign>(view.entries().begin(), view.entries().end()));
}

GramMatrix gram(SignMatrixView q) {
  const int m = q.order();
  GramMatrix g(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      std::int32_t sum = 0;
      for (int r = 0; r < m; ++r) sum += q(r, i) * q(r, j);
      g(i, j) = sum;
      g(j, i) = sum;
    }
  }
  return g;
}

// Transposes 8x8 blocks at once: the sign bit of each byte is gathered into
// bit 0, eight rows are interleaved so byte b of `block` holds column c0 + b.
void FitnessEvaluator::pack_single_word(const Sign* entries) {
  constexpr std::uint64_t kLow = 0x0101010101010101ULL;
  const int m = order_;
  for (int c0 = 0; c0 < m; c0 += 8) {
    const int width = std::min(8, m - c0);
    for (int r0 = 0; r0 < m; r0 += 8) {
      const int height = std::min(8, m - r0);
      std::uint64_t block = 0;
      for (int k = 0; k < height; ++k) {
        const Sign* source = entries + static_cast<std::size_t>(r0 + k) * m + c0;
        std::uint64_t row = 0;
        if (width == 8) {
          std::memcpy(&row, source, 8);
        } else if (width == 4) {
          std::uint32_t half = 0;
          std::memcpy(&half, source, 4);
          row = half;
        } else {
          for (int b = 0; b < width; ++b) row |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(source[b])) << (8 * b);
        }
        block |= ((row >> 7) & kLow) << k;
      }
      for (int b = 0; b < width; ++b) bits_[c0 + b] |= ((block >> (8 * b)) & 0xFF) << r0;
    }
  }
}

void FitnessEvaluator::pack(SignMatrixView q) {
  order_ = q.order();
  words_ = (static_cast<std::size_t>(order_) + 63) / 64;
  bits_.assign(words_ * order_, 0);
  const Sign* entry = q.entries().data();
  if (words_ == 1 && std::endian::native == std::endian::little) {
    pack_single_word(entry);
    return;
  }
  for (int r = 0; r < order_; ++r) {
    std::uint64_t* column = bits_.data() + static_cast<std::size_t>(r) / 64;
    const unsigned shift = static_cast<unsigned>(r) % 64;
    for (int c = 0; c < order_; ++c, ++entry) {
      column[c * words_] |= static_cast<std::uint64_t>(*entry < 0) << shift;
    }
  }
}

std::int32_t FitnessEvaluator::dot(int a, int b) const noexcept {
  const std::uint64_t* x = &bits_[a * words_];
  const std::uint64_t* y = &bits_[b * words_];
  int differ = 0;
  for (std::size_t w = 0; w < words_; ++w) differ += std::popcount(x[w] ^ y[w]);
  return order_ - 2 * differ;
}

template <typename Visit>
void FitnessEvaluator::for_each_pair(Visit&& visit) const {
  if (words_ == 1) {
    const std::uint64_t* columns = bits_.data();
    for (int i = 0; i < order_; ++i) {
      const std::uint64_t a = columns[i];
      for (int j = i + 1; j < order_; ++j) {
        if (!visit(order_ - 2 * std::popcount(a ^ columns[j]))) return;
      }
    }
    return;
  }
  for (int i = 0; i < order_; ++i) {
    for (int j = i + 1; j < order_; ++j) {
      if (!visit(dot(i, j))) return;
    }
  }
}

Fitness FitnessEvaluator::f1(SignMatrixView q) {
  pack(q);
  Fitness total = 0;
  for_each_pair([&](std::int32_t d) {
    total += std::abs(d);
    return true;
  });
  return 2 * total;
}

Fitness FitnessEvaluator::f2(SignMatrixView q) {
  pack(q);
  Fitness nonzero = 0;
  if (order_ % 2 == 1) return static_cast<Fitness>(order_) * (order_ - 1);  // odd dot products are never 0
  if (words_ == 1) {
    const std::uint64_t* columns = bits_.data();
    const int half = order_ / 2;
    for (int i = 0; i < order_; ++i) {
      const std::uint64_t a = columns[i];
      for (int j = i + 1; j < order_; ++j) nonzero += std::popcount(a ^ columns[j]) != half;
    }
    return 2 * nonzero;
  }
  for_each_pair([&](std::int32_t d) {
    nonzero += d != 0;
    return true;
  });
  return 2 * nonzero;
}

bool FitnessEvaluator::is_hadamard(SignMatrixView q) {
  pack(q);
  bool orthogonal = true;
  for_each_pair([&](std::int32_t d) { return orthogonal = d == 0; });
  return orthogonal;
}

std::int32_t FitnessEvaluator::max_abs_off_diagonal(SignMatrixView q) {
  pack(q);
  std::int32_t worst = 0;
  for_each_pair([&](std::int32_t d) {
    worst = std::max(worst, std::abs(d));
    return true;
  });
  return worst;
}

Fitness fitness_f1(SignMatrixView q) { return FitnessEvaluator().f1(q); }

Fitness fitness_f2(SignMatrixView q) { return FitnessEvaluator().f2(q); }

Fitness fitness(SignMatrixView q, FitnessKind kind) { return FitnessEvaluator()(q, kind); }

bool is_hadamard(SignMatrixView q) { return FitnessEvaluator().is_hadamard(q); }

std::int32_t max_abs_off_diagonal(SignMatrixView q) { return FitnessEvaluator().max_abs_off_diagonal(q); }

bool is_balanced(SignMatrixView q) {
  const int m = q.order();
  for (int c = 0; c < m; ++c) {
    int sum = 0;
    for (int r = 0; r < m; ++r) sum += q(r, c);
    if (c == 0 ? sum != m : sum != 0) return false;
  }
  return true;
}

SignMatrix sylvester(unsigned power, unsigned cap) {
  if (power > cap) {
    throw SizeLimitError("sylvester power " + std::to_string(power) + " exceeds cap " + std::to_string(cap));
  }
  SignMatrix h(1);
  for (unsigned p = 0; p < power; ++p) {
    const int n = h.order();
    SignMatrix next(2 * n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const Sign s = h(r, c);
        next(r, c) = s;
        next(r, c + n) = s;
        next(r + n, c) = s;
        next(r + n, c + n) = static_cast<Sign>(-s);
      }
    }
    h = std::move(next);
  }
  return h;
}

}  // namespace hga
