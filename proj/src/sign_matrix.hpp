#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hga {

using Sign = std::int8_t;
using Fitness = std::int64_t;

enum class FitnessKind { F1, F2 };

/// Read-only view of an m x m sign matrix stored row-major, entry (i, j) at
/// offset m*i + j.
class SignMatrixView {
 public:
  SignMatrixView(std::span<const Sign> entries, int order) : entries_(entries), order_(order) {}

  int order() const noexcept { return order_; }
  Sign operator()(int row, int col) const noexcept { return entries_[static_cast<std::size_t>(order_) * row + col]; }
  std::span<const Sign> entries() const noexcept { return entries_; }

 private:
  std::span<const Sign> entries_;
  int order_;
};

class MutableSignMatrixView {
 public:
  MutableSignMatrixView(std::span<Sign> entries, int order) : entries_(entries), order_(order) {}

  int order() const noexcept { return order_; }
  Sign& operator()(int row, int col) const noexcept { return entries_[static_cast<std::size_t>(order_) * row + col]; }
  std::span<Sign> entries() const noexcept { return entries_; }

  operator SignMatrixView() const noexcept { return {entries_, order_}; }

 private:
  std::span<Sign> entries_;
  int order_;
};

/// Owning m x m matrix of +1/-1 entries.
class SignMatrix {
 public:
  /// Matrix of the given order with every entry set to fill.
  explicit SignMatrix(int order, Sign fill = 1);

  /// Validates that entries has order*order values, each +1 or -1.
  static SignMatrix from_entries(int order, std::vector<Sign> entries);
  static SignMatrix from_view(SignMatrixView view);

  int order() const noexcept { return order_; }
  Sign operator()(int row, int col) const noexcept { return entries_[static_cast<std::size_t>(order_) * row + col]; }
  Sign& operator()(int row, int col) noexcept { return entries_[static_cast<std::size_t>(order_) * row + col]; }
  std::span<const Sign> entries() const noexcept { return entries_; }

  SignMatrixView view() const noexcept { return {entries_, order_}; }
  MutableSignMatrixView mutable_view() noexcept { return {entries_, order_}; }
  operator SignMatrixView() const noexcept { return view(); }

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

 private:
  SignMatrix(int order, std::vector<Sign> entries) : order_(order), entries_(std::move(entries)) {}

  int order_;
  std::vector<Sign> entries_;
};

/// Q^T Q of a sign matrix: entry (i, j) is the dot product of columns i and j.
class GramMatrix {
 public:
  explicit GramMatrix(int order) : order_(order), entries_(static_cast<std::size_t>(order) * order, 0) {}

  int order() const noexcept { return order_; }
  std::int32_t operator()(int i, int j) const noexcept { return entries_[static_cast<std::size_t>(order_) * i + j]; }
  std::int32_t& operator()(int i, int j) noexcept { return entries_[static_cast<std::size_t>(order_) * i + j]; }

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  int order_;
  std::vector<std::int32_t> entries_;
};

GramMatrix gram(SignMatrixView q);

/// Fitness and orthogonality checks over a bit-packed copy of the columns:
/// column c becomes a bit vector with bit r set when entry (r, c) is -1, so a
/// column dot product is m - 2 * popcount(a ^ b). Holds reusable scratch;
/// use one instance per thread.
class FitnessEvaluator {
 public:
  Fitness f1(SignMatrixView q);
  Fitness f2(SignMatrixView q);
  Fitness operator()(SignMatrixView q, FitnessKind kind) { return kind == FitnessKind::F1 ? f1(q) : f2(q); }
  bool is_hadamard(SignMatrixView q);
  std::int32_t max_abs_off_diagonal(SignMatrixView q);

 private:
  void pack(SignMatrixView q);
  void pack_single_word(const Sign* entries);
  std::int32_t dot(int a, int b) const noexcept;
  template <typename Visit>
  void for_each_pair(Visit&& visit) const;

  int order_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Sum of |[Q^T Q]_ij| minus m^2, i.e. the absolute off-diagonal mass.
Fitness fitness_f1(SignMatrixView q);

/// Number of nonzero entries of Q^T Q minus m, i.e. the count of
/// non-orthogonal ordered column pairs.
Fitness fitness_f2(SignMatrixView q);

Fitness fitness(SignMatrixView q, FitnessKind kind);

bool is_hadamard(SignMatrixView q);

/// Largest |[Q^T Q]_ij| over i != j; 0 for order 1.
std::int32_t max_abs_off_diagonal(SignMatrixView q);

/// Column 0 all +1 and every other column summing to zero. Requires m % 4 == 0
/// to be meaningful but only checks the entry pattern.
bool is_balanced(SignMatrixView q);

inline constexpr unsigned kDefaultSylvesterCap = 10;

/// Order-2^power Sylvester matrix: H_1 = [+1], H_2n = [[H, H], [H, -H]].
SignMatrix sylvester(unsigned power, unsigned cap = kDefaultSylvesterCap);

}  // namespace hga
