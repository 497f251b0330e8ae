#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bsmsim {

/// Square boolean matrix, one byte per entry, row-major.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  explicit BoolMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}

  static BoolMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  bool get(std::size_t i, std::size_t j) const noexcept { return bits_[i * n_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool value) noexcept {
    bits_[i * n_ + j] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> row(std::size_t i) const noexcept {
    return {bits_.data() + i * n_, n_};
  }
  std::span<std::uint8_t> row(std::size_t i) noexcept { return {bits_.data() + i * n_, n_}; }

  /// Number of set entries.
  std::size_t count() const noexcept;

  bool is_symmetric() const noexcept;
  bool is_reflexive() const noexcept;

  BoolMatrix transposed() const;

  bool operator==(const BoolMatrix&) const = default;

 private:
  std::size_t n_{0};
  std::vector<std::uint8_t> bits_;
};

/// out(i,j) = OR_k a(i,k) AND b(k,j). Throws std::invalid_argument on size mismatch.
/// `workers` > 1 splits output rows across threads; output is identical.
BoolMatrix boolean_multiply(const BoolMatrix& a, const BoolMatrix& b, unsigned workers = 1);

}  // namespace bsmsim
