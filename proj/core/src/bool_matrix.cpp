#include "bsmsim/bool_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <thread>

namespace bsmsim {
namespace {

void multiply_rows(const BoolMatrix& a, const BoolMatrix& bt, BoolMatrix& out,
                   std::size_t first_row, std::size_t stride) {
  const std::size_t n = a.size();
  for (std::size_t i = first_row; i < n; i += stride) {
    const auto a_row = a.row(i);
    auto out_row = out.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const auto b_col = bt.row(j);
      std::uint8_t bit = 0;
      for (std::size_t k = 0; k < n && !bit; ++k) bit = a_row[k] & b_col[k];
      out_row[j] = bit;
    }
  }
}

}  // namespace

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

std::size_t BoolMatrix::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BoolMatrix::is_symmetric() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (get(i, j) != get(j, i)) return false;
  return true;
}

bool BoolMatrix::is_reflexive() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    if (!get(i, i)) return false;
  return true;
}

BoolMatrix BoolMatrix::transposed() const {
  BoolMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t.bits_[j * n_ + i] = bits_[i * n_ + j];
  return t;
}

BoolMatrix boolean_multiply(const BoolMatrix& a, const BoolMatrix& b, unsigned workers) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("boolean_multiply: dimension mismatch " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
  const std::size_t n = a.size();
  BoolMatrix out(n);
  const BoolMatrix bt = b.transposed();  // column k of b becomes a contiguous row

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    multiply_rows(a, bt, out, 0, 1);
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] { multiply_rows(a, bt, out, w, workers); });
  }
  pool.clear();
  return out;
}

}  // namespace bsmsim
