#pragma once

#include <span>
#include <string>
#include <vector>

#include "bdc/error.hpp"

namespace bdc {

/// Dense n x n matrix in row-major storage.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, const T& fill = T{})
      : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {
    if (n < 0) throw DimensionError("matrix size must be non-negative");
  }

  /// Throws DimensionError unless rows form a square grid.
  static SquareMatrix from_rows(const std::vector<std::vector<T>>& rows) {
    SquareMatrix m(static_cast<int>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) {
        throw DimensionError("matrix is not square: row " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " +
                             std::to_string(rows.size()));
      }
      for (std::size_t j = 0; j < rows.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    return m;
  }

  int size() const noexcept { return n_; }

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  std::span<T> row(int i) { return {data_.data() + index(i, 0), static_cast<std::size_t>(n_)}; }
  std::span<const T> row(int i) const {
    return {data_.data() + index(i, 0), static_cast<std::size_t>(n_)};
  }

  void swap_rows(int a, int b) {
    for (int j = 0; j < n_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<T> data_;
};

}  // namespace bdc
