#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pgds/arith.hpp"

namespace pgds {

/// Dense row-major integer matrix with overflow-checked products.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const std::int64_t a = (*this)(i, k);
        if (a == 0) continue;
        const std::int64_t* brow = &o.data_[k * o.cols_];
        std::int64_t* orow = &out.data_[i * o.cols_];
        for (std::size_t j = 0; j < o.cols_; ++j) {
          if (brow[j] == 0) continue;
          orow[j] = checked_add(orow[j], checked_mul(a, brow[j]));
        }
      }
    }
    return out;
  }

  std::vector<std::int64_t> row_sums() const {
    std::vector<std::int64_t> s(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) s[r] += (*this)(r, c);
    }
    return s;
  }

  std::vector<std::int64_t> col_sums() const {
    std::vector<std::int64_t> s(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) s[c] += (*this)(r, c);
    }
    return s;
  }

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

}  // namespace pgds
