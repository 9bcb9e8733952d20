#pragma once

#include <cstddef>
#include <vector>

#include "adelic/field.hpp"

namespace adelic {

// Dense matrix over an exact field; just enough for rank/kernel counting.
class Matrix {
 public:
  Matrix(const FieldSpec& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  // Gaussian elimination; destroys a copy.
  std::size_t rank() const;
  std::size_t kernel_dim() const { return cols_ - rank(); }

 private:
  FieldSpec field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

}  // namespace adelic
