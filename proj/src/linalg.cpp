#include "adelic/linalg.hpp"

namespace adelic {

std::size_t Matrix::rank() const {
  Matrix m = *this;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols_ && r < m.rows_; ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows_ && m.at(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows_) continue;
    if (pivot != r)
      for (std::size_t j = c; j < m.cols_; ++j) std::swap(m.at(pivot, j), m.at(r, j));
    Scalar inv = m.at(r, c).inv();
    for (std::size_t j = c; j < m.cols_; ++j) m.at(r, j) = m.at(r, j) * inv;
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c);
      for (std::size_t j = c; j < m.cols_; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace adelic
