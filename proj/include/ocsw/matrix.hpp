#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace ocsw {

// Dense row-major integer matrix. Everything in this toolkit is desk scale
// (side <= 4096), so dense storage is the simplest cache-friendly choice.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols, int fill = 0)
      : rows_(rows),
        cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
              fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int& operator()(int r, int c) { return data_[index(r, c)]; }
  int operator()(int r, int c) const { return data_[index(r, c)]; }

  long long row_sum(int r) const {
    long long s = 0;
    for (int c = 0; c < cols_; ++c) s += (*this)(r, c);
    return s;
  }

  long long col_sum(int c) const {
    long long s = 0;
    for (int r = 0; r < rows_; ++r) s += (*this)(r, c);
    return s;
  }

  long long total() const {
    long long s = 0;
    for (int v : data_) s += v;
    return s;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int r = 0; r < rows_; ++r)
      for (int c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  bool is_non_negative() const {
    for (int v : data_)
      if (v < 0) return false;
    return true;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t index(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

// Dense (a, b, h) tensor used for per-plane link counts.
class IntTensor3 {
 public:
  IntTensor3() = default;
  IntTensor3(int dim0, int dim1, int dim2, int fill = 0)
      : dim0_(dim0),
        dim1_(dim1),
        dim2_(dim2),
        data_(static_cast<std::size_t>(dim0) * dim1 * dim2, fill) {}

  int dim0() const { return dim0_; }
  int dim1() const { return dim1_; }
  int dim2() const { return dim2_; }

  int& operator()(int a, int b, int h) { return data_[index(a, b, h)]; }
  int operator()(int a, int b, int h) const { return data_[index(a, b, h)]; }

  friend bool operator==(const IntTensor3&, const IntTensor3&) = default;

 private:
  std::size_t index(int a, int b, int h) const {
    assert(a >= 0 && a < dim0_ && b >= 0 && b < dim1_ && h >= 0 && h < dim2_);
    return (static_cast<std::size_t>(a) * dim1_ + b) * dim2_ + h;
  }

  int dim0_ = 0;
  int dim1_ = 0;
  int dim2_ = 0;
  std::vector<int> data_;
};

}  // namespace ocsw
