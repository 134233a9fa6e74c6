#pragma once

#include <cstddef>
#include <vector>

namespace rbforge {

/// Dense row-major matrix. Dimensions here never exceed a few hundred
/// (n^3 x n^3 for the triple-tensor maps at n <= 8), so density wins.
template <class K>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols, const K& fill)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  K& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const K& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::vector<K>& flat() { return a_; }
  const std::vector<K>& flat() const { return a_; }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<K> a_;
};

/// Dense rank-3 tensor, index order (i, j, k), row-major.
template <class K>
class Tensor3 {
 public:
  Tensor3() : d0_(0), d1_(0), d2_(0) {}
  Tensor3(std::size_t d0, std::size_t d1, std::size_t d2, const K& fill)
      : d0_(d0), d1_(d1), d2_(d2), a_(d0 * d1 * d2, fill) {}

  std::size_t dim0() const { return d0_; }
  std::size_t dim1() const { return d1_; }
  std::size_t dim2() const { return d2_; }

  K& at(std::size_t i, std::size_t j, std::size_t k) {
    return a_[(i * d1_ + j) * d2_ + k];
  }
  const K& at(std::size_t i, std::size_t j, std::size_t k) const {
    return a_[(i * d1_ + j) * d2_ + k];
  }

  std::vector<K>& flat() { return a_; }
  const std::vector<K>& flat() const { return a_; }

  friend bool operator==(const Tensor3& x, const Tensor3& y) {
    return x.d0_ == y.d0_ && x.d1_ == y.d1_ && x.d2_ == y.d2_ && x.a_ == y.a_;
  }

 private:
  std::size_t d0_, d1_, d2_;
  std::vector<K> a_;
};

/// Odometer over tuples in [0, base)^len, in lexicographic order with the
/// leftmost position most significant. Used for basis-tuple loops and for
/// exhaustive enumeration of F_p coefficient vectors.
class Odometer {
 public:
  Odometer(std::size_t len, std::size_t base)
      : digits_(len, 0), base_(base), done_(len == 0 ? false : base == 0) {}

  bool done() const { return done_; }
  const std::vector<std::size_t>& digits() const { return digits_; }

  void advance() {
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (++digits_[i] < base_) return;
      digits_[i] = 0;
    }
    done_ = true;  // also terminates the single empty tuple when len == 0
  }

 private:
  std::vector<std::size_t> digits_;
  std::size_t base_;
  bool done_;
};

}  // namespace rbforge
