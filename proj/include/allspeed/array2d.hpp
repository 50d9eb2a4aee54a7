#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <vector>

namespace allspeed {

/**
 * @brief Dense 2D array over a Cartesian index box with a ghost halo.
 *
 * Interior indices are (i, j) in [0, nx) x [0, ny); the halo extends the
 * valid range to [-ghost, nx + ghost) x [-ghost, ny + ghost). Storage is
 * row-major with i running fastest.
 */
template <class T>
class Array2D {
 public:
  Array2D() = default;
  Array2D(int nx, int ny, int ghost, const T& init = T{})
      : nx_(nx), ny_(ny), ghost_(ghost), stride_(nx + 2 * ghost),
        data_(static_cast<std::size_t>(nx + 2 * ghost) * (ny + 2 * ghost), init) {}

  T& operator()(int i, int j) {
    assert(contains(i, j));
    return data_[offset(i, j)];
  }
  const T& operator()(int i, int j) const {
    assert(contains(i, j));
    return data_[offset(i, j)];
  }

  [[nodiscard]] bool contains(int i, int j) const {
    return i >= -ghost_ && i < nx_ + ghost_ && j >= -ghost_ && j < ny_ + ghost_;
  }

  [[nodiscard]] int nx() const { return nx_; }
  [[nodiscard]] int ny() const { return ny_; }
  [[nodiscard]] int ghost() const { return ghost_; }

  void fill(const T& value) { std::fill(data_.begin(), data_.end(), value); }

  [[nodiscard]] std::vector<T>& raw() { return data_; }
  [[nodiscard]] const std::vector<T>& raw() const { return data_; }

  friend bool operator==(const Array2D&, const Array2D&) = default;

 private:
  [[nodiscard]] std::size_t offset(int i, int j) const {
    return static_cast<std::size_t>(j + ghost_) * stride_ + static_cast<std::size_t>(i + ghost_);
  }

  int nx_ = 0;
  int ny_ = 0;
  int ghost_ = 0;
  int stride_ = 0;
  std::vector<T> data_;
};

/// Calls fn(i, j) over the interior box [0, nx) x [0, ny).
template <class T, class Fn>
void for_each_interior(const Array2D<T>& a, Fn&& fn) {
  for (int j = 0; j < a.ny(); ++j)
    for (int i = 0; i < a.nx(); ++i) fn(i, j);
}

}  // namespace allspeed
