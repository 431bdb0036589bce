#pragma once

#include <cstddef>
#include <vector>

#include "dataudit/errors.hpp"

namespace dataudit {

// Channel-first (C x H x W) real tensor. The single layout used at every
// module boundary.
struct Tensor {
  int c = 0;
  int h = 0;
  int w = 0;
  std::vector<double> data;

  Tensor() = default;
  Tensor(int c_, int h_, int w_) : c(c_), h(h_), w(w_), data(std::size_t(c_) * h_ * w_, 0.0) {}

  std::size_t size() const { return data.size(); }
  bool same_shape(const Tensor& o) const { return c == o.c && h == o.h && w == o.w; }

  double& at(int ci, int hi, int wi) { return data[(std::size_t(ci) * h + hi) * w + wi]; }
  double at(int ci, int hi, int wi) const { return data[(std::size_t(ci) * h + hi) * w + wi]; }
};

// Mini-batch of flattened samples: n rows of c*h*w values.
struct Batch {
  int n = 0;
  int c = 0;
  int h = 0;
  int w = 0;
  std::vector<double> data;

  Batch() = default;
  Batch(int n_, int c_, int h_, int w_)
      : n(n_), c(c_), h(h_), w(w_), data(std::size_t(n_) * c_ * h_ * w_, 0.0) {}

  std::size_t sample_size() const { return std::size_t(c) * h * w; }
  double* row(int i) { return data.data() + std::size_t(i) * sample_size(); }
  const double* row(int i) const { return data.data() + std::size_t(i) * sample_size(); }
};

struct Shape3 {
  int c = 0;
  int h = 0;
  int w = 0;
  bool operator==(const Shape3&) const = default;
  std::size_t count() const { return std::size_t(c) * h * w; }
};

}  // namespace dataudit
