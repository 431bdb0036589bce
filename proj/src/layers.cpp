#include "dataudit/layers.hpp"

#include <cmath>

#include "dataudit/errors.hpp"

namespace dataudit {

namespace {
void check_even(int h, int w) {
  if (h % 2 != 0 || w % 2 != 0)
    throw ConfigError("maxpool2 requires even spatial dims, got " + std::to_string(h) + "x" +
                      std::to_string(w));
}
}  // namespace

// ---------------------------------------------------------------------------
// Conv2d
// ---------------------------------------------------------------------------

Conv2d::Conv2d(int in_c, int out_c, int ksize, int pad, int groups, Rng& init_rng)
    : in_c_(in_c), out_c_(out_c), ksize_(ksize), pad_(pad), groups_(groups) {
  if (in_c % groups != 0 || out_c % groups != 0)
    throw ConfigError("conv2d: groups must divide both channel counts");
  const std::size_t w_len = std::size_t(out_c) * (in_c / groups) * ksize * ksize;
  weight_.resize(w_len);
  bias_.assign(out_c, 0.0);
  gweight_.assign(w_len, 0.0);
  gbias_.assign(out_c, 0.0);
  const double stddev = std::sqrt(2.0 / (double(in_c / groups) * ksize * ksize));
  for (double& v : weight_) v = stddev * init_rng.normal();
}

kernels::Conv2dDims Conv2d::dims(const Batch& in) const {
  kernels::Conv2dDims d;
  d.n = in.n;
  d.in_c = in.c;
  d.in_h = in.h;
  d.in_w = in.w;
  d.out_c = out_c_;
  d.ksize = ksize_;
  d.pad = pad_;
  d.groups = groups_;
  return d;
}

Shape3 Conv2d::output_shape(const Shape3& in) const {
  if (in.c != in_c_)
    throw ConfigError("conv2d: expected " + std::to_string(in_c_) + " input channels, got " +
                      std::to_string(in.c));
  return {out_c_, in.h + 2 * pad_ - ksize_ + 1, in.w + 2 * pad_ - ksize_ + 1};
}

void Conv2d::infer(const Batch& in, Batch& out) const {
  const Shape3 os = output_shape({in.c, in.h, in.w});
  out = Batch(in.n, os.c, os.h, os.w);
  kernels::conv2d_forward(in.data.data(), weight_.data(), bias_.data(), out.data.data(), dims(in));
}

void Conv2d::forward(const Batch& in, Batch& out) {
  saved_input_ = in;
  infer(in, out);
}

void Conv2d::backward(const Batch& gout, Batch& gin, bool need_input_grad, bool need_param_grad) {
  const kernels::Conv2dDims d = dims(saved_input_);
  if (need_param_grad) {
    kernels::conv2d_backward_params(gout.data.data(), saved_input_.data.data(), gweight_.data(),
                                    gbias_.data(), d);
  }
  if (need_input_grad) {
    gin = Batch(saved_input_.n, saved_input_.c, saved_input_.h, saved_input_.w);
    kernels::conv2d_backward_input(gout.data.data(), weight_.data(), gin.data.data(), d);
  }
}

void Conv2d::collect_params(std::vector<ParamRef>& out) {
  out.push_back({weight_.data(), gweight_.data(), weight_.size()});
  out.push_back({bias_.data(), gbias_.data(), bias_.size()});
}

// ---------------------------------------------------------------------------
// ReLU
// ---------------------------------------------------------------------------

void ReLU::infer(const Batch& in, Batch& out) const {
  out = Batch(in.n, in.c, in.h, in.w);
  kernels::relu_forward(in.data.data(), out.data.data(), in.data.size());
}

void ReLU::forward(const Batch& in, Batch& out) {
  saved_input_ = in;
  infer(in, out);
}

void ReLU::backward(const Batch& gout, Batch& gin, bool need_input_grad, bool) {
  if (!need_input_grad) return;
  gin = Batch(saved_input_.n, saved_input_.c, saved_input_.h, saved_input_.w);
  kernels::relu_backward(saved_input_.data.data(), gout.data.data(), gin.data.data(),
                         gin.data.size());
}

// ---------------------------------------------------------------------------
// MaxPool2
// ---------------------------------------------------------------------------

Shape3 MaxPool2::output_shape(const Shape3& in) const {
  check_even(in.h, in.w);
  return {in.c, in.h / 2, in.w / 2};
}

void MaxPool2::infer(const Batch& in, Batch& out) const {
  check_even(in.h, in.w);
  out = Batch(in.n, in.c, in.h / 2, in.w / 2);
  std::vector<std::int32_t> scratch(out.data.size());
  kernels::maxpool2_forward(in.data.data(), out.data.data(), scratch.data(), in.n, in.c, in.h,
                            in.w);
}

void MaxPool2::forward(const Batch& in, Batch& out) {
  check_even(in.h, in.w);
  out = Batch(in.n, in.c, in.h / 2, in.w / 2);
  argmax_.resize(out.data.size());
  kernels::maxpool2_forward(in.data.data(), out.data.data(), argmax_.data(), in.n, in.c, in.h,
                            in.w);
  n_ = in.n;
  in_c_ = in.c;
  in_h_ = in.h;
  in_w_ = in.w;
}

void MaxPool2::backward(const Batch& gout, Batch& gin, bool need_input_grad, bool) {
  if (!need_input_grad) return;
  gin = Batch(n_, in_c_, in_h_, in_w_);
  kernels::maxpool2_backward(gout.data.data(), argmax_.data(), gin.data.data(), n_, in_c_, in_h_,
                             in_w_);
}

// ---------------------------------------------------------------------------
// Dense
// ---------------------------------------------------------------------------

Dense::Dense(int in_dim, int out_dim, Rng& init_rng) : in_dim_(in_dim), out_dim_(out_dim) {
  weight_.resize(std::size_t(out_dim) * in_dim);
  bias_.assign(out_dim, 0.0);
  gweight_.assign(weight_.size(), 0.0);
  gbias_.assign(out_dim, 0.0);
  const double stddev = std::sqrt(2.0 / double(in_dim));
  for (double& v : weight_) v = stddev * init_rng.normal();
}

Shape3 Dense::output_shape(const Shape3& in) const {
  if (int(in.count()) != in_dim_)
    throw ConfigError("dense: expected " + std::to_string(in_dim_) + " inputs, got " +
                      std::to_string(in.count()));
  return {out_dim_, 1, 1};
}

void Dense::infer(const Batch& in, Batch& out) const {
  out = Batch(in.n, out_dim_, 1, 1);
  kernels::dense_forward(in.data.data(), weight_.data(), bias_.data(), out.data.data(), in.n,
                         in_dim_, out_dim_);
}

void Dense::forward(const Batch& in, Batch& out) {
  saved_input_ = in;
  infer(in, out);
}

void Dense::backward(const Batch& gout, Batch& gin, bool need_input_grad, bool need_param_grad) {
  if (need_param_grad) {
    kernels::dense_backward_params(gout.data.data(), saved_input_.data.data(), gweight_.data(),
                                   gbias_.data(), saved_input_.n, in_dim_, out_dim_);
  }
  if (need_input_grad) {
    gin = Batch(saved_input_.n, saved_input_.c, saved_input_.h, saved_input_.w);
    kernels::dense_backward_input(gout.data.data(), weight_.data(), gin.data.data(),
                                  saved_input_.n, in_dim_, out_dim_);
  }
}

void Dense::collect_params(std::vector<ParamRef>& out) {
  out.push_back({weight_.data(), gweight_.data(), weight_.size()});
  out.push_back({bias_.data(), gbias_.data(), bias_.size()});
}

// ---------------------------------------------------------------------------
// ResidualBlock
// ---------------------------------------------------------------------------

ResidualBlock::ResidualBlock(int channels, Rng& init_rng)
    : conv1_(channels, channels, 3, 1, 1, init_rng), conv2_(channels, channels, 3, 1, 1, init_rng) {}

void ResidualBlock::infer(const Batch& in, Batch& out) const {
  Batch a, b, c;
  conv1_.infer(in, a);
  relu1_.infer(a, b);
  conv2_.infer(b, c);
  out = Batch(in.n, in.c, in.h, in.w);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const double s = c.data[i] + in.data[i];
    out.data[i] = s > 0.0 ? s : 0.0;
  }
}

void ResidualBlock::forward(const Batch& in, Batch& out) {
  conv1_.forward(in, mid1_);
  relu1_.forward(mid1_, mid2_);
  conv2_.forward(mid2_, mid3_);
  saved_sum_ = Batch(in.n, in.c, in.h, in.w);
  for (std::size_t i = 0; i < saved_sum_.data.size(); ++i)
    saved_sum_.data[i] = mid3_.data[i] + in.data[i];
  out = Batch(in.n, in.c, in.h, in.w);
  kernels::relu_forward(saved_sum_.data.data(), out.data.data(), out.data.size());
}

void ResidualBlock::backward(const Batch& gout, Batch& gin, bool need_input_grad,
                             bool need_param_grad) {
  Batch gsum(saved_sum_.n, saved_sum_.c, saved_sum_.h, saved_sum_.w);
  kernels::relu_backward(saved_sum_.data.data(), gout.data.data(), gsum.data.data(),
                         gsum.data.size());
  Batch g2, g1, g0;
  conv2_.backward(gsum, g2, true, need_param_grad);
  relu1_.backward(g2, g1, true, need_param_grad);
  conv1_.backward(g1, g0, need_input_grad, need_param_grad);
  if (need_input_grad) {
    gin = std::move(g0);
    for (std::size_t i = 0; i < gin.data.size(); ++i) gin.data[i] += gsum.data[i];
  }
}

void ResidualBlock::collect_params(std::vector<ParamRef>& out) {
  conv1_.collect_params(out);
  conv2_.collect_params(out);
}

}  // namespace dataudit
