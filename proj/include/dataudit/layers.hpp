#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dataudit/kernels.hpp"
#include "dataudit/rng.hpp"
#include "dataudit/tensor.hpp"

namespace dataudit {

struct ParamRef {
  double* value;
  double* grad;
  std::size_t len;
};

// Layers expose two forward paths: infer() is const and thread-safe for
// shared models; forward() records what backward() needs and is exclusive
// to one trainer/optimizer at a time.
class Layer {
public:
  virtual ~Layer() = default;

  virtual Shape3 output_shape(const Shape3& in) const = 0;
  virtual void infer(const Batch& in, Batch& out) const = 0;
  virtual void forward(const Batch& in, Batch& out) = 0;
  virtual void backward(const Batch& gout, Batch& gin, bool need_input_grad,
                        bool need_param_grad) = 0;
  virtual void collect_params(std::vector<ParamRef>& out) {}
};

class Conv2d final : public Layer {
public:
  Conv2d(int in_c, int out_c, int ksize, int pad, int groups, Rng& init_rng);

  Shape3 output_shape(const Shape3& in) const override;
  void infer(const Batch& in, Batch& out) const override;
  void forward(const Batch& in, Batch& out) override;
  void backward(const Batch& gout, Batch& gin, bool need_input_grad,
                bool need_param_grad) override;
  void collect_params(std::vector<ParamRef>& out) override;

  int in_channels() const { return in_c_; }
  int out_channels() const { return out_c_; }

private:
  kernels::Conv2dDims dims(const Batch& in) const;

  int in_c_, out_c_, ksize_, pad_, groups_;
  std::vector<double> weight_, bias_;
  std::vector<double> gweight_, gbias_;
  Batch saved_input_;
};

class ReLU final : public Layer {
public:
  Shape3 output_shape(const Shape3& in) const override { return in; }
  void infer(const Batch& in, Batch& out) const override;
  void forward(const Batch& in, Batch& out) override;
  void backward(const Batch& gout, Batch& gin, bool need_input_grad,
                bool need_param_grad) override;

private:
  Batch saved_input_;
};

class MaxPool2 final : public Layer {
public:
  Shape3 output_shape(const Shape3& in) const override;
  void infer(const Batch& in, Batch& out) const override;
  void forward(const Batch& in, Batch& out) override;
  void backward(const Batch& gout, Batch& gin, bool need_input_grad,
                bool need_param_grad) override;

private:
  std::vector<std::int32_t> argmax_;
  int in_h_ = 0, in_w_ = 0, in_c_ = 0, n_ = 0;
};

// Fully connected over the flattened sample; any (c, h, w) input collapses
// to a vector of c*h*w features.
class Dense final : public Layer {
public:
  Dense(int in_dim, int out_dim, Rng& init_rng);

  Shape3 output_shape(const Shape3& in) const override;
  void infer(const Batch& in, Batch& out) const override;
  void forward(const Batch& in, Batch& out) override;
  void backward(const Batch& gout, Batch& gin, bool need_input_grad,
                bool need_param_grad) override;
  void collect_params(std::vector<ParamRef>& out) override;

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }

private:
  int in_dim_, out_dim_;
  std::vector<double> weight_, bias_;
  std::vector<double> gweight_, gbias_;
  Batch saved_input_;
};

// y = relu(conv2(relu(conv1(x))) + x); channel count is preserved.
class ResidualBlock final : public Layer {
public:
  ResidualBlock(int channels, Rng& init_rng);

  Shape3 output_shape(const Shape3& in) const override { return in; }
  void infer(const Batch& in, Batch& out) const override;
  void forward(const Batch& in, Batch& out) override;
  void backward(const Batch& gout, Batch& gin, bool need_input_grad,
                bool need_param_grad) override;
  void collect_params(std::vector<ParamRef>& out) override;

private:
  Conv2d conv1_, conv2_;
  ReLU relu1_;
  Batch saved_sum_;  // pre-activation of the output relu
  Batch mid1_, mid2_, mid3_;
};

}  // namespace dataudit
