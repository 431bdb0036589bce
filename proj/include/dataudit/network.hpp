#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dataudit/dataset.hpp"
#include "dataudit/layers.hpp"

namespace dataudit {

enum class Architecture { tiny_cnn, reduced_resnet, reduced_vgg, reduced_mobilenet };

Architecture parse_architecture(const std::string& s);
std::string to_string(Architecture a);

struct ClassifierSpec {
  Architecture architecture = Architecture::tiny_cnn;
  int class_count = 0;
  Shape3 input_shape;
  std::uint64_t seed = 0;

  void validate() const;
};

// A feed-forward classifier: a feature stack ending in the designated
// penultimate activation, plus a linear head producing class scores.
class Network {
public:
  Network() = default;
  static Network build(const ClassifierSpec& spec);

  // Thread-safe inference paths (no internal state is touched).
  void infer_logits(const Batch& in, Batch& logits) const;
  void infer_features(const Batch& in, Batch& features) const;
  std::vector<int> predict_labels(const Batch& in) const;
  std::vector<double> scores(const Tensor& pixels) const;

  // Training-mode forward/backward; exclusive to one caller.
  void forward(const Batch& in, Batch& logits);
  // glogits flows back through head and features. Returns input gradients
  // when requested.
  void backward(const Batch& glogits, Batch* input_grad, bool need_param_grad);

  std::vector<ParamRef> params();
  std::size_t param_count() const;
  // Flat parameter vector in canonical layer order (checkpoint layout).
  std::vector<double> serialize_params() const;
  void deserialize_params(const std::vector<double>& flat);

  int feature_dim() const;
  int class_count() const { return class_count_; }
  const Shape3& input_shape() const { return input_shape_; }

  void add_feature_layer(std::unique_ptr<Layer> layer);
  void set_head(std::unique_ptr<Dense> head);
  void set_meta(int class_count, const Shape3& input_shape);

private:
  void check_input(const Batch& in) const;

  std::vector<std::unique_ptr<Layer>> features_;
  std::unique_ptr<Dense> head_;
  int class_count_ = 0;
  Shape3 input_shape_;
  // training-mode activations
  std::vector<Batch> acts_;
  Batch feature_out_;
};

// Assembles a contiguous batch from dataset rows.
Batch make_batch(const LabeledDataset& data, const std::vector<std::size_t>& indices);
Batch make_batch(const ImageSample& sample);

}  // namespace dataudit
