#include "dataudit/network.hpp"

#include <algorithm>
#include <cstring>

namespace dataudit {

Architecture parse_architecture(const std::string& s) {
  if (s == "tiny-cnn") return Architecture::tiny_cnn;
  if (s == "reduced-resnet") return Architecture::reduced_resnet;
  if (s == "reduced-vgg") return Architecture::reduced_vgg;
  if (s == "reduced-mobilenet") return Architecture::reduced_mobilenet;
  throw ConfigError("unknown architecture '" + s +
                    "' (tiny-cnn | reduced-resnet | reduced-vgg | reduced-mobilenet)");
}

std::string to_string(Architecture a) {
  switch (a) {
    case Architecture::tiny_cnn: return "tiny-cnn";
    case Architecture::reduced_resnet: return "reduced-resnet";
    case Architecture::reduced_vgg: return "reduced-vgg";
    case Architecture::reduced_mobilenet: return "reduced-mobilenet";
  }
  return "?";
}

void ClassifierSpec::validate() const {
  if (class_count < 2) throw ConfigError("classifier: class_count must be >= 2");
  if (input_shape.c <= 0 || input_shape.h <= 0 || input_shape.w <= 0)
    throw ConfigError("classifier: invalid input shape");
  if (input_shape.h % 8 != 0 || input_shape.w % 8 != 0)
    throw ConfigError("classifier: input height/width must be multiples of 8 (three 2x2 pools)");
}

namespace {
constexpr int kPenultimateDim = 64;
}

Network Network::build(const ClassifierSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  Network net;
  net.set_meta(spec.class_count, spec.input_shape);
  const int c = spec.input_shape.c;
  const int ph = spec.input_shape.h / 8, pw = spec.input_shape.w / 8;

  auto conv = [&](int ic, int oc, int k, int pad, int groups) {
    net.add_feature_layer(std::make_unique<Conv2d>(ic, oc, k, pad, groups, rng));
  };
  auto relu = [&] { net.add_feature_layer(std::make_unique<ReLU>()); };
  auto pool = [&] { net.add_feature_layer(std::make_unique<MaxPool2>()); };

  switch (spec.architecture) {
    case Architecture::tiny_cnn:
      // 3 conv blocks + 64-unit penultimate
      conv(c, 16, 3, 1, 1); relu(); pool();
      conv(16, 32, 3, 1, 1); relu(); pool();
      conv(32, 32, 3, 1, 1); relu(); pool();
      net.add_feature_layer(std::make_unique<Dense>(32 * ph * pw, kPenultimateDim, rng));
      relu();
      break;
    case Architecture::reduced_vgg:
      conv(c, 16, 3, 1, 1); relu(); conv(16, 16, 3, 1, 1); relu(); pool();
      conv(16, 32, 3, 1, 1); relu(); conv(32, 32, 3, 1, 1); relu(); pool();
      conv(32, 48, 3, 1, 1); relu(); conv(48, 48, 3, 1, 1); relu(); pool();
      net.add_feature_layer(std::make_unique<Dense>(48 * ph * pw, kPenultimateDim, rng));
      relu();
      break;
    case Architecture::reduced_resnet:
      conv(c, 16, 3, 1, 1); relu();
      net.add_feature_layer(std::make_unique<ResidualBlock>(16, rng)); pool();
      conv(16, 32, 3, 1, 1); relu();
      net.add_feature_layer(std::make_unique<ResidualBlock>(32, rng)); pool();
      conv(32, 48, 3, 1, 1); relu();
      net.add_feature_layer(std::make_unique<ResidualBlock>(48, rng)); pool();
      net.add_feature_layer(std::make_unique<Dense>(48 * ph * pw, kPenultimateDim, rng));
      relu();
      break;
    case Architecture::reduced_mobilenet:
      conv(c, 16, 3, 1, 1); relu();
      conv(16, 16, 3, 1, 16); relu(); conv(16, 32, 1, 0, 1); relu(); pool();
      conv(32, 32, 3, 1, 32); relu(); conv(32, 48, 1, 0, 1); relu(); pool();
      conv(48, 48, 3, 1, 48); relu(); conv(48, 64, 1, 0, 1); relu(); pool();
      net.add_feature_layer(std::make_unique<Dense>(64 * ph * pw, kPenultimateDim, rng));
      relu();
      break;
  }
  net.set_head(std::make_unique<Dense>(kPenultimateDim, spec.class_count, rng));
  return net;
}

void Network::add_feature_layer(std::unique_ptr<Layer> layer) {
  features_.push_back(std::move(layer));
}

void Network::set_head(std::unique_ptr<Dense> head) { head_ = std::move(head); }

void Network::set_meta(int class_count, const Shape3& input_shape) {
  class_count_ = class_count;
  input_shape_ = input_shape;
}

void Network::check_input(const Batch& in) const {
  if (Shape3{in.c, in.h, in.w} != input_shape_)
    throw ValidationError("input shape " + std::to_string(in.c) + "x" + std::to_string(in.h) +
                          "x" + std::to_string(in.w) + " does not match model input " +
                          std::to_string(input_shape_.c) + "x" + std::to_string(input_shape_.h) +
                          "x" + std::to_string(input_shape_.w));
}

int Network::feature_dim() const {
  if (features_.empty()) throw ConfigError("architecture has no penultimate layer designation");
  Shape3 s = input_shape_;
  for (const auto& l : features_) s = l->output_shape(s);
  return int(s.count());
}

void Network::infer_features(const Batch& in, Batch& features) const {
  check_input(in);
  if (features_.empty()) throw ConfigError("architecture has no penultimate layer designation");
  Batch cur = in;
  Batch next;
  for (const auto& l : features_) {
    l->infer(cur, next);
    cur = std::move(next);
  }
  features = std::move(cur);
}

void Network::infer_logits(const Batch& in, Batch& logits) const {
  Batch feats;
  infer_features(in, feats);
  head_->infer(feats, logits);
}

std::vector<int> Network::predict_labels(const Batch& in) const {
  Batch logits;
  infer_logits(in, logits);
  std::vector<int> out(in.n);
  for (int i = 0; i < in.n; ++i) {
    const double* row = logits.row(i);
    out[i] = int(std::max_element(row, row + class_count_) - row);
  }
  return out;
}

std::vector<double> Network::scores(const Tensor& pixels) const {
  Batch in(1, pixels.c, pixels.h, pixels.w);
  std::copy(pixels.data.begin(), pixels.data.end(), in.data.begin());
  Batch logits;
  infer_logits(in, logits);
  return {logits.data.begin(), logits.data.end()};
}

void Network::forward(const Batch& in, Batch& logits) {
  check_input(in);
  acts_.resize(features_.size() + 1);
  acts_[0] = in;
  for (std::size_t i = 0; i < features_.size(); ++i) features_[i]->forward(acts_[i], acts_[i + 1]);
  feature_out_ = acts_.back();
  head_->forward(feature_out_, logits);
}

void Network::backward(const Batch& glogits, Batch* input_grad, bool need_param_grad) {
  Batch g;
  head_->backward(glogits, g, true, need_param_grad);
  for (std::size_t i = features_.size(); i-- > 0;) {
    const bool need_in = input_grad != nullptr || i > 0;
    Batch gin;
    features_[i]->backward(g, gin, need_in, need_param_grad);
    g = std::move(gin);
  }
  if (input_grad != nullptr) *input_grad = std::move(g);
}

std::vector<ParamRef> Network::params() {
  std::vector<ParamRef> out;
  for (auto& l : features_) l->collect_params(out);
  if (head_) head_->collect_params(out);
  return out;
}

std::size_t Network::param_count() const {
  std::size_t total = 0;
  for (const ParamRef& p : const_cast<Network*>(this)->params()) total += p.len;
  return total;
}

std::vector<double> Network::serialize_params() const {
  std::vector<double> flat;
  for (const ParamRef& p : const_cast<Network*>(this)->params())
    flat.insert(flat.end(), p.value, p.value + p.len);
  return flat;
}

void Network::deserialize_params(const std::vector<double>& flat) {
  std::size_t off = 0;
  for (ParamRef& p : params()) {
    if (off + p.len > flat.size()) throw LoadError("checkpoint parameter blob too short");
    std::memcpy(p.value, flat.data() + off, p.len * sizeof(double));
    off += p.len;
  }
  if (off != flat.size())
    throw LoadError("checkpoint parameter blob size mismatch: expected " + std::to_string(off) +
                    " doubles, got " + std::to_string(flat.size()));
}

Batch make_batch(const LabeledDataset& data, const std::vector<std::size_t>& indices) {
  const Shape3 s = data.sample_shape();
  Batch b(int(indices.size()), s.c, s.h, s.w);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const Tensor& px = data.samples[indices[i]].pixels;
    std::copy(px.data.begin(), px.data.end(), b.row(int(i)));
  }
  return b;
}

Batch make_batch(const ImageSample& sample) {
  Batch b(1, sample.pixels.c, sample.pixels.h, sample.pixels.w);
  std::copy(sample.pixels.data.begin(), sample.pixels.data.end(), b.data.begin());
  return b;
}

}  // namespace dataudit
