#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dataudit/errors.hpp"
#include "dataudit/tensor.hpp"

namespace dataudit {

// One image plus its true class label. Pixels are unit-interval reals in
// channel-first order; all epsilon arithmetic happens in [0, 1].
struct ImageSample {
  Tensor pixels;
  int label = 0;

  Shape3 shape() const { return {pixels.c, pixels.h, pixels.w}; }
};

struct LabeledDataset {
  std::string name;
  int class_count = 0;
  std::vector<ImageSample> samples;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  Shape3 sample_shape() const {
    return samples.empty() ? Shape3{} : samples.front().shape();
  }

  // Enforces the type invariants: uniform shape, labels in [0, k), pixels in [0, 1].
  void validate() const;
};

struct SplitManifest {
  std::uint64_t seed = 0;
  std::map<std::string, std::size_t> partition_sizes;
  std::map<std::string, std::vector<std::size_t>> index_lists;
};

// Class-stratified halving into disjoint shadow/clean parts of equal size
// (+-1 per class when a class has an odd count). Pure in (dataset content, seed).
struct SplitResult {
  LabeledDataset shadow;
  LabeledDataset clean;
  SplitManifest manifest;
};
SplitResult split_dataset(const LabeledDataset& dataset, std::uint64_t seed);

// Applies an existing manifest split to a dataset (by index list name).
LabeledDataset take_split(const LabeledDataset& dataset, const SplitManifest& manifest,
                          const std::string& part);

LabeledDataset filter_by_class(const LabeledDataset& dataset, int class_index);

// Content fingerprint: class count, shape, then per sample the label and the
// raw little-endian pixel doubles.
std::string dataset_sha256(const LabeledDataset& dataset);

std::vector<std::size_t> class_histogram(const LabeledDataset& dataset);

}  // namespace dataudit
