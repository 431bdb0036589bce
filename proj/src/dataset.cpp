#include "dataudit/dataset.hpp"

#include <algorithm>

#include "dataudit/rng.hpp"
#include "dataudit/sha256.hpp"

namespace dataudit {

void LabeledDataset::validate() const {
  if (class_count <= 0) throw ValidationError("dataset '" + name + "': class_count must be positive");
  if (samples.empty()) return;
  const Shape3 shape = samples.front().shape();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const ImageSample& s = samples[i];
    if (s.shape() != shape)
      throw ValidationError("dataset '" + name + "': sample " + std::to_string(i) +
                            " has mismatched shape");
    if (s.label < 0 || s.label >= class_count)
      throw ValidationError("dataset '" + name + "': sample " + std::to_string(i) +
                            " has label " + std::to_string(s.label) + " outside [0, " +
                            std::to_string(class_count) + ")");
    for (double v : s.pixels.data) {
      if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError("dataset '" + name + "': sample " + std::to_string(i) +
                              " has pixel outside [0, 1]");
    }
  }
}

SplitResult split_dataset(const LabeledDataset& dataset, std::uint64_t seed) {
  if (dataset.size() < 2) throw ValidationError("split_dataset: need at least 2 samples");

  std::vector<std::vector<std::size_t>> per_class(dataset.class_count);
  for (std::size_t i = 0; i < dataset.size(); ++i) per_class[dataset.samples[i].label].push_back(i);

  for (int c = 0; c < dataset.class_count; ++c) {
    if (!per_class[c].empty() && per_class[c].size() < 2)
      throw ValidationError("split_dataset: class " + std::to_string(c) +
                            " has fewer than 2 samples; stratified split impossible");
  }

  Rng rng(seed);
  std::vector<std::size_t> shadow_idx, clean_idx;
  // Per-class halving guarantees both halves see every class, including the
  // source class needed for trigger generation. Odd-count classes alternate
  // which side gets the extra sample so overall sizes stay within +-1.
  std::size_t odd_seen = 0;
  for (int c = 0; c < dataset.class_count; ++c) {
    auto& idx = per_class[c];
    Rng class_rng = rng.fork(static_cast<std::uint64_t>(c));
    class_rng.shuffle(idx);
    std::size_t shadow_take = idx.size() / 2;
    if (idx.size() % 2 != 0 && odd_seen++ % 2 == 0) ++shadow_take;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      (i < shadow_take ? shadow_idx : clean_idx).push_back(idx[i]);
    }
  }
  std::sort(shadow_idx.begin(), shadow_idx.end());
  std::sort(clean_idx.begin(), clean_idx.end());

  SplitResult out;
  out.manifest.seed = seed;
  out.manifest.index_lists["shadow"] = shadow_idx;
  out.manifest.index_lists["clean"] = clean_idx;
  out.manifest.partition_sizes["shadow"] = shadow_idx.size();
  out.manifest.partition_sizes["clean"] = clean_idx.size();
  out.shadow = take_split(dataset, out.manifest, "shadow");
  out.clean = take_split(dataset, out.manifest, "clean");
  return out;
}

LabeledDataset take_split(const LabeledDataset& dataset, const SplitManifest& manifest,
                          const std::string& part) {
  auto it = manifest.index_lists.find(part);
  if (it == manifest.index_lists.end())
    throw ValidationError("take_split: manifest has no part '" + part + "'");
  LabeledDataset out;
  out.name = dataset.name.empty() ? part : dataset.name + "/" + part;
  out.class_count = dataset.class_count;
  out.samples.reserve(it->second.size());
  for (std::size_t idx : it->second) {
    if (idx >= dataset.size())
      throw ValidationError("take_split: manifest index " + std::to_string(idx) +
                            " out of range for dataset of size " + std::to_string(dataset.size()));
    out.samples.push_back(dataset.samples[idx]);
  }
  return out;
}

LabeledDataset filter_by_class(const LabeledDataset& dataset, int class_index) {
  if (class_index < 0 || class_index >= dataset.class_count)
    throw ValidationError("filter_by_class: class " + std::to_string(class_index) +
                          " outside [0, " + std::to_string(dataset.class_count) + ")");
  LabeledDataset out;
  out.name = dataset.name + "/class" + std::to_string(class_index);
  out.class_count = dataset.class_count;
  for (const ImageSample& s : dataset.samples) {
    if (s.label == class_index) out.samples.push_back(s);
  }
  return out;
}

std::string dataset_sha256(const LabeledDataset& dataset) {
  Sha256 h;
  const std::int32_t k = dataset.class_count;
  h.update(&k, sizeof(k));
  const Shape3 shape = dataset.sample_shape();
  const std::int32_t dims[3] = {shape.c, shape.h, shape.w};
  h.update(dims, sizeof(dims));
  for (const ImageSample& s : dataset.samples) {
    const std::int32_t label = s.label;
    h.update(&label, sizeof(label));
    h.update(s.pixels.data.data(), s.pixels.data.size() * sizeof(double));
  }
  return h.hex_digest();
}

std::vector<std::size_t> class_histogram(const LabeledDataset& dataset) {
  std::vector<std::size_t> hist(dataset.class_count, 0);
  for (const ImageSample& s : dataset.samples) hist[s.label]++;
  return hist;
}

}  // namespace dataudit
