#pragma once

#include <filesystem>
#include <string>

#include "dataudit/dataset.hpp"

namespace dataudit {

enum class DatasetFormat { raw_binary, image_directory };

DatasetFormat parse_dataset_format(const std::string& s);
std::string to_string(DatasetFormat f);

// raw-binary: CIFAR-style record files (1 label byte + C*H*W pixel bytes,
// channel-planar) in a directory. With a manifest.json the geometry and
// per-file checksums come from it; without one the standard CIFAR-10 batch
// layout (10 classes, 3x32x32) is assumed.
//
// image-directory: one PPM (P6) or PGM (P5) file per sample plus a
// manifest.json listing {path, label, sha256} per sample and the geometry.
LabeledDataset load_dataset(const std::filesystem::path& path, DatasetFormat format);

// Pixels are quantized to 8 bits on disk; a save/load round trip is exact to
// 1/255 per pixel and exact for data that started as 8-bit.
void save_dataset(const LabeledDataset& dataset, const std::filesystem::path& dir,
                  DatasetFormat format);

void save_split_manifest(const SplitManifest& manifest, const std::filesystem::path& file);
SplitManifest load_split_manifest(const std::filesystem::path& file);

}  // namespace dataudit
