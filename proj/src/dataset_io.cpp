#include "dataudit/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dataudit/sha256.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace dataudit {

namespace {

constexpr const char* kManifestName = "manifest.json";

std::uint8_t quantize(double v) {
  const double scaled = std::round(std::clamp(v, 0.0, 1.0) * 255.0);
  return static_cast<std::uint8_t>(scaled);
}

std::vector<std::uint8_t> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw LoadError("cannot open " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& p, const void* data, std::size_t len) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw EnvironmentError("cannot write " + p.string());
  out.write(static_cast<const char*>(data), std::streamsize(len));
  if (!out) throw EnvironmentError("short write to " + p.string());
}

json load_json_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw LoadError("cannot open " + p.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw LoadError(p.string() + ": " + e.what());
  }
  return j;
}

void write_json_file(const fs::path& p, const json& j) {
  std::ofstream out(p, std::ios::trunc);
  if (!out) throw EnvironmentError("cannot write " + p.string());
  out << j.dump(2) << '\n';
}

// Decodes one CIFAR-style record file: records of (label byte, c*h*w pixel
// bytes in channel-planar order).
void append_records(const fs::path& file, int k, int c, int h, int w,
                    std::vector<ImageSample>& out) {
  const std::vector<std::uint8_t> bytes = read_file(file);
  const std::size_t record = 1 + std::size_t(c) * h * w;
  if (bytes.empty() || bytes.size() % record != 0)
    throw LoadError(file.string() + ": size " + std::to_string(bytes.size()) +
                    " is not a multiple of record size " + std::to_string(record));
  const std::size_t count = bytes.size() / record;
  for (std::size_t r = 0; r < count; ++r) {
    const std::uint8_t* p = bytes.data() + r * record;
    const int label = p[0];
    if (label >= k)
      throw LoadError(file.string() + ": record " + std::to_string(r) + " has unknown label " +
                      std::to_string(label) + " (k=" + std::to_string(k) + ")");
    ImageSample s;
    s.label = label;
    s.pixels = Tensor(c, h, w);
    for (std::size_t i = 0; i < std::size_t(c) * h * w; ++i) s.pixels.data[i] = p[1 + i] / 255.0;
    out.push_back(std::move(s));
  }
}

LabeledDataset load_raw_binary(const fs::path& dir) {
  LabeledDataset ds;
  ds.name = dir.filename().string();

  const fs::path manifest_path = dir / kManifestName;
  if (fs::exists(manifest_path)) {
    const json m = load_json_file(manifest_path);
    ds.class_count = m.at("k").get<int>();
    const int c = m.at("channels").get<int>();
    const int h = m.at("height").get<int>();
    const int w = m.at("width").get<int>();
    for (const json& f : m.at("files")) {
      const fs::path file = dir / f.at("path").get<std::string>();
      if (f.contains("sha256")) {
        const std::string actual = sha256_hex(read_file(file));
        if (actual != f.at("sha256").get<std::string>())
          throw LoadError(file.string() + ": checksum mismatch (expected " +
                          f.at("sha256").get<std::string>() + ", got " + actual + ")");
      }
      append_records(file, ds.class_count, c, h, w, ds.samples);
    }
    return ds;
  }

  // No manifest: assume the standard CIFAR-10 batch layout.
  std::vector<fs::path> bins;
  if (fs::exists(dir)) {
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.path().extension() == ".bin") bins.push_back(e.path());
    }
  }
  std::sort(bins.begin(), bins.end());
  if (bins.empty()) throw LoadError(dir.string() + ": no .bin files and no manifest.json");
  ds.class_count = 10;
  for (const fs::path& b : bins) append_records(b, 10, 3, 32, 32, ds.samples);
  return ds;
}

void save_raw_binary(const LabeledDataset& ds, const fs::path& dir) {
  fs::create_directories(dir);
  const Shape3 shape = ds.sample_shape();
  const std::size_t record = 1 + shape.count();
  std::vector<std::uint8_t> bytes;
  bytes.reserve(record * ds.size());
  for (const ImageSample& s : ds.samples) {
    bytes.push_back(static_cast<std::uint8_t>(s.label));
    for (double v : s.pixels.data) bytes.push_back(quantize(v));
  }
  const fs::path data_file = dir / "data.bin";
  write_file(data_file, bytes.data(), bytes.size());

  json m;
  m["k"] = ds.class_count;
  m["channels"] = shape.c;
  m["height"] = shape.h;
  m["width"] = shape.w;
  m["files"] = json::array({json{{"path", "data.bin"}, {"sha256", sha256_hex(bytes)}}});
  write_json_file(dir / kManifestName, m);
}

// Minimal PPM/PGM (P6/P5, maxval 255) codec.
void write_netpbm(const fs::path& p, const ImageSample& s) {
  const Shape3 sh = s.shape();
  if (sh.c != 1 && sh.c != 3)
    throw ValidationError("image-directory format supports 1 or 3 channels, got " +
                          std::to_string(sh.c));
  std::ostringstream head;
  head << (sh.c == 3 ? "P6" : "P5") << "\n" << sh.w << " " << sh.h << "\n255\n";
  std::string out = head.str();
  out.reserve(out.size() + sh.count());
  // Planar -> interleaved on the way out.
  for (int y = 0; y < sh.h; ++y) {
    for (int x = 0; x < sh.w; ++x) {
      for (int c = 0; c < sh.c; ++c) out.push_back(char(quantize(s.pixels.at(c, y, x))));
    }
  }
  write_file(p, out.data(), out.size());
}

ImageSample read_netpbm(const fs::path& p) {
  const std::vector<std::uint8_t> bytes = read_file(p);
  std::size_t pos = 0;
  auto next_token = [&]() -> std::string {
    while (pos < bytes.size()) {
      if (std::isspace(bytes[pos])) {
        ++pos;
      } else if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
    std::string tok;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) tok.push_back(char(bytes[pos++]));
    return tok;
  };
  const std::string magic = next_token();
  if (magic != "P6" && magic != "P5") throw LoadError(p.string() + ": not a P5/P6 netpbm file");
  const int channels = magic == "P6" ? 3 : 1;
  const int w = std::stoi(next_token());
  const int h = std::stoi(next_token());
  const int maxval = std::stoi(next_token());
  if (maxval != 255) throw LoadError(p.string() + ": only maxval 255 is supported");
  ++pos;  // single whitespace after maxval
  const std::size_t need = std::size_t(channels) * h * w;
  if (bytes.size() - pos < need)
    throw LoadError(p.string() + ": truncated pixel data (" +
                    std::to_string(bytes.size() - pos) + " of " + std::to_string(need) + " bytes)");
  ImageSample s;
  s.pixels = Tensor(channels, h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) {
        s.pixels.at(c, y, x) = bytes[pos + (std::size_t(y) * w + x) * channels + c] / 255.0;
      }
    }
  }
  return s;
}

LabeledDataset load_image_directory(const fs::path& dir) {
  const fs::path manifest_path = dir / kManifestName;
  if (!fs::exists(manifest_path)) {
    bool any = fs::exists(dir) && fs::directory_iterator(dir) != fs::directory_iterator();
    throw LoadError(dir.string() + (any ? ": missing manifest.json" : ": empty dataset directory"));
  }
  const json m = load_json_file(manifest_path);
  LabeledDataset ds;
  ds.name = dir.filename().string();
  ds.class_count = m.at("k").get<int>();
  const int c = m.at("channels").get<int>();
  const int h = m.at("height").get<int>();
  const int w = m.at("width").get<int>();
  for (const json& e : m.at("samples")) {
    const fs::path file = dir / e.at("path").get<std::string>();
    if (e.contains("sha256")) {
      const std::string actual = sha256_hex(read_file(file));
      if (actual != e.at("sha256").get<std::string>())
        throw LoadError(file.string() + ": checksum mismatch");
    }
    ImageSample s = read_netpbm(file);
    s.label = e.at("label").get<int>();
    if (s.label < 0 || s.label >= ds.class_count)
      throw LoadError(file.string() + ": unknown label " + std::to_string(s.label));
    if (s.pixels.c != c || s.pixels.h != h || s.pixels.w != w)
      throw LoadError(file.string() + ": shape mismatch against manifest geometry");
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

void save_image_directory(const LabeledDataset& ds, const fs::path& dir) {
  fs::create_directories(dir);
  const Shape3 shape = ds.sample_shape();
  json m;
  m["k"] = ds.class_count;
  m["channels"] = shape.c;
  m["height"] = shape.h;
  m["width"] = shape.w;
  m["samples"] = json::array();
  const char* ext = shape.c == 3 ? ".ppm" : ".pgm";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "%06zu%s", i, ext);
    const fs::path file = dir / name;
    write_netpbm(file, ds.samples[i]);
    m["samples"].push_back(json{{"path", name},
                                {"label", ds.samples[i].label},
                                {"sha256", sha256_hex(read_file(file))}});
  }
  write_json_file(dir / kManifestName, m);
}

}  // namespace

DatasetFormat parse_dataset_format(const std::string& s) {
  if (s == "raw-binary") return DatasetFormat::raw_binary;
  if (s == "image-directory") return DatasetFormat::image_directory;
  throw ValidationError("unknown dataset format '" + s + "' (raw-binary | image-directory)");
}

std::string to_string(DatasetFormat f) {
  return f == DatasetFormat::raw_binary ? "raw-binary" : "image-directory";
}

LabeledDataset load_dataset(const fs::path& path, DatasetFormat format) {
  if (!fs::exists(path)) throw LoadError(path.string() + ": no such path");
  LabeledDataset ds = format == DatasetFormat::raw_binary ? load_raw_binary(path)
                                                          : load_image_directory(path);
  if (ds.empty()) throw LoadError(path.string() + ": empty dataset");
  ds.validate();
  return ds;
}

void save_dataset(const LabeledDataset& dataset, const fs::path& dir, DatasetFormat format) {
  dataset.validate();
  if (format == DatasetFormat::raw_binary) {
    save_raw_binary(dataset, dir);
  } else {
    save_image_directory(dataset, dir);
  }
}

void save_split_manifest(const SplitManifest& manifest, const fs::path& file) {
  json j;
  j["seed"] = manifest.seed;
  j["partition_sizes"] = json::object();
  for (const auto& [name, size] : manifest.partition_sizes) j["partition_sizes"][name] = size;
  j["splits"] = json::object();
  for (const auto& [name, indices] : manifest.index_lists) j["splits"][name] = indices;
  write_json_file(file, j);
}

SplitManifest load_split_manifest(const fs::path& file) {
  const json j = load_json_file(file);
  SplitManifest m;
  m.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& [name, indices] : j.at("splits").items()) {
    m.index_lists[name] = indices.get<std::vector<std::size_t>>();
    m.partition_sizes[name] = m.index_lists[name].size();
  }
  return m;
}

}  // namespace dataudit
