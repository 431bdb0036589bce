#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dataudit {

// Self-contained SHA-256 (FIPS 180-4). Used to fingerprint datasets,
// triggers, and reports so audit evidence is content-addressed.
class Sha256 {
public:
  Sha256();
  void update(const void* data, std::size_t len);
  // Finalizes and returns the lowercase hex digest. The object must not be
  // updated afterwards.
  std::string hex_digest();

private:
  void process_block(const std::uint8_t* block);

  std::uint32_t h_[8];
  std::uint8_t buffer_[64];
  std::size_t buffer_len_ = 0;
  std::uint64_t total_len_ = 0;
  bool finalized_ = false;
};

std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(const std::string& s);
std::string sha256_hex(const std::vector<std::uint8_t>& bytes);

}  // namespace dataudit
