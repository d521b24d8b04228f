#pragma once

#include <string>
#include <string_view>

namespace ctsearch::text {

/// Lowercase hex SHA-256 digest of the given bytes.
std::string sha256_hex(std::string_view bytes);

/// Incremental variant for hashing many pieces without concatenating them.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::string_view bytes);
  std::string hex_digest();

 private:
  void* ctx_;
};

}  // namespace ctsearch::text
