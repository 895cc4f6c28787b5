#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dertower/subspace.hpp"

namespace dertower {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kCacheEnvVar = "DERTOWER_CACHE_DIR";

// Length-prefixed little-endian binary encoding for cached payloads.
class ByteWriter {
 public:
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void i64(std::int64_t v);
  void bytes(const void* p, std::size_t len);
  void str(const std::string& s);
  void rat(const Rat& r);
  void svec(const SparseVec& v);
  void subspace(const Subspace& s);
  const std::vector<std::uint8_t>& data() const { return buf_; }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(const std::vector<std::uint8_t>& buf) : buf_(buf) {}
  std::uint32_t u32();
  std::uint64_t u64();
  std::int64_t i64();
  std::string str();
  std::string str_raw(std::uint64_t len);
  Rat rat();
  SparseVec svec();
  Subspace subspace();
  bool ok() const { return ok_ && pos_ == buf_.size(); }
  bool healthy() const { return ok_; }

 private:
  bool take(void* p, std::size_t len);
  const std::vector<std::uint8_t>& buf_;
  std::size_t pos_ = 0;
  bool ok_ = true;
};

std::uint64_t fnv1a(const std::vector<std::uint8_t>& data);

struct CacheKey {
  int n = 0;
  int d = 0;        // 0 when the entry does not depend on d
  std::string kind;
  int degree = 0;   // 0 when not degree-indexed
};

// One file per entry under the root directory; every record carries the
// schema version, its key and an FNV-1a checksum, verified on load. Stale
// schema versions and corrupt files read as misses.
class Cache {
 public:
  Cache() = default;
  explicit Cache(std::string root);
  static Cache from_env();

  bool enabled() const { return !root_.empty(); }
  const std::string& root() const { return root_; }

  std::optional<std::vector<std::uint8_t>> get(const CacheKey& key) const;
  void put(const CacheKey& key, const std::vector<std::uint8_t>& payload);

  struct VerifyResult {
    int checked = 0;
    std::vector<std::string> bad;
  };
  VerifyResult verify() const;
  int clear();

 private:
  std::string path_for(const CacheKey& key) const;
  std::string root_;
  mutable bool warned_ = false;
};

}  // namespace dertower
