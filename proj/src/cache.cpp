#include "dertower/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;

namespace dertower {

namespace {
constexpr std::uint32_t kMagic = 0x44545743;  // "DTWC"

void write_mpz(ByteWriter& w, const mpz_class& z, std::vector<std::uint8_t>& scratch) {
  int s = sgn(z);
  w.u32(static_cast<std::uint32_t>(s + 1));
  if (s == 0) return;
  std::size_t count = (mpz_sizeinbase(z.get_mpz_t(), 2) + 7) / 8;
  scratch.resize(count);
  std::size_t written = 0;
  mpz_export(scratch.data(), &written, 1, 1, 1, 0, z.get_mpz_t());
  w.u64(written);
  w.bytes(scratch.data(), written);
}

mpz_class read_mpz(ByteReader& r) {
  std::uint32_t s = r.u32();
  if (s == 1 || !r.healthy()) return 0;
  std::uint64_t len = r.u64();
  std::string raw = r.str_raw(len);
  mpz_class z;
  if (!raw.empty()) mpz_import(z.get_mpz_t(), raw.size(), 1, 1, 1, 0, raw.data());
  if (s == 0) z = -z;
  return z;
}
}  // namespace

void ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void ByteWriter::i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
void ByteWriter::bytes(const void* p, std::size_t len) {
  const auto* b = static_cast<const std::uint8_t*>(p);
  buf_.insert(buf_.end(), b, b + len);
}
void ByteWriter::str(const std::string& s) {
  u64(s.size());
  bytes(s.data(), s.size());
}
void ByteWriter::rat(const Rat& r) {
  std::vector<std::uint8_t> scratch;
  write_mpz(*this, mpz_class(r.get_num()), scratch);
  write_mpz(*this, mpz_class(r.get_den()), scratch);
}
void ByteWriter::svec(const SparseVec& v) {
  u64(v.e.size());
  for (const auto& [i, c] : v.e) {
    i64(i);
    rat(c);
  }
}
void ByteWriter::subspace(const Subspace& s) {
  i64(s.ambient);
  u64(s.rows.size());
  for (const auto& r : s.rows) svec(r);
}

bool ByteReader::take(void* p, std::size_t len) {
  if (!ok_ || pos_ + len > buf_.size()) {
    ok_ = false;
    return false;
  }
  std::memcpy(p, buf_.data() + pos_, len);
  pos_ += len;
  return true;
}
std::uint32_t ByteReader::u32() {
  std::uint8_t b[4] = {};
  take(b, 4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}
std::uint64_t ByteReader::u64() {
  std::uint8_t b[8] = {};
  take(b, 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}
std::int64_t ByteReader::i64() { return static_cast<std::int64_t>(u64()); }
std::string ByteReader::str() {
  std::uint64_t len = u64();
  return str_raw(len);
}
std::string ByteReader::str_raw(std::uint64_t len) {
  if (!ok_ || pos_ + len > buf_.size()) {
    ok_ = false;
    return {};
  }
  std::string s(reinterpret_cast<const char*>(buf_.data() + pos_), len);
  pos_ += len;
  return s;
}
Rat ByteReader::rat() {
  mpz_class num = read_mpz(*this);
  mpz_class den = read_mpz(*this);
  if (!ok_ || sgn(den) <= 0) {
    ok_ = false;
    return Rat(0);
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}
SparseVec ByteReader::svec() {
  SparseVec v;
  std::uint64_t k = u64();
  if (!ok_ || k > (1u << 28)) {
    ok_ = false;
    return v;
  }
  for (std::uint64_t i = 0; i < k && ok_; ++i) {
    int idx = static_cast<int>(i64());
    v.e.emplace_back(idx, rat());
  }
  return v;
}
Subspace ByteReader::subspace() {
  Subspace s;
  s.ambient = static_cast<int>(i64());
  std::uint64_t k = u64();
  if (!ok_ || k > (1u << 26)) {
    ok_ = false;
    return s;
  }
  for (std::uint64_t i = 0; i < k && ok_; ++i) s.rows.push_back(svec());
  for (int i = 0; i < s.rank(); ++i)
    if (!s.rows[i].empty()) s.pivots[s.rows[i].lead()] = i;
  return s;
}

std::uint64_t fnv1a(const std::vector<std::uint8_t>& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (std::uint8_t b : data) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

Cache::Cache(std::string root) : root_(std::move(root)) {
  if (!root_.empty()) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) {
      std::cerr << "warning: cache directory '" << root_ << "' not usable ("
                << ec.message() << "); caching disabled\n";
      root_.clear();
    }
  }
}

Cache Cache::from_env() {
  const char* env = std::getenv(kCacheEnvVar);
  return env && *env ? Cache(env) : Cache();
}

std::string Cache::path_for(const CacheKey& key) const {
  return root_ + "/" + key.kind + "_n" + std::to_string(key.n) + "_d" + std::to_string(key.d) +
         "_m" + std::to_string(key.degree) + "_v" + std::to_string(kSchemaVersion) + ".bin";
}

std::optional<std::vector<std::uint8_t>> Cache::get(const CacheKey& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream f(path_for(key), std::ios::binary);
  if (!f) return std::nullopt;
  std::vector<std::uint8_t> all((std::istreambuf_iterator<char>(f)),
                                std::istreambuf_iterator<char>());
  ByteReader r(all);
  if (r.u32() != kMagic || r.u32() != static_cast<std::uint32_t>(kSchemaVersion))
    return std::nullopt;
  if (static_cast<int>(r.i64()) != key.n || static_cast<int>(r.i64()) != key.d) return std::nullopt;
  if (r.str() != key.kind || static_cast<int>(r.i64()) != key.degree) return std::nullopt;
  std::uint64_t len = r.u64();
  if (!r.healthy()) return std::nullopt;
  std::string payload = r.str_raw(len);
  std::uint64_t sum = r.u64();
  if (!r.healthy()) return std::nullopt;
  std::vector<std::uint8_t> bytes(payload.begin(), payload.end());
  if (fnv1a(bytes) != sum) return std::nullopt;  // corrupt: silent miss
  return bytes;
}

void Cache::put(const CacheKey& key, const std::vector<std::uint8_t>& payload) {
  if (!enabled()) return;
  ByteWriter w;
  w.u32(kMagic);
  w.u32(static_cast<std::uint32_t>(kSchemaVersion));
  w.i64(key.n);
  w.i64(key.d);
  w.str(key.kind);
  w.i64(key.degree);
  w.u64(payload.size());
  w.bytes(payload.data(), payload.size());
  w.u64(fnv1a(payload));
  std::string path = path_for(key);
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      if (!warned_) {
        std::cerr << "warning: cache directory not writable; proceeding uncached\n";
        warned_ = true;
      }
      return;
    }
    f.write(reinterpret_cast<const char*>(w.data().data()),
            static_cast<std::streamsize>(w.data().size()));
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

Cache::VerifyResult Cache::verify() const {
  VerifyResult res;
  if (!enabled()) return res;
  for (const auto& entry : fs::directory_iterator(root_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".bin") continue;
    ++res.checked;
    std::ifstream f(entry.path(), std::ios::binary);
    std::vector<std::uint8_t> all((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
    ByteReader r(all);
    bool good = r.u32() == kMagic;
    if (good) r.u32(), r.i64(), r.i64(), r.str(), r.i64();
    std::uint64_t len = r.u64();
    std::string payload = r.str_raw(len);
    std::uint64_t sum = r.u64();
    std::vector<std::uint8_t> bytes(payload.begin(), payload.end());
    if (!good || !r.healthy() || fnv1a(bytes) != sum)
      res.bad.push_back(entry.path().filename().string());
  }
  return res;
}

int Cache::clear() {
  if (!enabled()) return 0;
  int removed = 0;
  for (const auto& entry : fs::directory_iterator(root_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".bin") {
      std::error_code ec;
      fs::remove(entry.path(), ec);
      if (!ec) ++removed;
    }
  }
  return removed;
}

}  // namespace dertower
