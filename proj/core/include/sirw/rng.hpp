#ifndef SIRW_RNG_HPP
#define SIRW_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace sirw {

// SplitMix64 finalizer (Steele/Lea/Flood; Vigna's fixed-increment variant).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Fold one more id into a stream key. Chaining mix64 through ids gives a
// stateless substream derivation keyed by (seed, id0, id1, ...), so the stream
// a replication sees does not depend on scheduling order.
inline std::uint64_t derive_key(std::uint64_t key, std::uint64_t id) {
  return mix64(key ^ (id + 0x9E3779B97F4A7C15ULL + (key << 6) + (key >> 2)));
}

inline std::uint64_t derive_key(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> ids) {
  std::uint64_t k = mix64(seed);
  for (std::uint64_t id : ids) k = derive_key(k, id);
  return k;
}

// FNV-1a, used to hash experiment ids / stream roles into key material.
inline std::uint64_t hash_string(const char* s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 1099511628211ULL;
  return h;
}

// Counter-based generator: output i is mix64(key + i * gamma). next() walks the
// counter; at(i) gives random access, which AlarmCollection relies on.
class Rng {
 public:
  Rng() : key_(0), counter_(0) {}
  explicit Rng(std::uint64_t key) : key_(key), counter_(0) {}

  std::uint64_t next_u64() { return at_u64(counter_++); }

  std::uint64_t at_u64(std::uint64_t i) const {
    return mix64(key_ + 0x9E3779B97F4A7C15ULL * i);
  }

  // Uniform on the open interval (0,1).
  double uniform() { return to_open_unit(next_u64()); }
  double uniform_at(std::uint64_t i) const { return to_open_unit(at_u64(i)); }

  // Inverse-CDF exponential; rate > 0.
  double exponential(double rate) { return -std::log(uniform()) / rate; }
  double exponential_at(std::uint64_t i, double rate) const {
    return -std::log(uniform_at(i)) / rate;
  }

  std::uint64_t key() const { return key_; }

  static double to_open_unit(std::uint64_t x) {
    return (static_cast<double>(x >> 12) + 0.5) * 0x1p-52;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace sirw

#endif  // SIRW_RNG_HPP
