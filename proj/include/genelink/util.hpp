#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace genelink {

/// Error raised for unreadable or structurally broken files.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Formats a double so that parsing the result recovers the exact value.
std::string format_double(double v);

/// FNV-1a 64-bit hash, used for content digests in manifests and model headers.
std::uint64_t fnv1a64(std::string_view data);

/// Hex rendering of a 64-bit hash.
std::string hash_hex(std::uint64_t h);

/// FNV-1a digest of a whole file.
std::uint64_t hash_file(const std::string& path);

std::vector<std::string> split(std::string_view s, char sep);

/// Reads an entire file into a string. Throws IoError if unreadable.
std::string read_file(const std::string& path);

/// Writes content to path, replacing any existing file.
void write_file(const std::string& path, std::string_view content);

/// Runs fn(begin, end) over [0, n) split into contiguous chunks across
/// at most `threads` workers. fn must only write to disjoint slots, so the
/// result is identical for any thread count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

/// Uniform draw from [0, n) with rejection sampling. Unlike the standard
/// distributions, the consumed stream is pinned down by this code, so
/// seeded runs replay identically on any platform.
inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("rand_below: empty range");
  std::uint64_t reject = (0 - n) % n;  // 2^64 mod n
  std::uint64_t r;
  do {
    r = rng();
  } while (r < reject);
  return r % n;
}

/// Fisher-Yates shuffle on top of rand_below; platform-stable per seed.
template <typename T>
void det_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rand_below(rng, i)]);
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double rand_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace genelink
