#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace neurohotnet {

/// Philox4x32-10 block function (Salmon et al., counter-based).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer; used to derive substream keys.
std::uint64_t mix64(std::uint64_t x);

/// Stream of random numbers keyed by (seed, a, b, c). Any two streams with a
/// different key tuple are independent, so work items can draw from their own
/// stream in any order and on any thread with identical results.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0,
               std::uint64_t c = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound), unbiased. bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal (Box-Muller, both variates used).
  double normal();

  /// Uniform random permutation of 0..n-1 (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_{};
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// Domain tags separating the substreams of different consumers of one seed.
namespace stream_tag {
inline constexpr std::uint64_t kPermutation = 0x7065726d;  // "perm"
inline constexpr std::uint64_t kTTestNull = 0x74746e6c;
inline constexpr std::uint64_t kTruthGraph = 0x74727468;
inline constexpr std::uint64_t kSubjects = 0x7375626a;
inline constexpr std::uint64_t kTrial = 0x7472616c;
}  // namespace stream_tag

}  // namespace neurohotnet
