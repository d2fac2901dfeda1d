#ifndef AFROMT_RNG_HPP
#define AFROMT_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "afromt/text.hpp"

namespace afromt {

/// Platform-stable random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. The standard distributions and std::shuffle are not, so
/// bounded integers, unit doubles and shuffles are derived here:
///   - below(n): rejection sampling on the raw 64-bit word (no modulo bias)
///   - unit():   top 53 bits scaled by 2^-53, in [0, 1)
///   - shuffle:  Fisher-Yates from the back, j = below(i + 1)
/// Identical seeds therefore give identical streams on every platform.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+rejection+fisher-yates";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n + 1) % n;
    for (;;) {
      std::uint64_t x = engine_();
      if (x <= limit) return x % n;
    }
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derive an independent stream seed from a base seed and a label such as
/// "split/eng-afr" so that pipeline stages never share a stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
  return splitmix64(base ^ text::fnv1a64(label));
}

}  // namespace afromt

#endif  // AFROMT_RNG_HPP
