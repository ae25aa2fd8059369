#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace lassobounds {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic substream keyed by a master seed and a tuple of indices.
///
/// The same key always yields the same engine state, so work items can be
/// scheduled on any thread without changing the numbers they consume.
class Stream {
 public:
  explicit Stream(std::uint64_t master_seed) : key_(mix64(master_seed)) {}

  /// Child stream for the given sub-key (e.g. sample size, replicate index).
  [[nodiscard]] Stream derive(std::initializer_list<std::uint64_t> path) const {
    Stream child = *this;
    for (std::uint64_t v : path) child.key_ = mix64(child.key_ ^ mix64(v + 0x632be59bd9b4e019ULL));
    return child;
  }

  [[nodiscard]] Engine engine() const {
    std::seed_seq seq{static_cast<std::uint32_t>(key_), static_cast<std::uint32_t>(key_ >> 32)};
    return Engine(seq);
  }

  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

}  // namespace lassobounds
