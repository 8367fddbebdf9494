#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace fairsor {

// mt19937_64 wrapper that draws with plain modulo arithmetic and shuffles
// with hand-rolled Fisher-Yates. std::uniform_int_distribution and
// std::shuffle are implementation-defined, so this keeps generated streams
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform draw from [lo, hi], both ends included.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace fairsor
