#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "fonctex/linalg.hpp"

namespace fonctex::detail {

// Values computed on first access, once per slot, safe under concurrent reads.
template <class T>
class LazyTable {
 public:
  LazyTable(size_t n, std::function<T(size_t)> make)
      : flags_(std::make_unique<std::once_flag[]>(n)), values_(n), make_(std::move(make)) {}

  const T& get(size_t i) const {
    std::call_once(flags_[i], [&] { values_[i] = make_(i); });
    return values_[i];
  }
  size_t size() const { return values_.size(); }

 private:
  std::unique_ptr<std::once_flag[]> flags_;
  mutable std::vector<T> values_;
  std::function<T(size_t)> make_;
};

// Calls fn(index, value) for every nonzero entry of v, in increasing index order.
template <class Fn>
void for_each_nonzero(const FVec& v, Fn&& fn) {
  if (v.packed()) {
    const uint64_t* w = v.words();
    for (size_t k = 0; k < v.num_words(); ++k) {
      uint64_t x = w[k];
      while (x) {
        fn(k * 64 + static_cast<size_t>(std::countr_zero(x)), uint32_t{1});
        x &= x - 1;
      }
    }
    return;
  }
  const uint8_t* b = v.bytes();
  for (size_t i = 0; i < v.size(); ++i)
    if (b[i]) fn(i, uint32_t{b[i]});
}

inline uint64_t fnv1a(uint64_t h, uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

inline uint64_t fnv1a(uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline constexpr uint64_t kFnvOffset = 1469598103934665603ull;

}  // namespace fonctex::detail
