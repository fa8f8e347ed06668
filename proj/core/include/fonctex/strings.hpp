#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fonctex/caps.hpp"
#include "fonctex/fincat.hpp"

namespace fonctex {

/// Indexing of basis elements of bar-type chain groups
///   C_n = (+)_{x_0 -a_1-> x_1 -> ... -a_n-> x_n} V(x_0, x_n)
/// in canonical order: object sequences lexicographically, then arrows
/// (a_1 most significant), then the basis index inside V(x_0, x_n).
class StringIndex {
 public:
  using Weight = std::function<uint64_t(ObjId first, ObjId last)>;

  struct Block {
    std::vector<ObjId> objs;  // x_0..x_n
    std::vector<HomIdx> radix;  // |C(x_{i-1}, x_i)|, i = 1..n
    uint64_t strings = 0;  // product of radix
    uint64_t weight = 0;  // dim V(x_0, x_n)
    uint64_t offset = 0;
  };

  StringIndex(FinCat c, size_t n, Weight weight, const Caps& caps = default_caps());

  size_t length() const { return n_; }
  uint64_t total() const { return total_; }
  const FinCat& cat() const { return cat_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(const ObjId* objs) const { return blocks_[block_id(objs)]; }
  size_t block_id(const ObjId* objs) const;

  // Mixed-radix position of the arrows a_1..a_n inside their block.
  static uint64_t arrow_rank(const Block& b, const HomIdx* arrows);
  static void arrow_unrank(const Block& b, uint64_t r, HomIdx* arrows);
  uint64_t index(const ObjId* objs, const HomIdx* arrows, uint64_t inner) const;
  // Inverse of index(): the block containing `global`, its arrows and inner index.
  const Block& locate(uint64_t global, HomIdx* arrows, uint64_t& inner) const;

  // Calls fn(block, arrows, first index of the string) for every string.
  template <class Fn>
  void for_each_string(Fn&& fn) const {
    std::vector<HomIdx> arrows(n_);
    for (const Block& b : blocks_) {
      if (b.strings == 0 || b.weight == 0) continue;
      for (uint64_t r = 0; r < b.strings; ++r) {
        arrow_unrank(b, r, arrows.data());
        fn(b, arrows.data(), b.offset + r * b.weight);
      }
    }
  }

 private:
  FinCat cat_;
  size_t n_;
  uint64_t total_ = 0;
  std::vector<Block> blocks_;
  std::vector<uint64_t> offsets_;
};

}  // namespace fonctex
