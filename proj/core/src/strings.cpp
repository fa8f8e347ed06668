#include "fonctex/strings.hpp"

#include <algorithm>
#include <limits>

#include "fonctex/error.hpp"

namespace fonctex {

StringIndex::StringIndex(FinCat c, size_t n, Weight weight, const Caps& caps) : cat_(std::move(c)), n_(n) {
  const size_t nobj = cat_.num_objects();
  uint64_t nblocks = 1;
  for (size_t k = 0; k <= n; ++k) {
    nblocks *= nobj;
    if (nblocks > caps.enumeration) throw CapExceeded("object strings of length " + std::to_string(n), nblocks, caps.enumeration);
  }
  blocks_.resize(nblocks);
  std::vector<ObjId> objs(n + 1);
  for (uint64_t id = 0; id < nblocks; ++id) {
    uint64_t r = id;
    for (size_t k = n + 1; k-- > 0;) {
      objs[k] = static_cast<ObjId>(r % nobj);
      r /= nobj;
    }
    Block& b = blocks_[id];
    b.objs = objs;
    b.strings = 1;
    for (size_t k = 1; k <= n; ++k) {
      const HomIdx h = cat_.hom_size(objs[k - 1], objs[k]);
      b.radix.push_back(h);
      if (h != 0 && b.strings > std::numeric_limits<uint64_t>::max() / h)
        throw CapExceeded("bar strings", std::numeric_limits<uint64_t>::max(), caps.chain_dim);
      b.strings *= h;
    }
    b.weight = weight(objs[0], objs[n]);
    b.offset = total_;
    const uint64_t add = b.strings * b.weight;
    if (b.weight != 0 && b.strings > caps.chain_dim / b.weight) throw CapExceeded("bar chain group", b.strings * b.weight, caps.chain_dim);
    total_ += add;
    if (total_ > caps.chain_dim) throw CapExceeded("bar chain group C_" + std::to_string(n), total_, caps.chain_dim);
  }
  offsets_.reserve(blocks_.size());
  for (const Block& b : blocks_) offsets_.push_back(b.offset);
}

size_t StringIndex::block_id(const ObjId* objs) const {
  const size_t nobj = cat_.num_objects();
  size_t id = 0;
  for (size_t k = 0; k <= n_; ++k) id = id * nobj + objs[k];
  return id;
}

uint64_t StringIndex::arrow_rank(const Block& b, const HomIdx* arrows) {
  uint64_t r = 0;
  for (size_t k = 0; k < b.radix.size(); ++k) r = r * b.radix[k] + arrows[k];
  return r;
}

void StringIndex::arrow_unrank(const Block& b, uint64_t r, HomIdx* arrows) {
  for (size_t k = b.radix.size(); k-- > 0;) {
    arrows[k] = r % b.radix[k];
    r /= b.radix[k];
  }
}

uint64_t StringIndex::index(const ObjId* objs, const HomIdx* arrows, uint64_t inner) const {
  const Block& b = blocks_[block_id(objs)];
  return b.offset + arrow_rank(b, arrows) * b.weight + inner;
}

const StringIndex::Block& StringIndex::locate(uint64_t global, HomIdx* arrows, uint64_t& inner) const {
  if (global >= total_) throw ArgumentError("StringIndex::locate: index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
  const Block& b = blocks_[static_cast<size_t>(it - offsets_.begin()) - 1];
  const uint64_t rel = global - b.offset;
  arrow_unrank(b, rel / b.weight, arrows);
  inner = rel % b.weight;
  return b;
}

}  // namespace fonctex
