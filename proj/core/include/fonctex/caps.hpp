#pragma once

#include <cstdint>

namespace fonctex {

struct Caps {
  // Largest list that may be materialized by enumeration (hom-sets, tables).
  uint64_t enumeration = uint64_t{1} << 24;
  // Largest hom-set a lazily indexed category may address.
  uint64_t hom_size = uint64_t{1} << 40;
  // Largest chain group (number of basis strings) in a bar-type complex.
  uint64_t chain_dim = uint64_t{1} << 26;
  // Validation policy thresholds.
  uint64_t exhaustive_morphisms = uint64_t{1} << 12;
  uint64_t exhaustive_pairs = uint64_t{1} << 20;
  uint64_t sampled_checks = 100000;
  // Composition tables are memoized below this many composable pairs.
  uint64_t composition_table_pairs = uint64_t{1} << 22;
  // Chain groups above this size are eliminated column by column.
  uint64_t streaming_columns = uint64_t{1} << 20;
};

inline const Caps& default_caps() {
  static const Caps caps{};
  return caps;
}

}  // namespace fonctex
