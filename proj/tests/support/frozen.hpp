#pragma once

// Regression values computed by the standalone scripts in tests/oracles and
// frozen before the library code was written. Over F_2 throughout.

#include <array>
#include <cstddef>

namespace frozen {

// ext_category.py 0 1 2 and 0 1 2 3: Ext^{0,1}(Id, Id) over functors on P_N.
inline constexpr std::array<size_t, 2> kExtIdIdP2{1, 0};
inline constexpr std::array<size_t, 2> kExtIdIdP3{1, 0};
// At N = 4 the brute-force script is out of reach; the value is carried over from
// N = 3 and checked by two independent C++ routes (resolution and cobar) instead.
inline constexpr std::array<size_t, 2> kExtIdIdP4{1, 0};

// ext_monoid.py n: Ext^{0,1} of the natural module over F_2[M_n(F_2)].
inline constexpr std::array<size_t, 2> kExtNaturalM1{1, 0};
inline constexpr std::array<size_t, 2> kExtNaturalM2{1, 0};
inline constexpr std::array<size_t, 2> kExtNaturalM3{1, 0};

// hh_monoid.py n {dt|k} imax: HH_i(F_2[M_n(F_2)]; B).
inline constexpr std::array<size_t, 3> kHHDualTensorM0{0, 0, 0};
inline constexpr std::array<size_t, 3> kHHDualTensorM1{1, 0, 0};
inline constexpr std::array<size_t, 3> kHHDualTensorM2{1, 0, 1};
inline constexpr std::array<size_t, 2> kHHDualTensorM3{1, 0};
inline constexpr std::array<size_t, 3> kHHConstM0{1, 0, 0};
inline constexpr std::array<size_t, 3> kHHConstM1{1, 0, 0};
inline constexpr std::array<size_t, 3> kHHConstM2{1, 0, 0};
inline constexpr std::array<size_t, 2> kHHConstM3{1, 0};

}  // namespace frozen
