#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fonctex/caps.hpp"
#include "fonctex/funrep.hpp"
#include "fonctex/homalg.hpp"

namespace fonctex {

/// A bifunctor B : C^op x C -> F_p-Mod, stored as a functor on the product
/// op(C) x C. Object (x, y) carries B(x, y), contravariant in x.
struct BiFunRep {
  FinCat cat;
  ProductData prod;
  FunRep rep;

  size_t dim(ObjId x, ObjId y) const { return rep.dim(prod.object(x, y)); }
  uint32_t field() const { return rep.field(); }
  const std::string& label() const { return rep.label(); }
  // B(f, g) : B(x', y) -> B(x, y') for f : x -> x', g : y -> y' in C.
  FMat act(const Mor& f, const Mor& g) const;
};

BiFunRep make_bifunctor(const FinCat& c, const FunRep& on_product);
// (U, V) |-> U^* (x) V.
BiFunRep dual_tensor_bifunctor(const FinCat& c, uint32_t p);
BiFunRep constant_bifunctor(const FinCat& c, uint32_t p, size_t dim = 1);
// (x, y) |-> F(y) (x) k[C(x, t)].
BiFunRep representable_bifunctor(const FunRep& f, ObjId t);
// (x, y) |-> H(x) (x) F(y), H on C^op.
BiFunRep external_bifunctor(const FunRep& h, const FunRep& f);
// B restricted to op(D) x D for a full subcategory D.
BiFunRep restrict_bifunctor(const BiFunRep& b, const SubcategoryData& sub);

// B(-, t) and B(t, -) as functors on C; the first is read through the
// transpose P_N -> P_N^op, so C must be a category of free modules.
FunRep first_variable(const BiFunRep& b, ObjId t);
FunRep second_variable(const BiFunRep& b, ObjId t);

struct BifunctorDegree {
  std::optional<int> first;   // max over t of deg B(-, t), if all are within the window
  std::optional<int> second;  // max over t of deg B(t, -)
  bool within(size_t d) const {
    return (first && *first <= static_cast<int>(d)) || (second && *second <= static_cast<int>(d));
  }
};
// Requires N >= window + 1.
BifunctorDegree bifunctor_degree(const BiFunRep& b, size_t window);

struct HHResult {
  std::string category;
  std::string coefficients;
  std::string fingerprint;
  std::string method;
  std::vector<size_t> dims;        // HH_0..HH_{i_max}
  std::vector<uint64_t> chain_dims;  // C_0..C_{i_max+1}
  std::vector<HomologyData> data;  // bases, per degree
  uint64_t columns_checked = 0;
};

// Cyclic bar complex C_n = (+)_{x_0 -> ... -> x_n} B(x_n, x_0) with
// d = sum_i (-1)^i d_i: d_0 applies B(x_n, a_1), d_n applies B(a_n, x_0),
// the others compose consecutive arrows.
ColumnComplex hh_complex(const BiFunRep& b, size_t top, const Caps& caps = default_caps());
HHResult hh(const BiFunRep& b, size_t i_max, const Caps& caps = default_caps());

/// A bimodule over the monoid M = End(x) of a one-object category:
/// left(m) = B(id, m) and right(m) = B(m, id) as endomorphisms of V.
struct Bimodule {
  uint32_t p = 2;
  size_t dim = 0;
  FinRing ring;
  size_t n = 0;  // M = M_n(ring), element index = canonical matrix index
  std::vector<FMat> left;
  std::vector<FMat> right;
  std::string label;

  uint64_t order() const { return left.size(); }
};
// The bimodule B(x, x) over End(x) = M_n(ring), from a bifunctor on a category of free modules.
Bimodule monoid_bimodule(const BiFunRep& b, ObjId x);
// Same bar complex, indexed by monoid words, with products computed by matrix multiplication.
ColumnComplex hh_monoid_complex(const Bimodule& v, size_t top, const Caps& caps = default_caps());
HHResult hh_monoid(const Bimodule& v, size_t i_max, const Caps& caps = default_caps());

/// A map on homology, in the class bases of source and target.
struct HomologyMap {
  size_t degree = 0;
  size_t dim_src = 0;
  size_t dim_dst = 0;
  size_t rank = 0;
  FMat matrix;  // dim_dst x dim_src
  bool injective() const { return rank == dim_src; }
  bool surjective() const { return rank == dim_dst; }
  bool bijective() const { return injective() && surjective(); }
};
HomologyMap induced_map(const HomologyData& src, const HomologyData& dst, const std::function<FVec(const FVec&)>& chain);

// HH_i(D; B|) -> HH_i(C; B) induced by the inclusion of strings.
std::vector<HomologyMap> hh_pushforward(const BiFunRep& b, const std::vector<ObjId>& d_objects, size_t i_max,
                                        const Caps& caps = default_caps());

// Chain map C_*(M_n; B(A^n, A^n)) -> C_*(M_{n+k}; B(A^{n+k}, A^{n+k})) given by
// X |-> X (+) 1_k on words and B(pr, inc) on coefficients.
std::function<FVec(const FVec&)> stabilization_chain_map(const BiFunRep& family, size_t n, size_t k, size_t degree);
// B(pr, inc) commutes with both actions; throws InvariantViolation otherwise.
void check_stabilization_equivariance(const BiFunRep& family, size_t n);

struct StabRow {
  size_t i = 0;
  size_t n = 0;
  bool computed = false;
  std::string note;
  HomologyMap map;
  std::string required;  // "bijective", "surjective" or "none"
  bool in_range = false;
  bool pass = true;
};

StabRow stabilization_map(const BiFunRep& family, size_t n, size_t i, const Caps& caps = default_caps());

// Required flag for the stabilization map at (n, i) with degree bound d:
// bijective for n >= d(i+2), surjective for n >= d(i+2) - 1.
std::string required_flag(size_t d, size_t n, size_t i);

struct StabilityTable {
  size_t d = 0;
  size_t i_max = 0;
  size_t n_max = 0;
  BifunctorDegree degree;
  bool degree_ok = false;
  std::vector<StabRow> rows;  // n = 0..n_max-1, i = 0..i_max
  std::vector<std::vector<size_t>> hh_dims;  // hh_dims[n] = HH_*(M_n), n = 0..n_max
  bool functoriality_ok = true;
  std::string verdict;  // "PASS", "FAIL", "INCOMPLETE" or "insufficient data"
  bool pass() const { return verdict == "PASS"; }
  std::string csv() const;
};

// family lives on P_N(ring) with N >= n_max.
StabilityTable verify_stability_range(const BiFunRep& family, size_t d, size_t i_max, size_t n_max,
                                      const Caps& caps = default_caps());

}  // namespace fonctex
