#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fonctex/caps.hpp"
#include "fonctex/funrep.hpp"
#include "fonctex/linalg.hpp"

namespace fonctex {

/// Chain complex of finite-dimensional F_p-spaces in degrees lo..hi, given by
/// the dimension of each C_n and a rule for the columns of d_n : C_n -> C_{n-1}.
/// Columns are generated on demand so that very wide differentials can be
/// eliminated without ever being stored.
struct ColumnComplex {
  uint32_t p = 2;
  int lo = 0;
  int hi = 0;
  std::function<size_t(int)> dim;
  std::function<FVec(int, uint64_t)> column;

  size_t dim_at(int n) const { return n < lo || n > hi ? 0 : dim(n); }
};

// diffs[k] is d_{lo+k}; diffs[0] may have zero rows.
ColumnComplex dense_complex(uint32_t p, int lo, std::vector<FMat> diffs);
// d_n as a dense matrix; CapExceeded when it would exceed caps.chain_dim words.
FMat dense_differential(const ColumnComplex& cx, int n, const Caps& caps = default_caps());

/// Homology at one degree, with explicit bases:
/// cycles Z_n, boundaries B_n, and class representatives (cycles whose images
/// form a basis of Z_n / B_n).
struct HomologyData {
  int degree = 0;
  size_t dim = 0;
  EchelonBasis cycles;
  EchelonBasis boundaries;
  EchelonBasis classes;  // rows are cycles, reduced against `boundaries`
  uint64_t columns_checked = 0;  // columns of d_{n+1} verified to satisfy d_n d_{n+1} = 0

  bool is_boundary(const FVec& z) const { return boundaries.contains(z); }
  // Coordinates of the class of a cycle z in the basis given by `classes`.
  std::vector<uint32_t> class_of(const FVec& z) const;
};

// Verifies d_n o d_{n+1} = 0 column by column while eliminating; throws
// InvariantViolation on failure.
HomologyData homology(const ColumnComplex& cx, int n, const Caps& caps = default_caps());
// Rank of d_n computed by streaming its columns.
size_t differential_rank(const ColumnComplex& cx, int n, const Caps& caps = default_caps());

/// Complex of functors: terms[k] sits in degree lo+k, diffs[k] : terms[k] -> terms[k-1]
/// (diffs[0] is ignored).
struct FunChainCx {
  int lo = 0;
  std::vector<FunRep> terms;
  std::vector<NatTrans> diffs;

  ColumnComplex at(ObjId x) const;
  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
};
// Objectwise homology dimensions in degree n.
std::vector<size_t> homology_dims(const FunChainCx& cx, int n, const Caps& caps = default_caps());
// d^2 = 0 objectwise, as a validation report.
ValidationReport check_d2(const FunChainCx& cx);

// ---- projective presentations

/// (+)_j P^{t_j}, with basis of the value at u indexed by pairs
/// (j, h : t_j -> u), generator-major.
struct FreeFunctor {
  FunRep rep;
  std::vector<ObjId> gens;
  std::vector<std::vector<uint64_t>> offsets;  // offsets[u][j], with a final entry dim(u)

  uint64_t index(size_t j, ObjId u, HomIdx h) const { return offsets[u][j] + h; }
  // (j, h) for a basis index b of the value at u.
  std::pair<size_t, HomIdx> locate(ObjId u, uint64_t b) const;
};
FreeFunctor free_functor(const FinCat& c, std::vector<ObjId> gens, uint32_t p);
// The map sending the identity of the j-th summand P^{t_j} to vectors[j] in ambient(t_j).
NatTrans generator_map(const FreeFunctor& cover, const FunRep& ambient, std::vector<FVec> vectors);

/// One stage of a projective resolution by greedy covers:
///   cover = (+)_j P^{t_j} --to_ambient--> ambient, with image equal to the
/// stage target (F itself at stage 0, the previous kernel afterwards).
struct CoverStage {
  std::vector<ObjId> gen_objects;
  std::vector<FVec> gen_vectors;  // in ambient(t_j) coordinates
  FunRep ambient;
  FreeFunctor cover;
  NatTrans to_ambient;
  std::vector<size_t> target_dims;
  std::vector<size_t> ranks;  // rank of to_ambient at each object
  bool epi = true;
  std::optional<ObjId> failure_object;
  SubResult kernel;  // inclusion into cover; empty when not requested

  size_t num_generators() const { return gen_objects.size(); }
};

struct PresentOptions {
  bool reverse_sweep = false;
  // Objects allowed as generator positions (all objects when empty).
  std::vector<ObjId> allowed;
  // Compute the kernel of the last stage.
  bool last_kernel = true;
  // After the sweep, drop generators that the remaining ones already generate.
  bool prune = true;
};

/// Truncated projective resolution P_{n-1} -> ... -> P_0 -> F -> 0.
struct PresentationCert {
  FunRep functor;
  std::vector<CoverStage> stages;
  std::vector<ObjId> sweep;
  bool complete = true;  // every stage is epimorphic onto its target

  size_t length() const { return stages.size(); }
  // P_k -> P_{k-1} (k >= 1) or P_0 -> F (k = 0), as a map of cover functors / into F.
  const NatTrans& differential(size_t k) const { return stages[k].to_ambient; }
  // Multiplicities of each object among the generators of stage k.
  std::vector<size_t> multiplicities(size_t k) const;
};

// Greedy cover of a subfunctor X of `ambient` (dims and bases given), sweeping
// the objects in `sweep`. Epimorphicity is checked at every object.
CoverStage greedy_cover(const FunRep& ambient, const std::vector<size_t>& target_dims,
                        const std::function<EchelonBasis(ObjId)>& target_basis, const std::vector<ObjId>& sweep,
                        bool want_kernel, bool prune = true, const Caps& caps = default_caps());

// n-presentation: n + 1 cover stages.
PresentationCert present(const FunRep& f, size_t n, const PresentOptions& opts = {},
                         const Caps& caps = default_caps());
// Recomputes exactness of the certificate objectwise from the stored maps.
ValidationReport recheck(const PresentationCert& cert);

// ---- Ext and Tor

struct ExtResult {
  std::vector<size_t> dims;  // Ext^0..Ext^{i_max}
  std::vector<size_t> cochain_dims;
  std::vector<size_t> ranks;  // rank of delta^k
  std::string method;
  uint64_t d2_checks = 0;
  bool d2_exhaustive = true;
};

// Ext^*_{Fun(C)}(F, G) from a greedy projective resolution of F and Yoneda.
ExtResult ext_functorcat(const FunRep& f, const FunRep& g, size_t i_max, const PresentOptions& opts = {},
                         const Caps& caps = default_caps());
// Ext^*(F, G) from the cobar complex prod_{x_0 -> ... -> x_n} Hom(F(x_0), G(x_n)).
ExtResult ext_bar(const FunRep& f, const FunRep& g, size_t i_max, const Caps& caps = default_caps());
// Ext over the monoid algebra k[M] for a one-object category (same cobar model).
ExtResult ext_monoid(const FunRep& v, const FunRep& w, size_t i_max, const Caps& caps = default_caps());

// Tor^C_*(H, F) for H on C^op and F on C, from the two-sided bar complex.
ColumnComplex tor_complex(const FunRep& h, const FunRep& f, size_t top, const Caps& caps = default_caps());
std::vector<size_t> tor_category(const FunRep& h, const FunRep& f, size_t i_max, const Caps& caps = default_caps());

struct KunnethRow {
  size_t degree = 0;
  size_t lhs = 0;
  size_t rhs = 0;
  bool equal = false;
};
// Ext_{C x D}(F (x) U, G (x) V) against sum_{a+b=n} Ext_C(F,G) Ext_D(U,V).
std::vector<KunnethRow> kunneth_check(const FunRep& f, const FunRep& g, const FunRep& u, const FunRep& v,
                                      size_t i_max, const Caps& caps = default_caps());

}  // namespace fonctex
