#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fonctex/caps.hpp"
#include "fonctex/funrep.hpp"

namespace fonctex {

// N for a category built by truncated_additive(ring, N); throws ArgumentError otherwise.
size_t truncation_level(const FinCat& c);

// V |-> V (+) A from P_{N-1} to P_N (morphisms f |-> f (+) id_A).
CatFunctor shift_functor(const FinCat& pn);
// P_{N-1} -> P_N, the identity on matrices.
CatFunctor truncation_inclusion(const FinCat& pn);

// (shifted F)(V) = F(V (+) A), on P_{N-1}.
FunRep shift(const FunRep& f);

struct DifferenceData {
  FunRep shifted;     // F(- (+) A)
  FunRep restricted;  // F on P_{N-1}
  NatTrans projection;  // F(pi_V) : F(V (+) A) -> F(V)
  FunRep rep;         // kernel of projection
  NatTrans inclusion;   // rep -> shifted
};
DifferenceData difference_data(const FunRep& f);
FunRep difference(const FunRep& f);

struct DegreeReport {
  std::string label;
  std::string fingerprint;
  std::string category;
  size_t window = 0;
  size_t truncation = 0;
  // levels[j] = dimensions of Delta^j F on P_{N-j}.
  std::vector<std::vector<size_t>> levels;
  // Smallest d with Delta^{d+1} F = 0 (-1 for the zero functor); empty if none within the window.
  std::optional<int> degree;
  std::string verdict;
};
// Requires N >= window + 1.
DegreeReport degree(const FunRep& f, size_t window);

/// cr_d F(V_1, ..., V_d) inside F(V_1 (+) ... (+) V_d), as the intersection of the
/// kernels of F(pi_i), pi_i the idempotent killing the i-th summand.
struct CrossEffect {
  std::vector<size_t> ranks;
  ObjId object = 0;
  EchelonBasis space;
  size_t dim() const { return space.dim(); }
};
CrossEffect cross_effect(const FunRep& f, const std::vector<size_t>& ranks);

// Smallest d <= d_max such that cr_{d+1} F vanishes at every tuple of nonzero
// ranks with sum <= N; empty if there is none.
std::optional<size_t> degree_by_cross_effects(const FunRep& f, size_t d_max);

/// Action of S_d on cr_d F(A, ..., A) by permuting summands.
struct SymmetricRep {
  size_t d = 0;
  size_t dim = 0;
  std::vector<std::vector<size_t>> perms;  // perms[k][i] = image of summand i
  std::vector<FMat> matrices;              // in the basis of the cross-effect
};
SymmetricRep top_cross_effect_sym(const FunRep& f, size_t d);

/// The natural isomorphism (P^{A^i})^{(+)(|A|^i - 1)} -> Delta P^{A^i} on P_{N-1},
/// one copy for each nonzero a : A^i -> A, sending id to [(id, a)] - [(id, 0)].
struct ProjectiveDifferenceIso {
  NatTrans map;
  size_t copies = 0;
};
ProjectiveDifferenceIso difference_of_projective(const FinCat& pn, ObjId t, uint32_t p);

}  // namespace fonctex
